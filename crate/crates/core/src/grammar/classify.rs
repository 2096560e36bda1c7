//! Placement of a grammar in the class lattice
//! regular ⊂ k-rated linear ⊂ linear ⊂ metalinear ⊂ context-free.
//!
//! Everything here speaks about the *shape* of the rules, not about the
//! generated language.

use serde::{Deserialize, Serialize};

use super::{Grammar, Rule, Symbol};
use crate::error::{Error, Result};
use crate::ratio::Ratio;

/// Rate of a single linear rule `A → vBw`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleRatio {
    /// `|w|/|v|` in lowest terms.
    Rate(Ratio),
    /// Unit rules `A → B` and terminal rules constrain no rate.
    Unconstrained,
    /// `|v| = 0 < |w|`: the rate would be infinite.
    IncompatibleLeftRegular,
}

pub fn ratio_of(rule: &Rule) -> Result<RuleRatio> {
    let count = rule.nonterminal_count();
    let Some((v, nt, w)) = rule.linear_parts() else {
        return Err(Error::NonlinearRule { rule: rule.to_string(), count });
    };
    if nt.is_none() || v.len() + w.len() == 0 {
        return Ok(RuleRatio::Unconstrained);
    }
    if v.is_empty() {
        return Ok(RuleRatio::IncompatibleLeftRegular);
    }
    Ok(RuleRatio::Rate(Ratio::new(w.len() as u64, v.len() as u64)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub rule: usize,
    pub text: String,
    pub reason: String,
}

impl Witness {
    fn new(g: &Grammar, rule: usize, reason: impl Into<String>) -> Witness {
        Witness { rule, text: g.rules[rule].to_string(), reason: reason.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassReport {
    pub context_free: bool,
    pub linear: bool,
    pub linear_witness: Option<Witness>,
    /// The rate when the grammar is fixed-rated linear. A grammar whose rules
    /// constrain no rate at all is reported as `0/1`.
    pub k_rated: Option<Ratio>,
    pub k_rated_witness: Option<Witness>,
    pub even_linear: bool,
    pub even_linear_witness: Option<Witness>,
    pub regular: bool,
    pub regular_witness: Option<Witness>,
    /// `Some(1)` for linear grammars, `Some(k)` for the k-linear shape.
    pub k_linear: Option<usize>,
    pub k_linear_witness: Option<Witness>,
    pub metalinear_shape: bool,
    /// Unit and terminal rules; they are compatible with every rate.
    pub unconstrained_rules: Vec<usize>,
}

pub fn classify(g: &Grammar) -> Result<ClassReport> {
    g.ensure_valid()?;

    let nonlinear = g.rules.iter().position(|r| r.nonterminal_count() > 1);
    let linear_witness = nonlinear.map(|i| Witness::new(g, i, "more than one nonterminal on the right"));
    let linear = nonlinear.is_none();

    let mut unconstrained_rules = Vec::new();
    let (k_rated, k_rated_witness) = if let Some(w) = &linear_witness {
        (None, Some(w.clone()))
    } else {
        let mut candidate: Option<Ratio> = None;
        let mut witness = None;
        for (i, r) in g.rules.iter().enumerate() {
            match ratio_of(r)? {
                RuleRatio::Unconstrained => unconstrained_rules.push(i),
                RuleRatio::IncompatibleLeftRegular => {
                    witness.get_or_insert_with(|| Witness::new(g, i, "empty left context with non-empty right context"));
                }
                RuleRatio::Rate(k) => match candidate {
                    None => candidate = Some(k),
                    Some(c) if c != k => {
                        witness.get_or_insert_with(|| Witness::new(g, i, format!("rate {k} differs from {c}")));
                    }
                    Some(_) => {}
                },
            }
        }
        match witness {
            Some(w) => (None, Some(w)),
            None => (Some(candidate.unwrap_or(Ratio::ZERO)), None),
        }
    };

    let first_rate_not = |target: Ratio, why: &str| -> Option<Witness> {
        g.rules.iter().enumerate().find_map(|(i, r)| match ratio_of(r) {
            Ok(RuleRatio::Rate(k)) if k != target => Some(Witness::new(g, i, format!("rate {k}, {why}"))),
            _ => None,
        })
    };

    let even_linear = k_rated == Some(Ratio::ONE);
    let even_linear_witness = match (&k_rated, even_linear) {
        (_, true) => None,
        (None, _) => k_rated_witness.clone(),
        (Some(_), false) => first_rate_not(Ratio::ONE, "not 1/1"),
    };
    let regular = k_rated == Some(Ratio::ZERO);
    let regular_witness = match (&k_rated, regular) {
        (_, true) => None,
        (None, _) => k_rated_witness.clone(),
        (Some(_), false) => first_rate_not(Ratio::ZERO, "not right-linear"),
    };

    let (k_linear, k_linear_witness) = if linear {
        (Some(1), None)
    } else {
        k_linear_shape(g)
    };

    Ok(ClassReport {
        context_free: true,
        linear,
        linear_witness,
        k_rated,
        k_rated_witness,
        even_linear,
        even_linear_witness,
        regular,
        regular_witness,
        metalinear_shape: k_linear.is_some(),
        k_linear,
        k_linear_witness,
        unconstrained_rules,
    })
}

/// Linear rules plus exactly one rule `S → S₁…S_k`, where `S` occurs in no
/// other rule and no `S_i` occurs on any other right-hand side.
fn k_linear_shape(g: &Grammar) -> (Option<usize>, Option<Witness>) {
    let start_rules: Vec<usize> =
        g.rules.iter().enumerate().filter(|(_, r)| r.lhs == g.start).map(|(i, _)| i).collect();
    if start_rules.len() != 1 {
        let i = start_rules.get(1).copied().unwrap_or(0);
        if g.rules.is_empty() {
            return (None, None);
        }
        return (None, Some(Witness::new(g, i, "the start symbol needs exactly one rule")));
    }
    let top = start_rules[0];
    let top_rule = &g.rules[top];
    if top_rule.rhs.is_empty() || top_rule.rhs.iter().any(|s| !s.is_nonterminal()) {
        return (None, Some(Witness::new(g, top, "start rule is not S → S₁…S_k")));
    }
    let components: Vec<&str> = top_rule.rhs.iter().map(Symbol::name).collect();
    if components.contains(&g.start.as_str()) {
        return (None, Some(Witness::new(g, top, "start symbol on its own right-hand side")));
    }
    for (i, r) in g.rules.iter().enumerate() {
        if i == top {
            continue;
        }
        if r.rhs.iter().any(|s| s.name() == g.start && s.is_nonterminal()) {
            return (None, Some(Witness::new(g, i, "start symbol used outside the start rule")));
        }
        if let Some(s) = r.rhs.iter().find(|s| s.is_nonterminal() && components.contains(&s.name())) {
            return (None, Some(Witness::new(g, i, format!("component {} reused on a right-hand side", s.name()))));
        }
        if r.nonterminal_count() > 1 {
            return (None, Some(Witness::new(g, i, "more than one nonterminal on the right")));
        }
    }
    (Some(components.len()), None)
}
