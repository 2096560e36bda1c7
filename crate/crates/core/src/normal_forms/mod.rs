//! Language-preserving rewrites into normal forms, their shape predicates,
//! and bounded language comparison.

mod cnf;
mod k_rated;
mod linear_unit;

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::derive::enumerate_uncapped;
use crate::error::Result;
use crate::grammar::{nullable, Grammar, Rule, Symbol};
use crate::ratio::Ratio;
use crate::symbol::Word;

pub use cnf::to_cnf;
pub use k_rated::to_k_rated_nf;
pub use linear_unit::to_linear_unit_nf;

/// Length bound used by equivalence checks unless told otherwise.
pub const DEFAULT_EQUIVALENCE_LEN: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormalFormKind {
    /// `A → aB | Ba | a`, plus `S → λ`.
    LinearUnit,
    /// `A → vBw` with `|v| = h`, `|w| = g`, and `A → u` with `|u| < g + h`.
    KRated(Ratio),
    /// `A → aBb | a | λ`.
    EvenLinear,
    /// `A → aB | λ`.
    Regular,
    /// `A → BC | a`, plus `S → λ` when `S` occurs on no right-hand side.
    Chomsky,
}

impl fmt::Display for NormalFormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalFormKind::LinearUnit => f.write_str("linear-unit"),
            NormalFormKind::KRated(k) => write!(f, "{k}-rated"),
            NormalFormKind::EvenLinear => f.write_str("even-linear"),
            NormalFormKind::Regular => f.write_str("regular"),
            NormalFormKind::Chomsky => f.write_str("Chomsky"),
        }
    }
}

impl NormalFormKind {
    /// The first rule breaking the shape, described; `None` when it holds.
    pub fn violation(&self, g: &Grammar) -> Option<String> {
        match self {
            NormalFormKind::LinearUnit => linear_unit_violation(g),
            NormalFormKind::KRated(k) => k_rated_violation(g, *k),
            NormalFormKind::EvenLinear => k_rated_violation(g, Ratio::ONE),
            NormalFormKind::Regular => k_rated_violation(g, Ratio::ZERO),
            NormalFormKind::Chomsky => cnf_violation(g),
        }
    }

    pub fn holds(&self, g: &Grammar) -> bool {
        self.violation(g).is_none()
    }
}

fn offending(i: usize, r: &Rule, why: &str) -> Option<String> {
    Some(format!("rule {i} `{r}` {why}"))
}

pub(crate) fn k_rated_violation(g: &Grammar, k: Ratio) -> Option<String> {
    let (gg, h) = (k.g() as usize, k.h() as usize);
    for (i, r) in g.rules.iter().enumerate() {
        match r.linear_parts() {
            None => return offending(i, r, "has several nonterminals"),
            Some((v, Some(_), w)) => {
                if v.len() != h || w.len() != gg {
                    return offending(i, r, &format!("does not emit {h} letter(s) left and {gg} right"));
                }
            }
            Some((u, None, _)) => {
                if u.len() >= gg + h {
                    return offending(i, r, &format!("is a terminal rule of length ≥ {}", gg + h));
                }
            }
        }
    }
    None
}

pub(crate) fn linear_unit_violation(g: &Grammar) -> Option<String> {
    for (i, r) in g.rules.iter().enumerate() {
        let ok = match &r.rhs[..] {
            [] => r.lhs == g.start,
            [Symbol::Terminal(_)] => true,
            [Symbol::Terminal(_), Symbol::Nonterminal(_)] | [Symbol::Nonterminal(_), Symbol::Terminal(_)] => true,
            _ => false,
        };
        if !ok {
            return offending(i, r, "is not A → aB, A → Ba, A → a or S → λ");
        }
    }
    None
}

pub(crate) fn cnf_violation(g: &Grammar) -> Option<String> {
    let start_on_rhs = g.rules.iter().any(|r| r.rhs.iter().any(|s| s.is_nonterminal() && s.name() == g.start));
    for (i, r) in g.rules.iter().enumerate() {
        let ok = match &r.rhs[..] {
            [] => r.lhs == g.start && !start_on_rhs,
            [Symbol::Terminal(_)] => true,
            [Symbol::Nonterminal(_), Symbol::Nonterminal(_)] => true,
            _ => false,
        };
        if !ok {
            return offending(i, r, "is not A → BC, A → a or S → λ");
        }
    }
    None
}

/// Result of comparing two languages up to a length bound, modulo λ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Equivalence {
    pub equivalent: bool,
    /// Shortlex-least non-empty word in exactly one of the languages.
    pub witness: Option<Word>,
    /// Whether the two grammars also agree on λ.
    pub lambda_agrees: bool,
}

/// Compares `L(g1)` and `L(g2)` on words of length `1..=max_len`.
pub fn bounded_equivalent(g1: &Grammar, g2: &Grammar, max_len: usize) -> Result<Equivalence> {
    let a = enumerate_uncapped(g1, max_len)?;
    let b = enumerate_uncapped(g2, max_len)?;
    let lambda_agrees = a.contains(&Word::empty()) == b.contains(&Word::empty());
    let witness = a.symmetric_difference(&b).find(|w| !w.is_empty()).cloned();
    Ok(Equivalence { equivalent: witness.is_none(), witness, lambda_agrees })
}

/// Removes duplicate rules, keeping first occurrences.
pub(crate) fn dedup_rules(rules: Vec<Rule>) -> Vec<Rule> {
    let mut seen = HashSet::new();
    rules.into_iter().filter(|r| seen.insert(r.clone())).collect()
}

/// Names of nullable nonterminals.
pub(crate) fn nullable_names(g: &Grammar) -> Result<BTreeSet<String>> {
    let ix = g.indexed()?;
    Ok(nullable(&ix).into_iter().zip(&ix.names).filter(|(f, _)| *f).map(|(_, n)| n.clone()).collect())
}

fn is_unit(r: &Rule) -> bool {
    matches!(&r.rhs[..], [Symbol::Nonterminal(_)])
}

/// Replaces unit rules `A → B` by copies of `B`'s non-unit rules. A grammar
/// without unit rules is returned unchanged; otherwise rules are grouped by
/// left-hand side in declaration order.
pub(crate) fn eliminate_units(g: &Grammar) -> Grammar {
    if !g.rules.iter().any(is_unit) {
        return g.clone();
    }
    let mut rules = Vec::new();
    for a in &g.nonterminals {
        let mut closure = vec![a.clone()];
        let mut i = 0;
        while i < closure.len() {
            let cur = closure[i].clone();
            for r in g.rules.iter().filter(|r| r.lhs == cur) {
                if let [Symbol::Nonterminal(b)] = &r.rhs[..] {
                    if !closure.contains(b) {
                        closure.push(b.clone());
                    }
                }
            }
            i += 1;
        }
        for b in &closure {
            for r in g.rules.iter().filter(|r| &r.lhs == b && !is_unit(r)) {
                rules.push(Rule { lhs: a.clone(), rhs: r.rhs.clone() });
            }
        }
    }
    Grammar { rules: dedup_rules(rules), ..g.clone() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(text: &str) -> Grammar {
        Grammar::parse(text).unwrap()
    }

    #[test]
    fn equivalent_modulo_lambda() {
        let e = bounded_equivalent(&g("S -> a S b | @eps"), &g("S -> a b | a S b"), 12).unwrap();
        assert!(e.equivalent);
        assert!(!e.lambda_agrees);
    }

    #[test]
    fn self_equivalent() {
        let a = g("S -> a S b | @eps");
        assert!(bounded_equivalent(&a, &a, 12).unwrap().equivalent);
    }

    #[test]
    fn difference_witness_is_shortest() {
        let e = bounded_equivalent(&g("S -> a S | @eps"), &g("S -> a a S | @eps"), 12).unwrap();
        assert!(!e.equivalent);
        assert_eq!(e.witness.unwrap().to_string(), "a");
    }

    #[test]
    fn shape_predicates() {
        assert!(NormalFormKind::EvenLinear.holds(&g("S -> a S b | a | @eps")));
        assert!(!NormalFormKind::EvenLinear.holds(&g("S -> a S b b")));
        assert!(NormalFormKind::Regular.holds(&g("S -> a S | @eps")));
        assert!(!NormalFormKind::Regular.holds(&g("S -> a")));
        assert!(NormalFormKind::Chomsky.holds(&g("S -> A B\nA -> a\nB -> b")));
        assert!(!NormalFormKind::Chomsky.holds(&g("S -> S S | @eps")));
        assert!(NormalFormKind::LinearUnit.holds(&g("S -> a S | S b | c | @eps")));
        assert!(!NormalFormKind::LinearUnit.holds(&g("S -> a S b")));
    }

    #[test]
    fn unit_elimination() {
        let out = eliminate_units(&g("S -> A | a\nA -> B | b\nB -> S | c"));
        let shown: Vec<String> = out.rules.iter().map(|r| r.to_string()).collect();
        assert_eq!(shown, ["S -> a", "S -> b", "S -> c", "A -> b", "A -> c", "A -> a", "B -> c", "B -> a", "B -> b"]);
    }
}
