use super::{dedup_rules, eliminate_units, nullable_names};
use crate::error::{Error, Result};
use crate::grammar::{useful_core, FreshNames, Grammar, Rule, Symbol};

/// Rewrites a linear grammar into rules `A → aB`, `A → Ba`, `A → a`, with
/// `S → λ` added when `λ ∈ L(g)`; `S` then occurs on no right-hand side.
pub fn to_linear_unit_nf(g: &Grammar) -> Result<Grammar> {
    g.ensure_valid()?;
    if let Some(i) = g.rules.iter().position(|r| r.nonterminal_count() > 1) {
        return Err(Error::NotLinear(i));
    }
    let g = useful_core(g)?;
    let nullable = nullable_names(&g)?;
    let has_lambda = nullable.contains(&g.start);

    let mut rules = Vec::new();
    for r in &g.rules {
        if r.rhs.is_empty() {
            continue;
        }
        rules.push(r.clone());
        if r.rhs.len() > 1 {
            if let Some(pos) = r.rhs.iter().position(|s| s.is_nonterminal() && nullable.contains(s.name())) {
                let mut rhs = r.rhs.clone();
                rhs.remove(pos);
                rules.push(Rule { lhs: r.lhs.clone(), rhs });
            }
        }
    }
    let g = eliminate_units(&Grammar { rules: dedup_rules(rules), ..g });

    let mut fresh = FreshNames::new(&g);
    let mut added = Vec::new();
    let mut rules = Vec::new();
    for r in &g.rules {
        let (v, nt, w) = r.linear_parts().expect("checked linear above");
        let letters = v.len() + w.len();
        if letters <= 1 {
            rules.push(r.clone());
            continue;
        }
        let mut cur = r.lhs.clone();
        let mut step = |cur: &str, rhs: Vec<Symbol>| rules.push(Rule { lhs: cur.to_string(), rhs });
        match nt {
            Some(b) => {
                for s in 0..letters {
                    let next = if s + 1 == letters { b.to_string() } else { fresh.next(&r.lhs) };
                    let rhs = if s < v.len() {
                        vec![Symbol::t(v[s]), Symbol::n(&next)]
                    } else {
                        vec![Symbol::n(&next), Symbol::t(w[w.len() - 1 - (s - v.len())])]
                    };
                    step(&cur, rhs);
                    if s + 1 < letters {
                        added.push(next.clone());
                    }
                    cur = next;
                }
            }
            None => {
                for letter in &v[..letters - 1] {
                    let next = fresh.next(&r.lhs);
                    added.push(next.clone());
                    step(&cur, vec![Symbol::t(letter), Symbol::n(&next)]);
                    cur = next;
                }
                step(&cur, vec![Symbol::t(v[letters - 1])]);
            }
        }
    }
    let mut start = g.start.clone();
    if has_lambda {
        // S → λ must not be reachable from a right-hand side.
        if rules.iter().any(|r| r.rhs.contains(&Symbol::n(&g.start))) {
            start = fresh.next(&g.start);
            let copies: Vec<Rule> =
                rules.iter().filter(|r| r.lhs == g.start).map(|r| Rule { lhs: start.clone(), rhs: r.rhs.clone() }).collect();
            rules.extend(copies);
            added.push(start.clone());
        }
        rules.push(Rule { lhs: start.clone(), rhs: Vec::new() });
    }
    let mut nonterminals = g.nonterminals.clone();
    nonterminals.extend(added);
    useful_core(&Grammar { nonterminals, start, rules: dedup_rules(rules), ..g })
}
