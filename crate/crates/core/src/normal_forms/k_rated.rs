use super::eliminate_units;
use crate::error::{Error, Result};
use crate::grammar::{ratio_of, useful_core, FreshNames, Grammar, Rule, RuleRatio, Symbol};
use crate::ratio::Ratio;

/// Rewrites a `k`-rated linear grammar so that every rule `A → vBw` emits
/// exactly `h` letters on the left and `g` on the right, and every terminal
/// rule is shorter than `g + h`. Unit rules are removed first.
pub fn to_k_rated_nf(g: &Grammar, k: Ratio) -> Result<Grammar> {
    g.ensure_valid()?;
    let not_rated = |reason: String| Error::NotKRated { ratio: k.to_string(), reason };
    for r in &g.rules {
        match ratio_of(r) {
            Err(e) => return Err(not_rated(e.to_string())),
            Ok(RuleRatio::Unconstrained) => {}
            Ok(RuleRatio::Rate(q)) if q == k => {}
            Ok(RuleRatio::Rate(q)) => return Err(not_rated(format!("rule `{r}` has rate {q}"))),
            Ok(RuleRatio::IncompatibleLeftRegular) => {
                return Err(not_rated(format!("rule `{r}` emits nothing on the left")))
            }
        }
    }

    let g = eliminate_units(g);
    let (gg, h) = (k.g() as usize, k.h() as usize);
    let mut fresh = FreshNames::new(&g);
    let mut added = Vec::new();
    let mut rules = Vec::new();
    for r in &g.rules {
        let (v, nt, w) = r.linear_parts().expect("checked linear above");
        match nt {
            Some(b) => {
                let m = v.len() / h;
                if m <= 1 {
                    rules.push(r.clone());
                    continue;
                }
                let mut cur = r.lhs.clone();
                for i in 0..m {
                    let next = if i + 1 == m { b.to_string() } else { fresh.next(&r.lhs) };
                    let mut rhs: Vec<Symbol> = v[i * h..(i + 1) * h].iter().map(|t| Symbol::t(t)).collect();
                    rhs.push(Symbol::n(&next));
                    rhs.extend(w[w.len() - (i + 1) * gg..w.len() - i * gg].iter().map(|t| Symbol::t(t)));
                    rules.push(Rule { lhs: cur, rhs });
                    if i + 1 < m {
                        added.push(next.clone());
                    }
                    cur = next;
                }
            }
            None => {
                let mut cur = r.lhs.clone();
                let mut rest: &[&str] = &v;
                while rest.len() >= gg + h {
                    let next = fresh.next(&r.lhs);
                    added.push(next.clone());
                    let mut rhs: Vec<Symbol> = rest[..h].iter().map(|t| Symbol::t(t)).collect();
                    rhs.push(Symbol::n(&next));
                    rhs.extend(rest[rest.len() - gg..].iter().map(|t| Symbol::t(t)));
                    rules.push(Rule { lhs: cur, rhs });
                    rest = &rest[h..rest.len() - gg];
                    cur = next;
                }
                rules.push(Rule { lhs: cur, rhs: rest.iter().map(|t| Symbol::t(t)).collect() });
            }
        }
    }
    let mut nonterminals = g.nonterminals.clone();
    nonterminals.extend(added);
    useful_core(&Grammar { nonterminals, rules, ..g })
}
