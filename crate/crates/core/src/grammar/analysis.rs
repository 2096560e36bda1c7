//! Productivity, reachability, nullability and finiteness.

use super::{Grammar, Indexed, Sym};
use crate::error::{Error, Result};

/// Nonterminals deriving at least one terminal word.
pub(crate) fn productive(g: &Indexed) -> Vec<bool> {
    let mut prod = vec![false; g.len()];
    let mut changed = true;
    while changed {
        changed = false;
        for r in &g.rules {
            if !prod[r.lhs] && r.rhs.iter().all(|s| matches!(s, Sym::T(_)) || matches!(s, Sym::N(n) if prod[*n])) {
                prod[r.lhs] = true;
                changed = true;
            }
        }
    }
    prod
}

/// Nonterminals deriving λ.
pub(crate) fn nullable(g: &Indexed) -> Vec<bool> {
    let mut null = vec![false; g.len()];
    let mut changed = true;
    while changed {
        changed = false;
        for r in &g.rules {
            if !null[r.lhs] && r.rhs.iter().all(|s| matches!(s, Sym::N(n) if null[*n])) {
                null[r.lhs] = true;
                changed = true;
            }
        }
    }
    null
}

/// Whether every nonterminal of the rule is productive, i.e. the rule can
/// take part in a terminating derivation.
fn usable(rhs: &[Sym], prod: &[bool]) -> bool {
    rhs.iter().all(|s| match s {
        Sym::N(n) => prod[*n],
        Sym::T(_) => true,
    })
}

/// Nonterminals deriving some non-empty terminal word.
fn solid(g: &Indexed, prod: &[bool]) -> Vec<bool> {
    let mut out = vec![false; g.len()];
    let mut changed = true;
    while changed {
        changed = false;
        for r in &g.rules {
            if out[r.lhs] || !usable(&r.rhs, prod) {
                continue;
            }
            if r.rhs.iter().any(|s| match s {
                Sym::T(_) => true,
                Sym::N(n) => out[*n],
            }) {
                out[r.lhs] = true;
                changed = true;
            }
        }
    }
    out
}

fn reachable_from(g: &Indexed, from: usize, allowed: &[bool]) -> Vec<bool> {
    let mut seen = vec![false; g.len()];
    let mut stack = vec![from];
    seen[from] = true;
    while let Some(a) = stack.pop() {
        for r in g.rules.iter().filter(|r| r.lhs == a && usable(&r.rhs, allowed)) {
            for s in &r.rhs {
                if let Sym::N(n) = s {
                    if !seen[*n] {
                        seen[*n] = true;
                        stack.push(*n);
                    }
                }
            }
        }
    }
    seen
}

/// Drops non-productive and unreachable nonterminals together with every rule
/// mentioning them. The terminal alphabet is kept as declared.
pub fn useful_core(g: &Grammar) -> Result<Grammar> {
    let ix = g.indexed()?;
    let prod = productive(&ix);
    if !prod[ix.start] {
        return Err(Error::EmptyLanguage);
    }
    let reach = reachable_from(&ix, ix.start, &prod);
    let keep: Vec<bool> = (0..ix.len()).map(|i| prod[i] && reach[i]).collect();
    let rules = g
        .rules
        .iter()
        .zip(&ix.rules)
        .filter(|(_, r)| keep[r.lhs] && r.rhs.iter().all(|s| !matches!(s, Sym::N(n) if !keep[*n])))
        .map(|(r, _)| r.clone())
        .collect();
    Ok(Grammar {
        nonterminals: g.nonterminals.iter().zip(&keep).filter(|(_, k)| **k).map(|(n, _)| n.clone()).collect(),
        terminals: g.terminals.clone(),
        start: g.start.clone(),
        rules,
    })
}

/// Per nonterminal: does it generate an infinite language?
pub(crate) fn infinite_flags(g: &Indexed) -> Vec<bool> {
    let n = g.len();
    let prod = productive(g);
    let solid = solid(g, &prod);

    // reach[a][b]: b occurs in a sentential form derived from a (reflexive).
    let mut reach = vec![vec![false; n]; n];
    // Edges X → Y whose surrounding context can derive a non-empty word.
    let mut growing: Vec<(usize, usize)> = Vec::new();
    for (a, row) in reach.iter_mut().enumerate() {
        row[a] = true;
    }
    for r in g.rules.iter().filter(|r| usable(&r.rhs, &prod)) {
        for (pos, s) in r.rhs.iter().enumerate() {
            let Sym::N(y) = s else { continue };
            reach[r.lhs][*y] = true;
            let context_grows = r.rhs.iter().enumerate().any(|(q, c)| {
                q != pos
                    && match c {
                        Sym::T(_) => true,
                        Sym::N(m) => solid[*m],
                    }
            });
            if context_grows {
                growing.push((r.lhs, *y));
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                let via = reach[k].clone();
                for (to, &r) in reach[i].iter_mut().zip(&via) {
                    *to |= r;
                }
            }
        }
    }
    (0..n)
        .map(|a| prod[a] && growing.iter().any(|&(x, y)| reach[a][x] && reach[y][x]))
        .collect()
}

/// Nonterminals `A` with `L(G_A)` infinite, in declaration order.
pub fn infinite_nonterminals(g: &Grammar) -> Result<Vec<String>> {
    let ix = g.indexed()?;
    let flags = infinite_flags(&ix);
    Ok(ix.names.iter().zip(flags).filter(|(_, f)| *f).map(|(n, _)| n.clone()).collect())
}
