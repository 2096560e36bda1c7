use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::grammar::{infinite_flags, useful_core, Grammar, Sym, Symbol};

pub const DEFAULT_MAX_STEPS: usize = 50;

/// Upper bound on distinct nonterminal skeletons visited by one search.
const STATE_CAP: usize = 200_000;

/// A sentential form reached from the start symbol.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SententialForm {
    pub symbols: Vec<Symbol>,
    /// Length of the derivation that produced the form.
    pub steps: usize,
    /// Positions in `symbols` of the first `target` nonterminals with an
    /// infinite language.
    pub infinite_positions: Vec<usize>,
}

/// Breadth-first search, by derivation length, for a sentential form with at
/// least `target` occurrences of nonterminals generating infinite languages.
/// Every nonterminal occurrence may be expanded; forms sharing a nonterminal
/// skeleton are explored once. `None` means nothing was found within
/// `max_steps` (or the search budget), which is not a proof of absence.
pub fn sentential_reach(g: &Grammar, target: usize, max_steps: usize) -> Result<Option<SententialForm>> {
    let g = useful_core(g)?;
    let ix = g.indexed()?;
    let infinite = infinite_flags(&ix);
    let by_lhs = ix.by_lhs();
    let count = |form: &[Sym]| form.iter().filter(|s| matches!(s, Sym::N(n) if infinite[*n])).count();
    let skeleton = |form: &[Sym]| -> Vec<usize> {
        form.iter()
            .filter_map(|s| match s {
                Sym::N(n) => Some(*n),
                Sym::T(_) => None,
            })
            .collect()
    };

    let start = vec![Sym::N(ix.start)];
    let mut seen: HashSet<Vec<usize>> = HashSet::from([skeleton(&start)]);
    let mut queue: VecDeque<(Vec<Sym>, usize)> = VecDeque::from([(start, 0)]);
    while let Some((form, steps)) = queue.pop_front() {
        if count(&form) >= target {
            let infinite_positions: Vec<usize> = form
                .iter()
                .enumerate()
                .filter(|(_, s)| matches!(s, Sym::N(n) if infinite[*n]))
                .map(|(i, _)| i)
                .take(target)
                .collect();
            let symbols = form
                .iter()
                .map(|s| match s {
                    Sym::T(t) => Symbol::t(t.as_str()),
                    Sym::N(n) => Symbol::n(&ix.names[*n]),
                })
                .collect();
            return Ok(Some(SententialForm { symbols, steps, infinite_positions }));
        }
        if steps == max_steps {
            continue;
        }
        for (pos, s) in form.iter().enumerate() {
            let Sym::N(a) = s else { continue };
            for &ri in &by_lhs[*a] {
                let mut next = Vec::with_capacity(form.len() + ix.rules[ri].rhs.len());
                next.extend_from_slice(&form[..pos]);
                next.extend_from_slice(&ix.rules[ri].rhs);
                next.extend_from_slice(&form[pos + 1..]);
                if seen.insert(skeleton(&next)) {
                    if seen.len() > STATE_CAP {
                        return Ok(None);
                    }
                    queue.push_back((next, steps + 1));
                }
            }
        }
    }
    Ok(None)
}
