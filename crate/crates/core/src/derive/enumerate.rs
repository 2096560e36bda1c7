use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::grammar::{Grammar, Indexed, Sym};
use crate::symbol::Word;

pub const DEFAULT_MAXLEN_CAP: usize = 16;
pub const MAXLEN_CAP_ENV: &str = "PUMPLAB_MAXLEN_CAP";

/// The enumeration cap: `PUMPLAB_MAXLEN_CAP` when set to an integer,
/// otherwise [`DEFAULT_MAXLEN_CAP`].
pub fn maxlen_cap() -> usize {
    std::env::var(MAXLEN_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAXLEN_CAP)
}

/// All words of `L(g)` of length at most `max_len`, in shortlex order.
pub fn enumerate(g: &Grammar, max_len: usize) -> Result<BTreeSet<Word>> {
    let cap = maxlen_cap();
    if max_len > cap {
        return Err(Error::CapExceeded { requested: max_len, cap });
    }
    enumerate_uncapped(g, max_len)
}

/// [`enumerate`] without the length cap, for callers that know the language
/// is sparse enough.
pub fn enumerate_uncapped(g: &Grammar, max_len: usize) -> Result<BTreeSet<Word>> {
    let ix = g.indexed()?;
    let table = WordTable::build(&ix, max_len);
    Ok(table.all(ix.start))
}

/// Shortest yield length per nonterminal, `None` when non-productive.
pub(crate) fn min_lengths(ix: &Indexed) -> Vec<Option<usize>> {
    let mut best: Vec<Option<usize>> = vec![None; ix.len()];
    let mut changed = true;
    while changed {
        changed = false;
        for r in &ix.rules {
            let mut total = 0usize;
            let mut ok = true;
            for s in &r.rhs {
                match s {
                    Sym::T(_) => total += 1,
                    Sym::N(n) => match best[*n] {
                        Some(l) => total += l,
                        None => {
                            ok = false;
                            break;
                        }
                    },
                }
            }
            if ok && best[r.lhs].is_none_or(|b| total < b) {
                best[r.lhs] = Some(total);
                changed = true;
            }
        }
    }
    best
}

/// Words of every nonterminal grouped by exact length.
pub(crate) struct WordTable {
    sets: Vec<Vec<HashSet<Word>>>,
}

impl WordTable {
    pub fn build(ix: &Indexed, max_len: usize) -> WordTable {
        let mins = min_lengths(ix);
        let mut sets = vec![vec![HashSet::new(); max_len + 1]; ix.len()];
        let rules: Vec<_> = ix.rules.iter().filter(|r| usable(&r.rhs, &mins)).collect();
        for len in 0..=max_len {
            loop {
                let mut fresh: Vec<(usize, Word)> = Vec::new();
                for r in &rules {
                    let mut suffix_min = vec![0usize; r.rhs.len() + 1];
                    for (i, s) in r.rhs.iter().enumerate().rev() {
                        suffix_min[i] = suffix_min[i + 1] + sym_min(s, &mins);
                    }
                    let mut acc = Vec::new();
                    expand(&sets, &r.rhs, &suffix_min, 0, len, Word::empty(), &mut acc);
                    for w in acc {
                        if !sets[r.lhs][len].contains(&w) {
                            fresh.push((r.lhs, w));
                        }
                    }
                }
                if fresh.is_empty() {
                    break;
                }
                for (a, w) in fresh {
                    sets[a][len].insert(w);
                }
            }
        }
        WordTable { sets }
    }

    pub fn all(&self, a: usize) -> BTreeSet<Word> {
        self.sets[a].iter().flatten().cloned().collect()
    }
}

fn usable(rhs: &[Sym], mins: &[Option<usize>]) -> bool {
    rhs.iter().all(|s| !matches!(s, Sym::N(n) if mins[*n].is_none()))
}

fn sym_min(s: &Sym, mins: &[Option<usize>]) -> usize {
    match s {
        Sym::T(_) => 1,
        Sym::N(n) => mins[*n].unwrap_or(usize::MAX / 4),
    }
}

fn expand(
    sets: &[Vec<HashSet<Word>>],
    rhs: &[Sym],
    suffix_min: &[usize],
    pos: usize,
    remaining: usize,
    prefix: Word,
    out: &mut Vec<Word>,
) {
    if pos == rhs.len() {
        if remaining == 0 {
            out.push(prefix);
        }
        return;
    }
    if remaining < suffix_min[pos] {
        return;
    }
    match rhs[pos] {
        Sym::T(t) => {
            let mut next = prefix;
            next.push(t);
            expand(sets, rhs, suffix_min, pos + 1, remaining - 1, next, out);
        }
        Sym::N(n) => {
            for take in 0..=remaining - suffix_min[pos + 1] {
                for w in &sets[n][take] {
                    let mut next = prefix.clone();
                    next.extend_from(w);
                    expand(sets, rhs, suffix_min, pos + 1, remaining - take, next, out);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(text: &str, max: usize) -> Vec<String> {
        enumerate(&Grammar::parse(text).unwrap(), max).unwrap().iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn anbn_up_to_four() {
        assert_eq!(words("S -> a S b | @eps", 4), ["", "ab", "aabb"]);
    }

    #[test]
    fn dyck_up_to_four() {
        assert_eq!(words("S -> S S | ( S ) | @eps", 4), ["", "()", "(())", "()()"]);
    }

    #[test]
    fn empty_language() {
        assert!(words("S -> a S", 6).is_empty());
    }

    #[test]
    fn unit_and_nullable_cycles_terminate() {
        assert_eq!(words("S -> A | a\nA -> S | S E\nE -> @eps | b", 3), ["a", "ab", "abb"]);
    }

    #[test]
    fn cap_is_enforced() {
        let g = Grammar::parse("S -> a S | @eps").unwrap();
        assert!(matches!(enumerate(&g, DEFAULT_MAXLEN_CAP + 1), Err(Error::CapExceeded { .. })));
        assert_eq!(enumerate_uncapped(&g, 20).unwrap().len(), 21);
    }

    #[test]
    fn min_lengths_of_symbols() {
        let g = Grammar::parse("S -> a S b | A\nA -> a a A | b b b\nB -> B").unwrap();
        let ix = g.indexed().unwrap();
        assert_eq!(min_lengths(&ix), [Some(3), Some(3), None]);
    }
}
