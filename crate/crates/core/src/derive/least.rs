//! Canonical words: the shortlex-least word of a nonterminal, overall or of
//! a fixed length. With part lengths fixed, the lexicographically least
//! concatenation is the concatenation of the least parts, which makes both
//! tables simple fixpoints.

use crate::error::{Error, Result};
use crate::grammar::{Grammar, Indexed, Sym, Symbol};
use crate::symbol::Word;

/// Shortlex-least word of each nonterminal, `None` when non-productive.
pub(crate) fn shortest_words(ix: &Indexed) -> Vec<Option<Word>> {
    let mut best: Vec<Option<Word>> = vec![None; ix.len()];
    let mut changed = true;
    while changed {
        changed = false;
        for r in &ix.rules {
            let mut cand = Word::empty();
            let mut ok = true;
            for s in &r.rhs {
                match s {
                    Sym::T(t) => cand.push(*t),
                    Sym::N(n) => match &best[*n] {
                        Some(w) => cand.extend_from(w),
                        None => {
                            ok = false;
                            break;
                        }
                    },
                }
            }
            if ok && best[r.lhs].as_ref().is_none_or(|b| cand < *b) {
                best[r.lhs] = Some(cand);
                changed = true;
            }
        }
    }
    best
}

/// The shortlex-least word of `L(g)`, `None` for the empty language.
pub fn shortest_word(g: &Grammar) -> Result<Option<Word>> {
    let ix = g.indexed()?;
    Ok(shortest_words(&ix).swap_remove(ix.start))
}

/// Shortlex-least terminal word derivable from a sentential form.
pub fn shortest_yield(g: &Grammar, form: &[Symbol]) -> Result<Option<Word>> {
    let ix = g.indexed()?;
    let best = shortest_words(&ix);
    let mut out = Word::empty();
    for s in form {
        match s {
            Symbol::Terminal(t) => out.push(crate::symbol::Terminal::new(t)),
            Symbol::Nonterminal(n) => {
                let i = ix
                    .names
                    .iter()
                    .position(|m| m == n)
                    .ok_or_else(|| Error::InvalidGrammar(format!("unknown nonterminal {n}")))?;
                match &best[i] {
                    Some(w) => out.extend_from(w),
                    None => return Ok(None),
                }
            }
        }
    }
    Ok(Some(out))
}

/// Least word per nonterminal and exact length, for lengths `0..=max_len`.
pub(crate) struct LeastTable {
    best: Vec<Vec<Option<Word>>>,
}

impl LeastTable {
    pub fn build(ix: &Indexed, max_len: usize) -> LeastTable {
        let mut best: Vec<Vec<Option<Word>>> = vec![vec![None; max_len + 1]; ix.len()];
        for len in 0..=max_len {
            loop {
                let mut changed = false;
                for r in &ix.rules {
                    if let Some(cand) = least_for_rule(&best, &r.rhs, len) {
                        let slot = &mut best[r.lhs][len];
                        if slot.as_ref().is_none_or(|b| cand < *b) {
                            *slot = Some(cand);
                            changed = true;
                        }
                    }
                }
                if !changed {
                    break;
                }
            }
        }
        LeastTable { best }
    }

    pub fn get(&self, a: usize, len: usize) -> Option<&Word> {
        self.best.get(a)?.get(len)?.as_ref()
    }
}

fn least_for_rule(best: &[Vec<Option<Word>>], rhs: &[Sym], len: usize) -> Option<Word> {
    fn go(best: &[Vec<Option<Word>>], rhs: &[Sym], remaining: usize, prefix: Word, out: &mut Option<Word>) {
        let Some((first, rest)) = rhs.split_first() else {
            if remaining == 0 && out.as_ref().is_none_or(|b| prefix < *b) {
                *out = Some(prefix);
            }
            return;
        };
        let rest_terminals = rest.iter().filter(|s| matches!(s, Sym::T(_))).count();
        match first {
            Sym::T(t) => {
                if remaining > rest_terminals {
                    let mut next = prefix;
                    next.push(*t);
                    go(best, rest, remaining - 1, next, out);
                }
            }
            Sym::N(n) => {
                for take in 0..=remaining.saturating_sub(rest_terminals) {
                    if let Some(w) = &best[*n][take] {
                        let mut next = prefix.clone();
                        next.extend_from(w);
                        // Parts of fixed length compare left to right, so a
                        // prefix already above the best cannot recover.
                        if let Some(b) = out.as_ref() {
                            if next.symbols() > &b.symbols()[..next.len()] {
                                continue;
                            }
                        }
                        go(best, rest, remaining - take, next, out);
                    }
                }
            }
        }
    }
    let mut out = None;
    go(best, rhs, len, Word::empty(), &mut out);
    out
}

/// The lexicographically least word of exactly `len` letters derivable from
/// nonterminal `a`.
pub fn least_word_of_length(g: &Grammar, a: &str, len: usize) -> Result<Option<Word>> {
    let ix = g.indexed()?;
    let i = ix.names.iter().position(|m| m == a).ok_or_else(|| Error::InvalidGrammar(format!("unknown nonterminal {a}")))?;
    Ok(LeastTable::build(&ix, len).get(i, len).cloned())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shortest_is_shortlex_least() {
        let g = Grammar::parse("S -> b b | a S | c a").unwrap();
        assert_eq!(shortest_word(&g).unwrap().unwrap().to_string(), "bb");
    }

    #[test]
    fn least_of_each_length() {
        let g = Grammar::parse("S -> S S | ( S ) | @eps").unwrap();
        assert_eq!(least_word_of_length(&g, "S", 6).unwrap().unwrap().to_string(), "((()))");
        assert_eq!(least_word_of_length(&g, "S", 5).unwrap(), None);
        let g = Grammar::parse("S -> b S | a S | @eps").unwrap();
        assert_eq!(least_word_of_length(&g, "S", 3).unwrap().unwrap().to_string(), "aaa");
    }

    #[test]
    fn least_matches_enumeration() {
        let g = Grammar::parse("S -> a S b | b S a | S S | @eps").unwrap();
        let all = crate::derive::enumerate(&g, 8).unwrap();
        for len in 0..=8 {
            let expected = all.iter().find(|w| w.len() == len).cloned();
            assert_eq!(least_word_of_length(&g, "S", len).unwrap(), expected, "length {len}");
        }
    }

    #[test]
    fn shortest_yield_of_form() {
        let g = Grammar::parse("S -> A c B\nA -> a A | a\nB -> b").unwrap();
        let form = [Symbol::n("A"), Symbol::t("c"), Symbol::n("B"), Symbol::n("A")];
        assert_eq!(shortest_yield(&g, &form).unwrap().unwrap().to_string(), "acba");
    }
}
