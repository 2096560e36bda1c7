//! Membership oracles: the hand-coded example languages, regular patterns
//! and grammar-backed languages behind one trait.

mod builtin;
mod grammar;
mod pattern;

use std::collections::BTreeSet;
use std::path::Path;

use crate::error::{Error, Result};
use crate::grammar::Grammar;
use crate::symbol::{Terminal, Word};

pub use builtin::{builtin, is_prime, is_square, HSet, BUILTIN_NAMES};
pub use grammar::{from_grammar, GrammarOracle};
pub use pattern::{from_pattern, PatternOracle};

/// A pure membership predicate standing in for a language.
pub trait LanguageOracle: Send + Sync {
    fn id(&self) -> &str;

    /// The declared alphabet; words using anything else are rejected.
    fn alphabet(&self) -> &BTreeSet<Terminal>;

    /// Membership of a word over the declared alphabet.
    fn contains(&self, w: &Word) -> bool;

    /// Every member of length at most `max_len`.
    fn enumerate(&self, max_len: usize) -> Result<BTreeSet<Word>>;

    /// Total membership: foreign symbols give `false`.
    fn member(&self, w: &Word) -> bool {
        let alphabet = self.alphabet();
        w.symbols().iter().all(|t| alphabet.contains(t)) && self.contains(w)
    }
}

pub(crate) fn alphabet_of(chars: &str) -> BTreeSet<Terminal> {
    Word::parse(chars).symbols().iter().copied().collect()
}

/// Resolves a command-line oracle spec: a builtin name with an optional
/// `:param`, `pattern:<pat>` or `grammar:<path>`.
pub fn oracle_from_spec(spec: &str) -> Result<Box<dyn LanguageOracle>> {
    let (name, param) = match spec.split_once(':') {
        Some((n, p)) => (n.trim(), Some(p)),
        None => (spec.trim(), None),
    };
    match (name, param) {
        ("pattern", Some(p)) => Ok(Box::new(from_pattern(p)?)),
        ("grammar", Some(path)) => {
            let text = std::fs::read_to_string(Path::new(path.trim()))?;
            Ok(Box::new(from_grammar(&Grammar::parse(&text)?)?))
        }
        ("pattern" | "grammar", None) => Err(Error::UnknownOracle(format!("{name} needs a parameter"))),
        _ => builtin(name, param.map(str::trim)),
    }
}

/// Calls `f` on every word over `alphabet` of length at most `max_len`.
#[cfg(test)]
pub(crate) fn for_each_word(alphabet: &BTreeSet<Terminal>, max_len: usize, mut f: impl FnMut(&Word)) {
    let letters: Vec<Terminal> = alphabet.iter().copied().collect();
    let mut digits: Vec<usize> = Vec::new();
    loop {
        f(&digits.iter().map(|&d| letters[d]).collect());
        let mut i = 0;
        while i < digits.len() && digits[i] + 1 == letters.len() {
            digits[i] = 0;
            i += 1;
        }
        if i == digits.len() {
            if digits.len() == max_len || letters.is_empty() {
                return;
            }
            digits.push(0);
        } else {
            digits[i] += 1;
        }
    }
}
