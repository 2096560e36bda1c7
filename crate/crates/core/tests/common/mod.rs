#![allow(dead_code)]

use std::collections::BTreeSet;

use pumplab::{Grammar, Terminal, Word};

/// The grammars shipped in `grammars/`, by file stem.
pub const BUNDLED: &[(&str, &str)] = &[
    ("anbn", include_str!("../../grammars/anbn.cfg")),
    ("dyck", include_str!("../../grammars/dyck.cfg")),
    ("even", include_str!("../../grammars/even.cfg")),
    ("linear", include_str!("../../grammars/linear.cfg")),
    ("palindrome", include_str!("../../grammars/palindrome.cfg")),
    ("rate-1-2", include_str!("../../grammars/rate-1-2.cfg")),
    ("rate-2-1", include_str!("../../grammars/rate-2-1.cfg")),
    ("regular", include_str!("../../grammars/regular.cfg")),
    ("three-linear", include_str!("../../grammars/three-linear.cfg")),
    ("two-linear", include_str!("../../grammars/two-linear.cfg")),
];

pub fn bundled(name: &str) -> Grammar {
    let (_, text) = BUNDLED.iter().find(|(n, _)| *n == name).expect("bundled grammar");
    Grammar::parse(text).expect("bundled grammars parse")
}

pub fn grammar_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("grammars").join(format!("{name}.cfg"))
}

/// Calls `f` on every word over `alphabet` of length at most `max_len`,
/// shortest first.
pub fn all_words(alphabet: &[Terminal], max_len: usize, mut f: impl FnMut(&Word)) {
    for len in 0..=max_len {
        let mut digits = vec![0usize; len];
        loop {
            f(&Word::from_terminals(digits.iter().map(|&d| alphabet[d]).collect()));
            let Some(i) = digits.iter().rposition(|&d| d + 1 < alphabet.len()) else { break };
            digits[i] += 1;
            digits[i + 1..].iter_mut().for_each(|d| *d = 0);
        }
        if alphabet.is_empty() {
            break;
        }
    }
}

pub fn words(list: &[&str]) -> BTreeSet<Word> {
    list.iter().map(|w| Word::parse(w)).collect()
}
