use std::collections::BTreeSet;
use std::fmt;

use super::{alphabet_of, LanguageOracle};
use crate::error::{Error, Result};
use crate::symbol::{Terminal, Word};

pub const BUILTIN_NAMES: [&str; 11] =
    ["anbn", "anbncn", "abcd", "dyck", "palindrome", "linpair", "primesquare", "lh", "l1", "l2", "zeroone"];

/// The infinite exponent set `H` of `L_H` and `L_2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HSet {
    /// `{1, 4, 9, …}`
    Squares,
    /// `{1, 2, 4, 8, …}`
    Powers,
}

impl HSet {
    pub fn contains(self, k: usize) -> bool {
        match self {
            HSet::Squares => k >= 1 && is_square(k),
            HSet::Powers => k.is_power_of_two(),
        }
    }

    fn parse(param: Option<&str>) -> Result<HSet> {
        match param {
            Some("squares" | "perfect-squares") => Ok(HSet::Squares),
            Some("powers" | "powers-of-two") => Ok(HSet::Powers),
            Some(p) => Err(Error::UnknownOracle(format!("unknown H-set `{p}` (squares|powers)"))),
            None => Err(Error::UnknownOracle("missing H-set (squares|powers)".into())),
        }
    }
}

impl fmt::Display for HSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HSet::Squares => "squares",
            HSet::Powers => "powers",
        })
    }
}

pub fn is_square(q: usize) -> bool {
    let r = (q as f64).sqrt() as usize;
    (r.saturating_sub(1)..=r + 1).any(|j| j * j == q)
}

pub fn is_prime(r: usize) -> bool {
    if r < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= r {
        if r.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, Copy, Debug)]
enum Kind {
    AnBn,
    AnBnCn,
    Abcd,
    Dyck,
    Palindrome,
    LinPair,
    PrimeSquare,
    Lh(HSet),
    L1,
    L2(HSet),
    ZeroOne,
}

struct Builtin {
    id: String,
    alphabet: BTreeSet<Terminal>,
    kind: Kind,
}

/// A hand-coded example language. `lh` and `l2` take the H-set as their
/// parameter (`squares` or `powers`); the others take none.
pub fn builtin(name: &str, param: Option<&str>) -> Result<Box<dyn LanguageOracle>> {
    let (kind, chars) = match name {
        "anbn" => (Kind::AnBn, "ab"),
        "anbncn" => (Kind::AnBnCn, "abc"),
        "abcd" => (Kind::Abcd, "abcd"),
        "dyck" => (Kind::Dyck, "()"),
        "palindrome" => (Kind::Palindrome, "ab"),
        "linpair" => (Kind::LinPair, "abc"),
        "primesquare" => (Kind::PrimeSquare, "ab"),
        "lh" => (Kind::Lh(HSet::parse(param)?), "ab"),
        "l1" => (Kind::L1, "ab"),
        "l2" => (Kind::L2(HSet::parse(param)?), "ab"),
        "zeroone" => (Kind::ZeroOne, "01"),
        _ => return Err(Error::UnknownOracle(name.to_string())),
    };
    let takes_param = matches!(kind, Kind::Lh(_) | Kind::L2(_));
    if param.is_some() && !takes_param {
        return Err(Error::UnknownOracle(format!("{name} takes no parameter")));
    }
    let id = match kind {
        Kind::Lh(h) | Kind::L2(h) => format!("{name}:{h}"),
        _ => name.to_string(),
    };
    Ok(Box::new(Builtin { id, alphabet: alphabet_of(chars), kind }))
}

fn word_of(runs: &[(char, usize)]) -> Word {
    Word::parse(&runs.iter().map(|&(c, n)| c.to_string().repeat(n)).collect::<String>())
}

/// Counts of a run list that alternates `a^p b^p`, one entry per pair.
fn ab_pairs(runs: &[(char, usize)]) -> Option<Vec<usize>> {
    if !runs.len().is_multiple_of(2) {
        return None;
    }
    runs.chunks(2)
        .map(|pair| match pair {
            [('a', p), ('b', q)] if p == q => Some(*p),
            _ => None,
        })
        .collect()
}

fn ab_word(counts: &[usize]) -> Word {
    word_of(&counts.iter().flat_map(|&p| [('a', p), ('b', p)]).collect::<Vec<_>>())
}

fn dyck_words(max_len: usize) -> BTreeSet<Word> {
    fn go(prefix: &mut String, open: usize, remaining: usize, out: &mut BTreeSet<Word>) {
        if open == 0 {
            out.insert(Word::parse(prefix));
        }
        if remaining > open {
            prefix.push('(');
            go(prefix, open + 1, remaining - 1, out);
            prefix.pop();
        }
        if open > 0 && remaining > 0 {
            prefix.push(')');
            go(prefix, open - 1, remaining - 1, out);
            prefix.pop();
        }
    }
    let mut out = BTreeSet::new();
    go(&mut String::new(), 0, max_len, &mut out);
    out
}

fn palindromes(max_len: usize) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    for len in 0..=max_len {
        let half = len / 2;
        for bits in 0u64..1 << half {
            let left: String = (0..half).map(|i| if bits >> i & 1 == 1 { 'b' } else { 'a' }).collect();
            let right: String = left.chars().rev().collect();
            let mids: &[&str] = if len % 2 == 1 { &["a", "b"] } else { &[""] };
            for mid in mids {
                out.insert(Word::parse(&format!("{left}{mid}{right}")));
            }
        }
    }
    out
}

impl Builtin {
    fn accepts(&self, w: &Word) -> bool {
        let Some(runs) = w.runs() else { return false };
        let chars: String = runs.iter().map(|r| r.0).collect();
        let n = |i: usize| runs[i].1;
        match self.kind {
            Kind::AnBn => runs.is_empty() || ab_pairs(&runs).is_some_and(|p| p.len() == 1),
            Kind::AnBnCn => runs.is_empty() || (chars == "abc" && n(0) == n(1) && n(1) == n(2)),
            Kind::Abcd => match chars.as_str() {
                "" => true,
                "ab" | "cd" => n(0) == n(1),
                "abcd" => n(0) == n(1) && n(2) == n(3),
                _ => false,
            },
            Kind::Dyck => {
                let mut depth = 0usize;
                for t in w.symbols() {
                    if t.is_char('(') {
                        depth += 1;
                    } else if depth == 0 {
                        return false;
                    } else {
                        depth -= 1;
                    }
                }
                depth == 0
            }
            Kind::Palindrome => *w == w.reversed(),
            Kind::LinPair => match chars.as_str() {
                "" | "c" => runs.len() != 1 || n(0) == 1,
                "ab" => n(0) == n(1),
                "acb" => n(1) == 1 && n(2) == 2 * n(0),
                _ => false,
            },
            Kind::PrimeSquare => {
                chars == "abab" && n(0) >= 2 && n(1) == 1 && n(2) >= 2 && is_square(n(2)) && n(3) >= 2
            }
            Kind::Lh(h) => match ab_pairs(&runs).as_deref() {
                Some([_]) => true,
                Some([k, l]) => h.contains(*k) || h.contains(*l),
                _ => false,
            },
            Kind::L1 => ab_pairs(&runs).is_some_and(|p| p.len() <= 3),
            Kind::L2(h) => match ab_pairs(&runs).as_deref() {
                Some([_, _]) => true,
                Some(p @ [_, _, _]) => p.iter().any(|&e| h.contains(e)),
                _ => false,
            },
            Kind::ZeroOne => {
                chars == "010101010"
                    && (0..4).all(|i| n(i) == n(8 - i))
                    && is_prime(n(2))
            }
        }
    }

    fn generate(&self, max_len: usize) -> BTreeSet<Word> {
        let mut out = BTreeSet::new();
        match self.kind {
            Kind::AnBn => (0..=max_len / 2).for_each(|i| {
                out.insert(ab_word(&[i]));
            }),
            Kind::AnBnCn => (0..=max_len / 3).for_each(|i| {
                out.insert(word_of(&[('a', i), ('b', i), ('c', i)]));
            }),
            Kind::Abcd => {
                for i in 0..=max_len / 2 {
                    for j in 0..=(max_len / 2 - i) {
                        out.insert(word_of(&[('a', i), ('b', i), ('c', j), ('d', j)]));
                    }
                }
            }
            Kind::Dyck => out = dyck_words(max_len),
            Kind::Palindrome => out = palindromes(max_len),
            Kind::LinPair => {
                for m in 0..=max_len / 2 {
                    out.insert(ab_word(&[m]));
                    if 3 * m < max_len {
                        out.insert(word_of(&[('a', m), ('c', 1), ('b', 2 * m)]));
                    }
                }
            }
            Kind::PrimeSquare => {
                for j in 2.. {
                    let q = j * j;
                    if q + 5 > max_len {
                        break;
                    }
                    for r in 2..=max_len - q - 3 {
                        for m in 2..=max_len - q - 1 - r {
                            out.insert(word_of(&[('a', r), ('b', 1), ('a', q), ('b', m)]));
                        }
                    }
                }
            }
            Kind::Lh(h) => {
                let half = max_len / 2;
                for m in 1..=half {
                    out.insert(ab_word(&[m]));
                    for l in 1..=half - m {
                        if h.contains(m) || h.contains(l) {
                            out.insert(ab_word(&[m, l]));
                        }
                    }
                }
            }
            Kind::L1 => {
                let half = max_len / 2;
                for l in 0..=half {
                    for m in 0..=half - l {
                        for n in 0..=half - l - m {
                            out.insert(ab_word(&[l, m, n].into_iter().filter(|&e| e > 0).collect::<Vec<_>>()));
                        }
                    }
                }
            }
            Kind::L2(h) => {
                let half = max_len / 2;
                for l in 1..=half {
                    for m in 1..=half - l {
                        out.insert(ab_word(&[l, m]));
                        for n in 1..=half - l - m {
                            if h.contains(l) || h.contains(m) || h.contains(n) {
                                out.insert(ab_word(&[l, m, n]));
                            }
                        }
                    }
                }
            }
            Kind::ZeroOne => {
                // 2(j + m + r + i) + l ≤ max_len
                let budget = max_len.saturating_sub(1) / 2;
                for r in (2..=budget).filter(|&r| is_prime(r)) {
                    for j in 1..=budget.saturating_sub(r + 2) {
                        for m in 1..=budget.saturating_sub(r + j + 1) {
                            for i in 1..=budget - r - j - m {
                                for l in 1..=max_len - 2 * (r + j + m + i) {
                                    out.insert(word_of(&[
                                        ('0', j),
                                        ('1', m),
                                        ('0', r),
                                        ('1', i),
                                        ('0', l),
                                        ('1', i),
                                        ('0', r),
                                        ('1', m),
                                        ('0', j),
                                    ]));
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

impl LanguageOracle for Builtin {
    fn id(&self) -> &str {
        &self.id
    }

    fn alphabet(&self) -> &BTreeSet<Terminal> {
        &self.alphabet
    }

    fn contains(&self, w: &Word) -> bool {
        self.accepts(w)
    }

    fn enumerate(&self, max_len: usize) -> Result<BTreeSet<Word>> {
        Ok(self.generate(max_len))
    }
}
