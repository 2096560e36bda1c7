//! Interned terminal symbols and terminal words.
//!
//! Terminals are interned process-wide so that a [`Word`] is a plain vector
//! of pointer-sized handles: cheap to clone, hash and pump. Ordering always
//! goes through the symbol text, never through interning order, so sorted
//! output is stable across runs and threads.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

fn interner() -> &'static Mutex<HashSet<&'static str>> {
    static INTERNER: OnceLock<Mutex<HashSet<&'static str>>> = OnceLock::new();
    INTERNER.get_or_init(Default::default)
}

/// A terminal symbol. Two terminals are equal iff their names are equal.
#[derive(Clone, Copy)]
pub struct Terminal(&'static str);

impl Terminal {
    pub fn new(name: &str) -> Terminal {
        let mut set = interner().lock().expect("terminal interner poisoned");
        if let Some(&s) = set.get(name) {
            return Terminal(s);
        }
        let leaked: &'static str = Box::leak(name.to_owned().into_boxed_str());
        set.insert(leaked);
        Terminal(leaked)
    }

    pub fn as_str(&self) -> &'static str {
        self.0
    }

    /// True when the terminal is the single character `c`.
    pub fn is_char(&self, c: char) -> bool {
        let mut chars = self.0.chars();
        chars.next() == Some(c) && chars.next().is_none()
    }
}

impl PartialEq for Terminal {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.0, other.0)
    }
}

impl Eq for Terminal {}

impl Hash for Terminal {
    fn hash<H: Hasher>(&self, state: &mut H) {
        (self.0.as_ptr() as usize).hash(state)
    }
}

impl PartialOrd for Terminal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Terminal {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            Ordering::Equal
        } else {
            self.0.cmp(other.0)
        }
    }
}

impl fmt::Debug for Terminal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Terminal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

/// A word over terminals; the empty word is λ.
///
/// Words are ordered shortlex: by length first, then lexicographically by
/// terminal name.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Terminal>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn from_terminals(ts: Vec<Terminal>) -> Word {
        Word(ts)
    }

    /// Parses the command-line form: comma-separated tokens when the text
    /// contains a comma, otherwise one terminal per character.
    pub fn parse(text: &str) -> Word {
        if text.contains(',') {
            Word(
                text.split(',')
                    .map(str::trim)
                    .filter(|t| !t.is_empty())
                    .map(Terminal::new)
                    .collect(),
            )
        } else {
            Word(text.chars().filter(|c| !c.is_whitespace()).map(char_terminal).collect())
        }
    }

    /// `repeat` copies of a single terminal.
    pub fn power(t: Terminal, repeat: usize) -> Word {
        Word(vec![t; repeat])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Terminal] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<Terminal> {
        self.0
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn push(&mut self, t: Terminal) {
        self.0.push(t);
    }

    pub fn extend_from(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn concat<'a>(parts: impl IntoIterator<Item = &'a Word>) -> Word {
        let mut out = Vec::new();
        for p in parts {
            out.extend_from_slice(&p.0);
        }
        Word(out)
    }

    pub fn repeat(&self, times: usize) -> Word {
        Word(self.0.repeat(times))
    }

    /// Number of occurrences of the single-character terminal `c`.
    pub fn count_char(&self, c: char) -> usize {
        self.0.iter().filter(|t| t.is_char(c)).count()
    }

    /// Run-length encoding over single-character terminals; `None` when some
    /// terminal is not a single character.
    pub fn runs(&self) -> Option<Vec<(char, usize)>> {
        let mut out: Vec<(char, usize)> = Vec::new();
        for t in &self.0 {
            let mut cs = t.as_str().chars();
            let c = cs.next()?;
            if cs.next().is_some() {
                return None;
            }
            match out.last_mut() {
                Some((last, n)) if *last == c => *n += 1,
                _ => out.push((c, 1)),
            }
        }
        Some(out)
    }

    fn single_chars(&self) -> bool {
        self.0.iter().all(|t| t.as_str().chars().count() == 1)
    }
}

fn char_terminal(c: char) -> Terminal {
    let mut buf = [0u8; 4];
    Terminal::new(c.encode_utf8(&mut buf))
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.single_chars() {
            for t in &self.0 {
                f.write_str(t.as_str())?;
            }
            Ok(())
        } else {
            let parts: Vec<&str> = self.0.iter().map(|t| t.as_str()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("λ")
        } else {
            write!(f, "{self}")
        }
    }
}

impl FromStr for Word {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(Word::parse(s))
    }
}

impl From<&str> for Word {
    fn from(s: &str) -> Self {
        Word::parse(s)
    }
}

impl FromIterator<Terminal> for Word {
    fn from_iter<I: IntoIterator<Item = Terminal>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        Ok(Word::parse(&text))
    }
}
