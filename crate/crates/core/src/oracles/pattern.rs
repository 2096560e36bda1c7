//! Restricted regular patterns: literals, grouping, `|`, `*`, `+` and `?`,
//! compiled to a Thompson NFA.

use std::collections::BTreeSet;

use super::LanguageOracle;
use crate::error::{Error, Result};
use crate::symbol::{Terminal, Word};

#[derive(Clone, Debug)]
enum Node {
    Lit(char),
    Cat(Vec<Node>),
    Alt(Vec<Node>),
    Star(Box<Node>),
    Plus(Box<Node>),
    Opt(Box<Node>),
}

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
}

impl Parser<'_> {
    fn alt(&mut self) -> Result<Node> {
        let mut branches = vec![self.cat()?];
        while self.chars.peek() == Some(&'|') {
            self.chars.next();
            branches.push(self.cat()?);
        }
        Ok(if branches.len() == 1 { branches.pop().unwrap() } else { Node::Alt(branches) })
    }

    fn cat(&mut self) -> Result<Node> {
        let mut items = Vec::new();
        while let Some(&c) = self.chars.peek() {
            if c == '|' || c == ')' {
                break;
            }
            let mut atom = self.atom()?;
            while let Some(&op) = self.chars.peek() {
                atom = match op {
                    '*' => Node::Star(Box::new(atom)),
                    '+' => Node::Plus(Box::new(atom)),
                    '?' => Node::Opt(Box::new(atom)),
                    _ => break,
                };
                self.chars.next();
            }
            items.push(atom);
        }
        Ok(Node::Cat(items))
    }

    fn atom(&mut self) -> Result<Node> {
        match self.chars.next() {
            Some('(') => {
                let inner = self.alt()?;
                match self.chars.next() {
                    Some(')') => Ok(inner),
                    _ => Err(Error::Pattern("unclosed `(`".into())),
                }
            }
            Some('\\') => self.chars.next().map(Node::Lit).ok_or_else(|| Error::Pattern("dangling `\\`".into())),
            Some(c @ ('*' | '+' | '?')) => Err(Error::Pattern(format!("`{c}` has nothing to repeat"))),
            Some(c) => Ok(Node::Lit(c)),
            None => Err(Error::Pattern("unexpected end".into())),
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum State {
    Lit(Terminal, usize),
    Split(usize, usize),
    Jump(usize),
    Accept,
}

/// NFA under construction; `compile` returns the entry state and leaves the
/// exit pointing at `next`.
struct Builder {
    states: Vec<State>,
}

impl Builder {
    fn push(&mut self, s: State) -> usize {
        self.states.push(s);
        self.states.len() - 1
    }

    fn compile(&mut self, node: &Node, next: usize) -> usize {
        match node {
            Node::Lit(c) => {
                let t = Word::parse(&c.to_string()).symbols()[0];
                self.push(State::Lit(t, next))
            }
            Node::Cat(items) => items.iter().rev().fold(next, |acc, item| self.compile(item, acc)),
            Node::Alt(branches) => {
                let entries: Vec<usize> = branches.iter().map(|b| self.compile(b, next)).collect();
                entries.into_iter().reduce(|a, b| self.push(State::Split(a, b))).expect("at least one branch")
            }
            Node::Star(inner) => {
                let split = self.push(State::Jump(usize::MAX));
                let body = self.compile(inner, split);
                self.states[split] = State::Split(body, next);
                split
            }
            Node::Plus(inner) => {
                let split = self.push(State::Jump(usize::MAX));
                let body = self.compile(inner, split);
                self.states[split] = State::Split(body, next);
                body
            }
            Node::Opt(inner) => {
                let body = self.compile(inner, next);
                self.push(State::Split(body, next))
            }
        }
    }
}

/// Oracle for a restricted regular pattern.
pub struct PatternOracle {
    id: String,
    alphabet: BTreeSet<Terminal>,
    states: Vec<State>,
    start: usize,
}

/// Compiles a pattern over single-character literals. Whitespace is
/// ignored; `\` escapes the next character.
pub fn from_pattern(pat: &str) -> Result<PatternOracle> {
    let cleaned: String = pat.chars().filter(|c| !c.is_whitespace()).collect();
    let mut parser = Parser { chars: cleaned.chars().peekable() };
    let node = parser.alt()?;
    if parser.chars.next().is_some() {
        return Err(Error::Pattern("unmatched `)`".into()));
    }
    let mut b = Builder { states: vec![State::Accept] };
    let start = b.compile(&node, 0);
    let alphabet = b
        .states
        .iter()
        .filter_map(|s| match s {
            State::Lit(t, _) => Some(*t),
            _ => None,
        })
        .collect();
    Ok(PatternOracle { id: format!("pattern:{pat}"), alphabet, states: b.states, start })
}

impl PatternOracle {
    fn closure(&self, seeds: impl IntoIterator<Item = usize>) -> Vec<bool> {
        let mut on = vec![false; self.states.len()];
        let mut stack: Vec<usize> = seeds.into_iter().collect();
        while let Some(s) = stack.pop() {
            if std::mem::replace(&mut on[s], true) {
                continue;
            }
            match self.states[s] {
                State::Split(a, b) => stack.extend([a, b]),
                State::Jump(a) => stack.push(a),
                State::Lit(..) | State::Accept => {}
            }
        }
        on
    }

    fn step(&self, on: &[bool], t: Terminal) -> Vec<bool> {
        let next = on.iter().enumerate().filter(|&(_, &b)| b).filter_map(|(s, _)| match self.states[s] {
            State::Lit(c, n) if c == t => Some(n),
            _ => None,
        });
        self.closure(next.collect::<Vec<_>>())
    }

    fn accepting(on: &[bool]) -> bool {
        on[0]
    }
}

impl LanguageOracle for PatternOracle {
    fn id(&self) -> &str {
        &self.id
    }

    fn alphabet(&self) -> &BTreeSet<Terminal> {
        &self.alphabet
    }

    fn contains(&self, w: &Word) -> bool {
        let mut on = self.closure([self.start]);
        for &t in w.symbols() {
            on = self.step(&on, t);
            if !on.iter().any(|&b| b) {
                return false;
            }
        }
        Self::accepting(&on)
    }

    fn enumerate(&self, max_len: usize) -> Result<BTreeSet<Word>> {
        let mut out = BTreeSet::new();
        let mut layer = vec![(Word::empty(), self.closure([self.start]))];
        for len in 0..=max_len {
            let mut next = Vec::new();
            for (w, on) in layer {
                if Self::accepting(&on) {
                    out.insert(w.clone());
                }
                if len == max_len {
                    continue;
                }
                for &t in &self.alphabet {
                    let stepped = self.step(&on, t);
                    if stepped.iter().any(|&b| b) {
                        let mut w = w.clone();
                        w.push(t);
                        next.push((w, stepped));
                    }
                }
            }
            layer = next;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_star_pattern() {
        let o = from_pattern("(ab)*aa(bbb)*a").unwrap();
        assert!(o.member(&Word::parse("ababaabbba")));
        assert!(!o.member(&Word::parse("ab")));
        let words: Vec<String> = o.enumerate(3).unwrap().iter().map(|w| w.to_string()).collect();
        assert_eq!(words, ["aaa"]);
        assert_eq!(o.enumerate(6).unwrap().len(), 3);
    }

    #[test]
    fn operators() {
        let o = from_pattern("a(b|c)+d?").unwrap();
        for w in ["ab", "acbd", "accc"] {
            assert!(o.member(&Word::parse(w)), "{w}");
        }
        for w in ["a", "ad", "abdd"] {
            assert!(!o.member(&Word::parse(w)), "{w}");
        }
        let empty = from_pattern("").unwrap();
        assert!(empty.member(&Word::empty()));
    }

    #[test]
    fn nested_stars_terminate() {
        let o = from_pattern("(a*)*b").unwrap();
        assert!(o.member(&Word::parse("aaab")));
        assert!(o.member(&Word::parse("b")));
    }

    #[test]
    fn malformed() {
        for pat in ["(ab", "ab)", "*a", "a\\"] {
            assert!(matches!(from_pattern(pat), Err(Error::Pattern(_))), "{pat}");
        }
    }
}
