use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grammar::{Grammar, Indexed, Sym};
use crate::symbol::{Terminal, Word};

/// One step `A → v B w` of a linear derivation: `nonterminal` is the
/// rewritten `A`, `prefix`/`suffix` are the emitted `v` and `w`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub rule: usize,
    pub nonterminal: String,
    pub prefix: Word,
    pub suffix: Word,
}

/// A linear derivation `S = A_0 ⇒ v_1 A_1 w_1 ⇒ … ⇒ v_1…v_m u w_m…w_1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LinearTrace {
    pub steps: Vec<TraceStep>,
    pub tail_rule: usize,
    pub tail_nonterminal: String,
    pub tail: Word,
}

impl LinearTrace {
    /// Prefixes, then the tail, then the suffixes in reverse order.
    pub fn word(&self) -> Word {
        let mut out = Word::empty();
        for s in &self.steps {
            out.extend_from(&s.prefix);
        }
        out.extend_from(&self.tail);
        for s in self.steps.iter().rev() {
            out.extend_from(&s.suffix);
        }
        out
    }

    /// The nonterminals `A_0, …, A_m` of the sentential forms.
    pub fn forms(&self) -> Vec<&str> {
        self.steps
            .iter()
            .map(|s| s.nonterminal.as_str())
            .chain(std::iter::once(self.tail_nonterminal.as_str()))
            .collect()
    }
}

struct LinRule {
    lhs: usize,
    left: Vec<Terminal>,
    nt: Option<usize>,
    right: Vec<Terminal>,
}

impl LinRule {
    fn is_unit(&self) -> bool {
        self.nt.is_some() && self.left.is_empty() && self.right.is_empty()
    }
}

/// Span-based parser for linear grammars, reusable across words.
pub struct LinearParser {
    names: Vec<String>,
    start: usize,
    rules: Vec<LinRule>,
}

const NONE: u32 = u32::MAX;

impl LinearParser {
    /// Fails when some rule has two nonterminals.
    pub fn new(g: &Grammar) -> Result<LinearParser> {
        let ix = g.indexed()?;
        LinearParser::from_indexed(&ix)
    }

    pub(crate) fn from_indexed(ix: &Indexed) -> Result<LinearParser> {
        let mut rules = Vec::with_capacity(ix.rules.len());
        for (i, r) in ix.rules.iter().enumerate() {
            let mut rule = LinRule { lhs: r.lhs, left: Vec::new(), nt: None, right: Vec::new() };
            for s in &r.rhs {
                match (s, rule.nt) {
                    (Sym::N(_), Some(_)) => return Err(Error::NotLinear(i)),
                    (Sym::N(n), None) => rule.nt = Some(*n),
                    (Sym::T(t), None) => rule.left.push(*t),
                    (Sym::T(t), Some(_)) => rule.right.push(*t),
                }
            }
            rules.push(rule);
        }
        Ok(LinearParser { names: ix.names.clone(), start: ix.start, rules })
    }

    /// Rank table over spans: `rank[(i, j, A)]` is the number of unit steps
    /// before the first emitting rule on the cheapest derivation `A ⇒* p[i..j]`,
    /// or `NONE`.
    fn ranks(&self, p: &[Terminal]) -> Vec<u32> {
        let n = p.len();
        let nn = self.names.len();
        let idx = |i: usize, j: usize, a: usize| (i * (n + 1) + j) * nn + a;
        let mut rank = vec![NONE; (n + 1) * (n + 1) * nn];
        for len in 0..=n {
            for i in 0..=n - len {
                let j = i + len;
                for r in &self.rules {
                    if r.is_unit() || rank[idx(i, j, r.lhs)] == 0 {
                        continue;
                    }
                    let (l, rt) = (r.left.len(), r.right.len());
                    let fits = match r.nt {
                        None => p[i..j] == r.left[..],
                        Some(b) => {
                            l + rt <= len
                                && p[i..i + l] == r.left[..]
                                && p[j - rt..j] == r.right[..]
                                && rank[idx(i + l, j - rt, b)] != NONE
                        }
                    };
                    if fits {
                        rank[idx(i, j, r.lhs)] = 0;
                    }
                }
                loop {
                    let mut changed = false;
                    for r in self.rules.iter().filter(|r| r.is_unit()) {
                        let b = rank[idx(i, j, r.nt.unwrap())];
                        if b != NONE && b + 1 < rank[idx(i, j, r.lhs)] {
                            rank[idx(i, j, r.lhs)] = b + 1;
                            changed = true;
                        }
                    }
                    if !changed {
                        break;
                    }
                }
            }
        }
        rank
    }

    /// Whether `p` is in the language, without building a trace.
    pub fn accepts(&self, p: &Word) -> bool {
        let n = p.len();
        let rank = self.ranks(p.symbols());
        rank[n * self.names.len() + self.start] != NONE
    }

    /// Same result as [`parse_linear`].
    pub fn parse(&self, p: &Word) -> Option<LinearTrace> {
        let syms = p.symbols();
        let n = syms.len();
        let nn = self.names.len();
        let rank = self.ranks(syms);
        let idx = |i: usize, j: usize, a: usize| (i * (n + 1) + j) * nn + a;
        if rank[idx(0, n, self.start)] == NONE {
            return None;
        }
        let (mut a, mut i, mut j) = (self.start, 0, n);
        let mut steps = Vec::new();
        loop {
            let here = rank[idx(i, j, a)];
            let choice = self.rules.iter().enumerate().filter(|(_, r)| r.lhs == a).find(|(_, r)| {
                let (l, rt) = (r.left.len(), r.right.len());
                match r.nt {
                    None => syms[i..j] == r.left[..],
                    Some(b) if r.is_unit() => rank[idx(i, j, b)] < here,
                    Some(b) => {
                        l + rt <= j - i
                            && syms[i..i + l] == r.left[..]
                            && syms[j - rt..j] == r.right[..]
                            && rank[idx(i + l, j - rt, b)] != NONE
                    }
                }
            });
            let (ri, r) = choice.expect("rank table promised a derivation");
            match r.nt {
                None => {
                    return Some(LinearTrace {
                        steps,
                        tail_rule: ri,
                        tail_nonterminal: self.names[a].clone(),
                        tail: Word::from_terminals(r.left.clone()),
                    })
                }
                Some(b) => {
                    steps.push(TraceStep {
                        rule: ri,
                        nonterminal: self.names[a].clone(),
                        prefix: Word::from_terminals(r.left.clone()),
                        suffix: Word::from_terminals(r.right.clone()),
                    });
                    i += r.left.len();
                    j -= r.right.len();
                    a = b;
                }
            }
        }
    }
}

/// A linear derivation of `p`, or `None` when `p ∉ L(g)`. Among the
/// derivations, each step takes the first rule (declaration order) that still
/// leads to `p`, never re-entering a nonterminal on the same span.
pub fn parse_linear(g: &Grammar, p: &Word) -> Result<Option<LinearTrace>> {
    Ok(LinearParser::new(g)?.parse(p))
}
