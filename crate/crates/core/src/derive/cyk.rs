use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grammar::{Grammar, Sym};
use crate::normal_forms::cnf_violation;
use crate::symbol::{Terminal, Word};

/// A derivation tree. Leaves are terminals (`rule` is `None`); an internal
/// node records the index of the rule applied at it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationTree {
    pub node: String,
    pub rule: Option<usize>,
    pub children: Vec<DerivationTree>,
}

impl DerivationTree {
    pub fn leaf(t: Terminal) -> DerivationTree {
        DerivationTree { node: t.as_str().to_string(), rule: None, children: Vec::new() }
    }

    pub fn is_leaf(&self) -> bool {
        self.rule.is_none()
    }

    /// The leaves read left to right.
    pub fn yield_word(&self) -> Word {
        let mut out = Word::empty();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut Word) {
        if self.is_leaf() {
            out.push(Terminal::new(&self.node));
        }
        for c in &self.children {
            c.collect(out);
        }
    }

    /// Number of internal nodes on the longest root-to-leaf path.
    pub fn height(&self) -> usize {
        if self.is_leaf() {
            0
        } else {
            1 + self.children.iter().map(DerivationTree::height).max().unwrap_or(0)
        }
    }
}

/// CYK recognizer over bitsets of nonterminals, reusable across words.
pub struct CykParser {
    names: Vec<String>,
    start: usize,
    words: usize,
    start_eps: Option<usize>,
    /// `(rule, lhs, terminal)` for every `A → a`.
    terminal_rules: Vec<(usize, usize, Terminal)>,
    /// `(rule, lhs, right)` for every `A → B C`, grouped by `B`.
    by_left: Vec<Vec<(usize, usize, usize)>>,
    /// `(lhs, left, right)` for every `A → B C`.
    binaries: Vec<(usize, usize, usize)>,
}

struct Table {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Table {
    fn cell(&self, i: usize, len: usize) -> &[u64] {
        let at = (i * self.n + (len - 1)) * self.words;
        &self.bits[at..at + self.words]
    }

    fn has(&self, i: usize, len: usize, a: usize) -> bool {
        self.cell(i, len)[a / 64] >> (a % 64) & 1 == 1
    }

    fn set(&mut self, i: usize, len: usize, a: usize) {
        let at = (i * self.n + (len - 1)) * self.words;
        self.bits[at + a / 64] |= 1 << (a % 64);
    }
}

impl CykParser {
    /// Fails when `g` is not in Chomsky normal form.
    pub fn new(g: &Grammar) -> Result<CykParser> {
        let ix = g.indexed()?;
        if let Some(reason) = cnf_violation(g) {
            return Err(Error::ShapeMismatch { form: "Chomsky".into(), reason });
        }
        let mut p = CykParser {
            names: ix.names.clone(),
            start: ix.start,
            words: ix.len().div_ceil(64),
            start_eps: None,
            terminal_rules: Vec::new(),
            by_left: vec![Vec::new(); ix.len()],
            binaries: Vec::new(),
        };
        for (ri, r) in ix.rules.iter().enumerate() {
            match r.rhs[..] {
                [] => {
                    p.start_eps.get_or_insert(ri);
                }
                [Sym::T(t)] => p.terminal_rules.push((ri, r.lhs, t)),
                [Sym::N(b), Sym::N(c)] => {
                    p.by_left[b].push((ri, r.lhs, c));
                    p.binaries.push((r.lhs, b, c));
                }
                _ => unreachable!("checked by cnf_violation"),
            }
        }
        Ok(p)
    }

    fn table(&self, p: &[Terminal]) -> Table {
        let n = p.len();
        let mut t = Table { n, words: self.words, bits: vec![0; n * n * self.words] };
        for (i, c) in p.iter().enumerate() {
            for &(_, a, term) in &self.terminal_rules {
                if term == *c {
                    t.set(i, 1, a);
                }
            }
        }
        // ends[a][i] holds bit j when a spans i..j; starts[a][j] holds bit i.
        let stride = (n + 1).div_ceil(64);
        let row = |a: usize, i: usize| (a * (n + 1) + i) * stride;
        let mut ends = vec![0u64; self.names.len() * (n + 1) * stride];
        let mut starts = ends.clone();
        let mark = |ends: &mut [u64], starts: &mut [u64], a: usize, i: usize, j: usize| {
            ends[row(a, i) + j / 64] |= 1 << (j % 64);
            starts[row(a, j) + i / 64] |= 1 << (i % 64);
        };
        for i in 0..n {
            for a in 0..self.names.len() {
                if t.has(i, 1, a) {
                    mark(&mut ends, &mut starts, a, i, i + 1);
                }
            }
        }
        let mut acc = vec![0u64; self.words];
        for len in 2..=n {
            for i in 0..=n - len {
                let j = i + len;
                let (lo, hi) = ((i + 1) / 64, (j - 1) / 64);
                acc.iter_mut().for_each(|w| *w = 0);
                for &(a, b, c) in &self.binaries {
                    if acc[a / 64] >> (a % 64) & 1 == 1 {
                        continue;
                    }
                    let (eb, sc) = (row(b, i), row(c, j));
                    if (lo..=hi).any(|w| ends[eb + w] & starts[sc + w] != 0) {
                        acc[a / 64] |= 1 << (a % 64);
                    }
                }
                for (wi, &word) in acc.iter().enumerate() {
                    let mut bits = word;
                    while bits != 0 {
                        let a = wi * 64 + bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        mark(&mut ends, &mut starts, a, i, j);
                    }
                }
                let at = (i * n + (len - 1)) * self.words;
                t.bits[at..at + self.words].copy_from_slice(&acc);
            }
        }
        t
    }

    /// Whether `p` is in the language, without building a tree.
    pub fn accepts(&self, p: &Word) -> bool {
        if p.is_empty() {
            return self.start_eps.is_some();
        }
        self.table(p.symbols()).has(0, p.len(), self.start)
    }

    /// Same result as [`parse_cyk`].
    pub fn parse(&self, p: &Word) -> Option<DerivationTree> {
        if p.is_empty() {
            return self.start_eps.map(|r| DerivationTree {
                node: self.names[self.start].clone(),
                rule: Some(r),
                children: Vec::new(),
            });
        }
        let t = self.table(p.symbols());
        if !t.has(0, p.len(), self.start) {
            return None;
        }
        Some(self.build(&t, p.symbols(), self.start, 0, p.len()))
    }

    /// First derivation by rule declaration order, then by split point.
    fn build(&self, t: &Table, p: &[Terminal], a: usize, i: usize, len: usize) -> DerivationTree {
        let node = self.names[a].clone();
        if len == 1 {
            let &(r, _, term) = self
                .terminal_rules
                .iter()
                .find(|(_, lhs, term)| *lhs == a && *term == p[i])
                .expect("table cell promised a terminal rule");
            return DerivationTree { node, rule: Some(r), children: vec![DerivationTree::leaf(term)] };
        }
        let mut binaries: Vec<(usize, usize, usize)> = self
            .by_left
            .iter()
            .enumerate()
            .flat_map(|(b, rs)| rs.iter().filter(|(_, lhs, _)| *lhs == a).map(move |&(r, _, c)| (r, b, c)))
            .collect();
        binaries.sort_unstable();
        for (r, b, c) in binaries {
            for split in 1..len {
                if t.has(i, split, b) && t.has(i + split, len - split, c) {
                    return DerivationTree {
                        node,
                        rule: Some(r),
                        children: vec![self.build(t, p, b, i, split), self.build(t, p, c, i + split, len - split)],
                    };
                }
            }
        }
        unreachable!("table cell promised a binary rule")
    }
}

/// A derivation tree of `p` in the CNF grammar `g`, or `None` when `p ∉ L(g)`.
pub fn parse_cyk(g: &Grammar, p: &Word) -> Result<Option<DerivationTree>> {
    Ok(CykParser::new(g)?.parse(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal_forms::to_cnf;

    fn dyck_cnf() -> Grammar {
        to_cnf(&Grammar::parse("S -> S S | ( S ) | @eps").unwrap()).unwrap()
    }

    #[test]
    fn dyck_membership() {
        let g = dyck_cnf();
        let tree = parse_cyk(&g, &Word::parse("(())")).unwrap().unwrap();
        assert_eq!(tree.yield_word().to_string(), "(())");
        assert!(parse_cyk(&g, &Word::parse(")(")).unwrap().is_none());
        assert!(parse_cyk(&g, &Word::empty()).unwrap().is_some());
    }

    #[test]
    fn tree_height_is_forced() {
        let g = to_cnf(&Grammar::parse("S -> a S b | a b").unwrap()).unwrap();
        let tree = parse_cyk(&g, &Word::parse("aaabbb")).unwrap().unwrap();
        assert!(tree.height() >= 3);
        assert_eq!(tree.yield_word().to_string(), "aaabbb");
    }

    #[test]
    fn non_cnf_is_rejected() {
        let g = Grammar::parse("S -> a S b | @eps").unwrap();
        assert!(matches!(parse_cyk(&g, &Word::parse("ab")), Err(Error::ShapeMismatch { .. })));
    }

    #[test]
    fn tree_nodes_follow_rules() {
        let g = dyck_cnf();
        let tree = parse_cyk(&g, &Word::parse("()(())")).unwrap().unwrap();
        fn check(g: &Grammar, t: &DerivationTree) {
            if let Some(r) = t.rule {
                let rule = &g.rules[r];
                assert_eq!(rule.lhs, t.node);
                let kids: Vec<&str> = t.children.iter().map(|c| c.node.as_str()).collect();
                let rhs: Vec<&str> = rule.rhs.iter().map(|s| s.name()).collect();
                assert_eq!(kids, rhs);
                t.children.iter().for_each(|c| check(g, c));
            }
        }
        check(&g, &tree);
    }
}
