//! Context-free grammars: representation, validation and the text format.

mod analysis;
mod classify;
mod text;

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symbol::Terminal;

pub use analysis::{infinite_nonterminals, useful_core};
pub(crate) use analysis::{infinite_flags, nullable};
pub use classify::{classify, ratio_of, ClassReport, RuleRatio, Witness};

/// Placeholder for the empty right-hand side in the text format.
pub const EPSILON: &str = "@eps";

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", content = "name", rename_all = "lowercase")]
pub enum Symbol {
    Terminal(String),
    Nonterminal(String),
}

impl Symbol {
    pub fn t(name: &str) -> Symbol {
        Symbol::Terminal(name.to_string())
    }

    pub fn n(name: &str) -> Symbol {
        Symbol::Nonterminal(name.to_string())
    }

    pub fn name(&self) -> &str {
        match self {
            Symbol::Terminal(s) | Symbol::Nonterminal(s) => s,
        }
    }

    pub fn is_nonterminal(&self) -> bool {
        matches!(self, Symbol::Nonterminal(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rule {
    pub lhs: String,
    pub rhs: Vec<Symbol>,
}

impl Rule {
    pub fn new(lhs: &str, rhs: Vec<Symbol>) -> Rule {
        Rule { lhs: lhs.to_string(), rhs }
    }

    pub fn nonterminal_count(&self) -> usize {
        self.rhs.iter().filter(|s| s.is_nonterminal()).count()
    }

    /// Splits a rule with at most one nonterminal into `(v, B, w)` for
    /// `A → vBw`, or `(u, None, [])` for a terminal rule `A → u`.
    pub fn linear_parts(&self) -> Option<(Vec<&str>, Option<&str>, Vec<&str>)> {
        let mut left = Vec::new();
        let mut right = Vec::new();
        let mut nt = None;
        for s in &self.rhs {
            match s {
                Symbol::Nonterminal(n) if nt.is_none() => nt = Some(n.as_str()),
                Symbol::Nonterminal(_) => return None,
                Symbol::Terminal(t) if nt.is_none() => left.push(t.as_str()),
                Symbol::Terminal(t) => right.push(t.as_str()),
            }
        }
        Some((left, nt, right))
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ->", self.lhs)?;
        if self.rhs.is_empty() {
            return write!(f, " {EPSILON}");
        }
        for s in &self.rhs {
            write!(f, " {}", s.name())?;
        }
        Ok(())
    }
}

/// A context-free grammar `(N, V, S, H)`.
///
/// Construction does not check anything; call [`Grammar::validate`] (or any
/// algorithm, which validates first) to find undeclared symbols and the like.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grammar {
    pub nonterminals: Vec<String>,
    pub terminals: Vec<String>,
    pub start: String,
    pub rules: Vec<Rule>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "kebab-case")]
pub enum Violation {
    UndeclaredSymbol { rule: usize, symbol: String },
    UndeclaredLhs { rule: usize, symbol: String },
    BadStart { start: String },
    NoNonterminals,
    NameClash { name: String },
    EmptyName,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UndeclaredSymbol { rule, symbol } => {
                write!(f, "undeclared-symbol({symbol}) in rule {rule}")
            }
            Violation::UndeclaredLhs { rule, symbol } => {
                write!(f, "undeclared-lhs({symbol}) in rule {rule}")
            }
            Violation::BadStart { start } => write!(f, "bad-start({start})"),
            Violation::NoNonterminals => f.write_str("no-nonterminals"),
            Violation::NameClash { name } => write!(f, "name-clash({name})"),
            Violation::EmptyName => f.write_str("empty-name"),
        }
    }
}

impl Grammar {
    pub fn new(start: &str, nonterminals: &[&str], terminals: &[&str], rules: Vec<Rule>) -> Grammar {
        Grammar {
            nonterminals: nonterminals.iter().map(|s| s.to_string()).collect(),
            terminals: terminals.iter().map(|s| s.to_string()).collect(),
            start: start.to_string(),
            rules,
        }
    }

    /// Parses the line-oriented grammar text format.
    pub fn parse(text: &str) -> Result<Grammar> {
        text::parse(text)
    }

    pub fn to_text(&self) -> String {
        text::emit(self)
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.nonterminals.is_empty() {
            out.push(Violation::NoNonterminals);
        }
        let nts: HashSet<&str> = self.nonterminals.iter().map(String::as_str).collect();
        let ts: HashSet<&str> = self.terminals.iter().map(String::as_str).collect();
        if nts.contains("") || ts.contains("") {
            out.push(Violation::EmptyName);
        }
        for name in &self.nonterminals {
            if ts.contains(name.as_str()) {
                out.push(Violation::NameClash { name: name.clone() });
            }
        }
        if !nts.contains(self.start.as_str()) {
            out.push(Violation::BadStart { start: self.start.clone() });
        }
        for (i, r) in self.rules.iter().enumerate() {
            if !nts.contains(r.lhs.as_str()) {
                out.push(Violation::UndeclaredLhs { rule: i, symbol: r.lhs.clone() });
            }
            for s in &r.rhs {
                let declared = match s {
                    Symbol::Terminal(t) => ts.contains(t.as_str()),
                    Symbol::Nonterminal(n) => nts.contains(n.as_str()),
                };
                if !declared {
                    out.push(Violation::UndeclaredSymbol { rule: i, symbol: s.name().to_string() });
                }
            }
        }
        out
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            let msgs: Vec<String> = v.iter().map(|v| v.to_string()).collect();
            Err(Error::InvalidGrammar(msgs.join(", ")))
        }
    }

    /// The grammar `G_A`: same rules, start symbol `a`.
    pub fn with_start(&self, a: &str) -> Grammar {
        Grammar { start: a.to_string(), ..self.clone() }
    }

    pub fn terminal_alphabet(&self) -> Vec<Terminal> {
        self.terminals.iter().map(|t| Terminal::new(t)).collect()
    }

    pub(crate) fn indexed(&self) -> Result<Indexed> {
        self.ensure_valid()?;
        Ok(Indexed::build(self))
    }
}

/// Generator of nonterminal names `base#i` not used anywhere in a grammar.
pub(crate) struct FreshNames {
    taken: HashSet<String>,
}

impl FreshNames {
    pub fn new(g: &Grammar) -> FreshNames {
        let taken = g.nonterminals.iter().chain(&g.terminals).cloned().collect();
        FreshNames { taken }
    }

    /// `name` itself when unused, otherwise [`FreshNames::next`].
    pub fn claim(&mut self, name: &str) -> String {
        if self.taken.insert(name.to_string()) {
            name.to_string()
        } else {
            self.next(name)
        }
    }

    /// `base#i` with the smallest free `i ≥ 1`; an existing `#suffix` on
    /// `base` is dropped first so names do not nest.
    pub fn next(&mut self, base: &str) -> String {
        let stem = match base.split_once('#') {
            Some((stem, _)) if !stem.is_empty() => stem,
            _ => base,
        };
        let mut i = 1;
        loop {
            let cand = format!("{stem}#{i}");
            if self.taken.insert(cand.clone()) {
                return cand;
            }
            i += 1;
        }
    }
}

/// Symbol of an [`Indexed`] grammar: interned terminal or nonterminal index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Sym {
    T(Terminal),
    N(usize),
}

#[derive(Clone, Debug)]
pub(crate) struct IRule {
    pub lhs: usize,
    pub rhs: Vec<Sym>,
}

/// Index-based view of a validated grammar used by the algorithms.
#[derive(Clone, Debug)]
pub(crate) struct Indexed {
    pub names: Vec<String>,
    pub start: usize,
    pub rules: Vec<IRule>,
}

impl Indexed {
    fn build(g: &Grammar) -> Indexed {
        let index: HashMap<&str, usize> =
            g.nonterminals.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let rules = g
            .rules
            .iter()
            .map(|r| IRule {
                lhs: index[r.lhs.as_str()],
                rhs: r
                    .rhs
                    .iter()
                    .map(|s| match s {
                        Symbol::Terminal(t) => Sym::T(Terminal::new(t)),
                        Symbol::Nonterminal(n) => Sym::N(index[n.as_str()]),
                    })
                    .collect(),
            })
            .collect();
        Indexed { names: g.nonterminals.clone(), start: index[g.start.as_str()], rules }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    /// Rule indices grouped by left-hand side.
    pub fn by_lhs(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.len()];
        for (i, r) in self.rules.iter().enumerate() {
            out[r.lhs].push(i);
        }
        out
    }
}
