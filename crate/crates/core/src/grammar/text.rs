//! The grammar text format:
//!
//! ```text
//! start: S
//! nonterminals: S A
//! terminals: a b
//! S -> a S b | @eps    # comment
//! ```
//!
//! Header lines are optional. Without `nonterminals:` every left-hand side
//! (and the start symbol) is a nonterminal; without `terminals:` the alphabet
//! is whatever else occurs on right-hand sides. Without `start:` the first
//! rule's left-hand side is the start symbol.

use std::collections::HashSet;

use super::{Grammar, Rule, Symbol, EPSILON};
use crate::error::{Error, Result};

struct RawRule {
    lhs: String,
    rhs: Vec<String>,
}

fn tokens(line: &str) -> Vec<&str> {
    line.split_whitespace().take_while(|t| !t.starts_with('#')).collect()
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

pub(super) fn parse(text: &str) -> Result<Grammar> {
    let mut start: Option<String> = None;
    let mut declared_nts: Option<Vec<String>> = None;
    let mut declared_ts: Option<Vec<String>> = None;
    let mut raw: Vec<RawRule> = Vec::new();

    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let toks = tokens(line);
        let Some(&first) = toks.first() else { continue };
        match first {
            "start:" => {
                if toks.len() != 2 {
                    return Err(parse_err(lineno, "expected exactly one start symbol"));
                }
                start = Some(toks[1].to_string());
            }
            "nonterminals:" => {
                declared_nts.get_or_insert_with(Vec::new).extend(toks[1..].iter().map(|s| s.to_string()))
            }
            "terminals:" => {
                declared_ts.get_or_insert_with(Vec::new).extend(toks[1..].iter().map(|s| s.to_string()))
            }
            _ => {
                if toks.len() < 2 || toks[1] != "->" {
                    return Err(parse_err(lineno, format!("expected `LHS -> ...`, got `{}`", line.trim())));
                }
                let lhs = toks[0].to_string();
                for alt in toks[2..].split(|t| *t == "|") {
                    let rhs: Vec<String> = match alt {
                        [] => return Err(parse_err(lineno, "empty alternative; write @eps")),
                        [e] if *e == EPSILON => Vec::new(),
                        _ if alt.contains(&EPSILON) => {
                            return Err(parse_err(lineno, "@eps must stand alone"));
                        }
                        _ => alt.iter().map(|s| s.to_string()).collect(),
                    };
                    raw.push(RawRule { lhs: lhs.clone(), rhs });
                }
            }
        }
    }

    let start = match start {
        Some(s) => s,
        None => match raw.first() {
            Some(r) => r.lhs.clone(),
            None => return Err(parse_err(0, "no start symbol and no rules")),
        },
    };

    let nonterminals = match declared_nts {
        Some(v) => v,
        None => {
            let mut seen = HashSet::new();
            std::iter::once(start.clone())
                .chain(raw.iter().map(|r| r.lhs.clone()))
                .filter(|n| seen.insert(n.clone()))
                .collect()
        }
    };
    let nt_set: HashSet<&str> = nonterminals.iter().map(String::as_str).collect();

    let terminals = match declared_ts {
        Some(v) => v,
        None => {
            let mut seen = HashSet::new();
            raw.iter()
                .flat_map(|r| r.rhs.iter())
                .filter(|s| !nt_set.contains(s.as_str()))
                .filter(|s| seen.insert(s.to_string()))
                .cloned()
                .collect()
        }
    };

    let rules = raw
        .into_iter()
        .map(|r| Rule {
            rhs: r
                .rhs
                .into_iter()
                .map(|s| if nt_set.contains(s.as_str()) { Symbol::Nonterminal(s) } else { Symbol::Terminal(s) })
                .collect(),
            lhs: r.lhs,
        })
        .collect();

    Ok(Grammar { nonterminals, terminals, start, rules })
}

pub(super) fn emit(g: &Grammar) -> String {
    let mut out = String::new();
    out.push_str(&format!("start: {}\n", g.start));
    out.push_str(&format!("nonterminals: {}\n", g.nonterminals.join(" ")));
    out.push_str(&format!("terminals: {}\n", g.terminals.join(" ")));
    for r in &g.rules {
        out.push_str(&r.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_header_form() {
        let g = Grammar::parse(
            "start: S\nnonterminals: S A B\nterminals: a b (\nS -> a S b\nS -> @eps\n",
        )
        .unwrap();
        assert_eq!(g.start, "S");
        assert_eq!(g.nonterminals, ["S", "A", "B"]);
        assert_eq!(g.terminals, ["a", "b", "("]);
        assert_eq!(g.rules.len(), 2);
        assert!(g.rules[1].rhs.is_empty());
        assert_eq!(g.rules[0].rhs[1], Symbol::n("S"));
    }

    #[test]
    fn alternation_and_comments() {
        let g = Grammar::parse("# dyck\nS -> S S | ( S ) | @eps   # three rules\n").unwrap();
        assert_eq!(g.rules.len(), 3);
        assert_eq!(g.terminals, ["(", ")"]);
        assert_eq!(g.rules[0].to_string(), "S -> S S");
    }

    #[test]
    fn hash_inside_names_is_not_a_comment() {
        let g = Grammar::parse("S -> a S#1\nS#1 -> b").unwrap();
        assert_eq!(g.nonterminals, ["S", "S#1"]);
        assert_eq!(g.rules[0].rhs[1], Symbol::n("S#1"));
    }

    #[test]
    fn emit_then_parse_is_identity() {
        let g = Grammar::parse("S -> a A | @eps\nA -> b S | A c").unwrap();
        assert_eq!(Grammar::parse(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn malformed_lines() {
        assert!(Grammar::parse("S a b").is_err());
        assert!(Grammar::parse("S -> a |").is_err());
        assert!(Grammar::parse("S -> a @eps").is_err());
        assert!(Grammar::parse("").is_err());
    }
}
