use std::collections::BTreeMap;

use super::{dedup_rules, eliminate_units, nullable_names};
use crate::error::Result;
use crate::grammar::{useful_core, FreshNames, Grammar, Rule, Symbol};

/// Chomsky normal form by START, TERM, BIN, DEL, UNIT, then trimming and
/// merging nonterminals whose rule sets coincide.
///
/// START only introduces a new start symbol when the old one is nullable and
/// occurs on a right-hand side, so grammars already in CNF, with no two
/// nonterminals sharing a rule set, come back as-is.
/// Terminal proxies are named `T_a` when that name is free.
pub fn to_cnf(g: &Grammar) -> Result<Grammar> {
    g.ensure_valid()?;
    let mut g = useful_core(g)?;
    let mut fresh = FreshNames::new(&g);

    // START
    let nullable = nullable_names(&g)?;
    let start_on_rhs = g.rules.iter().any(|r| r.rhs.iter().any(|s| s.is_nonterminal() && s.name() == g.start));
    if nullable.contains(&g.start) && start_on_rhs {
        let s0 = fresh.next(&g.start);
        g.rules.insert(0, Rule { lhs: s0.clone(), rhs: vec![Symbol::n(&g.start)] });
        g.nonterminals.insert(0, s0.clone());
        g.start = s0;
    }

    // TERM
    let mut proxies: BTreeMap<String, String> = BTreeMap::new();
    let mut proxy_order = Vec::new();
    for r in &mut g.rules {
        if r.rhs.len() < 2 {
            continue;
        }
        for s in &mut r.rhs {
            if let Symbol::Terminal(t) = s {
                let name = proxies
                    .entry(t.clone())
                    .or_insert_with(|| {
                        let n = fresh.claim(&format!("T_{t}"));
                        proxy_order.push((n.clone(), t.clone()));
                        n
                    })
                    .clone();
                *s = Symbol::Nonterminal(name);
            }
        }
    }
    for (n, t) in proxy_order {
        g.nonterminals.push(n.clone());
        g.rules.push(Rule { lhs: n, rhs: vec![Symbol::Terminal(t)] });
    }

    // BIN
    let mut rules = Vec::new();
    for r in std::mem::take(&mut g.rules) {
        if r.rhs.len() <= 2 {
            rules.push(r);
            continue;
        }
        let mut cur = r.lhs.clone();
        let last = r.rhs.len() - 2;
        for (i, s) in r.rhs[..=last].iter().enumerate() {
            if i == last {
                rules.push(Rule { lhs: cur.clone(), rhs: vec![s.clone(), r.rhs[last + 1].clone()] });
            } else {
                let next = fresh.next(&r.lhs);
                g.nonterminals.push(next.clone());
                rules.push(Rule { lhs: cur.clone(), rhs: vec![s.clone(), Symbol::n(&next)] });
                cur = next;
            }
        }
    }
    g.rules = rules;

    // DEL
    let nullable = nullable_names(&g)?;
    let is_null = |s: &Symbol| s.is_nonterminal() && nullable.contains(s.name());
    let mut rules = Vec::new();
    for r in std::mem::take(&mut g.rules) {
        match &r.rhs[..] {
            [] => {}
            [x, y] => {
                if is_null(y) {
                    rules.push(Rule { lhs: r.lhs.clone(), rhs: vec![x.clone()] });
                }
                if is_null(x) {
                    rules.push(Rule { lhs: r.lhs.clone(), rhs: vec![y.clone()] });
                }
                rules.push(r);
            }
            _ => rules.push(r),
        }
    }
    if nullable.contains(&g.start) {
        rules.push(Rule { lhs: g.start.clone(), rhs: Vec::new() });
    }
    rules.retain(|r| !matches!(&r.rhs[..], [Symbol::Nonterminal(b)] if *b == r.lhs));
    g.rules = dedup_rules(rules);

    // UNIT
    let g = eliminate_units(&g);
    Ok(merge_identical(useful_core(&g)?))
}

/// Right-hand sides of one nonterminal, with nonterminals replaced by their class.
type Signature<'a> = Vec<Vec<(usize, &'a str)>>;

/// Merges nonterminals that derive alike: the coarsest partition in which
/// members of a class have the same rules once every nonterminal is
/// replaced by its class. Each class keeps its first member in declaration
/// order, or the start symbol. The language is unchanged.
fn merge_identical(mut g: Grammar) -> Grammar {
    let names: Vec<String> =
        std::iter::once(g.start.clone()).chain(g.nonterminals.iter().filter(|n| **n != g.start).cloned()).collect();
    let index: BTreeMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    let mut class = vec![0usize; names.len()];
    let mut count = 1;
    loop {
        let mut sigs: Vec<Signature> = vec![Vec::new(); names.len()];
        for r in &g.rules {
            let body = r
                .rhs
                .iter()
                .map(|s| match s {
                    Symbol::Nonterminal(n) => (class[index[n.as_str()]], ""),
                    Symbol::Terminal(t) => (usize::MAX, t.as_str()),
                })
                .collect();
            sigs[index[r.lhs.as_str()]].push(body);
        }
        for sig in &mut sigs {
            sig.sort();
            sig.dedup();
        }
        let mut ids: BTreeMap<(usize, &Signature), usize> = BTreeMap::new();
        let next: Vec<usize> = (0..names.len())
            .map(|i| {
                let fresh = ids.len();
                *ids.entry((class[i], &sigs[i])).or_insert(fresh)
            })
            .collect();
        let refined = ids.len();
        class = next;
        if refined == count {
            break;
        }
        count = refined;
    }
    if count == names.len() {
        return g;
    }
    let mut rep: Vec<usize> = vec![usize::MAX; count];
    for (i, &c) in class.iter().enumerate() {
        if rep[c] == usize::MAX {
            rep[c] = i;
        }
    }
    let target = |n: &str| names[rep[class[index[n]]]].clone();
    let rules = g
        .rules
        .iter()
        .filter(|r| target(&r.lhs) == r.lhs)
        .map(|r| Rule {
            lhs: r.lhs.clone(),
            rhs: r
                .rhs
                .iter()
                .map(|s| match s {
                    Symbol::Nonterminal(n) => Symbol::n(&target(n)),
                    t => t.clone(),
                })
                .collect(),
        })
        .collect();
    g.rules = dedup_rules(rules);
    g.nonterminals.retain(|n| target(n) == *n);
    g
}
