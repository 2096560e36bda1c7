use super::{check_length, lemma_constant, Factorization, LemmaId};
use crate::derive::{CykParser, DerivationTree};
use crate::error::{Error, Result};
use crate::grammar::Grammar;
use crate::symbol::Word;

/// Internal nodes on the longest root-leaf path (leftmost on ties), each
/// with its nonterminal and the span `[start, end)` of its yield.
fn longest_path(tree: &DerivationTree) -> Vec<(&str, usize, usize)> {
    let mut path = Vec::new();
    let (mut node, mut start) = (tree, 0);
    while !node.is_leaf() {
        let len = node.yield_word().len();
        path.push((node.node.as_str(), start, start + len));
        let Some(best) = node.children.iter().map(DerivationTree::height).max() else { break };
        let mut offset = start;
        let mut next = None;
        for c in &node.children {
            if c.height() == best {
                next = Some(c);
                break;
            }
            offset += c.yield_word().len();
        }
        node = next.expect("maximum is attained");
        start = offset;
    }
    path
}

/// Bar-Hillel factorization on a CNF grammar: on the longest path of the
/// derivation tree, the repeated nonterminal pair nearest the leaf within
/// the last `|N| + 1` internal nodes. The upper node spans `vwx`, the lower
/// one `w`; the upper subtree has height at most `|N| + 1`, so
/// `|vwx| ≤ 2^|N| ≤ n`, and CNF has no unit rules, so `|vx| > 0`.
pub fn extract_barhillel(g: &Grammar, p: &Word) -> Result<Factorization> {
    let n = lemma_constant(g, LemmaId::BarHillel, None)?;
    check_length(p, n)?;
    let tree = CykParser::new(g)?.parse(p).ok_or_else(|| Error::NotInLanguage(p.to_string()))?;
    let path = longest_path(&tree);
    let lo = path.len().saturating_sub(g.nonterminals.len() + 1);
    let pair = (lo..path.len())
        .rev()
        .find_map(|s| (s + 1..path.len()).find(|&t| path[s].0 == path[t].0).map(|t| (s, t)));
    let (s, t) = pair.ok_or_else(|| Error::Inconclusive("no repeated nonterminal on the longest path".into()))?;
    let (_, s0, s1) = path[s];
    let (_, t0, t1) = path[t];
    Ok(Factorization::from_cuts(LemmaId::BarHillel, p, [s0, t0, t1, s1], None, n))
}
