//! Extractors reading a linear derivation: both fixed-rated lemmas, the
//! linear lemma and the regular lemma.

use super::{check_length, lemma_constant, rate_for, Factorization, LemmaId, RegularFactorization};
use crate::derive::{LinearParser, LinearTrace};
use crate::error::{Error, Result};
use crate::grammar::Grammar;
use crate::ratio::Ratio;
use crate::symbol::Word;

fn trace_of(g: &Grammar, p: &Word) -> Result<LinearTrace> {
    LinearParser::new(g)?.parse(p).ok_or_else(|| Error::NotInLanguage(p.to_string()))
}

/// The split at a repetition `A_s = A_t`, `s < t`:
/// `u = v_1…v_s`, `v = v_{s+1}…v_t`, `x = w_t…w_{s+1}`, `y = w_s…w_1`.
fn split(trace: &LinearTrace, s: usize, t: usize) -> [Word; 5] {
    let pre = |from: usize, to: usize| Word::concat(trace.steps[from..to].iter().map(|st| &st.prefix));
    let suf = |from: usize, to: usize| Word::concat(trace.steps[from..to].iter().rev().map(|st| &st.suffix));
    let m = trace.steps.len();
    let mut w = pre(t, m);
    w.extend_from(&trace.tail);
    w.extend_from(&suf(t, m));
    [pre(0, s), pre(s, t), w, suf(s, t), suf(0, s)]
}

fn build(lemma: LemmaId, p: &Word, parts: [Word; 5], k: Option<Ratio>, n: u64) -> Factorization {
    let [u, v, w, x, y] = parts;
    Factorization { lemma, word: p.clone(), u, v, w, x, y, k, n, notes: Vec::new() }
}

/// Smallest `t` in `lo+1..=hi` with some `s` in `lo..t` and `A_s = A_t`.
fn earliest_repeat(forms: &[&str], lo: usize, hi: usize) -> Option<(usize, usize)> {
    (lo + 1..=hi.min(forms.len() - 1)).find_map(|t| (lo..t).find(|&s| forms[s] == forms[t]).map(|s| (s, t)))
}

/// Factorization with `0 < |u|`, `0 < |v| ≤ nh/(g+h)` and
/// `h|x| = g|v|`, `h|y| = g|u|`, taken from the first repetition among the
/// sentential forms `1..=|N|+1` of the derivation.
pub fn extract_thm1(g: &Grammar, p: &Word, k: Option<Ratio>) -> Result<Factorization> {
    let k = rate_for(g, k)?;
    let n = lemma_constant(g, LemmaId::Thm1, Some(k))?;
    check_length(p, n)?;
    let trace = trace_of(g, p)?;
    let forms = trace.forms();
    let (s, t) = earliest_repeat(&forms, 1, g.nonterminals.len() + 1)
        .ok_or_else(|| Error::Inconclusive("no repetition in the first |N|+1 forms".into()))?;
    Ok(build(LemmaId::Thm1, p, split(&trace, s, t), Some(k), n))
}

/// Factorization with `0 < |w| ≤ n`, taken from the last `|N|+1` sentential
/// forms: the repetition with the largest `t` (then largest `s`) leaving a
/// non-empty `w`. When the only repetitions end at a λ tail, the window
/// moves one form towards the root.
pub fn extract_thm2(g: &Grammar, p: &Word, k: Option<Ratio>) -> Result<Factorization> {
    let k = rate_for(g, k)?;
    let n = lemma_constant(g, LemmaId::Thm2, Some(k))?;
    check_length(p, n)?;
    let trace = trace_of(g, p)?;
    let forms = trace.forms();
    let m = trace.steps.len();
    let width = g.nonterminals.len();
    let in_window = |hi: usize| -> Option<(usize, usize)> {
        let lo = hi.checked_sub(width)?;
        (lo + 1..=hi)
            .rev()
            .filter(|&t| t < m || !trace.tail.is_empty())
            .find_map(|t| (lo..t).rev().find(|&s| forms[s] == forms[t]).map(|s| (s, t)))
    };
    let (s, t) = in_window(m)
        .or_else(|| m.checked_sub(1).and_then(in_window))
        .ok_or_else(|| Error::Inconclusive("no repetition with a non-empty middle in the last forms".into()))?;
    let mut f = build(LemmaId::Thm2, p, split(&trace, s, t), Some(k), n);
    if f.u.is_empty() && k.g() > 0 {
        f.notes.push("u is empty, so the ratio |y|/|u| holds only in the cross-multiplied form".into());
    }
    Ok(f)
}

/// Linear-lemma factorization on the linear-unit normal form: the first
/// repetition among forms `0..=|N|`, so `|uvxy| ≤ |N| < n` and `|vx| > 0`.
pub fn extract_linear(g: &Grammar, p: &Word) -> Result<Factorization> {
    let n = lemma_constant(g, LemmaId::Linear, None)?;
    check_length(p, n)?;
    let trace = trace_of(g, p)?;
    let forms = trace.forms();
    let (s, t) = earliest_repeat(&forms, 0, g.nonterminals.len())
        .ok_or_else(|| Error::Inconclusive("no repetition in the first |N|+1 forms".into()))?;
    Ok(build(LemmaId::Linear, p, split(&trace, s, t), None, n))
}

/// Regular-lemma factorization on `A → aB | λ`: the first repeated state
/// while consuming the word, so `|uv| ≤ |N| < n` and `|v| > 0`.
pub fn extract_regular(g: &Grammar, p: &Word) -> Result<RegularFactorization> {
    let n = lemma_constant(g, LemmaId::Regular, None)?;
    check_length(p, n)?;
    let trace = trace_of(g, p)?;
    let forms = trace.forms();
    let (s, t) = earliest_repeat(&forms, 0, g.nonterminals.len())
        .ok_or_else(|| Error::Inconclusive("no repeated state in the first |N|+1 forms".into()))?;
    let [u, v, w, _, _] = split(&trace, s, t);
    Ok(RegularFactorization { word: p.clone(), u, v, w, n })
}
