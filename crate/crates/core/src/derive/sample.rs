use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::grammar::{Grammar, Sym};
use crate::normal_forms::cnf_violation;
use crate::symbol::Word;

/// Up to `count` distinct words of exactly `len` letters from a CNF grammar,
/// drawn by choosing derivation trees with probability proportional to the
/// number of trees below each choice. Deterministic for a fixed `seed`.
pub fn sample_words(g: &Grammar, len: usize, count: usize, seed: u64) -> Result<BTreeSet<Word>> {
    if let Some(reason) = cnf_violation(g) {
        return Err(Error::ShapeMismatch { form: "Chomsky".into(), reason });
    }
    let ix = g.indexed()?;
    let mut out = BTreeSet::new();
    if len == 0 {
        if ix.rules.iter().any(|r| r.lhs == ix.start && r.rhs.is_empty()) && count > 0 {
            out.insert(Word::empty());
        }
        return Ok(out);
    }
    // trees[a][l]: number of derivation trees of A with yield length l.
    let mut trees = vec![vec![0f64; len + 1]; ix.len()];
    for l in 1..=len {
        for r in &ix.rules {
            let add = match r.rhs[..] {
                [Sym::T(_)] if l == 1 => 1.0,
                [Sym::N(b), Sym::N(c)] => (1..l).map(|i| trees[b][i] * trees[c][l - i]).sum(),
                _ => 0.0,
            };
            trees[r.lhs][l] += add;
        }
    }
    if trees[ix.start][len] == 0.0 {
        return Ok(out);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = 0;
    while out.len() < count && attempts < count * 20 {
        attempts += 1;
        let mut w = Word::empty();
        draw(&ix.rules, &trees, ix.start, len, &mut rng, &mut w);
        out.insert(w);
    }
    Ok(out)
}

fn draw(rules: &[crate::grammar::IRule], trees: &[Vec<f64>], a: usize, l: usize, rng: &mut ChaCha8Rng, out: &mut Word) {
    let mut pick = rng.gen::<f64>() * trees[a][l];
    let mut last = None;
    for r in rules.iter().filter(|r| r.lhs == a) {
        match r.rhs[..] {
            [Sym::T(t)] if l == 1 => {
                last = Some((Some(t), 0, 0, 0));
                pick -= 1.0;
            }
            [Sym::N(b), Sym::N(c)] => {
                for i in 1..l {
                    let weight = trees[b][i] * trees[c][l - i];
                    if weight > 0.0 {
                        last = Some((None, b, c, i));
                        pick -= weight;
                    }
                    if pick < 0.0 {
                        break;
                    }
                }
            }
            _ => {}
        }
        if pick < 0.0 {
            break;
        }
    }
    match last.expect("a tree exists for this length") {
        (Some(t), ..) => out.push(t),
        (None, b, c, i) => {
            draw(rules, trees, b, i, rng, out);
            draw(rules, trees, c, l - i, rng, out);
        }
    }
}
