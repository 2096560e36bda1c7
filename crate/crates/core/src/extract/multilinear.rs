use super::{extract_barhillel, lemma_constant, Block, LemmaId, MultiFactorization};
use crate::derive::{sentential_reach, shortest_yield};
use crate::derive::LeastTable;
use crate::error::{Error, Result};
use crate::grammar::{useful_core, Grammar};
use crate::normal_forms::to_cnf;
use crate::symbol::Word;

/// The shortlex-least word of `L(g)` of length at least `n`. A CNF language
/// with a word that long has one shorter than `2n`, because any longer word
/// pumps down by at most `n` letters.
fn least_word_from(cnf: &Grammar, n: usize) -> Result<Option<Word>> {
    let ix = cnf.indexed()?;
    let table = LeastTable::build(&ix, 2 * n);
    Ok((n..=2 * n).find_map(|len| table.get(ix.start, len).cloned()))
}

/// Multi-block factorization for `k + 1` pumped pairs, together with the
/// word it factorizes.
///
/// Finds a sentential form `α A_0 β_0 … A_k β_k` whose `A_l` generate
/// infinite languages, replaces `α` and each `β_l` by their shortest yields,
/// and for each `A_l` factorizes the least sufficiently long word of
/// `L(G_{A_l})` with the Bar-Hillel extractor on its CNF, giving
/// `a_l b_l c_l d_l e_l`. Blocks are `v_l = b_l`, `w_l = c_l`, `x_l = d_l`,
/// `y_l = e_l β_l a_{l+1}` (the last block ends with `e_k β_k`), and
/// `u = α a_0`.
pub fn extract_multilinear(g: &Grammar, k: usize, max_steps: usize) -> Result<(MultiFactorization, Word)> {
    let core = useful_core(g)?;
    let form = sentential_reach(&core, k + 1, max_steps)?.ok_or_else(|| {
        Error::Inconclusive(format!("no sentential form with {} infinite nonterminals within {max_steps} steps", k + 1))
    })?;
    let pos = &form.infinite_positions;
    let yield_of = |from: usize, to: usize| -> Result<Word> {
        shortest_yield(&core, &form.symbols[from..to])?
            .ok_or_else(|| Error::InvalidGrammar("non-productive symbol in a trimmed grammar".into()))
    };

    let mut alpha = yield_of(0, pos[0])?;
    let mut betas = Vec::with_capacity(k + 1);
    for l in 0..=k {
        let end = if l == k { form.symbols.len() } else { pos[l + 1] };
        betas.push(yield_of(pos[l] + 1, end)?);
    }

    let mut fs = Vec::with_capacity(k + 1);
    for &p in pos {
        let name = form.symbols[p].name();
        let cnf = to_cnf(&useful_core(&core.with_start(name))?)?;
        let n = lemma_constant(&cnf, LemmaId::BarHillel, None)?;
        let word = least_word_from(&cnf, n as usize)?.ok_or_else(|| Error::FiniteLanguage(name.to_string()))?;
        fs.push(extract_barhillel(&cnf, &word)?);
    }

    alpha.extend_from(&fs[0].u);
    let blocks = (0..=k)
        .map(|l| {
            let mut y = fs[l].y.clone();
            y.extend_from(&betas[l]);
            if l < k {
                y.extend_from(&fs[l + 1].u);
            }
            Block { v: fs[l].v.clone(), w: fs[l].w.clone(), x: fs[l].x.clone(), y }
        })
        .collect();
    let mut mf = MultiFactorization { lemma: LemmaId::Multilinear(k), word: Word::empty(), u: alpha, blocks };
    let word = mf.reassemble();
    mf.word = word.clone();
    Ok((mf, word))
}
