use super::{Exponents, Failure, LemmaReport, Memo, NRange, Survivor, Verdict, WordAudit, GRID_CAP};
use crate::error::{Error, Result};
use crate::extract::LemmaId;
use crate::oracles::LanguageOracle;
use crate::symbol::Word;

/// Default cap on the length of each of the `4(k+1) + 1` parts.
pub const DEFAULT_PART_CAP: usize = 8;

/// Failures kept per witness in the audit; the counts stay complete.
const FAILURES_KEPT: usize = 64;

/// A placed block `v w x y` starting at `start`.
#[derive(Clone, Copy, Debug)]
struct Placed {
    start: usize,
    v: usize,
    w: usize,
    x: usize,
    y: usize,
}

impl Placed {
    fn end(&self) -> usize {
        self.start + self.v + self.w + self.x + self.y
    }

    fn cuts(&self) -> [usize; 4] {
        let b = self.start + self.v;
        let c = b + self.w;
        let d = c + self.x;
        [b, c, d, d + self.y]
    }
}

/// `word` with each block pumped by its exponent; the text between blocks
/// is copied unchanged.
fn pump_blocks(word: &[crate::symbol::Terminal], blocks: &[Placed], exps: &[usize]) -> Word {
    let mut out = Vec::with_capacity(word.len() * 2);
    let mut at = 0;
    for (b, &i) in blocks.iter().zip(exps) {
        out.extend_from_slice(&word[at..b.start]);
        let (vs, ws, xs) = (b.start, b.start + b.v, b.start + b.v + b.w);
        for _ in 0..i {
            out.extend_from_slice(&word[vs..ws]);
        }
        out.extend_from_slice(&word[ws..xs]);
        for _ in 0..i {
            out.extend_from_slice(&word[xs..xs + b.x]);
        }
        at = xs + b.x;
    }
    out.extend_from_slice(&word[at..]);
    Word::from_terminals(out)
}

struct Search<'a> {
    memo: &'a Memo<'a>,
    word: &'a [crate::symbol::Terminal],
    blocks: usize,
    cap: usize,
    exps: Vec<usize>,
    /// Single-block survivors by start: `(v, w, x)` lengths.
    singles: Vec<Vec<(usize, usize, usize)>>,
    /// `reach[r][pos]`: `r` more blocks can start at `pos` and end the word.
    reach: Vec<Vec<bool>>,
    nodes: usize,
    failures: Vec<Failure>,
}

impl Search<'_> {
    fn new<'a>(memo: &'a Memo<'a>, word: &'a Word, blocks: usize, cap: usize, imax: usize) -> Search<'a> {
        let symbols = word.symbols();
        let len = symbols.len();
        let exps: Vec<usize> = (0..=imax.min(GRID_CAP)).collect();
        let mut singles = vec![Vec::new(); len + 1];
        for (start, list) in singles.iter_mut().enumerate() {
            for v in 0..=cap.min(len - start) {
                for w in 0..=cap.min(len - start - v) {
                    for x in 0..=cap.min(len - start - v - w) {
                        if v + x == 0 {
                            continue;
                        }
                        let b = [Placed { start, v, w, x, y: 0 }];
                        if exps.iter().filter(|&&i| i != 1).all(|&i| memo.member(&pump_blocks(symbols, &b, &[i]))) {
                            list.push((v, w, x));
                        }
                    }
                }
            }
        }
        let mut reach = vec![vec![false; len + 1]; blocks + 1];
        reach[0][len] = true;
        for r in 1..=blocks {
            for pos in 0..=len {
                reach[r][pos] = singles[pos].iter().any(|&(v, w, x)| {
                    let sv = pos + v + w + x;
                    (0..=cap).any(|y| sv + y <= len && reach[r - 1][sv + y])
                });
            }
        }
        Search {
            memo,
            word: symbols,
            blocks,
            cap,
            exps,
            singles,
            reach,
            nodes: 0,
            failures: Vec::new(),
        }
    }

    /// Checks the exponent vectors over the placed blocks whose last entry
    /// is not 1 and that move at least two blocks; vectors moving one block
    /// were checked when the single-block survivors were collected.
    fn grid_fails(&self, chain: &[Placed]) -> Option<(Vec<usize>, Word)> {
        let m = chain.len();
        let base = self.exps.len();
        let total = base.pow(m as u32);
        let mut exps = vec![0; m];
        for code in 0..total {
            let mut c = code;
            for e in exps.iter_mut() {
                *e = self.exps[c % base];
                c /= base;
            }
            if exps[m - 1] == 1 || exps.iter().filter(|&&e| e != 1).count() < 2 {
                continue;
            }
            let pumped = pump_blocks(self.word, chain, &exps);
            if !self.memo.member(&pumped) {
                return Some((exps.clone(), pumped));
            }
        }
        None
    }

    fn split_of(u: usize, chain: &[Placed]) -> Vec<usize> {
        std::iter::once(u).chain(chain.iter().flat_map(|b| b.cuts())).collect()
    }

    /// Depth-first over chains in lexicographic order of cut points; returns
    /// the first chain whose whole grid stays in the language.
    fn dfs(&mut self, u: usize, chain: &mut Vec<Placed>) -> Option<Vec<Placed>> {
        if chain.len() == self.blocks {
            return Some(chain.clone());
        }
        let pos = chain.last().map_or(u, Placed::end);
        let remaining = self.blocks - chain.len() - 1;
        for i in 0..self.singles[pos].len() {
            let (v, w, x) = self.singles[pos][i];
            for y in 0..=self.cap {
                let b = Placed { start: pos, v, w, x, y };
                if b.end() > self.word.len() || !self.reach[remaining][b.end()] {
                    continue;
                }
                self.nodes += 1;
                chain.push(b);
                match self.grid_fails(chain) {
                    Some((exps, pumped)) => {
                        if self.failures.len() < FAILURES_KEPT {
                            self.failures.push(Failure {
                                split: Self::split_of(u, chain),
                                failing_i: Exponents::Grid(exps),
                                pumped_word: pumped,
                            });
                        }
                    }
                    None => {
                        if let Some(found) = self.dfs(u, chain) {
                            return Some(found);
                        }
                    }
                }
                chain.pop();
            }
        }
        None
    }
}

/// [`refute_multilinear_with`] at the default part cap.
pub fn refute_multilinear(oracle: &dyn LanguageOracle, k: usize, witnesses: &[Word], imax: usize) -> Result<LemmaReport> {
    refute_multilinear_with(oracle, k, witnesses, imax, DEFAULT_PART_CAP)
}

/// Searches each witness for a factorization `u v_0 w_0 x_0 y_0 … v_k w_k x_k y_k`
/// with `|v_j x_j| > 0` and every part at most `part_cap` long, whose whole
/// exponent grid `{0..min(imax, 3)}^(k+1)` stays in the language.
///
/// Blocks that fail when pumped alone are discarded up front; chains are
/// then extended block by block, and a chain prefix is dropped as soon as
/// some exponent vector over its blocks leaves the language.
pub fn refute_multilinear_with(
    oracle: &dyn LanguageOracle,
    k: usize,
    witnesses: &[Word],
    imax: usize,
    part_cap: usize,
) -> Result<LemmaReport> {
    let memo = Memo::new(oracle);
    let mut audits = Vec::new();
    for p in witnesses {
        if !memo.member(p) {
            return Err(Error::NotInLanguage(p.to_string()));
        }
        let mut search = Search::new(&memo, p, k + 1, part_cap, imax);
        let mut survivor = None;
        for u in 0..=part_cap.min(p.len()) {
            if !search.reach[k + 1][u] {
                continue;
            }
            if let Some(chain) = search.dfs(u, &mut Vec::new()) {
                let split = Search::split_of(u, &chain);
                let mut parts = Vec::with_capacity(split.len() + 1);
                let mut at = 0;
                for &c in split.iter() {
                    parts.push(p.slice(at, c));
                    at = c;
                }
                parts.push(p.slice(at, p.len()));
                survivor = Some(Survivor { split, parts });
                break;
            }
        }
        let singles: usize = search.singles.iter().map(Vec::len).sum();
        audits.push(WordAudit {
            word: p.clone(),
            n: p.len() as u64,
            factorizations_tried: search.nodes + singles,
            failures: if survivor.is_some() { Vec::new() } else { search.failures },
            survivor,
        });
    }
    let survived = audits.iter().filter(|a| a.survivor.is_some()).count();
    let verdict = if audits.is_empty() {
        Verdict::Inconclusive { reason: "no witnesses".into() }
    } else if survived == 0 {
        Verdict::RefutedOnWitnesses { witnesses: audits.len() }
    } else if survived == audits.len() {
        Verdict::SatisfiedEvidence
    } else {
        Verdict::Inconclusive { reason: format!("{survived} of {} witnesses have a surviving factorization", audits.len()) }
    };
    let max_len = witnesses.iter().map(Word::len).max().unwrap_or(0) as u64;
    let min_len = witnesses.iter().map(Word::len).min().unwrap_or(0) as u64;
    Ok(LemmaReport {
        verdict,
        lemma: LemmaId::Multilinear(k),
        k: None,
        n_range: NRange { from: min_len, to: max_len },
        imax: imax.min(GRID_CAP),
        words: audits,
        notes: vec![
            format!("part lengths capped at {part_cap}; exponents per block 0..={}", imax.min(GRID_CAP)),
            "the lemma quantifies over infinitely many words, so a finite search is evidence, not proof".into(),
            format!(
                "factorizationsTried counts single-block survivors plus chain prefixes; at most {FAILURES_KEPT} failures are listed per witness"
            ),
        ],
    })
}
