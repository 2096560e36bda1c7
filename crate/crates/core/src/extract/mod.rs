//! Constructive factorizations: one extractor per pumping lemma, each
//! reading a parse of a long word and returning the pumpable split.

mod bar_hillel;
mod multilinear;
mod trace;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::grammar::{classify, Grammar};
use crate::normal_forms::{to_cnf, to_k_rated_nf, to_linear_unit_nf, NormalFormKind};
use crate::ratio::Ratio;
use crate::symbol::Word;

pub use bar_hillel::extract_barhillel;
pub use multilinear::extract_multilinear;
pub use trace::{extract_linear, extract_regular, extract_thm1, extract_thm2};

/// Which lemma a factorization claims to satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LemmaId {
    Regular,
    Linear,
    BarHillel,
    /// Fixed-rated linear lemma with a bounded prefix and suffix.
    Thm1,
    /// Fixed-rated linear lemma with a bounded middle.
    Thm2,
    /// Two independently pumped pairs.
    NonlinearCf,
    /// `k + 1` independently pumped pairs.
    Multilinear(usize),
}

impl LemmaId {
    /// Number of independently pumped pairs.
    pub fn blocks(&self) -> usize {
        match self {
            LemmaId::NonlinearCf => 2,
            LemmaId::Multilinear(k) => k + 1,
            _ => 1,
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LemmaId::Regular => f.write_str("regular"),
            LemmaId::Linear => f.write_str("linear"),
            LemmaId::BarHillel => f.write_str("bar-hillel"),
            LemmaId::Thm1 => f.write_str("thm1"),
            LemmaId::Thm2 => f.write_str("thm2"),
            LemmaId::NonlinearCf => f.write_str("nonlinear-cf"),
            LemmaId::Multilinear(k) => write!(f, "multilinear({k})"),
        }
    }
}

impl FromStr for LemmaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<LemmaId> {
        let s = s.trim();
        Ok(match s {
            "regular" => LemmaId::Regular,
            "linear" => LemmaId::Linear,
            "bar-hillel" | "barhillel" => LemmaId::BarHillel,
            "thm1" => LemmaId::Thm1,
            "thm2" => LemmaId::Thm2,
            "nonlinear-cf" => LemmaId::NonlinearCf,
            _ => {
                let k = s
                    .strip_prefix("multilinear(")
                    .and_then(|r| r.strip_suffix(')'))
                    .and_then(|k| k.trim().parse().ok())
                    .ok_or_else(|| Error::LemmaMismatch(format!("unknown lemma `{s}`")))?;
                LemmaId::Multilinear(k)
            }
        })
    }
}

impl Serialize for LemmaId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LemmaId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A five-part split `p = u v w x y` extracted under lemma constant `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub lemma: LemmaId,
    pub word: Word,
    pub u: Word,
    pub v: Word,
    pub w: Word,
    pub x: Word,
    pub y: Word,
    pub k: Option<Ratio>,
    pub n: u64,
    /// Remarks about degenerate cases, e.g. an empty `u` under a ratio clause.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Factorization {
    /// Splits `word` at the four cut points `c0 ≤ c1 ≤ c2 ≤ c3`.
    pub fn from_cuts(lemma: LemmaId, word: &Word, cuts: [usize; 4], k: Option<Ratio>, n: u64) -> Factorization {
        let [a, b, c, d] = cuts;
        Factorization {
            lemma,
            word: word.clone(),
            u: word.slice(0, a),
            v: word.slice(a, b),
            w: word.slice(b, c),
            x: word.slice(c, d),
            y: word.slice(d, word.len()),
            k,
            n,
            notes: Vec::new(),
        }
    }

    pub fn parts(&self) -> [&Word; 5] {
        [&self.u, &self.v, &self.w, &self.x, &self.y]
    }

    pub fn reassemble(&self) -> Word {
        Word::concat(self.parts())
    }

    /// `u v^i w x^i y`.
    pub fn pump(&self, i: usize) -> Word {
        Word::concat([&self.u, &self.v.repeat(i), &self.w, &self.x.repeat(i), &self.y])
    }

    /// The cut points `(|u|, |uv|, |uvw|, |uvwx|)`.
    pub fn cuts(&self) -> [usize; 4] {
        let a = self.u.len();
        let b = a + self.v.len();
        let c = b + self.w.len();
        [a, b, c, c + self.x.len()]
    }
}

/// A three-part split `p = u v w` for the regular lemma.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularFactorization {
    pub word: Word,
    pub u: Word,
    pub v: Word,
    pub w: Word,
    pub n: u64,
}

impl RegularFactorization {
    pub fn pump(&self, i: usize) -> Word {
        Word::concat([&self.u, &self.v.repeat(i), &self.w])
    }

    /// The same split as a five-part factorization with `x = y = λ`.
    pub fn to_factorization(&self) -> Factorization {
        Factorization {
            lemma: LemmaId::Regular,
            word: self.word.clone(),
            u: self.u.clone(),
            v: self.v.clone(),
            w: self.w.clone(),
            x: Word::empty(),
            y: Word::empty(),
            k: Some(Ratio::ZERO),
            n: self.n,
            notes: Vec::new(),
        }
    }
}

/// One independently pumped quadruple `v_j w_j x_j y_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub v: Word,
    pub w: Word,
    pub x: Word,
    pub y: Word,
}

/// `p = u v_0 w_0 x_0 y_0 … v_k w_k x_k y_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiFactorization {
    pub lemma: LemmaId,
    pub word: Word,
    pub u: Word,
    pub blocks: Vec<Block>,
}

impl MultiFactorization {
    pub fn reassemble(&self) -> Word {
        self.pump(&vec![1; self.blocks.len()])
    }

    /// Pumps block `j` with exponent `exps[j]`.
    pub fn pump(&self, exps: &[usize]) -> Word {
        let mut out = self.u.clone();
        for (b, &i) in self.blocks.iter().zip(exps) {
            out.extend_from(&b.v.repeat(i));
            out.extend_from(&b.w);
            out.extend_from(&b.x.repeat(i));
            out.extend_from(&b.y);
        }
        out
    }
}

fn shape(g: &Grammar, kind: NormalFormKind) -> Result<()> {
    match kind.violation(g) {
        None => Ok(()),
        Some(reason) => Err(Error::ShapeMismatch { form: kind.to_string(), reason }),
    }
}

/// The rate a fixed-rated lemma runs under: `k` when given, otherwise the
/// rate detected by [`classify`].
pub(crate) fn rate_for(g: &Grammar, k: Option<Ratio>) -> Result<Ratio> {
    match k {
        Some(k) => Ok(k),
        None => classify(g)?.k_rated.ok_or_else(|| Error::NotKRated {
            ratio: "any".into(),
            reason: "grammar has no fixed rate".into(),
        }),
    }
}

/// The lemma constant `n` for a grammar already in the normal form the lemma
/// is proved for:
///
/// * `thm1`, `thm2`: `(|N| + 1)(g + h)`; every step of the normal form emits
///   `g + h` letters, so longer words repeat a nonterminal within `|N| + 1`
///   steps.
/// * `bar-hillel`: `2^(|N| + 1)` on CNF; a longer word has a derivation tree
///   with a root-leaf path of more than `|N| + 1` nonterminals.
/// * `linear`: `2(|N| + 1)` on the linear-unit form, one letter per step.
/// * `regular`: `|N| + 1` on `A → aB | λ`, one letter per step.
pub fn lemma_constant(g: &Grammar, lemma: LemmaId, k: Option<Ratio>) -> Result<u64> {
    g.ensure_valid()?;
    let nn = g.nonterminals.len() as u64;
    match lemma {
        LemmaId::Thm1 | LemmaId::Thm2 => {
            let k = rate_for(g, k)?;
            shape(g, NormalFormKind::KRated(k))?;
            Ok((nn + 1) * k.step_len())
        }
        LemmaId::BarHillel => {
            shape(g, NormalFormKind::Chomsky)?;
            Ok(1u64.checked_shl((nn + 1) as u32).unwrap_or(u64::MAX))
        }
        LemmaId::Linear => {
            shape(g, NormalFormKind::LinearUnit)?;
            Ok(2 * (nn + 1))
        }
        LemmaId::Regular => {
            shape(g, NormalFormKind::Regular)?;
            Ok(nn + 1)
        }
        LemmaId::NonlinearCf | LemmaId::Multilinear(_) => {
            Err(Error::LemmaMismatch(format!("{lemma} has no word-length constant")))
        }
    }
}

/// The grammar in the normal form `lemma` is proved for, with the rate the
/// fixed-rated lemmas run under; a grammar already in that form is kept.
pub fn normal_form_for(g: &Grammar, lemma: LemmaId, k: Option<Ratio>) -> Result<(Grammar, Option<Ratio>)> {
    let keep_or = |kind: NormalFormKind, convert: &dyn Fn(&Grammar) -> Result<Grammar>| {
        if kind.holds(g) {
            Ok(g.clone())
        } else {
            convert(g)
        }
    };
    match lemma {
        LemmaId::Thm1 | LemmaId::Thm2 => {
            let k = rate_for(g, k)?;
            Ok((keep_or(NormalFormKind::KRated(k), &|g| to_k_rated_nf(g, k))?, Some(k)))
        }
        LemmaId::BarHillel => Ok((keep_or(NormalFormKind::Chomsky, &to_cnf)?, None)),
        LemmaId::Linear => Ok((keep_or(NormalFormKind::LinearUnit, &to_linear_unit_nf)?, None)),
        LemmaId::Regular => Ok((keep_or(NormalFormKind::Regular, &|g| to_k_rated_nf(g, Ratio::ZERO))?, None)),
        LemmaId::NonlinearCf | LemmaId::Multilinear(_) => {
            Err(Error::LemmaMismatch(format!("{lemma} factorizes a witness of its own choosing")))
        }
    }
}

/// Brings `g` into the normal form of `lemma` and factorizes `p` there.
pub fn extract_for(g: &Grammar, lemma: LemmaId, p: &Word, k: Option<Ratio>) -> Result<Factorization> {
    let (nf, k) = normal_form_for(g, lemma, k)?;
    match lemma {
        LemmaId::Thm1 => extract_thm1(&nf, p, k),
        LemmaId::Thm2 => extract_thm2(&nf, p, k),
        LemmaId::BarHillel => extract_barhillel(&nf, p),
        LemmaId::Linear => extract_linear(&nf, p),
        _ => extract_regular(&nf, p).map(|r| r.to_factorization()),
    }
}

/// Shared preconditions: the word is long enough and in the language.
fn check_length(p: &Word, n: u64) -> Result<()> {
    if (p.len() as u64) < n {
        return Err(Error::WordTooShort { len: p.len(), n });
    }
    Ok(())
}
