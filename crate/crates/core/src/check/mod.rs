//! Side conditions of every lemma, pump execution, bounded satisfaction
//! checks and per-`n` refutation over witness families.

mod conditions;
mod engine;
mod family;
mod multi;

use std::cell::RefCell;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extract::{Factorization, LemmaId};
use crate::oracles::LanguageOracle;
use crate::ratio::Ratio;
use crate::symbol::Word;

pub use conditions::{count_splits, valid_factorization, Validity};
pub use engine::{check_satisfaction, refute};
pub use family::{NamedFamily, Segment, WitnessFamily};
pub use multi::{refute_multilinear, refute_multilinear_with, DEFAULT_PART_CAP};

pub const DEFAULT_IMAX: usize = 4;

/// Exponent cap per block for multi-block grids.
pub const GRID_CAP: usize = 3;

/// Lemma, rate, constant `n` (the lower end of a search range) and the
/// largest pump exponent tried.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PumpSpec {
    pub lemma: LemmaId,
    pub k: Option<Ratio>,
    pub n: u64,
    pub imax: usize,
}

impl PumpSpec {
    pub fn new(lemma: LemmaId, k: Option<Ratio>, n: u64) -> PumpSpec {
        PumpSpec { lemma, k, n, imax: DEFAULT_IMAX }
    }

    pub fn with_imax(self, imax: usize) -> PumpSpec {
        PumpSpec { imax, ..self }
    }

    pub fn with_n(self, n: u64) -> PumpSpec {
        PumpSpec { n, ..self }
    }

    /// Rejects a missing rate for the fixed-rated lemmas.
    pub fn ensure_valid(&self) -> Result<()> {
        if matches!(self.lemma, LemmaId::Thm1 | LemmaId::Thm2) && self.k.is_none() {
            return Err(Error::LemmaMismatch(format!("{} needs a rate k", self.lemma)));
        }
        Ok(())
    }
}

/// `u v^i w x^i y`.
pub fn pump(f: &Factorization, i: usize) -> Word {
    f.pump(i)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Verdict {
    /// Every tested word has a factorization surviving every tested pump.
    SatisfiedEvidence,
    /// For every tested constant up to `n`, some word has no surviving
    /// factorization.
    RefutedUpTo { n: u64 },
    /// Multi-block search: no witness has a surviving factorization.
    RefutedOnWitnesses { witnesses: usize },
    Inconclusive { reason: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NRange {
    pub from: u64,
    pub to: u64,
}

/// Smallest failing exponent: one number for five-part splits, one per
/// block for multi-block splits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Exponents {
    Single(usize),
    Grid(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Failure {
    /// Cut points, in increasing order.
    pub split: Vec<usize>,
    pub failing_i: Exponents,
    pub pumped_word: Word,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Survivor {
    pub split: Vec<usize>,
    pub parts: Vec<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct WordAudit {
    pub word: Word,
    pub n: u64,
    pub factorizations_tried: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub survivor: Option<Survivor>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<Failure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LemmaReport {
    pub verdict: Verdict,
    pub lemma: LemmaId,
    pub k: Option<Ratio>,
    pub n_range: NRange,
    pub imax: usize,
    pub words: Vec<WordAudit>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl LemmaReport {
    pub fn is_refuted(&self) -> bool {
        matches!(self.verdict, Verdict::RefutedUpTo { .. } | Verdict::RefutedOnWitnesses { .. })
    }
}

/// Per-run membership cache keyed by word.
pub(crate) struct Memo<'a> {
    oracle: &'a dyn LanguageOracle,
    cache: RefCell<HashMap<Word, bool>>,
}

impl<'a> Memo<'a> {
    pub fn new(oracle: &'a dyn LanguageOracle) -> Memo<'a> {
        Memo { oracle, cache: RefCell::new(HashMap::new()) }
    }

    pub fn member(&self, w: &Word) -> bool {
        if let Some(&hit) = self.cache.borrow().get(w) {
            return hit;
        }
        let answer = self.oracle.member(w);
        self.cache.borrow_mut().insert(w.clone(), answer);
        answer
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pump_identity_and_deletion() {
        let w = Word::parse("aaabbb");
        let f = Factorization::from_cuts(LemmaId::Thm1, &w, [1, 2, 4, 5], Some(Ratio::ONE), 4);
        assert_eq!(pump(&f, 1), w);
        assert_eq!(pump(&f, 0).to_string(), "aabb");
        assert_eq!(pump(&f, 3).to_string(), "aaaaabbbbb");
    }

    #[test]
    fn report_json_round_trips() {
        let report = LemmaReport {
            verdict: Verdict::RefutedUpTo { n: 4 },
            lemma: LemmaId::Thm2,
            k: Some(Ratio::ONE),
            n_range: NRange { from: 1, to: 4 },
            imax: 3,
            words: vec![WordAudit {
                word: Word::parse("(())"),
                n: 2,
                factorizations_tried: 1,
                survivor: None,
                failures: vec![Failure {
                    split: vec![1, 2, 3, 4],
                    failing_i: Exponents::Single(0),
                    pumped_word: Word::parse("()"),
                }],
            }],
            notes: vec![],
        };
        let text = serde_json::to_string(&report).unwrap();
        assert!(text.contains(r#""verdict":{"status":"refuted-up-to","n":4}"#), "{text}");
        assert!(text.contains(r#""failingI":0"#));
        assert_eq!(serde_json::from_str::<LemmaReport>(&text).unwrap(), report);
    }

    #[test]
    fn fixed_rated_specs_need_k() {
        assert!(PumpSpec::new(LemmaId::Thm1, None, 4).ensure_valid().is_err());
        assert!(PumpSpec::new(LemmaId::BarHillel, None, 4).ensure_valid().is_ok());
    }
}
