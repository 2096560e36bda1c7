use super::conditions::Conditions;
use super::{Exponents, Failure, LemmaReport, Memo, NRange, PumpSpec, Survivor, Verdict, WitnessFamily, WordAudit};
use crate::error::{Error, Result};
use crate::extract::{Factorization, LemmaId};
use crate::oracles::LanguageOracle;
use crate::symbol::Word;

/// Tries every split of `word` allowed at `n`, in lexicographic order of
/// cut points, until one survives all pumps `0..=imax`. A word with a
/// survivor is audited by its survivor alone; a word without one lists
/// every failing split with its smallest failing exponent.
fn audit_word(memo: &Memo, cond: &Conditions, lemma: LemmaId, word: &Word, n: u64, imax: usize) -> WordAudit {
    let mut audit = WordAudit { word: word.clone(), n, factorizations_tried: 0, survivor: None, failures: Vec::new() };
    cond.for_each_split(word.len(), |cuts| {
        audit.factorizations_tried += 1;
        let f = Factorization::from_cuts(lemma, word, cuts, None, n);
        let failing = (0..=imax).find_map(|i| {
            let pumped = f.pump(i);
            (!memo.member(&pumped)).then_some((i, pumped))
        });
        match failing {
            Some((i, pumped)) => {
                audit.failures.push(Failure { split: cuts.to_vec(), failing_i: Exponents::Single(i), pumped_word: pumped });
                true
            }
            None => {
                audit.survivor = Some(Survivor { split: cuts.to_vec(), parts: f.parts().map(Word::clone).to_vec() });
                false
            }
        }
    });
    if audit.survivor.is_some() {
        audit.failures.clear();
    }
    audit
}

/// Bounded satisfaction check: every oracle word `p` with
/// `spec.n ≤ |p| ≤ max_len` must have a split meeting the lemma's
/// conditions at `spec.n` that survives all pumps `0..=spec.imax`.
///
/// A word without such a split refutes the lemma at `spec.n`, and so at
/// every smaller constant, since smaller constants only tighten the bounds.
pub fn check_satisfaction(oracle: &dyn LanguageOracle, spec: &PumpSpec, max_len: usize) -> Result<LemmaReport> {
    let cond = Conditions::new(spec)?;
    let memo = Memo::new(oracle);
    let words: Vec<Word> = oracle.enumerate(max_len)?.into_iter().filter(|w| w.len() as u64 >= spec.n).collect();
    if words.is_empty() {
        return Err(Error::Inconclusive(format!(
            "{} has no word with {} <= length <= {max_len}",
            oracle.id(),
            spec.n
        )));
    }
    let audits: Vec<WordAudit> =
        words.iter().map(|w| audit_word(&memo, &cond, spec.lemma, w, spec.n, spec.imax)).collect();
    let verdict = if audits.iter().all(|a| a.survivor.is_some()) {
        Verdict::SatisfiedEvidence
    } else {
        Verdict::RefutedUpTo { n: spec.n }
    };
    Ok(LemmaReport {
        verdict,
        lemma: spec.lemma,
        k: spec.k,
        n_range: NRange { from: spec.n, to: spec.n },
        imax: spec.imax,
        words: audits,
        notes: vec![format!("{}: every word of length {}..={max_len}", oracle.id(), spec.n)],
    })
}

/// Refutation over a witness family: for each `n` in `spec.n..=nmax`
/// (from 1 when `spec.n` is 0), every split of `p_n` meeting the
/// conditions at `n` must fail some pump `i ≤ spec.imax`. Any survivor
/// makes the verdict inconclusive.
pub fn refute(oracle: &dyn LanguageOracle, spec: &PumpSpec, nmax: u64, family: &WitnessFamily) -> Result<LemmaReport> {
    spec.ensure_valid()?;
    if spec.lemma.blocks() > 1 {
        return Err(Error::LemmaMismatch(format!("{} needs the multi-block refuter", spec.lemma)));
    }
    let memo = Memo::new(oracle);
    let from = spec.n.max(1);
    let mut audits = Vec::new();
    let mut first_survivor = None;
    for n in from..=nmax {
        let cond = Conditions::new(&spec.with_n(n))?;
        let p = family.instantiate(n);
        if (p.len() as u64) < n {
            return Err(Error::WordTooShort { len: p.len(), n });
        }
        if !memo.member(&p) {
            return Err(Error::NotInLanguage(p.to_string()));
        }
        let audit = audit_word(&memo, &cond, spec.lemma, &p, n, spec.imax);
        if first_survivor.is_none() {
            first_survivor = audit.survivor.as_ref().map(|s| (n, s.split.clone()));
        }
        audits.push(audit);
    }
    let verdict = match first_survivor {
        None => Verdict::RefutedUpTo { n: nmax },
        Some((n, split)) => Verdict::Inconclusive {
            reason: format!("split {split:?} of p_{n} survives every pump i <= {}", spec.imax),
        },
    };
    Ok(LemmaReport {
        verdict,
        lemma: spec.lemma,
        k: spec.k,
        n_range: NRange { from, to: nmax },
        imax: spec.imax,
        words: audits,
        notes: vec![format!("family {family}; only the constants {from}..={nmax} were tested")],
    })
}
