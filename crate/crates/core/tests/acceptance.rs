//! End-to-end acceptance checks, one line each, run in order.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{all_words, bundled, BUNDLED};
use pumplab::check::{
    check_satisfaction, refute, refute_multilinear, valid_factorization, NamedFamily, PumpSpec, Verdict,
    WitnessFamily,
};
use pumplab::derive::{enumerate_uncapped, sample_words, CykParser, LinearParser, DEFAULT_MAX_STEPS};
use pumplab::extract::{
    extract_barhillel, extract_linear, extract_multilinear, extract_regular, extract_thm1, extract_thm2, lemma_constant,
    Factorization, LemmaId,
};
use pumplab::grammar::classify;
use pumplab::normal_forms::{bounded_equivalent, to_cnf, to_k_rated_nf, to_linear_unit_nf, NormalFormKind};
use pumplab::oracles::{builtin, from_grammar, from_pattern, LanguageOracle};
use pumplab::{Grammar, Ratio, Word};

type Check = Result<String, String>;
type NamedCheck = (&'static str, fn() -> Check);

fn ratio(text: &str) -> Ratio {
    text.parse().unwrap()
}

fn expect_verdict(got: &Verdict, want: &Verdict, what: &str) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: expected {want:?}, got {got:?}"))
    }
}

fn timed<T>(limit: Duration, what: &str, f: impl FnOnce() -> T) -> Result<(T, Duration), String> {
    let start = Instant::now();
    let value = f();
    let took = start.elapsed();
    if took > limit {
        return Err(format!("{what} took {took:.1?}, limit {limit:?}"));
    }
    Ok((value, took))
}

/// `(ab)^n aa (bbb)^m a`
fn half_rated_word(n: usize, m: usize) -> Word {
    Word::parse(&format!("{}aa{}a", "ab".repeat(n), "bbb".repeat(m)))
}

/// Pairs `(n, m)` in a case, shortest word first, with words at least `min_len` long.
fn case_words(min_len: usize, case: impl Fn(i64, i64) -> bool) -> Vec<(usize, usize, Word)> {
    let mut out: Vec<(usize, usize, Word)> = (0..80usize)
        .flat_map(|n| (0..60usize).map(move |m| (n, m)))
        .filter(|&(n, m)| case(n as i64, m as i64))
        .map(|(n, m)| (n, m, half_rated_word(n, m)))
        .filter(|(_, _, w)| w.len() >= min_len)
        .collect();
    out.sort_by_key(|(n, _, w)| (w.len(), *n));
    out
}

type Case = fn(i64, i64) -> bool;

/// Rows of the thm1 table: case, then `u`, `v`, `x`, `y`.
const THM1_ROWS: &[(&str, Case, [&str; 4])] = &[
    ("n>3, m>0", |n, m| n > 3 && m > 0, ["ab", "ababab", "bbb", "a"]),
    ("m=0", |_, m| m == 0, ["ababab", "abab", "ab", "aaa"]),
    ("n=3", |n, _| n == 3, ["abababaa", "bb", "b", "bbba"]),
    ("n=2", |n, _| n == 2, ["ababaa", "bb", "b", "bba"]),
    ("n=1", |n, _| n == 1, ["abaa", "bb", "b", "ba"]),
    ("n=0", |n, _| n == 0, ["aa", "bb", "b", "a"]),
];

/// Rows of the thm2 table: case, then `v`, `w`, `x`.
const THM2_ROWS: &[(&str, Case, [&str; 3])] = &[
    ("n<=3m-4", |n, m| n <= 3 * m - 4, ["bb", "b", "b"]),
    ("n=3m-3", |n, m| n == 3 * m - 3, ["ababab", "aabbbb", "bbb"]),
    ("n=3m-2", |n, m| n == 3 * m - 2, ["ababab", "abaabbbb", "bbb"]),
    ("n=3m-1", |n, m| n == 3 * m - 1, ["ababab", "ababaabbbb", "bbb"]),
    ("n=3m", |n, m| n == 3 * m, ["ababab", "aab", "bbb"]),
    ("n=3m+1", |n, m| n == 3 * m + 1, ["ababab", "abaab", "bbb"]),
    ("n=3m+2", |n, m| n == 3 * m + 2, ["ababab", "ababaab", "bbb"]),
    ("n=3m+3", |n, m| n == 3 * m + 3, ["ababab", "abababaab", "bbb"]),
    ("n=3m+4", |n, m| n == 3 * m + 4, ["ababab", "ababababaab", "bbb"]),
    ("n=3m+5", |n, m| n == 3 * m + 5, ["ababab", "abababababaab", "bbb"]),
    ("n>=3m+6, n=0 mod 3", |n, m| n >= 3 * m + 6 && n % 3 == 0, ["abab", "", "ab"]),
    ("n>=3m+7, n=1 mod 3", |n, m| n >= 3 * m + 7 && n % 3 == 1, ["abab", "ab", "ab"]),
    ("n>=3m+8, n=2 mod 3", |n, m| n >= 3 * m + 8 && n % 3 == 2, ["abab", "abab", "ab"]),
];

/// Thm1 rows fix `u, v, x, y`; `w` is what lies between.
fn place_thm1(p: &Word, [u, v, x, y]: [&str; 4], n: u64, k: Ratio) -> Option<Factorization> {
    let text = p.to_string();
    let (head, tail) = (format!("{u}{v}"), format!("{x}{y}"));
    if head.len() + tail.len() > text.len() || !text.starts_with(&head) || !text.ends_with(&tail) {
        return None;
    }
    let cuts = [u.len(), head.len(), text.len() - tail.len(), text.len() - y.len()];
    Some(Factorization::from_cuts(LemmaId::Thm1, p, cuts, Some(k), n))
}

/// Thm2 rows fix `v, w, x`; `u` and `y` follow from `h·|y| = g·|u|`.
fn place_thm2(p: &Word, [v, w, x]: [&str; 3], n: u64, k: Ratio) -> Option<Factorization> {
    let text = p.to_string();
    let mid = format!("{v}{w}{x}");
    let rest = text.len().checked_sub(mid.len())?;
    let (g, h) = (k.g() as usize, k.h() as usize);
    if rest * h % (g + h) != 0 {
        return None;
    }
    let u = rest * h / (g + h);
    if text[u..].starts_with(&mid) {
        let cuts = [u, u + v.len(), u + v.len() + w.len(), u + mid.len()];
        Some(Factorization::from_cuts(LemmaId::Thm2, p, cuts, Some(k), n))
    } else {
        None
    }
}

fn row_verdict(
    f: Option<Factorization>,
    lemma: LemmaId,
    k: Ratio,
    n: u64,
    oracle: &dyn LanguageOracle,
) -> Result<(), String> {
    let f = f.ok_or("no word in the case admits the split")?;
    let validity = valid_factorization(&f, &PumpSpec::new(lemma, Some(k), n), f.word.len()).map_err(|e| e.to_string())?;
    if !validity.valid {
        return Err(format!("{} violates {}", f.word, validity.violated.unwrap_or_default()));
    }
    match (0..=3).find(|&i| !oracle.member(&f.pump(i))) {
        Some(i) => Err(format!("{} leaves the language at i={i}", f.word)),
        None => Ok(()),
    }
}

fn half_rated_table() -> Check {
    let k = ratio("1/2");
    let g = bundled("rate-1-2");
    let n1 = lemma_constant(&g, LemmaId::Thm1, Some(k)).map_err(|e| e.to_string())?;
    let n2 = lemma_constant(&g, LemmaId::Thm2, Some(k)).map_err(|e| e.to_string())?;
    let oracle = from_pattern("(ab)*aa(bbb)*a").unwrap();
    let mut failures = Vec::new();
    let mut passed = 0;
    for (case, pred, parts) in THM1_ROWS {
        let f = case_words(n1 as usize, pred).iter().find_map(|(_, _, p)| place_thm1(p, *parts, n1, k));
        match row_verdict(f, LemmaId::Thm1, k, n1, &oracle) {
            Ok(()) => passed += 1,
            Err(e) => failures.push(format!("thm1 {case}: {e}")),
        }
    }
    for (case, pred, parts) in THM2_ROWS {
        let f = case_words(n2 as usize, pred).iter().find_map(|(_, _, p)| place_thm2(p, *parts, n2, k));
        match row_verdict(f, LemmaId::Thm2, k, n2, &oracle) {
            Ok(()) => passed += 1,
            Err(e) => failures.push(format!("thm2 {case}: {e}")),
        }
    }
    let total = THM1_ROWS.len() + THM2_ROWS.len();
    let summary = format!("{passed}/{total} rows at n = {n1}");
    if failures.is_empty() {
        Ok(summary)
    } else {
        Err(format!("{summary}; {}", failures.join("; ")))
    }
}

fn palindrome_symmetry() -> Check {
    let o = builtin("palindrome", None).unwrap();
    let n = lemma_constant(&bundled("palindrome"), LemmaId::Thm1, Some(Ratio::ONE)).map_err(|e| e.to_string())?;
    let report = check_satisfaction(o.as_ref(), &PumpSpec::new(LemmaId::Thm1, Some(Ratio::ONE), n), 10)
        .map_err(|e| e.to_string())?;
    expect_verdict(&report.verdict, &Verdict::SatisfiedEvidence, "verdict")?;
    for a in &report.words {
        let parts = &a.survivor.as_ref().ok_or("word without survivor")?.parts;
        let (u, v, w, x, y) = (&parts[0], &parts[1], &parts[2], &parts[3], &parts[4]);
        if *u != y.reversed() || *v != x.reversed() || *w != w.reversed() {
            return Err(format!("{}: asymmetric split {parts:?}", a.word));
        }
    }
    Ok(format!("{} words of length {n}..=10, all symmetric", report.words.len()))
}

fn dyck_refutation() -> Check {
    let o = builtin("dyck", None).unwrap();
    let limit = Duration::from_secs(30);
    let family = WitnessFamily::parse("(^(2*n))^(2*n)(^(2*n))^(2*n)").unwrap();
    let spec = PumpSpec::new(LemmaId::Thm2, Some(Ratio::ONE), 1).with_imax(3);
    let (r, t1) = timed(limit, "thm2", || refute(o.as_ref(), &spec, 4, &family))?;
    expect_verdict(&r.map_err(|e| e.to_string())?.verdict, &Verdict::RefutedUpTo { n: 4 }, "thm2 k=1/1")?;
    let family = WitnessFamily::parse("(^(3*n+6))^(3*n+6)").unwrap();
    let spec = PumpSpec::new(LemmaId::Thm1, Some(ratio("1/2")), 1);
    let (r, t2) = timed(limit, "thm1", || refute(o.as_ref(), &spec, 3, &family))?;
    expect_verdict(&r.map_err(|e| e.to_string())?.verdict, &Verdict::RefutedUpTo { n: 3 }, "thm1 k=1/2")?;
    Ok(format!("thm2 k=1/1 refuted up to 4 ({t1:.1?}); thm1 k=1/2 refuted up to 3 ({t2:.1?})"))
}

fn bar_hillel_refutation() -> Check {
    let o = builtin("anbncn", None).unwrap();
    let family = WitnessFamily::parse("a^n b^n c^n").unwrap();
    let spec = PumpSpec::new(LemmaId::BarHillel, None, 1).with_imax(2);
    let r = refute(o.as_ref(), &spec, 6, &family).map_err(|e| e.to_string())?;
    expect_verdict(&r.verdict, &Verdict::RefutedUpTo { n: 6 }, "bar-hillel")?;
    Ok("a^n b^n c^n refuted up to 6".into())
}

fn linear_refutation() -> Check {
    let o = builtin("abcd", None).unwrap();
    let family = WitnessFamily::parse("a^n b^n c^n d^n").unwrap();
    let r = refute(o.as_ref(), &PumpSpec::new(LemmaId::Linear, None, 1), 5, &family).map_err(|e| e.to_string())?;
    expect_verdict(&r.verdict, &Verdict::RefutedUpTo { n: 5 }, "linear")?;
    Ok("a^n b^n c^n d^n refuted up to 5".into())
}

fn square_language_contrast() -> Check {
    let o = builtin("primesquare", None).unwrap();
    let family = WitnessFamily::Named(NamedFamily::EvenlinSquare);
    let r = refute(o.as_ref(), &PumpSpec::new(LemmaId::Thm2, Some(Ratio::ONE), 1), 3, &family)
        .map_err(|e| e.to_string())?;
    expect_verdict(&r.verdict, &Verdict::RefutedUpTo { n: 3 }, "thm2 k=1/1")?;
    let (n, max_len) = (10, 13);
    let regular = check_satisfaction(o.as_ref(), &PumpSpec::new(LemmaId::Regular, Some(Ratio::ZERO), n), max_len)
        .map_err(|e| e.to_string())?;
    expect_verdict(&regular.verdict, &Verdict::SatisfiedEvidence, "regular lemma")?;
    Ok(format!(
        "thm2 refuted up to 3; regular lemma satisfied on the {} words of length {n}..={max_len}",
        regular.words.len()
    ))
}

/// Words of `g` with `n <= |p| <= n + 6`: all of them when `exhaustive`,
/// otherwise a seeded sample per length from the Chomsky normal form.
fn sweep_words(g: &Grammar, n: u64, exhaustive: bool) -> Vec<Word> {
    let (lo, hi) = (n as usize, n as usize + 6);
    if exhaustive {
        enumerate_uncapped(g, hi).unwrap().into_iter().filter(|w| w.len() >= lo).collect()
    } else {
        let cnf = to_cnf(g).unwrap();
        (lo..=hi).flat_map(|len| sample_words(&cnf, len, 2, len as u64).unwrap()).collect()
    }
}

/// Extracts from every sweep word and checks reassembly, side conditions
/// and pumps `0..=4` against the original grammar's parser.
fn sweep_one(
    label: &str,
    nf: &Grammar,
    spec: PumpSpec,
    exhaustive: bool,
    oracle: &dyn LanguageOracle,
    extract: impl Fn(&Grammar, &Word) -> pumplab::Result<Factorization>,
) -> Result<usize, String> {
    let n = lemma_constant(nf, spec.lemma, spec.k).map_err(|e| format!("{label}: {e}"))?;
    let spec = spec.with_n(n);
    let words = sweep_words(nf, n, exhaustive);
    for p in &words {
        let f = extract(nf, p).map_err(|e| format!("{label} {p}: {e}"))?;
        if f.reassemble() != *p {
            return Err(format!("{label} {p}: parts do not reassemble"));
        }
        let validity = valid_factorization(&f, &spec, p.len()).map_err(|e| e.to_string())?;
        if !validity.valid {
            return Err(format!("{label} {p}: {}", validity.violated.unwrap_or_default()));
        }
        if let Some(i) = (0..=4).find(|&i| !oracle.member(&f.pump(i))) {
            return Err(format!("{label} {p}: pump {i} leaves the language"));
        }
    }
    Ok(words.len())
}

fn multi_sweep(g: &Grammar, k: usize, oracle: &dyn LanguageOracle) -> Result<(), String> {
    let (f, witness) = extract_multilinear(g, k, DEFAULT_MAX_STEPS).map_err(|e| e.to_string())?;
    if f.reassemble() != witness || !oracle.member(&witness) {
        return Err(format!("multilinear({k}): witness {witness} not reproduced"));
    }
    let mut exps = vec![0usize; k + 1];
    loop {
        if !oracle.member(&f.pump(&exps)) {
            return Err(format!("multilinear({k}): pump {exps:?} leaves the language"));
        }
        let Some(j) = exps.iter().position(|&e| e < 4) else { return Ok(()) };
        exps[j] += 1;
        exps[..j].iter_mut().for_each(|e| *e = 0);
    }
}

fn extractor_sweep() -> Check {
    let mut counts = Vec::new();
    for (name, _) in BUNDLED {
        let g = bundled(name);
        let class = classify(&g).map_err(|e| e.to_string())?;
        let oracle = from_grammar(&g).map_err(|e| e.to_string())?;
        let mut total = 0;
        if let Some(k) = class.k_rated {
            let nf = to_k_rated_nf(&g, k).map_err(|e| e.to_string())?;
            let spec = PumpSpec::new(LemmaId::Thm1, Some(k), 0);
            total += sweep_one(&format!("{name} thm1"), &nf, spec, true, &oracle, |g, p| extract_thm1(g, p, Some(k)))?;
            let spec = PumpSpec::new(LemmaId::Thm2, Some(k), 0);
            total += sweep_one(&format!("{name} thm2"), &nf, spec, true, &oracle, |g, p| extract_thm2(g, p, Some(k)))?;
        }
        if class.regular {
            let nf = to_k_rated_nf(&g, Ratio::ZERO).map_err(|e| e.to_string())?;
            let spec = PumpSpec::new(LemmaId::Regular, Some(Ratio::ZERO), 0);
            total += sweep_one(&format!("{name} regular"), &nf, spec, true, &oracle, |g, p| {
                extract_regular(g, p).map(|r| r.to_factorization())
            })?;
        }
        if class.linear {
            let nf = to_linear_unit_nf(&g).map_err(|e| e.to_string())?;
            let spec = PumpSpec::new(LemmaId::Linear, None, 0);
            total += sweep_one(&format!("{name} linear"), &nf, spec, true, &oracle, extract_linear)?;
        } else {
            let nf = to_cnf(&g).map_err(|e| e.to_string())?;
            let spec = PumpSpec::new(LemmaId::BarHillel, None, 0);
            total += sweep_one(&format!("{name} bar-hillel"), &nf, spec, false, &oracle, extract_barhillel)?;
            if let Some(k) = class.k_linear.filter(|&k| k > 1) {
                multi_sweep(&g, k - 1, &oracle)?;
            }
        }
        counts.push(format!("{name} {total}"));
    }
    Ok(format!("words checked: {}", counts.join(", ")))
}

fn normal_form_fidelity() -> Check {
    let mut checked = 0;
    for (name, _) in BUNDLED {
        let g = bundled(name);
        let class = classify(&g).map_err(|e| e.to_string())?;
        let mut outputs = vec![("cnf", to_cnf(&g).map_err(|e| e.to_string())?)];
        if class.linear {
            outputs.push(("linear-unit", to_linear_unit_nf(&g).map_err(|e| e.to_string())?));
        }
        if let Some(k) = class.k_rated {
            let nf = to_k_rated_nf(&g, k).map_err(|e| e.to_string())?;
            if let Some(why) = NormalFormKind::KRated(k).violation(&nf) {
                return Err(format!("{name}: k-rated output not in shape: {why}"));
            }
            outputs.push(("k-rated", nf));
        }
        for (form, out) in outputs {
            let e = bounded_equivalent(&g, &out, 12).map_err(|e| e.to_string())?;
            if !e.equivalent || !e.lambda_agrees {
                return Err(format!("{name} {form}: differs at {:?}", e.witness));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} transformations equivalent up to length 12"))
}

fn oracle_triangle() -> Check {
    let mut total = 0usize;
    for (name, _) in BUNDLED {
        let g = bundled(name);
        let linear = classify(&g).map_err(|e| e.to_string())?.linear;
        let cyk = CykParser::new(&to_cnf(&g).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let trace = if linear { Some(LinearParser::new(&g).map_err(|e| e.to_string())?) } else { None };
        let listed = enumerate_uncapped(&g, 10).map_err(|e| e.to_string())?;
        let alphabet = g.terminal_alphabet();
        let mut disagreement = None;
        all_words(&alphabet, 10, |w| {
            if disagreement.is_some() {
                return;
            }
            total += 1;
            let by_cyk = cyk.parse(w).is_some();
            let by_list = listed.contains(w);
            let by_trace = trace.as_ref().map_or(by_cyk, |t| t.parse(w).is_some());
            if by_cyk != by_list || by_trace != by_list {
                disagreement = Some(format!("{name} {w}: cyk {by_cyk}, trace {by_trace}, enumerate {by_list}"));
            }
        });
        if let Some(d) = disagreement {
            return Err(d);
        }
    }
    Ok(format!("{total} words agree"))
}

/// `a^l b^l a^m b^m a^n b^n` with `l, m, n >= 1` and length at most `max_len`.
fn three_pair_words(max_len: usize) -> Vec<Word> {
    let half = max_len / 2;
    let mut out = Vec::new();
    for l in 1..=half {
        for m in 1..=half - l {
            for n in 1..=half.saturating_sub(l + m) {
                let pair = |k: usize| format!("{}{}", "a".repeat(k), "b".repeat(k));
                out.push(Word::parse(&format!("{}{}{}", pair(l), pair(m), pair(n))));
            }
        }
    }
    out
}

fn multilinear_contrast() -> Check {
    let limit = Duration::from_secs(120);
    let l2 = builtin("l2", Some("powers")).unwrap();
    let l2_words: Vec<Word> = three_pair_words(30).into_iter().filter(|w| l2.member(w)).collect();
    let (r2, t2) = timed(limit, "l2", || refute_multilinear(l2.as_ref(), 3, &l2_words, 3))?;
    let r2 = r2.map_err(|e| e.to_string())?;
    expect_verdict(&r2.verdict, &Verdict::RefutedOnWitnesses { witnesses: l2_words.len() }, "l2 k=3")?;
    let l1 = builtin("l1", None).unwrap();
    let l1_words = three_pair_words(30);
    let (r1, t1) = timed(limit, "l1", || refute_multilinear(l1.as_ref(), 2, &l1_words, 3))?;
    expect_verdict(&r1.map_err(|e| e.to_string())?.verdict, &Verdict::SatisfiedEvidence, "l1 k=2")?;
    Ok(format!(
        "l2 k=3: no survivor on {} witnesses ({t2:.1?}); l1 k=2: survivor on all {} ({t1:.1?})",
        l2_words.len(),
        l1_words.len()
    ))
}

fn main() -> ExitCode {
    let checks: [NamedCheck; 10] = [
        ("half-rated factorization table", half_rated_table),
        ("palindrome symmetry", palindrome_symmetry),
        ("DYCK refutation", dyck_refutation),
        ("Bar-Hillel refutation", bar_hillel_refutation),
        ("linear-lemma refutation", linear_refutation),
        ("square language contrast", square_language_contrast),
        ("extractor soundness sweep", extractor_sweep),
        ("normal-form fidelity", normal_form_fidelity),
        ("oracle triangle", oracle_triangle),
        ("multilinear contrast", multilinear_contrast),
    ];
    let mut failed = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        match result {
            Ok(detail) => println!("[{:>2}] PASS {name} ({took:.1?}): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[{:>2}] FAIL {name} ({took:.1?}): {detail}", i + 1);
            }
        }
    }
    println!("{} of {} checks passed", checks.len() - failed, checks.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
