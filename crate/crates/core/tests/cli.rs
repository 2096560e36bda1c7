mod common;

use std::process::{Command, Output};

use common::{bundled, grammar_path};
use pumplab::check::{LemmaReport, Verdict};
use pumplab::derive::{enumerate, DerivationTree, LinearTrace};
use pumplab::extract::{extract_thm1, Factorization};
use pumplab::grammar::{classify, ClassReport};
use pumplab::normal_forms::{bounded_equivalent, to_k_rated_nf, NormalFormKind};
use pumplab::{Grammar, Ratio, Word};

fn pumplab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pumplab")).args(args).output().expect("binary runs")
}

fn path(name: &str) -> String {
    grammar_path(name).display().to_string()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json<T: serde::de::DeserializeOwned + serde::Serialize + PartialEq + std::fmt::Debug>(out: &Output) -> T {
    let value: T = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(out)));
    let again: T = serde_json::from_str(&serde_json::to_string(&value).unwrap()).unwrap();
    assert_eq!(again, value);
    value
}

/// `a^m b^m` with `m >= 1`, decided by counting.
fn in_anbn(w: &Word) -> bool {
    let s = w.to_string();
    let m = s.len() / 2;
    m > 0 && s.len().is_multiple_of(2) && s[..m].bytes().all(|c| c == b'a') && s[m..].bytes().all(|c| c == b'b')
}

fn leaves(t: &DerivationTree) -> String {
    if t.rule.is_none() {
        return t.node.clone();
    }
    t.children.iter().map(leaves).collect()
}

#[test]
fn dyck_refutation_exits_one() {
    let out = pumplab(&[
        "refute",
        "--oracle",
        "dyck",
        "--lemma",
        "thm2",
        "--k",
        "1/1",
        "--family",
        "(^(2*n))^(2*n)(^(2*n))^(2*n)",
        "--nmax",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let report: LemmaReport = json(&out);
    assert_eq!(report.verdict, Verdict::RefutedUpTo { n: 4 });
}

#[test]
fn even_grammar_is_one_rated() {
    let out = pumplab(&["classify", &path("even")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).lines().any(|l| l == "k-rated 1/1"));
}

#[test]
fn classify_json_matches_library() {
    for name in ["dyck", "rate-2-1", "two-linear"] {
        let out = pumplab(&["classify", &path(name), "--json"]);
        assert_eq!(out.status.code(), Some(0));
        let report: ClassReport = json(&out);
        assert_eq!(report, classify(&bundled(name)).unwrap());
    }
}

#[test]
fn pump_json_matches_golden_file() {
    let out = pumplab(&["pump", &path("anbn"), "--word", "aaaabbbb", "--lemma", "thm1", "--k", "1/1", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let f: Factorization = json(&out);
    let golden: Factorization = serde_json::from_str(include_str!("golden/pump_anbn_thm1.json")).unwrap();
    assert_eq!(f, golden);
    let nf = to_k_rated_nf(&bundled("anbn"), Ratio::ONE).unwrap();
    assert_eq!(f, extract_thm1(&nf, &Word::parse("aaaabbbb"), None).unwrap());
    assert!((0..=5).all(|i| in_anbn(&f.pump(i))));
    assert!(f.v.len() + f.x.len() > 0);
}

#[test]
fn pump_rejects_words_outside_the_language() {
    let out = pumplab(&["pump", &path("anbn"), "--word", "aaaabbbbb", "--lemma", "thm1", "--k", "1/1"]);
    assert_eq!(out.status.code(), Some(1));
    let short = pumplab(&["pump", &path("anbn"), "--word", "aabb", "--lemma", "thm1", "--k", "1/1"]);
    assert_eq!(short.status.code(), Some(2));
}

#[test]
fn pump_multi_builds_its_own_witness() {
    let out = pumplab(&["pump", &path("two-linear"), "--lemma", "multi", "--blocks", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).starts_with("witness "));
}

#[test]
fn parse_accepts_and_rejects() {
    let out = pumplab(&["parse", &path("anbn"), "--word", "aabb", "--tree"]);
    assert_eq!(out.status.code(), Some(0));
    let trace: LinearTrace = json(&out);
    assert_eq!(trace.steps.len(), 1);
    let out = pumplab(&["parse", &path("dyck"), "--word", "(()())", "--tree"]);
    assert_eq!(out.status.code(), Some(0));
    let tree: DerivationTree = json(&out);
    assert_eq!(leaves(&tree), "(()())");
    let out = pumplab(&["parse", &path("dyck"), "--word", "(()"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out).trim(), "rejected");
}

#[test]
fn enumerate_json_matches_library() {
    let out = pumplab(&["enumerate", &path("linear"), "--max-len", "7", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let listed: Vec<String> = json(&out);
    let expected: Vec<String> = enumerate(&bundled("linear"), 7).unwrap().iter().map(Word::to_string).collect();
    assert_eq!(listed, expected);
}

#[test]
fn normalize_writes_an_equivalent_grammar() {
    let dir = tempfile::tempdir().unwrap();
    for (form, k, kind) in [
        ("k-rated", Some("1/2"), NormalFormKind::KRated(Ratio::new(1, 2).unwrap())),
        ("linear-unit", None, NormalFormKind::LinearUnit),
        ("cnf", None, NormalFormKind::Chomsky),
    ] {
        let target = dir.path().join(format!("{form}.cfg"));
        let mut args = vec!["normalize", "--form", form];
        let source = path(if form == "k-rated" { "rate-1-2" } else { "linear" });
        args.push(&source);
        if let Some(k) = k {
            args.extend(["--k", k]);
        }
        let target_arg = target.display().to_string();
        args.extend(["-o", &target_arg]);
        let out = pumplab(&args);
        assert_eq!(out.status.code(), Some(0), "{form}: {}", String::from_utf8_lossy(&out.stderr));
        let written = Grammar::parse(&std::fs::read_to_string(&target).unwrap()).unwrap();
        assert!(kind.holds(&written), "{form}");
        let original = Grammar::parse(&std::fs::read_to_string(&source).unwrap()).unwrap();
        assert!(bounded_equivalent(&original, &written, 9).unwrap().equivalent, "{form}");
    }
}

#[test]
fn normalize_outside_the_class_exits_one() {
    let out = pumplab(&["normalize", &path("dyck"), "--form", "linear-unit"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn check_reports_round_trip() {
    let out = pumplab(&["check", "--oracle", "anbn", "--lemma", "thm1", "--k", "1/1", "--n", "4", "--max-len", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let report: LemmaReport = json(&out);
    assert_eq!(report.verdict, Verdict::SatisfiedEvidence);
    let out = pumplab(&["check", "--oracle", "anbn", "--lemma", "regular", "--n", "4", "--max-len", "10"]);
    assert_eq!(out.status.code(), Some(1));
    let report: LemmaReport = json(&out);
    assert_eq!(report.verdict, Verdict::RefutedUpTo { n: 4 });
}

#[test]
fn refute_with_named_family() {
    let out = pumplab(&[
        "refute",
        "--oracle",
        "primesquare",
        "--lemma",
        "thm2",
        "--k",
        "1/1",
        "--family-fn",
        "evenlin-square",
        "--nmax",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
    let report: LemmaReport = json(&out);
    assert_eq!(report.verdict, Verdict::RefutedUpTo { n: 2 });
}

#[test]
fn usage_and_input_errors_exit_two() {
    let missing = pumplab(&["classify", "/nonexistent/grammar.cfg"]);
    assert_eq!(missing.status.code(), Some(2));
    let unknown = pumplab(&["check", "--oracle", "nosuch", "--lemma", "thm1", "--n", "3", "--max-len", "5"]);
    assert_eq!(unknown.status.code(), Some(2));
    let no_word = pumplab(&["pump", &path("anbn"), "--lemma", "thm1"]);
    assert_eq!(no_word.status.code(), Some(2));
    let bad_k = pumplab(&["pump", &path("anbn"), "--word", "ab", "--lemma", "thm1", "--k", "0.5"]);
    assert_eq!(bad_k.status.code(), Some(2));
    let both = pumplab(&["refute", "--oracle", "anbn", "--lemma", "linear", "--family", "a^n b^n", "--family-fn", "x"]);
    assert_eq!(both.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.cfg");
    std::fs::write(&broken, "S -> a S b |\nthis is not a rule\n").unwrap();
    let out = pumplab(&["classify", &broken.display().to_string()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}
