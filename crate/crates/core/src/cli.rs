use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use pumplab::check::{check_satisfaction, refute, refute_multilinear_with, PumpSpec, WitnessFamily, DEFAULT_PART_CAP};
use pumplab::derive::{enumerate, parse_cyk, parse_linear, DEFAULT_MAX_STEPS};
use pumplab::extract::{extract_for, extract_multilinear, LemmaId};
use pumplab::grammar::classify;
use pumplab::normal_forms::{to_cnf, to_k_rated_nf, to_linear_unit_nf};
use pumplab::oracles::{from_grammar, oracle_from_spec, LanguageOracle};
use pumplab::{Error, Grammar, Ratio, Word};

/// `println!` that returns write errors instead of panicking on them.
macro_rules! out {
    ($($arg:tt)*) => {
        writeln!(std::io::stdout().lock(), $($arg)*)?
    };
}

pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;

/// Grammar classes, normal forms and pumping lemmas.
#[derive(Debug, Parser)]
#[command(name = "pumplab", version)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Report which grammar classes the grammar belongs to.
    Classify {
        grammar: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Rewrite the grammar into a normal form.
    Normalize {
        grammar: PathBuf,
        #[arg(long, value_enum)]
        form: Form,
        /// Rate `G/H` for the k-rated form; detected when omitted.
        #[arg(long)]
        k: Option<Ratio>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide membership of a word.
    Parse {
        grammar: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        /// Print the derivation tree as JSON.
        #[arg(long)]
        tree: bool,
    },
    /// List every word up to a length, in shortlex order.
    Enumerate {
        grammar: PathBuf,
        #[arg(long)]
        max_len: usize,
        #[arg(long)]
        json: bool,
    },
    /// Extract a pumpable factorization of a word.
    Pump(PumpArgs),
    /// Check a lemma on every word of an oracle up to a length.
    Check(CheckArgs),
    /// Refute a lemma with a witness family, one word per constant.
    Refute(RefuteArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Form {
    KRated,
    LinearUnit,
    Cnf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LemmaArg {
    Thm1,
    Thm2,
    BarHillel,
    Linear,
    Regular,
    Multi,
}

impl LemmaArg {
    fn single(self) -> Result<LemmaId> {
        Ok(match self {
            LemmaArg::Thm1 => LemmaId::Thm1,
            LemmaArg::Thm2 => LemmaId::Thm2,
            LemmaArg::BarHillel => LemmaId::BarHillel,
            LemmaArg::Linear => LemmaId::Linear,
            LemmaArg::Regular => LemmaId::Regular,
            LemmaArg::Multi => bail!("this command does not take the multi lemma"),
        })
    }
}

#[derive(Debug, Args)]
struct PumpArgs {
    grammar: PathBuf,
    /// Required for every lemma but `multi`, which builds its own witness
    /// when none is given.
    #[arg(long, allow_hyphen_values = true)]
    word: Option<String>,
    #[arg(long, value_enum)]
    lemma: LemmaArg,
    #[arg(long)]
    k: Option<Ratio>,
    /// Number of pumped pairs minus one, for `multi`.
    #[arg(long, default_value_t = 1)]
    blocks: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[arg(long)]
    oracle: String,
    #[arg(long, value_enum)]
    lemma: LemmaArg,
    #[arg(long)]
    k: Option<Ratio>,
    #[arg(long)]
    n: u64,
    #[arg(long)]
    max_len: usize,
    #[arg(long, default_value_t = pumplab::check::DEFAULT_IMAX)]
    imax: usize,
}

#[derive(Debug, Args)]
struct RefuteArgs {
    #[arg(long)]
    oracle: String,
    #[arg(long, value_enum)]
    lemma: LemmaArg,
    #[arg(long)]
    k: Option<Ratio>,
    /// Template of `lit^(a*n+b)` segments.
    #[arg(long, conflicts_with = "family_fn", required_unless_present = "family_fn")]
    family: Option<String>,
    /// Named family with non-affine exponents, e.g. `evenlin-square`.
    #[arg(long)]
    family_fn: Option<String>,
    /// First constant tested.
    #[arg(long, default_value_t = 1)]
    n: u64,
    #[arg(long)]
    nmax: u64,
    #[arg(long, default_value_t = pumplab::check::DEFAULT_IMAX)]
    imax: usize,
    /// Number of pumped pairs minus one, for `multi`.
    #[arg(long, default_value_t = 1)]
    blocks: usize,
    /// Longest part tried by the multi-block search.
    #[arg(long, default_value_t = DEFAULT_PART_CAP)]
    part_cap: usize,
}

/// How a successful run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Positive,
    Negative,
}

impl From<Outcome> for ExitCode {
    fn from(o: Outcome) -> ExitCode {
        match o {
            Outcome::Positive => ExitCode::SUCCESS,
            Outcome::Negative => ExitCode::from(EXIT_NEGATIVE),
        }
    }
}

pub fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Classify { grammar, json } => run_classify(&grammar, json),
        Command::Normalize { grammar, form, k, output } => run_normalize(&grammar, form, k, output.as_deref()),
        Command::Parse { grammar, word, tree } => run_parse(&grammar, &word, tree),
        Command::Enumerate { grammar, max_len, json } => run_enumerate(&grammar, max_len, json),
        Command::Pump(args) => run_pump(&args),
        Command::Check(args) => run_check(&args),
        Command::Refute(args) => run_refute(&args),
    }
}

fn load(path: &Path) -> Result<Grammar> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let g = Grammar::parse(&text).with_context(|| format!("parsing {}", path.display()))?;
    g.ensure_valid()?;
    Ok(g)
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    out!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn show(w: &Word) -> String {
    if w.is_empty() {
        "λ".to_string()
    } else {
        w.to_string()
    }
}

/// Grammar-class errors end a run with the negative code, not the input one.
fn class_error(err: Error) -> Result<Outcome> {
    match err {
        Error::NotLinear(_) | Error::NotKRated { .. } | Error::NonlinearRule { .. } => {
            eprintln!("{err}");
            Ok(Outcome::Negative)
        }
        other => Err(other.into()),
    }
}

fn run_classify(path: &Path, json: bool) -> Result<Outcome> {
    let report = classify(&load(path)?)?;
    if json {
        print_json(&report)?;
        return Ok(Outcome::Positive);
    }
    out!("context-free: {}", report.context_free);
    out!("linear: {}", report.linear);
    match report.k_rated {
        Some(k) => out!("k-rated {k}"),
        None => out!("k-rated: no"),
    }
    out!("even-linear: {}", report.even_linear);
    out!("regular: {}", report.regular);
    match report.k_linear {
        Some(k) => out!("{k}-linear"),
        None => out!("k-linear: no"),
    }
    out!("metalinear shape: {}", report.metalinear_shape);
    let witnesses = [("linear", &report.linear_witness), ("k-rated", &report.k_rated_witness), ("regular", &report.regular_witness)];
    for (class, w) in witnesses {
        if let Some(w) = w {
            out!("  not {class}: rule {} `{}`: {}", w.rule, w.text, w.reason);
        }
    }
    Ok(Outcome::Positive)
}

fn run_normalize(path: &Path, form: Form, k: Option<Ratio>, output: Option<&Path>) -> Result<Outcome> {
    let g = load(path)?;
    let normal = match form {
        Form::Cnf => to_cnf(&g),
        Form::LinearUnit => to_linear_unit_nf(&g),
        Form::KRated => match k.map(Ok).unwrap_or_else(|| detected_rate(&g)) {
            Ok(k) => to_k_rated_nf(&g, k),
            Err(e) => Err(e),
        },
    };
    let normal = match normal {
        Ok(n) => n,
        Err(e) => return class_error(e),
    };
    match output {
        Some(out) => std::fs::write(out, normal.to_text()).with_context(|| format!("writing {}", out.display()))?,
        None => write!(std::io::stdout().lock(), "{}", normal.to_text())?,
    }
    Ok(Outcome::Positive)
}

fn detected_rate(g: &Grammar) -> pumplab::Result<Ratio> {
    classify(g)?
        .k_rated
        .ok_or_else(|| Error::NotKRated { ratio: "any".into(), reason: "grammar has no fixed rate".into() })
}

/// Linear grammars are parsed by their own trace; other grammars by CYK on
/// the Chomsky normal form, whose tree `--tree` prints.
fn run_parse(path: &Path, word: &str, tree: bool) -> Result<Outcome> {
    let g = load(path)?;
    let word = Word::parse(word);
    let accepted = if classify(&g)?.linear {
        let trace = parse_linear(&g, &word)?;
        if let (Some(t), true) = (&trace, tree) {
            print_json(t)?;
        }
        trace.is_some()
    } else {
        let parsed = match to_cnf(&g) {
            Ok(cnf) => parse_cyk(&cnf, &word)?,
            Err(Error::EmptyLanguage) => None,
            Err(e) => return Err(e.into()),
        };
        if let (Some(t), true) = (&parsed, tree) {
            print_json(t)?;
        }
        parsed.is_some()
    };
    if !tree || !accepted {
        out!("{}", if accepted { "accepted" } else { "rejected" });
    }
    Ok(if accepted { Outcome::Positive } else { Outcome::Negative })
}

fn run_enumerate(path: &Path, max_len: usize, json: bool) -> Result<Outcome> {
    let words = enumerate(&load(path)?, max_len)?;
    if json {
        print_json(&words)?;
    } else {
        for w in &words {
            out!("{}", show(w));
        }
    }
    Ok(Outcome::Positive)
}

fn run_pump(args: &PumpArgs) -> Result<Outcome> {
    let g = load(&args.grammar)?;
    if args.lemma == LemmaArg::Multi {
        return pump_multi(&g, args);
    }
    let Some(word) = &args.word else { bail!("--word is required unless --lemma is multi") };
    let word = Word::parse(word);
    let lemma = args.lemma.single()?;
    let f = match extract_for(&g, lemma, &word, args.k) {
        Ok(f) => f,
        Err(Error::NotInLanguage(w)) => {
            eprintln!("word \"{w}\" is not in the language");
            return Ok(Outcome::Negative);
        }
        Err(e) => return class_error(e),
    };
    if args.json {
        print_json(&f)?;
    } else {
        out!("lemma {} with n = {} (constant of the {} grammar)", f.lemma, f.n, lemma_nf_name(lemma));
        for (name, part) in ["u", "v", "w", "x", "y"].iter().zip(f.parts()) {
            out!("{name} = {}", show(part));
        }
        for note in &f.notes {
            out!("note: {note}");
        }
    }
    Ok(Outcome::Positive)
}

fn lemma_nf_name(lemma: LemmaId) -> &'static str {
    match lemma {
        LemmaId::Thm1 | LemmaId::Thm2 => "k-rated normal form",
        LemmaId::BarHillel => "Chomsky normal form",
        LemmaId::Linear => "linear-unit normal form",
        _ => "regular normal form",
    }
}

#[derive(Serialize)]
struct MultiOutput<'a> {
    factorization: &'a pumplab::extract::MultiFactorization,
    witness: &'a Word,
}

/// With a word, searches it for a surviving multi-block split; without one,
/// builds a witness and its factorization from the grammar.
fn pump_multi(g: &Grammar, args: &PumpArgs) -> Result<Outcome> {
    match &args.word {
        None => {
            let (f, witness) = extract_multilinear(g, args.blocks, DEFAULT_MAX_STEPS)?;
            if args.json {
                print_json(&MultiOutput { factorization: &f, witness: &witness })?;
            } else {
                out!("witness {}", show(&witness));
                out!("u = {}", show(&f.u));
                for (j, b) in f.blocks.iter().enumerate() {
                    out!(
                        "block {j}: v = {}, w = {}, x = {}, y = {}",
                        show(&b.v),
                        show(&b.w),
                        show(&b.x),
                        show(&b.y)
                    );
                }
            }
            Ok(Outcome::Positive)
        }
        Some(word) => {
            let oracle = from_grammar(g)?;
            let word = Word::parse(word);
            if !oracle.member(&word) {
                eprintln!("word \"{word}\" is not in the language");
                return Ok(Outcome::Negative);
            }
            let report = refute_multilinear_with(&oracle, args.blocks, &[word], 3, DEFAULT_PART_CAP)?;
            let survivor = report.words[0].survivor.clone();
            if args.json {
                print_json(&report)?;
            } else if let Some(s) = &survivor {
                out!("split {:?}", s.split);
                out!("parts {}", s.parts.iter().map(show).collect::<Vec<_>>().join(" | "));
            } else {
                out!("no surviving split");
            }
            Ok(if survivor.is_some() { Outcome::Positive } else { Outcome::Negative })
        }
    }
}

fn report_outcome(report: &pumplab::check::LemmaReport) -> Result<Outcome> {
    print_json(report)?;
    Ok(if report.is_refuted() { Outcome::Negative } else { Outcome::Positive })
}

fn run_check(args: &CheckArgs) -> Result<Outcome> {
    let oracle = oracle_from_spec(&args.oracle)?;
    let spec = PumpSpec::new(args.lemma.single()?, args.k, args.n).with_imax(args.imax);
    spec.ensure_valid()?;
    report_outcome(&check_satisfaction(oracle.as_ref(), &spec, args.max_len)?)
}

fn run_refute(args: &RefuteArgs) -> Result<Outcome> {
    let oracle = oracle_from_spec(&args.oracle)?;
    let family = match (&args.family, &args.family_fn) {
        (Some(t), _) => WitnessFamily::parse(t)?,
        (None, Some(name)) => WitnessFamily::Named(name.parse()?),
        (None, None) => bail!("one of --family or --family-fn is required"),
    };
    if args.nmax < args.n.max(1) {
        bail!("--nmax must be at least {}", args.n.max(1));
    }
    let report = if args.lemma == LemmaArg::Multi {
        let witnesses: Vec<Word> = (args.n.max(1)..=args.nmax).map(|n| family.instantiate(n)).collect();
        refute_multilinear_with(oracle.as_ref(), args.blocks, &witnesses, args.imax, args.part_cap)?
    } else {
        let spec = PumpSpec::new(args.lemma.single()?, args.k, args.n).with_imax(args.imax);
        refute(oracle.as_ref(), &spec, args.nmax, &family)?
    };
    report_outcome(&report)
}
