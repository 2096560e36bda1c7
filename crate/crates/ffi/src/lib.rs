//! C interface to pumplab.
//!
//! Every fallible call returns a [`PumplabStatus`] and hands its result back
//! through an out-pointer, which is left untouched on failure. After a
//! failure, [`pumplab_last_error`] describes it. Strings returned by the
//! library are released with [`pumplab_string_free`]; handles with their own
//! `_free` call.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pumplab::check::{check_satisfaction, refute, LemmaReport, PumpSpec, Verdict, WitnessFamily};
use pumplab::extract::{extract_for, LemmaId};
use pumplab::grammar::classify;
use pumplab::normal_forms::{to_cnf, to_k_rated_nf, to_linear_unit_nf};
use pumplab::oracles::{from_grammar, oracle_from_spec, LanguageOracle};
use pumplab::{Error, Grammar, Ratio, Word};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PumplabStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The grammar text does not parse or declares inconsistent symbols.
    InvalidGrammar = 3,
    /// An enum value, ratio, oracle spec or family template is malformed.
    InvalidArgument = 4,
    /// The grammar is outside the class the operation needs.
    NotInClass = 5,
    /// The word is not in the language.
    NotInLanguage = 6,
    /// The word is shorter than the lemma constant.
    WordTooShort = 7,
    /// The search could not decide.
    Inconclusive = 8,
    /// A size cap was exceeded.
    LimitExceeded = 9,
    /// An internal error; the message says which.
    Internal = 10,
}

/// Lemma selector, passed as an `int32_t`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PumplabLemma {
    Thm1 = 0,
    Thm2 = 1,
    BarHillel = 2,
    Linear = 3,
    Regular = 4,
}

/// Normal form selector, passed as an `int32_t`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PumplabForm {
    KRated = 0,
    LinearUnit = 1,
    Cnf = 2,
}

/// Verdict of a report.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PumplabVerdict {
    SatisfiedEvidence = 0,
    RefutedUpTo = 1,
    RefutedOnWitnesses = 2,
    Inconclusive = 3,
}

/// The rate `g/h`; `h == 0` leaves the rate unset, so it is detected from
/// the grammar where one is needed.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PumplabRatio {
    pub g: u64,
    pub h: u64,
}

/// Opaque grammar handle.
pub struct PumplabGrammar(Grammar);

/// Opaque report handle from a check or refutation.
pub struct PumplabReport(LemmaReport);

struct Failure {
    status: PumplabStatus,
    message: String,
}

impl Failure {
    fn new(status: PumplabStatus, message: impl Into<String>) -> Failure {
        Failure { status, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let status = match &e {
            Error::Parse { .. } | Error::InvalidGrammar(_) => PumplabStatus::InvalidGrammar,
            Error::NonlinearRule { .. }
            | Error::NotLinear(_)
            | Error::NotKRated { .. }
            | Error::ShapeMismatch { .. }
            | Error::EmptyLanguage
            | Error::FiniteLanguage(_) => PumplabStatus::NotInClass,
            Error::WordTooShort { .. } => PumplabStatus::WordTooShort,
            Error::NotInLanguage(_) => PumplabStatus::NotInLanguage,
            Error::CapExceeded { .. } => PumplabStatus::LimitExceeded,
            Error::Inconclusive(_) => PumplabStatus::Inconclusive,
            Error::InvalidRatio(_)
            | Error::UnknownOracle(_)
            | Error::Pattern(_)
            | Error::Family(_)
            | Error::LemmaMismatch(_) => PumplabStatus::InvalidArgument,
            _ => PumplabStatus::Internal,
        };
        Failure::new(status, e.to_string())
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

/// Runs `body`, records any failure or panic, and maps it to a status.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> PumplabStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => PumplabStatus::Ok,
        Ok(Err(f)) => {
            set_last_error(&f.message);
            f.status
        }
        Err(panic) => {
            let what = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(&format!("panic: {what}"));
            PumplabStatus::Internal
        }
    }
}

/// # Safety
/// `s` is null or a nul-terminated string.
unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure::new(PumplabStatus::NullArgument, format!("{what} is null")));
    }
    // SAFETY: the caller passes a nul-terminated string.
    unsafe { CStr::from_ptr(s) }
        .to_str()
        .map_err(|e| Failure::new(PumplabStatus::InvalidUtf8, format!("{what}: {e}")))
}

/// # Safety
/// `h` is null or a live handle from this library.
unsafe fn handle<'a, T>(h: *const T, what: &str) -> Result<&'a T, Failure> {
    // SAFETY: non-null handles come from `Box::into_raw` and are still live.
    unsafe { h.as_ref() }.ok_or_else(|| Failure::new(PumplabStatus::NullArgument, format!("{what} is null")))
}

fn out_ptr<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(PumplabStatus::NullArgument, "out pointer is null"));
    }
    Ok(())
}

fn ratio(k: PumplabRatio) -> Result<Option<Ratio>, Failure> {
    if k.h == 0 {
        return Ok(None);
    }
    Ok(Some(Ratio::new(k.g, k.h)?))
}

fn lemma(value: i32) -> Result<LemmaId, Failure> {
    Ok(match value {
        0 => LemmaId::Thm1,
        1 => LemmaId::Thm2,
        2 => LemmaId::BarHillel,
        3 => LemmaId::Linear,
        4 => LemmaId::Regular,
        other => return Err(Failure::new(PumplabStatus::InvalidArgument, format!("no lemma {other}"))),
    })
}

fn owned_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s).map(CString::into_raw).map_err(|e| Failure::new(PumplabStatus::Internal, e.to_string()))
}

fn json<T: serde::Serialize>(value: &T) -> Result<*mut c_char, Failure> {
    let s = serde_json::to_string_pretty(value).map_err(|e| Failure::new(PumplabStatus::Internal, e.to_string()))?;
    owned_string(s)
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn pumplab_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pumplab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` is null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pumplab_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: `s` came from `CString::into_raw`.
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Parses grammar text and validates it.
///
/// # Safety
/// `source` is a nul-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pumplab_grammar_parse(source: *const c_char, out: *mut *mut PumplabGrammar) -> PumplabStatus {
    guard(|| {
        out_ptr(out)?;
        // SAFETY: forwarded from the caller.
        let g = Grammar::parse(unsafe { text(source, "source") }?)?;
        g.ensure_valid()?;
        // SAFETY: `out` is non-null and writable.
        unsafe { *out = Box::into_raw(Box::new(PumplabGrammar(g))) };
        Ok(())
    })
}

/// Releases a grammar handle; null is ignored.
///
/// # Safety
/// `g` is null or a grammar handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pumplab_grammar_free(g: *mut PumplabGrammar) {
    if !g.is_null() {
        // SAFETY: `g` came from `Box::into_raw`.
        drop(unsafe { Box::from_raw(g) });
    }
}

/// The grammar in the text format.
///
/// # Safety
/// `g` is a live grammar handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pumplab_grammar_to_text(g: *const PumplabGrammar, out: *mut *mut c_char) -> PumplabStatus {
    guard(|| {
        out_ptr(out)?;
        // SAFETY: forwarded from the caller.
        let g = unsafe { handle(g, "grammar") }?;
        let s = owned_string(g.0.to_text())?;
        // SAFETY: `out` is non-null and writable.
        unsafe { *out = s };
        Ok(())
    })
}

/// The classification report as JSON.
///
/// # Safety
/// `g` is a live grammar handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pumplab_grammar_classify_json(g: *const PumplabGrammar, out: *mut *mut c_char) -> PumplabStatus {
    guard(|| {
        out_ptr(out)?;
        // SAFETY: forwarded from the caller.
        let g = unsafe { handle(g, "grammar") }?;
        let s = json(&classify(&g.0)?)?;
        // SAFETY: `out` is non-null and writable.
        unsafe { *out = s };
        Ok(())
    })
}

/// A new grammar in the normal form `form` (a [`PumplabForm`] value).
/// The rate is used by the k-rated form only.
///
/// # Safety
/// `g` is a live grammar handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pumplab_grammar_normalize(
    g: *const PumplabGrammar,
    form: i32,
    k: PumplabRatio,
    out: *mut *mut PumplabGrammar,
) -> PumplabStatus {
    guard(|| {
        out_ptr(out)?;
        // SAFETY: forwarded from the caller.
        let g = &unsafe { handle(g, "grammar") }?.0;
        let nf = match form {
            0 => {
                let k = match ratio(k)? {
                    Some(k) => k,
                    None => classify(g)?.k_rated.ok_or_else(|| {
                        Failure::new(PumplabStatus::NotInClass, "grammar has no fixed rate; pass one")
                    })?,
                };
                to_k_rated_nf(g, k)?
            }
            1 => to_linear_unit_nf(g)?,
            2 => to_cnf(g)?,
            other => return Err(Failure::new(PumplabStatus::InvalidArgument, format!("no normal form {other}"))),
        };
        // SAFETY: `out` is non-null and writable.
        unsafe { *out = Box::into_raw(Box::new(PumplabGrammar(nf))) };
        Ok(())
    })
}

/// Whether `word` is in the language of `g`. Words use single-character
/// terminals, or commas between multi-character ones.
///
/// # Safety
/// `g` is a live grammar handle; `word` is a nul-terminated string; `out`
/// is writable.
#[no_mangle]
pub unsafe extern "C" fn pumplab_grammar_accepts(
    g: *const PumplabGrammar,
    word: *const c_char,
    out: *mut bool,
) -> PumplabStatus {
    guard(|| {
        out_ptr(out)?;
        // SAFETY: forwarded from the caller.
        let (g, word) = unsafe { (handle(g, "grammar")?, text(word, "word")?) };
        let member = from_grammar(&g.0)?.member(&Word::parse(word));
        // SAFETY: `out` is non-null and writable.
        unsafe { *out = member };
        Ok(())
    })
}

/// Factorization of `word` under `lemma` (a [`PumplabLemma`] value) as
/// JSON. The grammar is brought into the lemma's normal form first.
///
/// # Safety
/// `g` is a live grammar handle; `word` is a nul-terminated string; `out`
/// is writable.
#[no_mangle]
pub unsafe extern "C" fn pumplab_grammar_pump_json(
    g: *const PumplabGrammar,
    word: *const c_char,
    lemma: i32,
    k: PumplabRatio,
    out: *mut *mut c_char,
) -> PumplabStatus {
    guard(|| {
        out_ptr(out)?;
        // SAFETY: forwarded from the caller.
        let (g, word) = unsafe { (handle(g, "grammar")?, text(word, "word")?) };
        let f = extract_for(&g.0, self::lemma(lemma)?, &Word::parse(word), ratio(k)?)?;
        let s = json(&f)?;
        // SAFETY: `out` is non-null and writable.
        unsafe { *out = s };
        Ok(())
    })
}

fn store_report(report: LemmaReport, out: *mut *mut PumplabReport) {
    // SAFETY: callers check `out` with `out_ptr` first.
    unsafe { *out = Box::into_raw(Box::new(PumplabReport(report))) };
}

/// Bounded satisfaction check of `lemma` at constant `n` on every word of
/// the oracle with `n <= |p| <= max_len`, pumping with `i <= imax`.
/// Oracle specs are as on the command line, e.g. `anbn`, `lh:squares`,
/// `pattern:(ab)*a`.
///
/// # Safety
/// `oracle` is a nul-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pumplab_check(
    oracle: *const c_char,
    lemma: i32,
    k: PumplabRatio,
    n: u64,
    max_len: usize,
    imax: usize,
    out: *mut *mut PumplabReport,
) -> PumplabStatus {
    guard(|| {
        out_ptr(out)?;
        // SAFETY: forwarded from the caller.
        let o = oracle_from_spec(unsafe { text(oracle, "oracle") }?)?;
        let spec = PumpSpec::new(self::lemma(lemma)?, ratio(k)?, n).with_imax(imax);
        store_report(check_satisfaction(o.as_ref(), &spec, max_len)?, out);
        Ok(())
    })
}

/// Refutes `lemma` with the witness family `family` for the constants
/// `1..=nmax`. `family` is a template such as `a^n b^(2*n)` or the name of a
/// builtin family such as `evenlin-square`.
///
/// # Safety
/// `oracle` and `family` are nul-terminated strings; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pumplab_refute(
    oracle: *const c_char,
    lemma: i32,
    k: PumplabRatio,
    family: *const c_char,
    nmax: u64,
    imax: usize,
    out: *mut *mut PumplabReport,
) -> PumplabStatus {
    guard(|| {
        out_ptr(out)?;
        // SAFETY: forwarded from the caller.
        let (oracle, family) = unsafe { (text(oracle, "oracle")?, text(family, "family")?) };
        let o = oracle_from_spec(oracle)?;
        let family = match family.parse() {
            Ok(named) => WitnessFamily::Named(named),
            Err(_) => WitnessFamily::parse(family)?,
        };
        let spec = PumpSpec::new(self::lemma(lemma)?, ratio(k)?, 1).with_imax(imax);
        store_report(refute(o.as_ref(), &spec, nmax, &family)?, out);
        Ok(())
    })
}

/// The verdict of a report; for the refuted verdicts, `n_out` receives the
/// largest refuted constant or the number of witnesses.
///
/// # Safety
/// `r` is a live report handle; `verdict_out` is writable; `n_out` is null
/// or writable.
#[no_mangle]
pub unsafe extern "C" fn pumplab_report_verdict(
    r: *const PumplabReport,
    verdict_out: *mut PumplabVerdict,
    n_out: *mut u64,
) -> PumplabStatus {
    guard(|| {
        out_ptr(verdict_out)?;
        // SAFETY: forwarded from the caller.
        let r = unsafe { handle(r, "report") }?;
        let (verdict, n) = match &r.0.verdict {
            Verdict::SatisfiedEvidence => (PumplabVerdict::SatisfiedEvidence, 0),
            Verdict::RefutedUpTo { n } => (PumplabVerdict::RefutedUpTo, *n),
            Verdict::RefutedOnWitnesses { witnesses } => (PumplabVerdict::RefutedOnWitnesses, *witnesses as u64),
            Verdict::Inconclusive { .. } => (PumplabVerdict::Inconclusive, 0),
        };
        // SAFETY: `verdict_out` is non-null; `n_out` is written only when non-null.
        unsafe {
            *verdict_out = verdict;
            if !n_out.is_null() {
                *n_out = n;
            }
        }
        Ok(())
    })
}

/// The full report as JSON.
///
/// # Safety
/// `r` is a live report handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pumplab_report_json(r: *const PumplabReport, out: *mut *mut c_char) -> PumplabStatus {
    guard(|| {
        out_ptr(out)?;
        // SAFETY: forwarded from the caller.
        let s = json(&unsafe { handle(r, "report") }?.0)?;
        // SAFETY: `out` is non-null and writable.
        unsafe { *out = s };
        Ok(())
    })
}

/// Releases a report handle; null is ignored.
///
/// # Safety
/// `r` is null or a report handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pumplab_report_free(r: *mut PumplabReport) {
    if !r.is_null() {
        // SAFETY: `r` came from `Box::into_raw`.
        drop(unsafe { Box::from_raw(r) });
    }
}
