use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid grammar: {0}")]
    InvalidGrammar(String),

    #[error("the grammar generates the empty language")]
    EmptyLanguage,

    #[error("rule `{rule}` has {count} nonterminals on its right-hand side")]
    NonlinearRule { rule: String, count: usize },

    #[error("grammar is not linear: rule {0} has several nonterminals")]
    NotLinear(usize),

    #[error("grammar is not {ratio}-rated linear: {reason}")]
    NotKRated { ratio: String, reason: String },

    #[error("grammar is not in {form} normal form: {reason}")]
    ShapeMismatch { form: String, reason: String },

    #[error("word of length {len} is shorter than the lemma constant {n}")]
    WordTooShort { len: usize, n: u64 },

    #[error("word \"{0}\" is not in the language")]
    NotInLanguage(String),

    #[error("requested length {requested} exceeds the enumeration cap {cap}")]
    CapExceeded { requested: usize, cap: usize },

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("the language of {0} is finite")]
    FiniteLanguage(String),

    #[error("invalid ratio {0}")]
    InvalidRatio(String),

    #[error("unknown oracle {0}")]
    UnknownOracle(String),

    #[error("malformed pattern: {0}")]
    Pattern(String),

    #[error("witness family: {0}")]
    Family(String),

    #[error("lemma/spec mismatch: {0}")]
    LemmaMismatch(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
