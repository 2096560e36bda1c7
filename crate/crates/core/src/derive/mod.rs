//! Membership, enumeration and derivation traces.

mod cyk;
mod enumerate;
mod least;
mod linear;
mod reach;
mod sample;

pub use cyk::{parse_cyk, CykParser, DerivationTree};
pub use enumerate::{enumerate, enumerate_uncapped, maxlen_cap, DEFAULT_MAXLEN_CAP, MAXLEN_CAP_ENV};
pub use least::{least_word_of_length, shortest_word, shortest_yield};
pub use linear::{parse_linear, LinearParser, LinearTrace, TraceStep};
pub use reach::{sentential_reach, SententialForm, DEFAULT_MAX_STEPS};
pub use sample::sample_words;

pub(crate) use least::LeastTable;
