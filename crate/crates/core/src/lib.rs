//! Grammar classes, normal forms and executable pumping lemmas for linear
//! and context-free languages.

pub mod check;
pub mod derive;
pub mod error;
pub mod extract;
pub mod grammar;
pub mod normal_forms;
pub mod oracles;
pub mod ratio;
pub mod symbol;

pub use error::{Error, Result};
pub use grammar::{Grammar, Rule, Symbol};
pub use ratio::Ratio;
pub use symbol::{Terminal, Word};
