use std::collections::BTreeSet;

use super::LanguageOracle;
use crate::derive::{enumerate, CykParser, LinearParser};
use crate::error::{Error, Result};
use crate::grammar::Grammar;
use crate::normal_forms::to_cnf;
use crate::symbol::{Terminal, Word};

/// How membership is decided: the span parser for linear grammars, CYK on
/// the Chomsky normal form otherwise.
enum Membership {
    Linear(LinearParser),
    Cyk(CykParser),
}

/// Oracle backed by a grammar, with its parser built once.
pub struct GrammarOracle {
    id: String,
    alphabet: BTreeSet<Terminal>,
    grammar: Grammar,
    /// `None` for the empty language.
    parser: Option<Membership>,
}

impl GrammarOracle {
    pub fn grammar(&self) -> &Grammar {
        &self.grammar
    }
}

pub fn from_grammar(g: &Grammar) -> Result<GrammarOracle> {
    g.ensure_valid()?;
    let parser = match to_cnf(g) {
        Ok(_) if g.rules.iter().all(|r| r.nonterminal_count() <= 1) => Some(Membership::Linear(LinearParser::new(g)?)),
        Ok(cnf) => Some(Membership::Cyk(CykParser::new(&cnf)?)),
        Err(Error::EmptyLanguage) => None,
        Err(e) => return Err(e),
    };
    Ok(GrammarOracle {
        id: format!("grammar:{}", g.start),
        alphabet: g.terminal_alphabet().into_iter().collect(),
        grammar: g.clone(),
        parser,
    })
}

impl LanguageOracle for GrammarOracle {
    fn id(&self) -> &str {
        &self.id
    }

    fn alphabet(&self) -> &BTreeSet<Terminal> {
        &self.alphabet
    }

    fn contains(&self, w: &Word) -> bool {
        match &self.parser {
            Some(Membership::Linear(p)) => p.accepts(w),
            Some(Membership::Cyk(p)) => p.accepts(w),
            None => false,
        }
    }

    fn enumerate(&self, max_len: usize) -> Result<BTreeSet<Word>> {
        match self.parser {
            Some(_) => enumerate(&self.grammar, max_len),
            None => Ok(BTreeSet::new()),
        }
    }
}
