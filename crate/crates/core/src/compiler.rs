//! Word-level driver: exceptions lexicon first, rule cascade otherwise.

use thiserror::Error;

use crate::exceptions::{Category, ExceptionLexicon};
use crate::inventory::Inventory;
use crate::phonology::Variety;
use crate::prosody::{self, DerivationTrace, DeriveError};
use crate::script::{self, MalformedInput};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CompileError {
    #[error(transparent)]
    Malformed(#[from] MalformedInput),
    #[error("{word}: {source}")]
    Derive { word: String, source: DeriveError },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Rules,
    Exception(Category),
}

/// Both output levels for one word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Compiled {
    pub grapheme: String,
    pub variety: Variety,
    pub phoneme: String,
    pub ps: String,
    pub alternates: Vec<String>,
    pub source: Source,
    /// Present for rule-derived words.
    pub trace: Option<DerivationTrace>,
}

impl Compiled {
    pub fn from_exception(&self) -> bool {
        matches!(self.source, Source::Exception(_))
    }
}

#[derive(Debug, Clone, Default)]
pub struct Compiler {
    inventory: Inventory,
    exceptions: ExceptionLexicon,
}

impl Compiler {
    pub fn new(inventory: Inventory, exceptions: ExceptionLexicon) -> Self {
        Compiler { inventory, exceptions }
    }

    /// Bundled inventory and starter exceptions.
    pub fn with_starter_exceptions() -> Self {
        Compiler::new(Inventory::default(), ExceptionLexicon::starter())
    }

    pub fn inventory(&self) -> &Inventory {
        &self.inventory
    }

    pub fn exceptions(&self) -> &ExceptionLexicon {
        &self.exceptions
    }

    pub fn compile(&self, word: &str, variety: Variety) -> Result<Compiled, CompileError> {
        if let Some(e) = self.exceptions.lookup(word, variety) {
            return Ok(Compiled {
                grapheme: word.to_string(),
                variety,
                phoneme: e.phoneme_out.clone(),
                ps: e.ps_out.clone(),
                alternates: e.alternate.iter().cloned().collect(),
                source: Source::Exception(e.category),
                trace: None,
            });
        }
        self.derive(word, variety)
    }

    /// The rule cascade alone, ignoring the exceptions lexicon.
    pub fn derive(&self, word: &str, variety: Variety) -> Result<Compiled, CompileError> {
        let tokens = script::segment(word)?;
        let (w, trace) = prosody::derive(&tokens, &self.inventory, variety)
            .map_err(|source| CompileError::Derive { word: word.to_string(), source })?;
        Ok(Compiled {
            grapheme: word.to_string(),
            variety,
            phoneme: prosody::render_phoneme(&w),
            ps: prosody::render_ps(&w),
            alternates: Vec::new(),
            source: Source::Rules,
            trace: Some(trace),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exception_preempts_rules() {
        let c = Compiler::with_starter_exceptions();
        let out = c.compile("सुसमय", Variety::Sch).unwrap();
        assert_eq!(out.phoneme, "ˈsusəməj");
        assert!(out.from_exception());
        assert!(out.trace.is_none());
        assert_eq!(c.derive("सुसमय", Variety::Sch).unwrap().phoneme, "ˈsusməj");
    }

    #[test]
    fn plain_compiler_has_no_exceptions() {
        let out = Compiler::default().compile("कॉलेज", Variety::Sch).unwrap();
        assert_eq!(out.source, Source::Rules);
    }

    #[test]
    fn malformed_word_is_reported() {
        let err = Compiler::default().compile("abc", Variety::Sch).unwrap_err();
        assert!(matches!(err, CompileError::Malformed(_)));
        let err = Compiler::default().compile("दुःख", Variety::Sch).unwrap_err();
        assert!(matches!(err, CompileError::Derive { .. }));
    }
}
