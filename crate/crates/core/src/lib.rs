//! Rule-based pronunciation lexicon compiler for Hindi.
//!
//! Devanagari words are segmented into aksharas, mapped to IPA, run through
//! a cascade of segmental and metrical rules, and rendered at two levels:
//! a stress-marked phoneme string (`ˈkəsrət̪`) and a prosodic-structure
//! string with syllable labels (`[σs kəs ⟨σs rət̪⟩]`). Two varieties are
//! supported: Standard Formal Hindi and Standard Colloquial Hindi.
//!
//! ```
//! use hindi_pls::{Compiler, Variety};
//!
//! let compiler = Compiler::default();
//! let out = compiler.compile("कसरत", Variety::Sch).unwrap();
//! assert_eq!(out.phoneme, "ˈkəsrət̪");
//! assert_eq!(out.ps, "[σs kəs ⟨σs rət̪⟩]");
//! ```

pub mod compiler;
pub mod eval;
pub mod exceptions;
pub mod inventory;
pub mod phonology;
pub mod pls;
pub mod prosody;
pub mod script;



pub use compiler::{CompileError, Compiled, Compiler, Source};
pub use exceptions::{ExceptionEntry, ExceptionLexicon};
pub use inventory::Inventory;
pub use phonology::Variety;
pub use prosody::{derive, DerivationTrace, ProsodicWord};
