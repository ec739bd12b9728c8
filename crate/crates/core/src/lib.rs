//! Compositional belief change over finite propositional vocabularies.
//!
//! The crate is `no_std` (it needs `alloc`). It provides:
//!
//! * [`formula`]: the formula AST, a parser and printer, and the fixed
//!   nnf/dnf/cnf conversions.
//! * [`semantics`]: vocabularies, interpretations, model enumeration,
//!   entailment and prime implicants.
//! * [`change`]: the compositional update/erasure family, forgetting and
//!   compositional revision, all computed on model sets.
//! * [`syntactic`]: eliminants and the dnf-based update procedure.
//! * [`oracle`]: definition-literal reference operators (PMA, standard
//!   semantics, Satoh, Dalal, substitution forgetting).
//! * [`postulate`]: executable KM update postulates with random search.
//! * [`blowup`]: the hard instance family for dnf-size lower bounds.
#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

pub mod blowup;
pub mod change;
pub mod error;
pub mod formula;
pub mod oracle;
pub mod postulate;
pub mod semantics;
pub mod syntactic;

mod parse;

pub use error::{Error, Result};
pub use formula::{Atom, AtomSet, CnfFormula, DnfFormula, Formula, Literal, Term};
pub use semantics::{Interpretation, ModelSet, Vocabulary, DEFAULT_VOCAB_CAP};
