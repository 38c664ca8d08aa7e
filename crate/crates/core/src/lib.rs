//! Root (dhatu) extraction for inflected Bengali verbs.
//!
//! The pipeline runs in four stages:
//!
//! 1. [`script`] normalizes corpus text and segments words into grapheme
//!    clusters.
//! 2. [`classifier`] finds inflectional suffixes at the word end by longest
//!    match and reads off the tense class and person readings.
//! 3. [`extractor`] strips the suffix and repairs the stem back to the root
//!    with data-driven rewrite rules.
//! 4. [`conjugator`] runs the other direction, generating surface forms from
//!    a root, and serves as the oracle for the analyzer.
//!
//! [`pipeline`] wires these into batch analysis, evaluation and the CLI.
//! Bundled data files are available through [`data`].

pub mod classifier;
pub mod conjugator;
pub mod data;
pub mod extractor;
pub mod pipeline;
pub mod script;

use thiserror::Error;

pub use classifier::{
    classify, match_suffix, Formality, Person, Reading, Register, SuffixEntry, SuffixMatch, SuffixTable, TenseClass,
};
pub use conjugator::{conjugate, paradigm, Lexicon, LexiconEntry, Paradigm};
pub use extractor::{extract_root, repair, strip, Analysis, Analyzer, RuleSet};
pub use script::{features, normalize_text, segment, FeatureVector, GraphemeCluster};

/// Any error raised while loading data or analysing text.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Script(#[from] script::ScriptError),
    #[error(transparent)]
    Table(#[from] classifier::TableError),
    #[error(transparent)]
    Rule(#[from] extractor::RuleError),
    #[error(transparent)]
    Repair(#[from] extractor::RepairError),
    #[error(transparent)]
    Conjugate(#[from] conjugator::ConjugateError),
    #[error(transparent)]
    Data(#[from] conjugator::DataError),
    #[error(transparent)]
    Eval(#[from] pipeline::EvalError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
