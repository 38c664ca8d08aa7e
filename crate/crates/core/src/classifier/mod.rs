//! Suffix inventory and tense/person classification.
//!
//! Tense classes carry 4-bit codes and persons 2-bit codes. A suffix entry
//! lists every person reading it admits; classification never discards one.

mod codes;
mod table;

use std::collections::BTreeSet;

use thiserror::Error;

pub use codes::{Formality, Person, Reading, Register, TenseClass};
pub use table::{split_suffix, SuffixEntry, SuffixMatch, SuffixTable, SuffixTableBuilder, SuffixUnits};

use crate::script::GraphemeCluster;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{file}:{line}: {reason}")]
pub struct TableError {
    pub file: String,
    pub line: usize,
    pub reason: String,
}

pub fn match_suffix(word: &[GraphemeCluster], table: &SuffixTable) -> Vec<SuffixMatch> {
    table.match_suffix(word)
}

pub fn classify(m: &SuffixMatch) -> (TenseClass, BTreeSet<Reading>) {
    (m.entry.tense, m.entry.readings.clone())
}
