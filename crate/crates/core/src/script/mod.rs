//! Bengali text model.
//!
//! Everything downstream matches on [`GraphemeCluster`]s, so this module owns
//! the character taxonomy of the Bengali block, canonical-form normalization,
//! cluster segmentation and the feature counts the repair rules test against.

mod features;
mod normalize;
mod segment;

pub use features::{features, features_of, FeatureVector, Kar, Phala};
pub use normalize::{normalize_bytes, normalize_text, LegacyMap, Normalizer};
pub use segment::{join, segment, ClusterCategory, GraphemeCluster};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScriptError {
    #[error("invalid UTF-8 at byte offset {offset}")]
    Decode { offset: usize },
    #[error("combining mark {mark:?} has no base (cluster index {index})")]
    OrphanMark { index: usize, mark: char },
    #[error("legacy map line {line}: {reason}")]
    LegacyMap { line: usize, reason: String },
}

pub const VIRAMA: char = '\u{09CD}';
pub const NUKTA: char = '\u{09BC}';
pub const ZWJ: char = '\u{200D}';
pub const ZWNJ: char = '\u{200C}';
pub const DANDA: char = '\u{0964}';
pub const DOUBLE_DANDA: char = '\u{0965}';

pub fn is_independent_vowel(c: char) -> bool {
    matches!(c, '\u{0985}'..='\u{098C}' | '\u{098F}' | '\u{0990}' | '\u{0993}' | '\u{0994}' | '\u{09E0}' | '\u{09E1}')
}

/// Consonant letters, including khanda ta and the nukta-precomposed forms
/// (which never survive canonical composition, but may appear in raw input).
pub fn is_consonant(c: char) -> bool {
    matches!(c,
        '\u{0995}'..='\u{09A8}' | '\u{09AA}'..='\u{09B0}' | '\u{09B2}' | '\u{09B6}'..='\u{09B9}'
        | '\u{09CE}' | '\u{09DC}' | '\u{09DD}' | '\u{09DF}' | '\u{09F0}' | '\u{09F1}')
}

/// Dependent vowel signs (kar).
pub fn is_vowel_sign(c: char) -> bool {
    matches!(c, '\u{09BE}'..='\u{09C4}' | '\u{09C7}' | '\u{09C8}' | '\u{09CB}' | '\u{09CC}' | '\u{09E2}' | '\u{09E3}')
}

pub fn is_bengali_digit(c: char) -> bool {
    matches!(c, '\u{09E6}'..='\u{09EF}')
}

/// Any character that must attach to a preceding base.
pub fn is_combining(c: char) -> bool {
    c == ZWJ || c == ZWNJ || unicode_normalization::char::is_combining_mark(c)
}

pub fn is_sentence_terminal(c: char) -> bool {
    matches!(c, DANDA | DOUBLE_DANDA | '?' | '!')
}

pub fn is_punctuation(c: char) -> bool {
    c.is_ascii_punctuation() || matches!(c, DANDA | DOUBLE_DANDA | '‘' | '’' | '“' | '”' | '…' | '–' | '—' | '\u{09F7}')
}
