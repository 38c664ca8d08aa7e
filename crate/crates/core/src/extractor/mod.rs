//! Root extraction: suffix stripping plus rule-driven stem repair.
//!
//! Repair rules live in a data file. Each rule rewrites the tail of a stem
//! when its condition over the stem's feature counts, the tense, the person
//! readings and the register holds.

mod analyze;
mod repair;
mod rules;

use std::collections::BTreeSet;

use thiserror::Error;
use unicode_normalization::UnicodeNormalization;

pub use analyze::{extract_root, strip, Analysis, Analyzer};
pub use repair::{repair, Candidate, MAX_RULE_DEPTH};
pub use rules::{rewrite_stem, Condition, RepairRule, Rewrite, RuleContext, RuleSet, TailPattern};

use crate::script::ScriptError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("rule file line {line}: {reason}")]
pub struct RuleError {
    pub line: usize,
    pub reason: String,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepairError {
    #[error("rule cycle on stem {stem:?} via {}", rules.join(" → "))]
    Cycle { stem: String, rules: Vec<String> },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StripError {
    #[error("suffix {suffix:?} consumes the whole word")]
    WholeWord { suffix: String },
    #[error("{suffix:?} is not a suffix of the word")]
    NotASuffix { suffix: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtractError {
    #[error(transparent)]
    Script(#[from] ScriptError),
    #[error(transparent)]
    Repair(#[from] RepairError),
}

/// Light verbs that form compounds with a preceding non-finite form, and the
/// endings that mark a reading as non-finite.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LightVerbs {
    roots: BTreeSet<String>,
    non_finite: BTreeSet<String>,
}

impl LightVerbs {
    /// Lines are `light<TAB>root` or `nonfinite<TAB>suffix`.
    pub fn parse(source: &str) -> Result<Self, RuleError> {
        let mut lv = Self::default();
        for (idx, raw) in source.lines().enumerate() {
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let err = |reason: String| RuleError { line: idx + 1, reason };
            let (kind, value) = trimmed.split_once('\t').ok_or_else(|| err("expected kind<TAB>value".into()))?;
            let value: String = value.trim().nfc().collect();
            if value.is_empty() {
                return Err(err("empty value".into()));
            }
            match kind.trim() {
                "light" => lv.roots.insert(value),
                "nonfinite" => lv.non_finite.insert(value),
                other => return Err(err(format!("unknown kind {other:?}"))),
            };
        }
        Ok(lv)
    }

    pub fn is_light(&self, root: &str) -> bool {
        self.roots.contains(root)
    }

    pub fn is_non_finite(&self, suffix: &str) -> bool {
        self.non_finite.contains(suffix)
    }
}
