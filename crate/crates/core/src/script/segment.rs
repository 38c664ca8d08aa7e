use std::fmt;

use serde::{Deserialize, Serialize};

use super::{
    is_bengali_digit, is_combining, is_consonant, is_independent_vowel, is_punctuation, ScriptError, VIRAMA, ZWJ, ZWNJ,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClusterCategory {
    IndependentVowel,
    ConsonantBase,
    Conjunct,
    Digit,
    Punctuation,
    Other,
}

impl ClusterCategory {
    fn of_base(c: char) -> Self {
        if is_independent_vowel(c) {
            Self::IndependentVowel
        } else if is_consonant(c) {
            Self::ConsonantBase
        } else if is_bengali_digit(c) || c.is_ascii_digit() {
            Self::Digit
        } else if is_punctuation(c) {
            Self::Punctuation
        } else {
            Self::Other
        }
    }

    pub fn is_letter(self) -> bool {
        matches!(self, Self::IndependentVowel | Self::ConsonantBase | Self::Conjunct)
    }

    /// Whether combining marks may attach to a cluster of this category.
    fn takes_marks(self) -> bool {
        matches!(self, Self::IndependentVowel | Self::ConsonantBase | Self::Conjunct | Self::Other)
    }
}

/// One user-perceived character: a base plus everything that attaches to it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GraphemeCluster {
    text: String,
    category: ClusterCategory,
}

impl GraphemeCluster {
    fn takes_marks(&self) -> bool {
        self.category.takes_marks() && !self.base().is_whitespace() && !self.text.ends_with(ZWNJ)
    }

    pub fn as_str(&self) -> &str {
        &self.text
    }

    pub fn category(&self) -> ClusterCategory {
        self.category
    }

    /// The leading base (consonant, vowel, digit...) of the cluster.
    pub fn base(&self) -> char {
        self.text.chars().next().expect("clusters are non-empty")
    }

    /// Builds a cluster from text that is already known to form exactly one
    /// cluster. Returns `None` otherwise.
    pub fn from_text(text: &str) -> Option<Self> {
        let mut clusters = segment(text).ok()?;
        if clusters.len() == 1 {
            clusters.pop()
        } else {
            None
        }
    }
}

impl fmt::Display for GraphemeCluster {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

impl AsRef<str> for GraphemeCluster {
    fn as_ref(&self) -> &str {
        &self.text
    }
}

/// Splits normalized text into grapheme clusters.
///
/// A consonant followed by hasanta and another consonant stays in one
/// conjunct cluster (a ZWJ may sit on either side of the hasanta); a hasanta
/// followed by ZWNJ or by anything other than a consonant closes the cluster.
pub fn segment(word: &str) -> Result<Vec<GraphemeCluster>, ScriptError> {
    let mut clusters: Vec<GraphemeCluster> = Vec::new();
    // set right after a hasanta inside a consonant cluster
    let mut joining = false;

    for c in word.chars() {
        if joining && is_consonant(c) {
            let last = clusters.last_mut().expect("joining implies a cluster");
            last.text.push(c);
            last.category = ClusterCategory::Conjunct;
            joining = false;
            continue;
        }
        if joining && c == ZWJ {
            // ZWJ between hasanta and consonant keeps the conjunct open
            clusters.last_mut().expect("joining implies a cluster").text.push(c);
            continue;
        }
        joining = false;

        if is_combining(c) {
            match clusters.last_mut() {
                Some(last) if last.takes_marks() => {
                    last.text.push(c);
                    if c == VIRAMA
                        && matches!(last.category, ClusterCategory::ConsonantBase | ClusterCategory::Conjunct)
                    {
                        joining = true;
                    }
                }
                _ => {
                    return Err(ScriptError::OrphanMark { index: clusters.len(), mark: c });
                }
            }
            continue;
        }

        clusters.push(GraphemeCluster { text: c.to_string(), category: ClusterCategory::of_base(c) });
    }
    Ok(clusters)
}

pub fn join<C: AsRef<str>>(clusters: &[C]) -> String {
    clusters.iter().map(AsRef::as_ref).collect()
}
