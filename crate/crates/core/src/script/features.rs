use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{
    is_consonant, is_independent_vowel, is_vowel_sign, segment, GraphemeCluster, ScriptError, VIRAMA, ZWJ, ZWNJ,
};

/// Dependent vowel sign kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kar {
    Aa,
    I,
    Ii,
    U,
    Uu,
    Ri,
    Rri,
    E,
    Ai,
    O,
    Au,
    Li,
    Lli,
}

impl Kar {
    pub fn from_sign(c: char) -> Option<Self> {
        Some(match c {
            'া' => Self::Aa,
            'ি' => Self::I,
            'ী' => Self::Ii,
            'ু' => Self::U,
            'ূ' => Self::Uu,
            'ৃ' => Self::Ri,
            'ৄ' => Self::Rri,
            'ে' => Self::E,
            'ৈ' => Self::Ai,
            'ো' => Self::O,
            'ৌ' => Self::Au,
            '\u{09E2}' => Self::Li,
            '\u{09E3}' => Self::Lli,
            _ => return None,
        })
    }

    pub fn sign(self) -> char {
        match self {
            Self::Aa => 'া',
            Self::I => 'ি',
            Self::Ii => 'ী',
            Self::U => 'ু',
            Self::Uu => 'ূ',
            Self::Ri => 'ৃ',
            Self::Rri => 'ৄ',
            Self::E => 'ে',
            Self::Ai => 'ৈ',
            Self::O => 'ো',
            Self::Au => 'ৌ',
            Self::Li => '\u{09E2}',
            Self::Lli => '\u{09E3}',
        }
    }

    /// Accepts either the sign itself or the matching independent vowel
    /// (`আ` for আ-কার, `ই` for ই-কার...).
    pub fn parse(name: &str) -> Option<Self> {
        let mut chars = name.chars();
        let c = chars.next()?;
        if chars.next().is_some() {
            return None;
        }
        Self::from_sign(c).or_else(|| {
            Some(match c {
                'আ' => Self::Aa,
                'ই' => Self::I,
                'ঈ' => Self::Ii,
                'উ' => Self::U,
                'ঊ' => Self::Uu,
                'ঋ' => Self::Ri,
                'ৠ' => Self::Rri,
                'এ' => Self::E,
                'ঐ' => Self::Ai,
                'ও' => Self::O,
                'ঔ' => Self::Au,
                _ => return None,
            })
        })
    }
}

/// Subscript consonant signs formed with hasanta.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Phala {
    Ra,
    Ba,
    Ya,
}

impl Phala {
    pub fn from_consonant(c: char) -> Option<Self> {
        match c {
            'র' => Some(Self::Ra),
            'ব' => Some(Self::Ba),
            'য' => Some(Self::Ya),
            _ => None,
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        let mut chars = name.chars();
        let c = chars.next()?;
        if chars.next().is_some() {
            return None;
        }
        Self::from_consonant(c)
    }
}

/// Written-form counts over one word.
///
/// The inherent vowel is never counted; each consonant inside a conjunct
/// counts on its own.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub char_count: usize,
    pub vowel_count: usize,
    pub consonant_count: usize,
    pub kar_counts: BTreeMap<Kar, usize>,
    pub phala_counts: BTreeMap<Phala, usize>,
    pub has_hasanta_final: bool,
}

impl FeatureVector {
    pub fn kar(&self, kar: Kar) -> usize {
        self.kar_counts.get(&kar).copied().unwrap_or(0)
    }

    pub fn phala(&self, phala: Phala) -> usize {
        self.phala_counts.get(&phala).copied().unwrap_or(0)
    }
}

pub fn features(word: &str) -> Result<FeatureVector, ScriptError> {
    Ok(features_of(&segment(word)?))
}

pub fn features_of(clusters: &[GraphemeCluster]) -> FeatureVector {
    let mut fv = FeatureVector { char_count: clusters.len(), ..Default::default() };
    for cluster in clusters {
        let chars: Vec<char> = cluster.as_str().chars().filter(|&c| c != ZWJ && c != ZWNJ).collect();
        for (i, &c) in chars.iter().enumerate() {
            if is_independent_vowel(c) {
                fv.vowel_count += 1;
            } else if is_vowel_sign(c) {
                fv.vowel_count += 1;
                if let Some(kar) = Kar::from_sign(c) {
                    *fv.kar_counts.entry(kar).or_default() += 1;
                }
            } else if is_consonant(c) {
                fv.consonant_count += 1;
                let after_virama = i >= 2 && chars[i - 1] == VIRAMA && is_consonant_or_nukta(chars[i - 2]);
                if after_virama {
                    if let Some(phala) = Phala::from_consonant(c) {
                        *fv.phala_counts.entry(phala).or_default() += 1;
                    }
                }
            }
        }
    }
    fv.has_hasanta_final =
        clusters.last().map(|c| c.as_str().trim_end_matches(ZWNJ).ends_with(VIRAMA)).unwrap_or(false);
    fv
}

fn is_consonant_or_nukta(c: char) -> bool {
    is_consonant(c) || c == super::NUKTA
}
