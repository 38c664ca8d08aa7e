use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// The ten tense classes, coded 0000..1001 in suffix-table row order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TenseClass {
    SimplePresent,
    PresentContinuous,
    PresentPerfect,
    SimplePast,
    PastContinuous,
    PastPerfect,
    PastHabitual,
    SimpleFuture,
    FutureContinuous,
    FuturePerfect,
}

impl TenseClass {
    pub const ALL: [TenseClass; 10] = [
        Self::SimplePresent,
        Self::PresentContinuous,
        Self::PresentPerfect,
        Self::SimplePast,
        Self::PastContinuous,
        Self::PastPerfect,
        Self::PastHabitual,
        Self::SimpleFuture,
        Self::FutureContinuous,
        Self::FuturePerfect,
    ];

    pub fn code(self) -> u8 {
        self as u8
    }

    /// Four-digit binary form, e.g. `0111`.
    pub fn bits(self) -> String {
        format!("{:04b}", self.code())
    }

    pub fn from_code(code: u8) -> Option<Self> {
        Self::ALL.get(code as usize).copied()
    }

    /// Parses exactly four binary digits with value at most 1001.
    pub fn from_bits(bits: &str) -> Option<Self> {
        if bits.len() != 4 || !bits.bytes().all(|b| b == b'0' || b == b'1') {
            return None;
        }
        u8::from_str_radix(bits, 2).ok().and_then(Self::from_code)
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::SimplePresent => "simple present",
            Self::PresentContinuous => "present continuous",
            Self::PresentPerfect => "present perfect",
            Self::SimplePast => "simple past",
            Self::PastContinuous => "past continuous",
            Self::PastPerfect => "past perfect",
            Self::PastHabitual => "past habitual",
            Self::SimpleFuture => "simple future",
            Self::FutureContinuous => "future continuous",
            Self::FuturePerfect => "future perfect",
        }
    }
}

impl fmt::Display for TenseClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.bits())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Person {
    First,
    Second,
    Third,
}

impl Person {
    pub fn code(self) -> u8 {
        match self {
            Self::First => 0b01,
            Self::Second => 0b10,
            Self::Third => 0b11,
        }
    }

    pub fn bits(self) -> &'static str {
        match self {
            Self::First => "01",
            Self::Second => "10",
            Self::Third => "11",
        }
    }

    pub fn from_bits(bits: &str) -> Option<Self> {
        match bits {
            "01" => Some(Self::First),
            "10" => Some(Self::Second),
            "11" => Some(Self::Third),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Formality {
    Intimate,
    Ordinary,
    Honorific,
}

impl Formality {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Intimate => "intimate",
            Self::Ordinary => "ordinary",
            Self::Honorific => "honorific",
        }
    }
}

impl FromStr for Formality {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "intimate" => Ok(Self::Intimate),
            "ordinary" => Ok(Self::Ordinary),
            "honorific" => Ok(Self::Honorific),
            other => Err(format!("unknown formality {other:?}")),
        }
    }
}

/// A person reading. Formality travels next to the 2-bit person code, never
/// inside it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Reading {
    pub person: Person,
    pub formality: Formality,
}

impl Reading {
    /// Every paradigm cell: first person has one, second three, third two.
    pub const CELLS: [Reading; 6] = [
        Reading::new(Person::First, Formality::Ordinary),
        Reading::new(Person::Second, Formality::Intimate),
        Reading::new(Person::Second, Formality::Ordinary),
        Reading::new(Person::Second, Formality::Honorific),
        Reading::new(Person::Third, Formality::Ordinary),
        Reading::new(Person::Third, Formality::Honorific),
    ];

    pub const fn new(person: Person, formality: Formality) -> Self {
        Self { person, formality }
    }

    pub fn is_cell(self) -> bool {
        Self::CELLS.contains(&self)
    }
}

impl fmt::Display for Reading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.person.bits(), self.formality.as_str())
    }
}

impl FromStr for Reading {
    type Err = String;

    /// `code:formality`, or a bare code meaning the ordinary formality.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (code, formality) = match s.split_once(':') {
            Some((c, f)) => (c, f.parse()?),
            None => (s, Formality::Ordinary),
        };
        let person = Person::from_bits(code).ok_or_else(|| format!("bad person code {code:?}"))?;
        Ok(Self { person, formality })
    }
}

/// Which register (or dialect) a suffix belongs to.
///
/// The derived order is the default priority: chalit, sadhu, then dialects
/// alphabetically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Register {
    Chalit,
    Sadhu,
    Dialect(String),
}

impl Register {
    pub fn dialect(name: &str) -> Self {
        Self::Dialect(name.to_owned())
    }
}

impl fmt::Display for Register {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Chalit => f.write_str("chalit"),
            Self::Sadhu => f.write_str("sadhu"),
            Self::Dialect(name) => write!(f, "dialect:{name}"),
        }
    }
}

impl FromStr for Register {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "chalit" => Ok(Self::Chalit),
            "sadhu" => Ok(Self::Sadhu),
            _ => match s.strip_prefix("dialect:") {
                Some(name) if !name.is_empty() && !name.contains(char::is_whitespace) => {
                    Ok(Self::Dialect(name.to_owned()))
                }
                _ => Err(format!("unknown register {s:?}")),
            },
        }
    }
}

impl Serialize for Register {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Register {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
