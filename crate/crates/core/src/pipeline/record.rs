use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::classifier::{Person, Register, TenseClass};
use crate::extractor::Analysis;

/// Placeholder for an empty column in TSV output.
pub const NONE: &str = "-";

/// One output row of batch analysis. The TSV columns are
/// `surface  root  tense_code  person_code  register  rank`; JSONL records
/// carry the same fields under the same names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub surface: String,
    pub root: String,
    /// 4-bit tense code, if a suffix was matched.
    pub tense: Option<String>,
    /// Distinct 2-bit person codes, comma-joined.
    pub person: Option<String>,
    pub register: Option<String>,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecordParseError {
    pub reason: String,
}

impl fmt::Display for RecordParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.reason)
    }
}

impl std::error::Error for RecordParseError {}

fn column(s: &str) -> Option<String> {
    (s != NONE).then(|| s.to_owned())
}

/// Comma-joined distinct person codes in code order.
pub fn person_codes<I: IntoIterator<Item = Person>>(persons: I) -> Option<String> {
    let codes: BTreeSet<Person> = persons.into_iter().collect();
    (!codes.is_empty()).then(|| codes.iter().map(|p| p.bits()).collect::<Vec<_>>().join(","))
}

impl Record {
    pub fn from_analysis(a: &Analysis) -> Self {
        Self {
            surface: a.surface.clone(),
            root: a.root.clone(),
            tense: a.tense.map(TenseClass::bits),
            person: person_codes(a.persons.iter().map(|r| r.person)),
            register: a.register.as_ref().map(Register::to_string),
            rank: a.rank,
        }
    }

    pub fn to_tsv(&self) -> String {
        let opt = |o: &Option<String>| o.clone().unwrap_or_else(|| NONE.to_owned());
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}",
            self.surface,
            self.root,
            opt(&self.tense),
            opt(&self.person),
            opt(&self.register),
            self.rank
        )
    }

    pub fn parse_tsv(line: &str) -> Result<Self, RecordParseError> {
        let cols: Vec<&str> = line.split('\t').collect();
        let err = |reason: String| RecordParseError { reason };
        let [surface, root, tense, person, register, rank] = cols[..] else {
            return Err(err(format!("expected 6 columns, found {}", cols.len())));
        };
        if let Some(t) = column(tense) {
            TenseClass::from_bits(&t).ok_or_else(|| err(format!("bad tense code {t:?}")))?;
        }
        if let Some(p) = column(person) {
            if !p.split(',').all(|c| Person::from_bits(c).is_some()) {
                return Err(err(format!("bad person codes {p:?}")));
            }
        }
        if let Some(r) = column(register) {
            r.parse::<Register>().map_err(err)?;
        }
        Ok(Self {
            surface: surface.to_owned(),
            root: root.to_owned(),
            tense: column(tense),
            person: column(person),
            register: column(register),
            rank: rank.parse().map_err(|_| err(format!("bad rank {rank:?}")))?,
        })
    }

    pub fn to_jsonl(&self) -> String {
        serde_json::to_string(self).expect("records always serialize")
    }

    pub fn tense_class(&self) -> Option<TenseClass> {
        self.tense.as_deref().and_then(TenseClass::from_bits)
    }

    pub fn person_set(&self) -> BTreeSet<Person> {
        self.person.iter().flat_map(|p| p.split(',')).filter_map(Person::from_bits).collect()
    }
}
