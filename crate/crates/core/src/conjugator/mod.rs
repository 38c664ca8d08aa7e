//! Forward generation: root plus paradigm cell to surface form.
//!
//! Stem classes and suffix sets come from a paradigm data file; lexicon
//! entries name their class and may override individual cells.

mod paradigm;

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;
use unicode_normalization::UnicodeNormalization;

pub use paradigm::{Cell, Paradigm, StemRule};

use crate::classifier::{Reading, Register, TenseClass};

/// A malformed line in a lexicon, paradigm or gold data file.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{file}:{line}: {reason}")]
pub struct DataError {
    pub file: String,
    pub line: usize,
    pub reason: String,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConjugateError {
    #[error("cell not defined for {root}: {cell}")]
    CellNotDefined { root: String, cell: Cell },
}

/// One lexicon root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexiconEntry {
    /// The bare dhatu, without trailing hasanta.
    pub root: String,
    /// Display form (verbal noun), e.g. খাওয়া for খা.
    pub verbal_noun: String,
    pub stem_class: String,
    pub overrides: BTreeMap<Cell, String>,
}

impl LexiconEntry {
    pub fn new(root: &str, verbal_noun: &str, stem_class: &str) -> Self {
        Self {
            root: root.nfc().collect(),
            verbal_noun: verbal_noun.nfc().collect(),
            stem_class: stem_class.to_owned(),
            overrides: BTreeMap::new(),
        }
    }
}

/// The root lexicon. Lines are
/// `root<TAB>verbal_noun<TAB>stem_class[<TAB>register/tense/person=form;…]`.
#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    entries: Vec<LexiconEntry>,
    index: HashMap<String, usize>,
}

impl Lexicon {
    /// Parses `source`, checking every stem class against `paradigm`.
    pub fn load(source: &str, paradigm: &Paradigm) -> Result<Self, DataError> {
        Self::load_named("lexicon", source, paradigm)
    }

    pub fn load_named(name: &str, source: &str, paradigm: &Paradigm) -> Result<Self, DataError> {
        let mut lex = Self::default();
        for (idx, raw) in source.lines().enumerate() {
            let line = idx + 1;
            let err = |reason: String| DataError { file: name.to_owned(), line, reason };
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = trimmed.split('\t').map(str::trim).collect();
            if cols.len() < 3 || cols.len() > 4 {
                return Err(err(format!("expected 3 or 4 columns, found {}", cols.len())));
            }
            if cols[0].is_empty() {
                return Err(err("empty root".into()));
            }
            if !paradigm.has_class(cols[2]) {
                return Err(err(format!("stem class {:?} is not declared in the paradigm", cols[2])));
            }
            let mut entry = LexiconEntry::new(cols[0], cols[1], cols[2]);
            for item in cols.get(3).into_iter().flat_map(|c| c.split(';')).map(str::trim).filter(|s| !s.is_empty()) {
                let (key, form) = item.split_once('=').ok_or_else(|| err(format!("override {item:?} lacks '='")))?;
                let cell = parse_cell(key).map_err(err)?;
                entry.overrides.insert(cell, form.trim().nfc().collect());
            }
            if lex.index.contains_key(&entry.root) {
                return Err(err(format!("root {} listed twice", entry.root)));
            }
            lex.index.insert(entry.root.clone(), lex.entries.len());
            lex.entries.push(entry);
        }
        Ok(lex)
    }

    pub fn get(&self, root: &str) -> Option<&LexiconEntry> {
        let root: String = root.nfc().collect();
        self.index.get(&root).map(|&i| &self.entries[i])
    }

    pub fn entries(&self) -> &[LexiconEntry] {
        &self.entries
    }

    pub fn roots(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.root.as_str())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// `register/tense/person[:formality]`
fn parse_cell(key: &str) -> Result<Cell, String> {
    let parts: Vec<&str> = key.trim().split('/').collect();
    let [reg, tense, person] = parts[..] else {
        return Err(format!("cell {key:?} is not register/tense/person"));
    };
    let register: Register = reg.parse()?;
    let tense = TenseClass::from_bits(tense).ok_or_else(|| format!("bad tense code {tense:?}"))?;
    let reading: Reading = person.parse()?;
    if !reading.is_cell() {
        return Err(format!("{reading} is not a paradigm cell"));
    }
    Ok(Cell::new(register, tense, reading))
}

/// The surface form of `entry` in one cell: the irregular override when the
/// lexicon has one, otherwise the class stem plus the cell's suffix.
pub fn conjugate(
    entry: &LexiconEntry,
    tense: TenseClass,
    reading: Reading,
    register: &Register,
    paradigm: &Paradigm,
) -> Result<String, ConjugateError> {
    let cell = Cell::new(register.clone(), tense, reading);
    if let Some(form) = entry.overrides.get(&cell) {
        return Ok(form.clone());
    }
    paradigm
        .generate(&entry.stem_class, &entry.root, &cell)
        .ok_or_else(|| ConjugateError::CellNotDefined { root: entry.root.clone(), cell })
}

/// Every defined cell of `entry` in `register`. Undefined cells are left out.
pub fn paradigm(
    entry: &LexiconEntry,
    register: &Register,
    paradigm: &Paradigm,
) -> BTreeMap<(TenseClass, Reading), String> {
    let mut out = BTreeMap::new();
    for tense in TenseClass::ALL {
        for reading in Reading::CELLS {
            if let Ok(form) = conjugate(entry, tense, reading, register, paradigm) {
                out.insert((tense, reading), form);
            }
        }
    }
    out
}
