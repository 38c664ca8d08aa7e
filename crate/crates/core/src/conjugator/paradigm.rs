use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use unicode_normalization::UnicodeNormalization;

use super::DataError;
use crate::classifier::{Reading, Register, TenseClass};
use crate::extractor::{rewrite_stem, Rewrite, TailPattern};

/// One paradigm cell: register, tense and person reading.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub register: Register,
    pub tense: TenseClass,
    pub reading: Reading,
}

impl Cell {
    pub fn new(register: Register, tense: TenseClass, reading: Reading) -> Self {
        Self { register, tense, reading }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}/{}", self.register, self.tense.bits(), self.reading)
    }
}

/// How a row derives the stem from the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StemRule {
    Identity,
    Rewrite(TailPattern, Rewrite),
}

impl StemRule {
    fn parse(src: &str) -> Result<Self, String> {
        let src = src.trim();
        if src == "=" {
            return Ok(Self::Identity);
        }
        let (pat, rw) = src
            .split_once('→')
            .or_else(|| src.split_once("->"))
            .ok_or_else(|| format!("stem rule {src:?} is neither '=' nor 'pattern→rewrite'"))?;
        Ok(Self::Rewrite(TailPattern::parse(pat)?, Rewrite::parse(rw)))
    }

    /// The stem for `root`, or `None` when the pattern does not apply.
    pub fn apply(&self, root: &str) -> Option<String> {
        match self {
            Self::Identity => Some(root.to_owned()),
            Self::Rewrite(p, r) => rewrite_stem(root, p, r),
        }
    }
}

#[derive(Debug, Clone)]
struct Row {
    class: Option<String>,
    register: Register,
    tenses: Option<BTreeSet<TenseClass>>,
    set: usize,
    stem: StemRule,
    cells: Option<BTreeSet<Reading>>,
}

impl Row {
    fn covers(&self, class: &str, cell: &Cell) -> bool {
        self.class.as_deref().is_none_or(|c| c == class)
            && self.register == cell.register
            && self.tenses.as_ref().is_none_or(|t| t.contains(&cell.tense))
            && self.cells.as_ref().is_none_or(|c| c.contains(&cell.reading))
    }
}

/// Stem-alternation classes and suffix sets, loaded from a paradigm file.
///
/// The file has three kinds of lines, tab separated:
///
/// * `@classes  name…` declares the closed set of stem classes;
/// * `@set  name  s₁ … s₆` names six suffixes, one per person cell in
///   [`Reading::CELLS`] order (`-` leaves a cell empty);
/// * `class  register  tenses  set  stem-rule  [cells]` assigns a suffix
///   set and stem rule to a block of cells. `class` and `tenses` accept `*`;
///   `tenses` and `cells` are comma-separated; the stem rule is `=` or
///   `pattern→rewrite` in the repair-rule pattern grammar.
///
/// For a given cell the first covering row whose set fills the cell and whose
/// stem rule applies to the root wins.
#[derive(Debug, Clone, Default)]
pub struct Paradigm {
    classes: Vec<String>,
    sets: Vec<(String, [Option<String>; 6])>,
    rows: Vec<Row>,
}

impl Paradigm {
    pub fn load(source: &str) -> Result<Self, DataError> {
        Self::load_named("paradigm", source)
    }

    pub fn load_named(name: &str, source: &str) -> Result<Self, DataError> {
        let mut p = Self::default();
        let mut set_index: BTreeMap<String, usize> = BTreeMap::new();
        for (idx, raw) in source.lines().enumerate() {
            let line = idx + 1;
            let err = |reason: String| DataError { file: name.to_owned(), line, reason };
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = trimmed.split('\t').map(str::trim).collect();
            match cols[0] {
                "@classes" => {
                    for c in &cols[1..] {
                        if !p.classes.iter().any(|k| k == c) {
                            p.classes.push((*c).to_owned());
                        }
                    }
                }
                "@set" => {
                    if cols.len() != 8 {
                        return Err(err(format!("@set needs a name and 6 suffixes, found {} columns", cols.len())));
                    }
                    let name = cols[1].to_owned();
                    if set_index.contains_key(&name) {
                        return Err(err(format!("suffix set {name:?} defined twice")));
                    }
                    let mut suffixes: [Option<String>; 6] = Default::default();
                    for (slot, s) in suffixes.iter_mut().zip(&cols[2..]) {
                        *slot = (*s != "-").then(|| s.nfc().collect());
                    }
                    set_index.insert(name.clone(), p.sets.len());
                    p.sets.push((name, suffixes));
                }
                _ => {
                    if cols.len() < 5 || cols.len() > 6 {
                        return Err(err(format!("expected 5 or 6 columns, found {}", cols.len())));
                    }
                    let class = match cols[0] {
                        "*" => None,
                        c if p.classes.iter().any(|k| k == c) => Some(c.to_owned()),
                        c => return Err(err(format!("undeclared stem class {c:?}"))),
                    };
                    let register: Register = cols[1].parse().map_err(err)?;
                    let tenses = match cols[2] {
                        "*" => None,
                        list => Some(
                            list.split(',')
                                .map(|b| TenseClass::from_bits(b.trim()).ok_or_else(|| format!("bad tense code {b:?}")))
                                .collect::<Result<BTreeSet<_>, _>>()
                                .map_err(err)?,
                        ),
                    };
                    let set =
                        *set_index.get(cols[3]).ok_or_else(|| err(format!("unknown suffix set {:?}", cols[3])))?;
                    let stem = StemRule::parse(cols[4]).map_err(err)?;
                    let cells = match cols.get(5).copied() {
                        None | Some("*") => None,
                        Some(list) => Some(
                            list.split(',')
                                .map(|r| r.trim().parse::<Reading>())
                                .collect::<Result<BTreeSet<_>, _>>()
                                .map_err(err)?,
                        ),
                    };
                    if let Some(bad) = cells.iter().flatten().find(|r| !r.is_cell()) {
                        return Err(err(format!("{bad} is not a paradigm cell")));
                    }
                    p.rows.push(Row { class, register, tenses, set, stem, cells });
                }
            }
        }
        Ok(p)
    }

    /// The declared stem classes, in file order.
    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    pub fn has_class(&self, class: &str) -> bool {
        self.classes.iter().any(|c| c == class)
    }

    /// Registers that at least one row covers, in their default order.
    pub fn registers(&self) -> Vec<Register> {
        self.rows.iter().map(|r| r.register.clone()).collect::<BTreeSet<_>>().into_iter().collect()
    }

    /// Generates the form for `root` of stem class `class` in `cell`, or
    /// `None` when no row defines the cell.
    pub fn generate(&self, class: &str, root: &str, cell: &Cell) -> Option<String> {
        let slot = Reading::CELLS.iter().position(|r| *r == cell.reading)?;
        self.rows.iter().filter(|row| row.covers(class, cell)).find_map(|row| {
            let suffix = self.sets[row.set].1[slot].as_deref()?;
            let stem = row.stem.apply(root)?;
            Some(format!("{stem}{suffix}").nfc().collect())
        })
    }

    /// The suffix the generating row attaches in `cell`, if any.
    pub fn suffix_for(&self, class: &str, root: &str, cell: &Cell) -> Option<&str> {
        let slot = Reading::CELLS.iter().position(|r| *r == cell.reading)?;
        self.rows.iter().filter(|row| row.covers(class, cell)).find_map(|row| {
            let suffix = self.sets[row.set].1[slot].as_deref()?;
            row.stem.apply(root)?;
            Some(suffix)
        })
    }
}
