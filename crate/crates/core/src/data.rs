//! Data files bundled into the library, and constructors that load them.

use crate::classifier::{SuffixTable, SuffixTableBuilder, TableError};
use crate::conjugator::{DataError, Lexicon, Paradigm};
use crate::extractor::{Analyzer, LightVerbs, RuleError, RuleSet};
use crate::Error;

pub const CHALIT_SUFFIXES: &str = include_str!("../data/suffixes/chalit.tsv");
pub const SADHU_SUFFIXES: &str = include_str!("../data/suffixes/sadhu.tsv");
pub const BANGAL_SUFFIXES: &str = include_str!("../data/suffixes/bangal.tsv");
pub const RADH_SUFFIXES: &str = include_str!("../data/suffixes/radh.tsv");
pub const CORE_RULES: &str = include_str!("../data/core.rules");
pub const PARADIGM: &str = include_str!("../data/paradigm.tsv");
pub const LEXICON: &str = include_str!("../data/lexicon.tsv");
pub const LIGHT_VERBS: &str = include_str!("../data/light_verbs.tsv");
pub const PREFIXES: &str = include_str!("../data/prefixes.txt");
pub const DESK_GOLD: &str = include_str!("../data/gold/desk.tsv");

/// Bundled suffix files as (name, contents), in register priority order.
pub const SUFFIX_FILES: [(&str, &str); 4] = [
    ("chalit.tsv", CHALIT_SUFFIXES),
    ("sadhu.tsv", SADHU_SUFFIXES),
    ("bangal.tsv", BANGAL_SUFFIXES),
    ("radh.tsv", RADH_SUFFIXES),
];

/// Builds one table from several suffix files; earlier files rank higher.
pub fn load_suffix_files<'a, I>(files: I) -> Result<SuffixTable, TableError>
where
    I: IntoIterator<Item = (&'a str, &'a str)>,
{
    let mut builder = SuffixTableBuilder::default();
    for (name, src) in files {
        builder.add_source(name, src)?;
    }
    Ok(builder.build())
}

/// All bundled registers: chalit, sadhu, then the dialects.
pub fn suffix_table() -> Result<SuffixTable, TableError> {
    load_suffix_files(SUFFIX_FILES)
}

pub fn rules() -> Result<RuleSet, RuleError> {
    RuleSet::load(CORE_RULES)
}

pub fn paradigm() -> Result<Paradigm, DataError> {
    Paradigm::load_named("paradigm.tsv", PARADIGM)
}

pub fn lexicon(paradigm: &Paradigm) -> Result<Lexicon, DataError> {
    Lexicon::load_named("lexicon.tsv", LEXICON, paradigm)
}

pub fn light_verbs() -> Result<LightVerbs, RuleError> {
    LightVerbs::parse(LIGHT_VERBS)
}

/// Prefix list lines: one prefix each, `#` comments and blanks ignored.
pub fn parse_prefixes(src: &str) -> Vec<String> {
    src.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(crate::script::normalize_text)
        .collect()
}

/// Everything needed to analyse and generate with the bundled data.
#[derive(Debug, Clone)]
pub struct Toolkit {
    pub analyzer: Analyzer,
    pub paradigm: Paradigm,
    pub lexicon: Lexicon,
}

impl Toolkit {
    /// Assembles an analyzer whose ranking knows the lexicon's roots.
    pub fn assemble(
        table: SuffixTable,
        rules: RuleSet,
        paradigm: Paradigm,
        lexicon: Lexicon,
        light_verbs: LightVerbs,
        prefixes: Vec<String>,
    ) -> Self {
        let analyzer = Analyzer::new(table, rules)
            .with_known_roots(lexicon.roots().map(str::to_owned))
            .with_prefixes(prefixes)
            .with_light_verbs(light_verbs);
        Self { analyzer, paradigm, lexicon }
    }
}

/// The bundled toolkit: all registers, core rules, the shipped lexicon.
pub fn toolkit() -> Result<Toolkit, Error> {
    let paradigm = paradigm()?;
    let lexicon = lexicon(&paradigm)?;
    Ok(Toolkit::assemble(suffix_table()?, rules()?, paradigm, lexicon, light_verbs()?, parse_prefixes(PREFIXES)))
}
