//! Fixtures and checks shared by the integration test targets.

#![allow(dead_code)]

use std::sync::OnceLock;

use proptest::prelude::*;
use unicode_normalization::UnicodeNormalization;

use dhatu::conjugator::conjugate;
use dhatu::data::{self, Toolkit};
use dhatu::extractor::MAX_RULE_DEPTH;
use dhatu::pipeline::{analyze_stream, best_records, evaluate, parse_gold, EvalReport, StreamOptions};
use dhatu::script::{is_combining, join};
use dhatu::{
    classify, extract_root, features, match_suffix, normalize_text, segment, Analysis, Reading, Register, TenseClass,
};

pub fn kit() -> &'static Toolkit {
    static KIT: OnceLock<Toolkit> = OnceLock::new();
    KIT.get_or_init(|| data::toolkit().expect("bundled data loads"))
}

/// The published suffix table, transcribed row by row as printed (tense
/// code, suffixes). Empty quote pairs of the print are dropped, the
/// repeated েছেন is listed once, and three entries keep the stray space
/// of the print; [`printed_suffix`] removes it.
pub const PRINTED_TABLE: &[(&str, &[&str])] = &[
    ("0000", &["ি", "ে", "েন", "িস", "ই"]),
    ("0001", &["ছি", "িতেছি", "ছে", "িতেছে", "ছ", "িতেছ", "ছেন"]),
    ("0010", &["েছি", "িয়াছি", "েছ", "িয়াছ", "েছেন"]),
    ("0011", &["লাম", "লুম", "িলাম", "িলুম", "লে", "িলে", "লেন", "িলেন"]),
    ("0100", &["ছিলাম", "ছিলুম", "িতে ছিলাম", "িতেছিলুম"]),
    ("0101", &["েছিলাম", "েছিলুম", "িয়াছিলাম"]),
    ("0110", &["তাম", "তুম", "িতাম", "িতুম", "তে"]),
    ("0111", &["ব", "িব", "বে", "িবে", "বি", "িবি"]),
    ("1000", &["তেথাকব", "িতেথাকিব", "তেথাকবে", "িতেথাকি বে", "তেথাকবি", "িতে থাকিবি"]),
    ("1001", &["েথাকব", "িয়াথাকিব", "েথাকবে"]),
];

/// A printed suffix in canonical form, with the typesetting space removed.
pub fn printed_suffix(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).nfc().collect()
}

/// Every printed suffix with its row's tense.
pub fn printed_table_entries() -> Vec<(String, TenseClass)> {
    PRINTED_TABLE
        .iter()
        .flat_map(|(bits, row)| {
            let tense = TenseClass::from_bits(bits).expect("valid code");
            row.iter().map(move |s| (printed_suffix(s), tense))
        })
        .collect()
}

/// A word ending in `suffix`: a consonant-final host for sign- and
/// consonant-initial suffixes, a vowel-final one for vowel-initial suffixes.
pub fn host_word(suffix: &str) -> String {
    let first = suffix.chars().next().expect("non-empty suffix");
    let host = if dhatu::script::is_independent_vowel(first) { "খা" } else { "কর" };
    format!("{host}{suffix}").nfc().collect()
}

/// Checks that the longest match on a host word is the printed suffix and
/// classifies to the printed row. Returns one message per failure.
pub fn printed_table_failures() -> Vec<String> {
    let table = &kit().analyzer.table;
    let mut failures = Vec::new();
    for (suffix, tense) in printed_table_entries() {
        let word = host_word(&suffix);
        let clusters = segment(&word).expect("host words segment");
        let matches = match_suffix(&clusters, table);
        match matches.first() {
            Some(m) if m.entry.suffix == suffix && classify(m).0 == tense => {}
            Some(m) => failures.push(format!(
                "{suffix} ({}): longest match on {word} is {} ({})",
                tense.bits(),
                m.entry.suffix,
                classify(m).0.bits()
            )),
            None => failures.push(format!("{suffix} ({}): no match on {word}", tense.bits())),
        }
    }
    failures
}

/// Commonly cited inflected forms of খেলা, each with the tense of
/// its ending. The printed list has খেলছিলেন three times; its transliterations
/// (khelechhila, khelechhilen) identify the last two as খেলেছিল and
/// খেলেছিলেন. খেল carries no inflectional ending and stays unanalyzed.
pub const KHELA_FORMS: &[(&str, Option<&str>)] = &[
    ("খেলি", Some("0000")),
    ("খেল", None),
    ("খেলে", Some("0000")),
    ("খেলেন", Some("0000")),
    ("খেলছে", Some("0001")),
    ("খেলছিলে", Some("0100")),
    ("খেলছিল", Some("0100")),
    ("খেলছিলেন", Some("0100")),
    ("খেলেছিল", Some("0101")),
    ("খেলেছিলেন", Some("0101")),
    ("খেলব", Some("0111")),
    ("খেলবে", Some("0111")),
    ("খেলবেন", Some("0111")),
];

pub fn khela_failures() -> Vec<String> {
    let mut failures = Vec::new();
    for (form, bits) in KHELA_FORMS {
        let analyses = kit().analyzer.analyze(form).expect("fixture forms analyze");
        let best = &analyses[0];
        let tense = best.tense.map(TenseClass::bits);
        if best.root != "খেল" || tense.as_deref() != *bits {
            failures.push(format!("{form}: got root {} tense {tense:?}, want খেল {bits:?}", best.root));
        }
    }
    failures
}

pub fn gold_report() -> EvalReport {
    let gold = parse_gold("desk.tsv", data::DESK_GOLD).expect("gold parses");
    let surfaces: Vec<&str> = gold.iter().map(|g| g.surface.as_str()).collect();
    let predictions = best_records(&kit().analyzer, &surfaces);
    evaluate(&predictions, &gold).expect("predictions align with gold")
}

/// Gold surfaces, one per line, in file order.
pub fn gold_text() -> String {
    let gold = parse_gold("desk.tsv", data::DESK_GOLD).expect("gold parses");
    gold.iter().map(|g| format!("{}\n", g.surface)).collect()
}

/// One full batch run over the gold surfaces, as bytes.
pub fn pipeline_run(opts: &StreamOptions) -> Vec<u8> {
    let mut out = Vec::new();
    analyze_stream(gold_text().as_bytes(), &kit().analyzer, opts, &mut out).expect("in-memory io");
    out
}

/// Result of generating every lexicon cell in chalit and sadhu and analysing
/// it back.
#[derive(Debug, Default)]
pub struct RoundTrip {
    pub forms: usize,
    pub recovered: usize,
    pub chalit: usize,
    pub chalit_rank0: usize,
    pub misses: Vec<String>,
    pub rank_misses: Vec<String>,
}

impl RoundTrip {
    pub fn passes(&self) -> bool {
        self.forms >= 2500 && self.recovered == self.forms && self.chalit_rank0 as f64 >= 0.95 * self.chalit as f64
    }
}

pub fn round_trip() -> RoundTrip {
    let kit = kit();
    let mut o = RoundTrip::default();
    for entry in kit.lexicon.entries() {
        for register in [Register::Chalit, Register::Sadhu] {
            for tense in TenseClass::ALL {
                for reading in Reading::CELLS {
                    let form = conjugate(entry, tense, reading, &register, &kit.paradigm).expect("every cell defined");
                    let analyses = kit.analyzer.analyze(&form).expect("generated forms analyze");
                    let hit =
                        |a: &Analysis| a.root == entry.root && a.tense == Some(tense) && a.persons.contains(&reading);
                    o.forms += 1;
                    if register == Register::Chalit {
                        o.chalit += 1;
                    }
                    match analyses.iter().position(hit) {
                        Some(pos) => {
                            o.recovered += 1;
                            if register != Register::Chalit {
                                continue;
                            }
                            if pos == 0 {
                                o.chalit_rank0 += 1;
                            } else {
                                o.rank_misses.push(format!(
                                    "{form} ({} {} {reading}): rank {pos}, rank 0 is {} {:?}",
                                    entry.root,
                                    tense.bits(),
                                    analyses[0].root,
                                    analyses[0].tense.map(TenseClass::bits)
                                ));
                            }
                        }
                        None => o.misses.push(format!("{form} ({} {register} {} {reading})", entry.root, tense.bits())),
                    }
                }
            }
        }
    }
    o
}

// ---- invariant checks ----------------------------------------------------

pub fn check_normalize_idempotent(raw: &str) -> Result<(), String> {
    let once = normalize_text(raw);
    let twice = normalize_text(&once);
    if once == twice {
        Ok(())
    } else {
        Err(format!("normalize not idempotent on {raw:?}: {once:?} vs {twice:?}"))
    }
}

/// For words that pass the segmentation precondition: join(segment(w)) == w
/// and no cluster begins with a combining mark.
pub fn check_segmentation(raw: &str) -> Result<(), String> {
    let word: String = raw.nfc().collect();
    let Ok(clusters) = segment(&word) else { return Ok(()) };
    if join(&clusters) != word {
        return Err(format!("join(segment({word:?})) differs"));
    }
    if let Some(c) = clusters.iter().find(|c| c.as_str().chars().next().is_some_and(is_combining)) {
        return Err(format!("{word:?}: cluster {:?} starts with a combining mark", c.as_str()));
    }
    Ok(())
}

/// Every count of features(a ++ b) is at least the count of features(a).
/// Features are defined on normalized words, so pairs whose concatenation
/// recomposes across the seam (ে + ৗ → ৌ) are outside the property.
pub fn check_feature_monotone(a: &str, b: &str) -> Result<(), String> {
    let a: String = a.nfc().collect();
    let b: String = b.nfc().collect();
    let ab = format!("{a}{b}");
    if ab.nfc().collect::<String>() != ab {
        return Ok(());
    }
    let (Ok(fa), Ok(fab)) = (features(&a), features(&ab)) else { return Ok(()) };
    let kars_ok = fa.kar_counts.iter().all(|(k, n)| fab.kar(*k) >= *n);
    let phalas_ok = fa.phala_counts.iter().all(|(p, n)| fab.phala(*p) >= *n);
    if fab.char_count >= fa.char_count
        && fab.vowel_count >= fa.vowel_count
        && fab.consonant_count >= fa.consonant_count
        && kars_ok
        && phalas_ok
    {
        Ok(())
    } else {
        Err(format!("features not monotone for {a:?} ++ {b:?}"))
    }
}

/// Matches come back with non-increasing match_len, and a second call
/// returns the identical list.
pub fn check_longest_match(raw: &str) -> Result<(), String> {
    let word: String = raw.nfc().collect();
    let Ok(clusters) = segment(&word) else { return Ok(()) };
    let table = &kit().analyzer.table;
    let first = match_suffix(&clusters, table);
    if first.windows(2).any(|w| w[0].match_len < w[1].match_len) {
        return Err(format!("{word:?}: match lengths increase"));
    }
    if first != match_suffix(&clusters, table) {
        return Err(format!("{word:?}: matching is not deterministic"));
    }
    Ok(())
}

/// Analysis terminates without panicking, every trace stays within the
/// depth bound, and replaying a trace on the stripped stem reproduces the
/// root.
pub fn check_analysis(raw: &str) -> Result<(), String> {
    let word: String = raw.nfc().collect();
    let analyzer = &kit().analyzer;
    let Ok(analyses) = analyzer.analyze(&word) else { return Ok(()) };
    if analyses.is_empty() {
        return Err(format!("{word:?}: no analyses"));
    }
    for a in &analyses {
        if a.rule_trace.len() > MAX_RULE_DEPTH {
            return Err(format!("{word:?}: trace {:?} exceeds depth", a.rule_trace));
        }
        if !a.is_analyzed() {
            continue;
        }
        let stem = a.stripped_stem().ok_or_else(|| format!("{word:?}: suffix does not strip"))?;
        if analyzer.rules.replay(&stem, &a.rule_trace).as_deref() != Some(a.root.as_str()) {
            return Err(format!("{word:?}: trace {:?} on {stem} does not give {}", a.rule_trace, a.root));
        }
    }
    Ok(())
}

/// A lexicon root that carries no suffix of the bundled table comes back
/// from `extract_root` as the single unanalyzed analysis; with the lexicon
/// in play every root keeps a reading of itself.
pub fn check_root_idempotent(root: &str) -> Result<(), String> {
    let analyzer = &kit().analyzer;
    let clusters = segment(root).map_err(|e| e.to_string())?;
    if match_suffix(&clusters, &analyzer.table).is_empty() {
        let plain = extract_root(root, &analyzer.table, &analyzer.rules).map_err(|e| e.to_string())?;
        if plain != [Analysis::unanalyzed(root)] {
            return Err(format!("{root}: extract_root does not return the unanalyzed reading"));
        }
    }
    let analyses = analyzer.analyze(root).map_err(|e| e.to_string())?;
    if analyses.iter().any(|a| a.root == root) {
        Ok(())
    } else {
        Err(format!("{root}: no reading keeps the root"))
    }
}

/// For every match on `raw`, stem ++ suffix reassembles the word.
pub fn check_stem_reconstruction(raw: &str) -> Result<(), String> {
    let word: String = raw.nfc().collect();
    let Ok(clusters) = segment(&word) else { return Ok(()) };
    for m in match_suffix(&clusters, &kit().analyzer.table) {
        let rebuilt: String = format!("{}{}", join(&m.stem), m.entry.suffix).nfc().collect();
        if rebuilt != word {
            return Err(format!("{word:?}: stem {:?} + {} gives {rebuilt:?}", join(&m.stem), m.entry.suffix));
        }
    }
    Ok(())
}

/// Entries of the bundled data marked as printed in the published table.
pub fn printed_data_entries() -> Vec<(String, TenseClass)> {
    kit()
        .analyzer
        .table
        .entries()
        .filter(|e| e.note.as_deref().is_some_and(|n| n.contains("src=printed")))
        .map(|e| (e.suffix.clone(), e.tense))
        .collect()
}

/// `stem ++ suffix` yields a match on `suffix` with the given tense.
pub fn check_exhaustive(stem: &str, suffix: &str, tense: TenseClass) -> Result<(), String> {
    let word: String = format!("{stem}{suffix}").nfc().collect();
    let Ok(clusters) = segment(&word) else { return Ok(()) };
    let found = match_suffix(&clusters, &kit().analyzer.table)
        .iter()
        .any(|m| m.entry.suffix == suffix && classify(m).0 == tense);
    if found {
        Ok(())
    } else {
        Err(format!("{word:?}: no {suffix} match with tense {}", tense.bits()))
    }
}

// ---- generators ----------------------------------------------------------

/// Random consonant-initial stems of one to three clusters.
pub fn stem() -> impl Strategy<Value = String> {
    let cluster = (prop::sample::select(CONSONANTS.to_vec()), prop::sample::select(SIGNS.to_vec()))
        .prop_map(|(c, s)| format!("{c}{s}"));
    proptest::collection::vec(cluster, 1..4).prop_map(|v| v.concat())
}

/// Any scalar from the Bengali block.
pub fn bengali_char() -> impl Strategy<Value = char> {
    (0x0980u32..=0x09FF).prop_map(|c| char::from_u32(c).expect("block has no surrogates"))
}

/// Random Bengali-block strings of 1 to 12 scalars.
pub fn bengali_string() -> impl Strategy<Value = String> {
    proptest::collection::vec(bengali_char(), 1..12).prop_map(|v| v.into_iter().collect())
}

/// Running text: Bengali scalars mixed with spaces, line breaks,
/// punctuation and sentence terminators.
pub fn bengali_text() -> impl Strategy<Value = String> {
    let piece = prop_oneof![
        6 => bengali_char(),
        1 => prop::sample::select(vec![' ', ' ', '\n', ',', '।', '?', '!', '"', '(', ')', '/', '~', '<', '>', '\u{200C}']),
    ];
    proptest::collection::vec(piece, 0..40).prop_map(|v| v.into_iter().collect())
}

const CONSONANTS: &[char] = &[
    'ক', 'খ', 'গ', 'ঘ', 'চ', 'ছ', 'জ', 'ট', 'ড', 'ত', 'থ', 'দ', 'ধ', 'ন', 'প', 'ফ', 'ব', 'ম', 'য', 'র', 'ল', 'শ', 'স',
    'হ', '\u{09DC}', '\u{09DF}',
];
const SIGNS: &[&str] = &["", "", "া", "ি", "ী", "ু", "ে", "ো", "্র", "ং"];

/// Plausible verb shapes: one to three consonant clusters followed by a
/// suffix drawn from the bundled table.
pub fn verb_like() -> impl Strategy<Value = String> {
    let suffixes: Vec<String> = kit().analyzer.table.entries().map(|e| e.suffix.clone()).collect();
    (stem(), prop::sample::select(suffixes)).prop_map(|(stem, suffix)| format!("{stem}{suffix}").nfc().collect())
}

/// Either a random block string or a verb-shaped word.
pub fn analyzer_input() -> impl Strategy<Value = String> {
    prop_oneof![bengali_string(), verb_like()]
}
