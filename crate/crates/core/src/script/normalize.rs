use std::sync::OnceLock;

use unicode_normalization::UnicodeNormalization;

use super::{is_sentence_terminal, ScriptError, DANDA, DOUBLE_DANDA};

/// Characters split off from neighbouring words.
const DETACHED: &[char] = &['\'', '"', '‘', '’', '“', '”', '~', '(', ')', '[', ']', '{', '}', ',', '<', '>', '/'];

const BUILTIN_MAP: &str = include_str!("../../data/legacy.map");

// Upper bound on substitution passes; each pass must shrink the set of
// matches for a well-formed map, so this only guards against cyclic maps.
const MAX_MAP_PASSES: usize = 8;

/// Codepoint substitutions for legacy encodings and font-specific spellings.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LegacyMap {
    // longest `from` first so that application is leftmost-longest
    entries: Vec<(String, String)>,
}

impl LegacyMap {
    /// Parses `from<TAB>to` lines where each side is a space-separated list of
    /// codepoints written as `U+XXXX` (or bare hex).
    pub fn parse(source: &str) -> Result<Self, ScriptError> {
        let mut entries = Vec::new();
        for (idx, raw) in source.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim_end();
            if content.trim().is_empty() {
                continue;
            }
            let err = |reason: &str| ScriptError::LegacyMap { line, reason: reason.to_owned() };
            let (from, to) = content.split_once('\t').ok_or_else(|| err("expected two tab-separated columns"))?;
            let from = parse_codepoints(from).map_err(|r| err(&r))?;
            let to = parse_codepoints(to).map_err(|r| err(&r))?;
            if from.is_empty() {
                return Err(err("empty source sequence"));
            }
            if from.chars().chain(to.chars()).any(char::is_whitespace) {
                return Err(err("whitespace is not mappable"));
            }
            entries.push((from, to));
        }
        entries.sort_by_key(|e| std::cmp::Reverse(e.0.chars().count()));
        Ok(Self { entries })
    }

    pub fn builtin() -> &'static LegacyMap {
        static MAP: OnceLock<LegacyMap> = OnceLock::new();
        MAP.get_or_init(|| LegacyMap::parse(BUILTIN_MAP).expect("bundled legacy map is valid"))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn apply_once(&self, text: &str) -> String {
        if self.entries.is_empty() {
            return text.to_owned();
        }
        let mut out = String::with_capacity(text.len());
        let mut rest = text;
        'outer: while !rest.is_empty() {
            for (from, to) in &self.entries {
                if let Some(tail) = rest.strip_prefix(from.as_str()) {
                    out.push_str(to);
                    rest = tail;
                    continue 'outer;
                }
            }
            let c = rest.chars().next().expect("non-empty");
            out.push(c);
            rest = &rest[c.len_utf8()..];
        }
        out
    }
}

fn parse_codepoints(field: &str) -> Result<String, String> {
    field
        .split_whitespace()
        .map(|tok| {
            let hex = tok.strip_prefix("U+").or_else(|| tok.strip_prefix("u+")).unwrap_or(tok);
            u32::from_str_radix(hex, 16).ok().and_then(char::from_u32).ok_or_else(|| format!("bad codepoint {tok:?}"))
        })
        .collect()
}

/// Corpus text normalizer: canonical composition, legacy substitutions,
/// punctuation detachment and whitespace cleanup.
#[derive(Debug, Clone)]
pub struct Normalizer {
    map: LegacyMap,
}

impl Default for Normalizer {
    fn default() -> Self {
        Self { map: LegacyMap::builtin().clone() }
    }
}

impl Normalizer {
    pub fn new(map: LegacyMap) -> Self {
        Self { map }
    }

    pub fn normalize(&self, raw: &str) -> String {
        let mut text: String = raw.nfc().collect();
        for _ in 0..MAX_MAP_PASSES {
            let next: String = self.map.apply_once(&text).nfc().collect();
            if next == text {
                break;
            }
            text = next;
        }

        let mut spaced = String::with_capacity(text.len() + 8);
        for c in text.chars() {
            let c = if c == DOUBLE_DANDA { DANDA } else { c };
            if DETACHED.contains(&c) || is_sentence_terminal(c) {
                spaced.push(' ');
                spaced.push(c);
                spaced.push(' ');
            } else if c.is_whitespace() {
                spaced.push(' ');
            } else {
                spaced.push(c);
            }
        }
        spaced.split_whitespace().collect::<Vec<_>>().join(" ")
    }

    pub fn normalize_bytes(&self, raw: &[u8]) -> Result<String, ScriptError> {
        let text = std::str::from_utf8(raw).map_err(|e| ScriptError::Decode { offset: e.valid_up_to() })?;
        Ok(self.normalize(text))
    }
}

/// Normalizes with the bundled legacy map.
pub fn normalize_text(raw: &str) -> String {
    static DEFAULT: OnceLock<Normalizer> = OnceLock::new();
    DEFAULT.get_or_init(Normalizer::default).normalize(raw)
}

pub fn normalize_bytes(raw: &[u8]) -> Result<String, ScriptError> {
    let text = std::str::from_utf8(raw).map_err(|e| ScriptError::Decode { offset: e.valid_up_to() })?;
    Ok(normalize_text(text))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn danda_is_detached() {
        assert_eq!(normalize_text("আমি খেলি।"), "আমি খেলি ।");
    }

    #[test]
    fn empty_is_fixed_point() {
        assert_eq!(normalize_text(""), "");
    }

    #[test]
    fn comma_and_spaces() {
        assert_eq!(normalize_text("খেলি,   খেলে"), "খেলি , খেলে");
    }

    #[test]
    fn broken_lines_are_rejoined() {
        assert_eq!(normalize_text("আমি কাল\nখেলা   দেখতে\r\n যাব।"), "আমি কাল খেলা দেখতে যাব ।");
    }

    #[test]
    fn brackets_quotes_slashes() {
        assert_eq!(normalize_text("(খেলি)/\"খেলে\""), "( খেলি ) / \" খেলে \"");
        assert_eq!(normalize_text("<খাব>~"), "< খাব > ~");
    }

    #[test]
    fn terminators_unified() {
        assert_eq!(normalize_text("যাব॥ কী?না!"), "যাব । কী ? না !");
    }

    #[test]
    fn composition_and_legacy_map() {
        // ে + া composes to ো
        assert_eq!(normalize_text("খেলে\u{09BE}"), "খেলো");
        // অ + া spelled for আ in legacy fonts
        assert_eq!(normalize_text("\u{0985}\u{09BE}মি"), "আমি");
    }

    #[test]
    fn decode_error_names_offset() {
        let mut bytes = "খেলি".as_bytes().to_vec();
        bytes.push(0xFF);
        assert_eq!(normalize_bytes(&bytes), Err(ScriptError::Decode { offset: 12 }));
    }

    #[test]
    fn legacy_map_parse_errors() {
        assert!(matches!(LegacyMap::parse("U+0985"), Err(ScriptError::LegacyMap { line: 1, .. })));
        assert!(matches!(LegacyMap::parse("# c\nU+ZZZZ\tU+0986"), Err(ScriptError::LegacyMap { line: 2, .. })));
        let map = LegacyMap::parse("# comment only\n\n").unwrap();
        assert!(map.is_empty());
    }

    #[test]
    fn custom_map_is_used() {
        let map = LegacyMap::parse("U+007C\tU+0964").unwrap();
        let n = Normalizer::new(map);
        assert_eq!(n.normalize("খেলি|"), "খেলি ।");
    }
}
