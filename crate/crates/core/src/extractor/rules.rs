use std::collections::{BTreeSet, HashMap};
use std::fmt;

use unicode_normalization::UnicodeNormalization;

use super::RuleError;
use crate::classifier::{Person, Reading, Register, TenseClass};
use crate::script::{is_consonant, is_vowel_sign, segment, FeatureVector, GraphemeCluster, Kar, Phala, NUKTA};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Elem {
    /// any consonant letter, with its nukta if present
    Consonant,
    /// any dependent vowel sign
    VowelSign,
    Literal(char),
}

/// A tail pattern over the scalar values of a stem.
///
/// `C` matches a consonant, `V` a dependent vowel sign, anything else
/// matches itself. `$` anchors at the stem end and `^` at its start; an
/// unanchored pattern matches its rightmost occurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailPattern {
    source: String,
    elems: Vec<Elem>,
    start: bool,
    end: bool,
}

impl TailPattern {
    pub fn parse(src: &str) -> Result<Self, String> {
        let src: String = src.trim().nfc().collect();
        let mut body = src.as_str();
        let start = body.starts_with('^');
        if start {
            body = &body[1..];
        }
        let end = body.ends_with('$');
        if end {
            body = &body[..body.len() - 1];
        }
        let elems: Vec<Elem> = body
            .chars()
            .map(|c| match c {
                'C' => Elem::Consonant,
                'V' => Elem::VowelSign,
                c => Elem::Literal(c),
            })
            .collect();
        if elems.is_empty() {
            return Err(format!("empty pattern {src:?}"));
        }
        if elems.iter().any(|e| matches!(e, Elem::Literal('^' | '$'))) {
            return Err(format!("misplaced anchor in {src:?}"));
        }
        Ok(Self { source: src, elems, start, end })
    }

    fn match_at(&self, chars: &[char], mut pos: usize) -> Option<(usize, Vec<Capture>)> {
        let mut caps = Vec::new();
        for elem in &self.elems {
            let &c = chars.get(pos)?;
            match *elem {
                Elem::Literal(l) if l == c => pos += 1,
                Elem::Consonant if is_consonant(c) => {
                    let mut text = c.to_string();
                    pos += 1;
                    if chars.get(pos) == Some(&NUKTA) {
                        text.push(NUKTA);
                        pos += 1;
                    }
                    caps.push(Capture::Consonant(text));
                }
                Elem::VowelSign if is_vowel_sign(c) => {
                    caps.push(Capture::VowelSign(c));
                    pos += 1;
                }
                _ => return None,
            }
        }
        Some((pos, caps))
    }

    /// Rightmost match as (start, end, captures) over `chars`.
    fn find(&self, chars: &[char]) -> Option<(usize, usize, Vec<Capture>)> {
        let starts: Box<dyn Iterator<Item = usize>> =
            if self.start { Box::new(std::iter::once(0)) } else { Box::new((0..chars.len()).rev()) };
        for s in starts {
            if let Some((e, caps)) = self.match_at(chars, s) {
                if !self.end || e == chars.len() {
                    return Some((s, e, caps));
                }
            }
        }
        None
    }
}

impl fmt::Display for TailPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

#[derive(Debug, Clone)]
enum Capture {
    Consonant(String),
    VowelSign(char),
}

/// Replacement text. `C` and `V` copy the pattern's captures of that kind,
/// in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rewrite {
    source: String,
}

impl Rewrite {
    pub fn parse(src: &str) -> Self {
        let src = src.trim();
        let source = if matches!(src, "(none)" | "∅" | "-") { String::new() } else { src.nfc().collect() };
        Self { source }
    }

    fn expand(&self, caps: &[Capture]) -> Option<String> {
        let mut cons = caps.iter().filter_map(|c| match c {
            Capture::Consonant(t) => Some(t.as_str()),
            _ => None,
        });
        let mut vows = caps.iter().filter_map(|c| match c {
            Capture::VowelSign(v) => Some(*v),
            _ => None,
        });
        let mut out = String::new();
        for c in self.source.chars() {
            match c {
                'C' => out.push_str(cons.next()?),
                'V' => out.push(vows.next()?),
                c => out.push(c),
            }
        }
        Some(out)
    }

    pub fn is_deletion(&self) -> bool {
        self.source.is_empty()
    }
}

impl fmt::Display for Rewrite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.source.is_empty() {
            f.write_str("(none)")
        } else {
            f.write_str(&self.source)
        }
    }
}

/// Applies `pattern → rewrite` to `stem` without checking any condition.
/// Returns `None` when the pattern does not match or the result would be
/// empty or unsegmentable.
pub fn rewrite_stem(stem: &str, pattern: &TailPattern, rewrite: &Rewrite) -> Option<String> {
    let chars: Vec<char> = stem.chars().collect();
    let (s, e, caps) = pattern.find(&chars)?;
    let mut out: String = chars[..s].iter().collect();
    out.push_str(&rewrite.expand(&caps)?);
    out.extend(&chars[e..]);
    let out: String = out.nfc().collect();
    if out.is_empty() || segment(&out).is_err() {
        return None;
    }
    Some(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Cmp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl Cmp {
    fn eval(self, lhs: usize, rhs: usize) -> bool {
        match self {
            Self::Eq => lhs == rhs,
            Self::Ne => lhs != rhs,
            Self::Lt => lhs < rhs,
            Self::Le => lhs <= rhs,
            Self::Gt => lhs > rhs,
            Self::Ge => lhs >= rhs,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Feature {
    Chars,
    Vowels,
    Consonants,
    Kar(Kar),
    Phala(Phala),
    HasantaFinal,
}

impl Feature {
    fn parse(name: &str) -> Option<Self> {
        Some(match name {
            "chars" | "stem_chars" => Self::Chars,
            "vowels" | "stem_vowels" => Self::Vowels,
            "consonants" | "stem_consonants" => Self::Consonants,
            "hasanta_final" => Self::HasantaFinal,
            _ => {
                if let Some(k) = name.strip_prefix("kar:") {
                    Self::Kar(Kar::parse(k)?)
                } else {
                    let p = name.strip_prefix("phala:")?;
                    Self::Phala(Phala::parse(p)?)
                }
            }
        })
    }

    fn value(self, fv: &FeatureVector) -> usize {
        match self {
            Self::Chars => fv.char_count,
            Self::Vowels => fv.vowel_count,
            Self::Consonants => fv.consonant_count,
            Self::Kar(k) => fv.kar(k),
            Self::Phala(p) => fv.phala(p),
            Self::HasantaFinal => usize::from(fv.has_hasanta_final),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Atom {
    True,
    Feature(Feature, Cmp, usize),
    TenseIn(BTreeSet<TenseClass>, bool),
    PersonIn(BTreeSet<Person>, bool),
    Register(Register, bool),
}

/// What a rule condition can look at besides the stem itself.
#[derive(Debug, Clone, Copy)]
pub struct RuleContext<'a> {
    pub tense: Option<TenseClass>,
    pub persons: &'a BTreeSet<Reading>,
    pub register: Option<&'a Register>,
}

/// Conjunction of condition atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condition {
    source: String,
    atoms: Vec<Atom>,
}

const OPS: [(&str, Cmp); 9] = [
    ("≤", Cmp::Le),
    ("≥", Cmp::Ge),
    ("≠", Cmp::Ne),
    ("<=", Cmp::Le),
    (">=", Cmp::Ge),
    ("!=", Cmp::Ne),
    ("=", Cmp::Eq),
    ("<", Cmp::Lt),
    (">", Cmp::Gt),
];

impl Condition {
    pub fn parse(src: &str) -> Result<Self, String> {
        let source = src.trim().to_owned();
        let mut atoms = Vec::new();
        for part in source.split('∧').flat_map(|p| p.split("&&")) {
            atoms.push(parse_atom(part.trim())?);
        }
        Ok(Self { source, atoms })
    }

    pub fn holds(&self, fv: &FeatureVector, ctx: &RuleContext<'_>) -> bool {
        self.atoms.iter().all(|atom| match atom {
            Atom::True => true,
            Atom::Feature(f, op, v) => op.eval(f.value(fv), *v),
            Atom::TenseIn(set, positive) => ctx.tense.is_some_and(|t| set.contains(&t)) == *positive,
            Atom::PersonIn(set, positive) => ctx.persons.iter().any(|r| set.contains(&r.person)) == *positive,
            Atom::Register(reg, positive) => (ctx.register == Some(reg)) == *positive,
        })
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

fn parse_set<T>(body: &str, item: impl Fn(&str) -> Option<T>) -> Result<BTreeSet<T>, String>
where
    T: Ord,
{
    let inner = body
        .trim()
        .strip_prefix('{')
        .and_then(|b| b.strip_suffix('}'))
        .ok_or_else(|| format!("expected {{...}} set, found {body:?}"))?;
    inner.split(',').map(|tok| item(tok.trim()).ok_or_else(|| format!("bad set member {tok:?}"))).collect()
}

fn parse_atom(atom: &str) -> Result<Atom, String> {
    if atom == "true" {
        return Ok(Atom::True);
    }
    for (key, negated) in [("∈", false), ("∉", true)] {
        if let Some((lhs, rhs)) = atom.split_once(key) {
            return match lhs.trim() {
                "tense" => Ok(Atom::TenseIn(parse_set(rhs, TenseClass::from_bits)?, !negated)),
                "person" => Ok(Atom::PersonIn(parse_set(rhs, Person::from_bits)?, !negated)),
                other => Err(format!("unknown set feature {other:?}")),
            };
        }
    }
    for (sym, op) in OPS {
        let Some((lhs, rhs)) = atom.split_once(sym) else { continue };
        let (lhs, rhs) = (lhs.trim(), rhs.trim());
        if lhs == "register" {
            let positive = match op {
                Cmp::Eq => true,
                Cmp::Ne => false,
                _ => return Err(format!("register only supports = and ≠ in {atom:?}")),
            };
            return Ok(Atom::Register(rhs.parse()?, positive));
        }
        let feature = Feature::parse(lhs).ok_or_else(|| format!("unknown feature {lhs:?}"))?;
        let value = rhs.parse().map_err(|_| format!("bad number {rhs:?}"))?;
        return Ok(Atom::Feature(feature, op, value));
    }
    Err(format!("unparseable condition atom {atom:?}"))
}

/// A context-conditioned rewrite on the stem tail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepairRule {
    pub id: String,
    pub pattern: TailPattern,
    pub rewrite: Rewrite,
    pub condition: Condition,
    pub priority: u32,
}

impl RepairRule {
    /// The rewritten stem, if the pattern matches and the condition holds.
    pub fn apply(&self, stem: &[GraphemeCluster], fv: &FeatureVector, ctx: &RuleContext<'_>) -> Option<String> {
        if !self.condition.holds(fv, ctx) {
            return None;
        }
        rewrite_stem(&crate::script::join(stem), &self.pattern, &self.rewrite)
    }
}

/// Rules in firing order: ascending priority, file order among equals.
#[derive(Debug, Clone, Default)]
pub struct RuleSet {
    rules: Vec<RepairRule>,
    by_id: HashMap<String, usize>,
}

impl RuleSet {
    pub fn load(source: &str) -> Result<Self, RuleError> {
        let mut rules = Vec::new();
        for (idx, raw) in source.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let err = |reason: String| RuleError { line, reason };
            let cols: Vec<&str> = raw.trim_end_matches('\r').split('\t').collect();
            if cols.len() != 6 {
                return Err(err(format!("expected 6 tab-separated columns, found {}", cols.len())));
            }
            if !matches!(cols[2].trim(), "→" | "->") {
                return Err(err(format!("expected → in column 3, found {:?}", cols[2])));
            }
            let id = cols[0].trim().to_owned();
            if id.is_empty() {
                return Err(err("empty rule id".into()));
            }
            let pattern = TailPattern::parse(cols[1]).map_err(err)?;
            let rewrite = Rewrite::parse(cols[3]);
            let condition = Condition::parse(cols[4]).map_err(err)?;
            let priority = cols[5].trim().parse().map_err(|_| err(format!("bad priority {:?}", cols[5])))?;
            if rules.iter().any(|r: &RepairRule| r.id == id) {
                return Err(err(format!("duplicate rule id {id:?}")));
            }
            rules.push(RepairRule { id, pattern, rewrite, condition, priority });
        }
        // stable: file order breaks priority ties
        rules.sort_by_key(|r| r.priority);
        let by_id = rules.iter().enumerate().map(|(i, r)| (r.id.clone(), i)).collect();
        Ok(Self { rules, by_id })
    }

    pub fn rules(&self) -> &[RepairRule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&RepairRule> {
        self.by_id.get(id).map(|&i| &self.rules[i])
    }

    /// Re-applies the rewrites named in `trace` to `stem`, ignoring
    /// conditions. `None` if a rule is unknown or fails to match.
    pub fn replay(&self, stem: &str, trace: &[String]) -> Option<String> {
        trace.iter().try_fold(stem.to_owned(), |acc, id| {
            let rule = self.get(id)?;
            rewrite_stem(&acc, &rule.pattern, &rule.rewrite)
        })
    }
}
