use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use serde::Serialize;

use super::repair::repair;
use super::rules::RuleSet;
use super::{ExtractError, LightVerbs, StripError};
use crate::classifier::{split_suffix, Reading, Register, SuffixEntry, SuffixMatch, SuffixTable, TenseClass};
use crate::script::{join, segment, GraphemeCluster};

/// The result of analysing one surface form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Analysis {
    pub surface: String,
    /// Known prefix stripped before suffix matching, if any.
    pub prefix: Option<String>,
    #[serde(serialize_with = "ser_suffix")]
    pub suffix: Option<Arc<SuffixEntry>>,
    pub tense: Option<TenseClass>,
    pub persons: BTreeSet<Reading>,
    pub root: String,
    pub register: Option<Register>,
    pub rank: usize,
    pub rule_trace: Vec<String>,
}

fn ser_suffix<S: serde::Serializer>(s: &Option<Arc<SuffixEntry>>, ser: S) -> Result<S::Ok, S::Error> {
    match s {
        Some(e) => ser.serialize_some(&e.suffix),
        None => ser.serialize_none(),
    }
}

impl Analysis {
    /// The outcome when no suffix applies: the surface is its own root.
    pub fn unanalyzed(surface: &str) -> Self {
        Self {
            surface: surface.to_owned(),
            prefix: None,
            suffix: None,
            tense: None,
            persons: BTreeSet::new(),
            root: surface.to_owned(),
            register: None,
            rank: 0,
            rule_trace: Vec::new(),
        }
    }

    pub fn is_analyzed(&self) -> bool {
        self.suffix.is_some()
    }

    /// The stem left after removing prefix and suffix from the surface, i.e.
    /// the input the rule trace was applied to.
    pub fn stripped_stem(&self) -> Option<String> {
        let body = match &self.prefix {
            Some(p) => self.surface.strip_prefix(p.as_str())?,
            None => self.surface.as_str(),
        };
        let Some(entry) = &self.suffix else { return Some(body.to_owned()) };
        let word = segment(body).ok()?;
        split_suffix(&word, &entry.units).map(|(stem, _)| join(&stem))
    }
}

/// Removes the matched suffix from `word`.
pub fn strip(word: &[GraphemeCluster], m: &SuffixMatch) -> Result<Vec<GraphemeCluster>, StripError> {
    match split_suffix(word, &m.entry.units) {
        None => Err(StripError::NotASuffix { suffix: m.entry.suffix.clone() }),
        Some((stem, _)) if stem.is_empty() => Err(StripError::WholeWord { suffix: m.entry.suffix.clone() }),
        Some((stem, _)) => Ok(stem),
    }
}

fn analyses_for(
    surface: &str,
    body: &str,
    prefix: Option<&str>,
    table: &SuffixTable,
    rules: &RuleSet,
) -> Result<Vec<Analysis>, ExtractError> {
    let word = segment(body)?;
    let mut out = Vec::new();
    for m in table.match_suffix(&word) {
        let Ok(stem) = strip(&word, &m) else { continue };
        let entry = &m.entry;
        for cand in repair(&stem, Some(entry.tense), &entry.readings, Some(&entry.register), rules)? {
            out.push(Analysis {
                surface: surface.to_owned(),
                prefix: prefix.map(str::to_owned),
                suffix: Some(Arc::clone(entry)),
                tense: Some(entry.tense),
                persons: entry.readings.clone(),
                root: cand.root,
                register: Some(entry.register.clone()),
                rank: 0,
                rule_trace: cand.trace,
            });
        }
    }
    Ok(out)
}

fn renumber(analyses: &mut [Analysis]) {
    for (i, a) in analyses.iter_mut().enumerate() {
        a.rank = i;
    }
}

/// Suffix matches in longest-first order, each expanded into its repair
/// candidates; ranks are numbered globally. Falls back to the single
/// unanalyzed reading when nothing matches.
pub fn extract_root(word: &str, table: &SuffixTable, rules: &RuleSet) -> Result<Vec<Analysis>, ExtractError> {
    let mut out = analyses_for(word, word, None, table, rules)?;
    if out.is_empty() {
        out.push(Analysis::unanalyzed(word));
    }
    renumber(&mut out);
    Ok(out)
}

/// Configured analyzer: suffix table and rules plus the optional resources
/// that refine ranking (root lexicon, known prefixes, light verbs).
#[derive(Debug, Clone, Default)]
pub struct Analyzer {
    pub table: SuffixTable,
    pub rules: RuleSet,
    known_roots: Option<HashSet<String>>,
    prefixes: Vec<String>,
    light_verbs: LightVerbs,
}

impl Analyzer {
    pub fn new(table: SuffixTable, rules: RuleSet) -> Self {
        Self { table, rules, ..Default::default() }
    }

    /// Roots attested in a lexicon. Analyses yielding one of these are moved
    /// ahead of the rest, fewest repairs first.
    pub fn with_known_roots<I: IntoIterator<Item = String>>(mut self, roots: I) -> Self {
        self.known_roots = Some(roots.into_iter().collect());
        self
    }

    pub fn with_prefixes<I: IntoIterator<Item = String>>(mut self, prefixes: I) -> Self {
        self.prefixes = prefixes.into_iter().filter(|p| !p.is_empty()).collect();
        // longest first
        self.prefixes.sort_by(|a, b| b.chars().count().cmp(&a.chars().count()).then_with(|| a.cmp(b)));
        self
    }

    pub fn with_light_verbs(mut self, light_verbs: LightVerbs) -> Self {
        self.light_verbs = light_verbs;
        self
    }

    pub fn is_known_root(&self, root: &str) -> bool {
        self.known_roots.as_ref().is_some_and(|k| k.contains(root))
    }

    pub fn analyze(&self, word: &str) -> Result<Vec<Analysis>, ExtractError> {
        let mut out = analyses_for(word, word, None, &self.table, &self.rules)?;
        for prefix in &self.prefixes {
            if let Some(body) = word.strip_prefix(prefix.as_str()) {
                if !body.is_empty() && segment(body).is_ok() {
                    out.extend(analyses_for(word, body, Some(prefix), &self.table, &self.rules)?);
                }
            }
        }

        if let Some(known) = &self.known_roots {
            if known.contains(word) && !out.is_empty() {
                out.push(Analysis::unanalyzed(word));
            }
            let mut keyed: Vec<(bool, usize, usize, Analysis)> = out
                .into_iter()
                .enumerate()
                .map(|(i, a)| {
                    let known_root = known.contains(&a.root);
                    let repairs = if known_root { a.rule_trace.len() } else { 0 };
                    (!known_root, repairs, i, a)
                })
                .collect();
            keyed.sort_by_key(|(unknown, repairs, i, _)| (*unknown, *repairs, *i));
            out = keyed.into_iter().map(|(.., a)| a).collect();
        }

        if out.is_empty() {
            out.push(Analysis::unanalyzed(word));
        }
        renumber(&mut out);
        Ok(out)
    }

    /// Analyses a token sequence. When a token's best root is a light verb,
    /// the preceding token's first non-finite-shaped analysis is promoted to
    /// rank 0.
    pub fn analyze_tokens<S: AsRef<str>>(&self, tokens: &[S]) -> Vec<Result<Vec<Analysis>, ExtractError>> {
        let mut results: Vec<_> = tokens.iter().map(|t| self.analyze(t.as_ref())).collect();
        for i in 1..results.len() {
            let light = match &results[i] {
                Ok(a) => a.first().is_some_and(|best| best.is_analyzed() && self.light_verbs.is_light(&best.root)),
                Err(_) => false,
            };
            if !light {
                continue;
            }
            if let Ok(prev) = &mut results[i - 1] {
                let pos = prev
                    .iter()
                    .position(|a| a.suffix.as_ref().is_some_and(|s| self.light_verbs.is_non_finite(&s.suffix)));
                if let Some(pos) = pos {
                    let promoted = prev.remove(pos);
                    prev.insert(0, promoted);
                    renumber(prev);
                }
            }
        }
        results
    }
}
