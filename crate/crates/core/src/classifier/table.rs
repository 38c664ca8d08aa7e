use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use unicode_normalization::UnicodeNormalization;

use super::{Reading, Register, TableError, TenseClass};
use crate::script::{is_combining, segment, GraphemeCluster};

/// A suffix split into matching units: an optional run of leading dependent
/// signs that must fuse with the stem's final cluster, then whole clusters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuffixUnits {
    pub lead: Option<String>,
    pub clusters: Vec<GraphemeCluster>,
}

impl SuffixUnits {
    pub fn parse(suffix: &str) -> Option<Self> {
        let lead_len: usize = suffix.chars().take_while(|&c| is_combining(c)).map(char::len_utf8).sum();
        let (lead, rest) = suffix.split_at(lead_len);
        let clusters = segment(rest).ok()?;
        if lead.is_empty() && clusters.is_empty() {
            return None;
        }
        Some(Self { lead: (!lead.is_empty()).then(|| lead.to_owned()), clusters })
    }

    /// Number of word clusters the suffix touches, counting a split boundary
    /// cluster as one.
    pub fn span(&self) -> usize {
        self.clusters.len() + usize::from(self.lead.is_some())
    }
}

/// One inflectional ending (বিভক্তি).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuffixEntry {
    pub suffix: String,
    pub units: SuffixUnits,
    pub tense: TenseClass,
    pub readings: BTreeSet<Reading>,
    pub register: Register,
    /// Free-text comment column from the data file.
    pub note: Option<String>,
}

/// A suffix entry found at the end of a word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuffixMatch {
    pub entry: Arc<SuffixEntry>,
    pub stem: Vec<GraphemeCluster>,
    pub match_len: usize,
}

/// Splits `suffix` off the end of `word`. The stem may come back empty;
/// callers decide whether that is acceptable.
pub fn split_suffix(word: &[GraphemeCluster], units: &SuffixUnits) -> Option<(Vec<GraphemeCluster>, usize)> {
    let k = units.clusters.len();
    let n = word.len();
    if k > n {
        return None;
    }
    let tail = &word[n - k..];
    if tail.iter().zip(&units.clusters).any(|(a, b)| a.as_str() != b.as_str()) {
        return None;
    }
    let Some(lead) = &units.lead else {
        return Some((word[..n - k].to_vec(), k));
    };
    if n == k {
        return None;
    }
    let boundary = word[n - k - 1].as_str();
    let rest = boundary.strip_suffix(lead.as_str())?;
    let rest = GraphemeCluster::from_text(rest)?;
    let mut stem = word[..n - k - 1].to_vec();
    stem.push(rest);
    Some((stem, k + 1))
}

#[derive(Debug, Default, Clone)]
struct TrieNode {
    children: BTreeMap<String, usize>,
    // entries whose units are exhausted at this node
    terminal: Vec<usize>,
    // entries with a leading sign still to match against the next cluster
    partial: Vec<usize>,
}

/// Immutable suffix inventory indexed from the word end.
#[derive(Debug, Clone)]
pub struct SuffixTable {
    entries: Vec<Arc<SuffixEntry>>,
    priority: Vec<Register>,
    nodes: Vec<TrieNode>,
    index: HashMap<(String, Register), usize>,
}

impl Default for SuffixTable {
    fn default() -> Self {
        Self::empty()
    }
}

impl SuffixTable {
    pub fn empty() -> Self {
        Self { entries: Vec::new(), priority: Vec::new(), nodes: vec![TrieNode::default()], index: HashMap::new() }
    }

    /// Loads a single suffix data file.
    pub fn load(source: &str) -> Result<Self, TableError> {
        let mut builder = SuffixTableBuilder::default();
        builder.add_source("<suffixes>", source)?;
        Ok(builder.build())
    }

    pub fn entries(&self) -> impl ExactSizeIterator<Item = &SuffixEntry> {
        self.entries.iter().map(AsRef::as_ref)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Registers in priority order.
    pub fn registers(&self) -> &[Register] {
        &self.priority
    }

    pub fn lookup(&self, suffix: &str, register: &Register) -> Option<&SuffixEntry> {
        let suffix: String = suffix.nfc().collect();
        self.index.get(&(suffix, register.clone())).map(|&i| self.entries[i].as_ref())
    }

    fn register_rank(&self, register: &Register) -> usize {
        self.priority.iter().position(|r| r == register).unwrap_or(usize::MAX)
    }

    /// Every entry that is a proper cluster-suffix of `word`, longest first.
    /// Ties go to the higher-priority register, then to the lexicographically
    /// smaller suffix.
    pub fn match_suffix(&self, word: &[GraphemeCluster]) -> Vec<SuffixMatch> {
        let mut found = Vec::new();
        let mut node = 0;
        let mut depth = 0;
        loop {
            let n = &self.nodes[node];
            for &e in n.terminal.iter().chain(&n.partial) {
                let entry = &self.entries[e];
                if let Some((stem, match_len)) = split_suffix(word, &entry.units) {
                    if !stem.is_empty() {
                        found.push(SuffixMatch { entry: Arc::clone(entry), stem, match_len });
                    }
                }
            }
            if depth == word.len() {
                break;
            }
            match n.children.get(word[word.len() - 1 - depth].as_str()) {
                Some(&next) => {
                    node = next;
                    depth += 1;
                }
                None => break,
            }
        }
        found.sort_by(|a, b| {
            b.match_len
                .cmp(&a.match_len)
                .then_with(|| self.register_rank(&a.entry.register).cmp(&self.register_rank(&b.entry.register)))
                .then_with(|| a.entry.suffix.cmp(&b.entry.suffix))
        });
        found
    }
}

/// Accumulates one or more suffix files into a table. Register priority
/// follows the order in which registers are first seen across sources; within
/// one source, registers are ranked by their default order.
#[derive(Debug, Default)]
pub struct SuffixTableBuilder {
    entries: Vec<SuffixEntry>,
    origin: Vec<(String, usize)>,
    priority: Vec<Register>,
    index: HashMap<(String, Register), usize>,
}

impl SuffixTableBuilder {
    pub fn add_source(&mut self, name: &str, source: &str) -> Result<&mut Self, TableError> {
        let mut seen_here = BTreeSet::new();
        for (idx, raw) in source.lines().enumerate() {
            let line = idx + 1;
            let err = |reason: String| TableError { file: name.to_owned(), line, reason };
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = raw.trim_end_matches(['\r', '\n']).split('\t').collect();
            if cols.len() < 4 {
                return Err(err(format!("expected 4 tab-separated columns, found {}", cols.len())));
            }
            let suffix: String = cols[0].trim().nfc().collect();
            let units = SuffixUnits::parse(&suffix).ok_or_else(|| err(format!("unusable suffix {suffix:?}")))?;
            let tense_bits = cols[1].trim();
            let tense =
                TenseClass::from_bits(tense_bits).ok_or_else(|| err(format!("malformed tense code {tense_bits:?}")))?;
            let mut readings = BTreeSet::new();
            for tok in cols[2].split(',') {
                readings.insert(tok.trim().parse::<Reading>().map_err(err)?);
            }
            let register: Register = cols[3].trim().parse().map_err(err)?;
            let note =
                cols.get(4).map(|c| c.trim().trim_start_matches('#').trim().to_owned()).filter(|c| !c.is_empty());

            let key = (suffix.clone(), register.clone());
            if let Some(&existing) = self.index.get(&key) {
                let prev = &mut self.entries[existing];
                if prev.tense != tense {
                    let (src, at) = &self.origin[existing];
                    return Err(err(format!(
                        "suffix {suffix:?} ({register}) already defined as {} at {src}:{at}",
                        prev.tense.bits()
                    )));
                }
                prev.readings.extend(readings);
                continue;
            }
            seen_here.insert(register.clone());
            self.index.insert(key, self.entries.len());
            self.origin.push((name.to_owned(), line));
            self.entries.push(SuffixEntry { suffix, units, tense, readings, register, note });
        }
        for reg in seen_here {
            if !self.priority.contains(&reg) {
                self.priority.push(reg);
            }
        }
        Ok(self)
    }

    pub fn build(self) -> SuffixTable {
        let mut nodes = vec![TrieNode::default()];
        for (i, entry) in self.entries.iter().enumerate() {
            let mut node = 0;
            for cluster in entry.units.clusters.iter().rev() {
                let next = nodes.len();
                node = match nodes[node].children.get(cluster.as_str()) {
                    Some(&child) => child,
                    None => {
                        nodes[node].children.insert(cluster.as_str().to_owned(), next);
                        nodes.push(TrieNode::default());
                        next
                    }
                };
            }
            if entry.units.lead.is_some() {
                nodes[node].partial.push(i);
            } else {
                nodes[node].terminal.push(i);
            }
        }
        SuffixTable {
            entries: self.entries.into_iter().map(Arc::new).collect(),
            priority: self.priority,
            nodes,
            index: self.index,
        }
    }
}
