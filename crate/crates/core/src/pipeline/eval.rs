use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use unicode_normalization::UnicodeNormalization;

use super::record::{Record, NONE};
use super::EvalError;
use crate::classifier::{Reading, Register, TenseClass};
use crate::conjugator::DataError;

/// One gold line: `surface  root  tense_code  person_code  register`.
///
/// `person_code` may carry a formality (`10:intimate`); `-` in the tense or
/// person column marks a token that should stay unanalyzed. The register is
/// a suffix-table register or a free label such as `mixed`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldEntry {
    pub surface: String,
    pub root: String,
    pub tense: Option<TenseClass>,
    pub reading: Option<Reading>,
    pub register: String,
}

pub fn parse_gold(name: &str, source: &str) -> Result<Vec<GoldEntry>, DataError> {
    let mut out = Vec::new();
    for (idx, raw) in source.lines().enumerate() {
        let err = |reason: String| DataError { file: name.to_owned(), line: idx + 1, reason };
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = trimmed.split('\t').map(str::trim).collect();
        let [surface, root, tense, person, register] = cols[..] else {
            return Err(err(format!("expected 5 columns, found {}", cols.len())));
        };
        let tense = match tense {
            NONE => None,
            t => Some(TenseClass::from_bits(t).ok_or_else(|| err(format!("bad tense code {t:?}")))?),
        };
        let reading = match person {
            NONE => None,
            p => Some(p.parse::<Reading>().map_err(err)?),
        };
        if register.is_empty() || register.contains(char::is_whitespace) {
            return Err(err(format!("bad register label {register:?}")));
        }
        out.push(GoldEntry {
            surface: surface.nfc().collect(),
            root: root.nfc().collect(),
            tense,
            reading,
            register: register.to_owned(),
        });
    }
    Ok(out)
}

/// (gold tense, predicted tense) → count; `None` stands for "no tense".
pub type Confusion = BTreeMap<(Option<TenseClass>, Option<TenseClass>), usize>;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RegisterStats {
    pub total: usize,
    pub correct_root: usize,
    pub correct_tense: usize,
    pub correct_person: usize,
    pub accuracy_root: f64,
    pub confusion: Confusion,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct EvalReport {
    /// Register rows in report order: chalit, sadhu, dialects, mixed, others.
    pub per_register: Vec<(String, RegisterStats)>,
    pub confusion: Confusion,
    /// Root accuracy over all tokens.
    pub token_accuracy: f64,
    /// Root accuracy over distinct (surface, root) types; a type counts as
    /// correct only when every one of its tokens is.
    pub type_accuracy: f64,
    pub types: usize,
    pub correct_types: usize,
}

/// Sort key placing register labels in report order.
pub fn register_order(label: &str) -> (u8, String) {
    let rank = match label.parse::<Register>() {
        Ok(Register::Chalit) => 0,
        Ok(Register::Sadhu) => 1,
        Ok(Register::Dialect(_)) => 2,
        Err(_) if label == "mixed" => 3,
        Err(_) => 4,
    };
    (rank, label.to_owned())
}

fn ratio(n: usize, d: usize) -> f64 {
    if d == 0 {
        0.0
    } else {
        n as f64 / d as f64
    }
}

/// Scores rank-0 predictions against gold, position by position.
pub fn evaluate(predictions: &[Record], gold: &[GoldEntry]) -> Result<EvalReport, EvalError> {
    if predictions.len() != gold.len() {
        return Err(EvalError::LengthMismatch { predictions: predictions.len(), gold: gold.len() });
    }
    let mut rows: BTreeMap<(u8, String), RegisterStats> = BTreeMap::new();
    let mut report = EvalReport::default();
    let mut types: BTreeMap<(&str, &str), bool> = BTreeMap::new();
    let mut correct_tokens = 0;

    for (i, (p, g)) in predictions.iter().zip(gold).enumerate() {
        if p.surface != g.surface {
            return Err(EvalError::Misaligned { index: i, prediction: p.surface.clone(), gold: g.surface.clone() });
        }
        let stats = rows.entry(register_order(&g.register)).or_default();
        let pred_tense = p.tense_class();
        let root_ok = p.root == g.root;
        let persons = p.person_set();
        let person_ok = match g.reading {
            Some(r) => persons.contains(&r.person),
            None => persons.is_empty(),
        };
        stats.total += 1;
        stats.correct_root += usize::from(root_ok);
        stats.correct_tense += usize::from(pred_tense == g.tense);
        stats.correct_person += usize::from(person_ok);
        *stats.confusion.entry((g.tense, pred_tense)).or_default() += 1;
        *report.confusion.entry((g.tense, pred_tense)).or_default() += 1;
        correct_tokens += usize::from(root_ok);
        let ty = types.entry((g.surface.as_str(), g.root.as_str())).or_insert(true);
        *ty &= root_ok;
    }

    for ((_, label), mut stats) in rows {
        stats.accuracy_root = ratio(stats.correct_root, stats.total);
        report.per_register.push((label, stats));
    }
    report.token_accuracy = ratio(correct_tokens, gold.len());
    report.types = types.len();
    report.correct_types = types.values().filter(|&&ok| ok).count();
    report.type_accuracy = ratio(report.correct_types, report.types);
    Ok(report)
}

fn tense_label(t: Option<TenseClass>) -> String {
    t.map_or_else(|| NONE.to_owned(), TenseClass::bits)
}

impl EvalReport {
    pub fn register(&self, label: &str) -> Option<&RegisterStats> {
        self.per_register.iter().find(|(l, _)| l == label).map(|(_, s)| s)
    }

    /// Registers present in the report, in report order.
    pub fn registers(&self) -> Vec<&str> {
        self.per_register.iter().map(|(l, _)| l.as_str()).collect()
    }

    /// Human-readable report: per-register table, token/type accuracy and
    /// the tense confusion matrix.
    pub fn render_table(&self) -> String {
        let mut s = String::new();
        let width = self.per_register.iter().map(|(l, _)| l.chars().count()).chain([8]).max().unwrap_or(8);
        let _ = writeln!(
            s,
            "{:<width$}  {:>6}  {:>6}  {:>6}  {:>6}  {:>8}",
            "register", "total", "root", "tense", "person", "accuracy"
        );
        for (label, st) in &self.per_register {
            let _ = writeln!(
                s,
                "{:<width$}  {:>6}  {:>6}  {:>6}  {:>6}  {:>7.2}%",
                label,
                st.total,
                st.correct_root,
                st.correct_tense,
                st.correct_person,
                st.accuracy_root * 100.0
            );
        }
        let _ = writeln!(s);
        let _ = writeln!(s, "token accuracy  {:.2}%", self.token_accuracy * 100.0);
        let _ = writeln!(
            s,
            "type accuracy   {:.2}% ({}/{} types)",
            self.type_accuracy * 100.0,
            self.correct_types,
            self.types
        );
        let _ = writeln!(s);

        let labels: BTreeSet<Option<TenseClass>> = self.confusion.keys().flat_map(|(g, p)| [*g, *p]).collect();
        let _ = write!(s, "{:<6}", "gold\\p");
        for l in &labels {
            let _ = write!(s, " {:>5}", tense_label(*l));
        }
        let _ = writeln!(s);
        for g in &labels {
            let _ = write!(s, "{:<6}", tense_label(*g));
            for p in &labels {
                let _ = write!(s, " {:>5}", self.confusion.get(&(*g, *p)).copied().unwrap_or(0));
            }
            let _ = writeln!(s);
        }
        s
    }

    /// Machine-readable dump: `register` rows, then `confusion` rows, then
    /// `summary` rows, all tab separated.
    pub fn render_tsv(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "#kind\tregister\ttotal\tcorrect_root\tcorrect_tense\tcorrect_person\taccuracy_root");
        for (label, st) in &self.per_register {
            let _ = writeln!(
                s,
                "register\t{label}\t{}\t{}\t{}\t{}\t{:.6}",
                st.total, st.correct_root, st.correct_tense, st.correct_person, st.accuracy_root
            );
        }
        for ((g, p), n) in &self.confusion {
            let _ = writeln!(s, "confusion\t{}\t{}\t{n}", tense_label(*g), tense_label(*p));
        }
        let _ = writeln!(s, "summary\ttoken_accuracy\t{:.6}", self.token_accuracy);
        let _ = writeln!(s, "summary\ttype_accuracy\t{:.6}", self.type_accuracy);
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gold(src: &str) -> Vec<GoldEntry> {
        parse_gold("gold", src).unwrap()
    }

    fn rec(line: &str) -> Record {
        Record::parse_tsv(line).unwrap()
    }

    const GOLD: &str = "\
খেলি\tখেল\t0000\t01\tchalit
খেলব\tখেল\t0111\t01\tchalit
খাইবি\tখা\t0111\t10:intimate\tsadhu
bank\tbank\t-\t-\tmixed
";

    #[test]
    fn perfect_agreement() {
        let g = gold(GOLD);
        let p: Vec<Record> = [
            "খেলি\tখেল\t0000\t01\tchalit\t0",
            "খেলব\tখেল\t0111\t01\tchalit\t0",
            "খাইবি\tখা\t0111\t10\tsadhu\t0",
            "bank\tbank\t-\t-\t-\t0",
        ]
        .iter()
        .map(|l| rec(l))
        .collect();
        let r = evaluate(&p, &g).unwrap();
        assert_eq!(r.registers(), ["chalit", "sadhu", "mixed"]);
        for (_, st) in &r.per_register {
            assert_eq!(st.accuracy_root, 1.0);
            assert_eq!(st.correct_tense, st.total);
            assert_eq!(st.correct_person, st.total);
        }
        assert_eq!(r.token_accuracy, 1.0);
        assert_eq!(r.type_accuracy, 1.0);
    }

    #[test]
    fn three_of_four_roots() {
        let g =
            gold("a\tx\t0000\t01\tchalit\nb\ty\t0000\t01\tchalit\nc\tz\t0000\t01\tchalit\nd\tw\t0000\t01\tchalit\n");
        let p: Vec<Record> = [
            "a\tx\t0000\t01\tchalit\t0",
            "b\ty\t0000\t01\tchalit\t0",
            "c\tz\t0000\t01\tchalit\t0",
            "d\tq\t0011\t11\tchalit\t0",
        ]
        .iter()
        .map(|l| rec(l))
        .collect();
        let r = evaluate(&p, &g).unwrap();
        let st = r.register("chalit").unwrap();
        assert_eq!(st.accuracy_root, 0.75);
        assert_eq!(st.correct_tense, 3);
        assert_eq!(st.confusion[&(Some(TenseClass::SimplePresent), Some(TenseClass::SimplePast))], 1);
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let g = gold(GOLD);
        let err = evaluate(&[], &g).unwrap_err();
        assert_eq!(err, EvalError::LengthMismatch { predictions: 0, gold: 4 });
        assert!(err.to_string().contains('0') && err.to_string().contains('4'));
    }

    #[test]
    fn misaligned_surface_is_an_error() {
        let g = gold("খেলি\tখেল\t0000\t01\tchalit\n");
        assert!(matches!(evaluate(&[rec("খেলব\tখেল\t0111\t01\tchalit\t0")], &g), Err(EvalError::Misaligned { .. })));
    }

    #[test]
    fn gold_parse_errors() {
        assert_eq!(parse_gold("g", "a\tb\t0000\t01").unwrap_err().line, 1);
        assert_eq!(parse_gold("g", "\na\tb\t2000\t01\tchalit").unwrap_err().line, 2);
        assert!(parse_gold("g", "a\tb\t0000\t00\tchalit").is_err());
    }

    #[test]
    fn renderings_list_registers_in_order() {
        let g = gold(GOLD);
        let p: Vec<Record> = g.iter().map(|e| rec(&format!("{}\t{}\t-\t-\t-\t0", e.surface, e.surface))).collect();
        let r = evaluate(&p, &g).unwrap();
        let table = r.render_table();
        let pos = |s: &str| table.find(s).unwrap();
        assert!(pos("chalit") < pos("sadhu") && pos("sadhu") < pos("mixed"));
        let tsv = r.render_tsv();
        assert!(tsv.lines().any(|l| l.starts_with("register\tchalit\t2\t0\t")));
        assert!(tsv.contains("summary\ttoken_accuracy\t0.250000"));
    }
}
