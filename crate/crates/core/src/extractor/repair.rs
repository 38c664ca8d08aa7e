use std::collections::BTreeSet;

use super::rules::{RuleContext, RuleSet};
use super::RepairError;
use crate::classifier::{Reading, Register, TenseClass};
use crate::script::{features_of, join, segment, GraphemeCluster};

/// No attested stem repair needs more than two rewrites.
pub const MAX_RULE_DEPTH: usize = 3;

/// A root candidate produced by [`repair`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub root: String,
    /// Rule ids in application order; empty for the unrepaired stem.
    pub trace: Vec<String>,
    /// Sum of the applied rules' priorities.
    pub cost: u64,
}

struct Node {
    stem: String,
    trace: Vec<String>,
    cost: u64,
    path: Vec<String>,
}

/// Expands rule applications breadth-first up to [`MAX_RULE_DEPTH`].
///
/// Every matching rule opens a branch. Candidates come back ordered by total
/// priority cost (discovery order among equals), each distinct root once, and
/// the unrepaired stem always last.
pub fn repair(
    stem: &[GraphemeCluster],
    tense: Option<TenseClass>,
    persons: &BTreeSet<Reading>,
    register: Option<&Register>,
    rules: &RuleSet,
) -> Result<Vec<Candidate>, RepairError> {
    let original = join(stem);
    let ctx = RuleContext { tense, persons, register };
    let mut found: Vec<Candidate> = Vec::new();
    let mut frontier = vec![Node { stem: original.clone(), trace: Vec::new(), cost: 0, path: vec![original.clone()] }];

    for _ in 0..MAX_RULE_DEPTH {
        let mut next = Vec::new();
        for node in &frontier {
            let clusters = segment(&node.stem).expect("repaired stems are segmentable");
            let fv = features_of(&clusters);
            for rule in rules.rules() {
                let Some(out) = rule.apply(&clusters, &fv, &ctx) else { continue };
                let mut trace = node.trace.clone();
                trace.push(rule.id.clone());
                if node.path.contains(&out) {
                    return Err(RepairError::Cycle { stem: original, rules: trace });
                }
                let mut path = node.path.clone();
                path.push(out.clone());
                next.push(Node { stem: out, trace, cost: node.cost + u64::from(rule.priority), path });
            }
        }
        for node in &next {
            match found.iter_mut().find(|c| c.root == node.stem) {
                Some(existing) if existing.cost <= node.cost => {}
                Some(existing) => {
                    existing.trace = node.trace.clone();
                    existing.cost = node.cost;
                }
                None => found.push(Candidate { root: node.stem.clone(), trace: node.trace.clone(), cost: node.cost }),
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }

    // stable sort keeps discovery order among equal costs
    found.sort_by_key(|c| c.cost);
    found.retain(|c| c.root != original);
    found.push(Candidate { root: original, trace: Vec::new(), cost: 0 });
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::script::normalize_text;

    fn stem(s: &str) -> Vec<GraphemeCluster> {
        segment(&normalize_text(s)).unwrap()
    }

    fn roots(c: &[Candidate]) -> Vec<&str> {
        c.iter().map(|c| c.root.as_str()).collect()
    }

    const RULES: &str = "\
# id\tpattern\t→\trewrite\tcondition\tpriority
E2A\tে$\t→\tা\tchars=1 ∧ tense∈{0010,0011,0101,0110,1000,1001}\t10
I2E\tিC$\t→\tেC\tchars≥2\t10
";

    #[test]
    fn vowel_reversal_for_perfect_stem() {
        let rules = RuleSet::load(RULES).unwrap();
        let c =
            repair(&stem("খে"), Some(TenseClass::PresentPerfect), &BTreeSet::new(), Some(&Register::Chalit), &rules)
                .unwrap();
        assert_eq!(roots(&c), ["খা", "খে"]);
        assert_eq!(c[0].trace, ["E2A"]);
        assert_eq!(c[0].cost, 10);
    }

    #[test]
    fn identity_when_no_rule_fires() {
        let rules = RuleSet::load(RULES).unwrap();
        let c =
            repair(&stem("খেল"), Some(TenseClass::SimplePresent), &BTreeSet::new(), Some(&Register::Chalit), &rules)
                .unwrap();
        assert_eq!(roots(&c), ["খেল"]);
        assert!(c[0].trace.is_empty());
    }

    #[test]
    fn high_low_alternation() {
        let rules = RuleSet::load(RULES).unwrap();
        let c = repair(
            &stem("লিখ"),
            Some(TenseClass::PresentContinuous),
            &BTreeSet::new(),
            Some(&Register::Chalit),
            &rules,
        )
        .unwrap();
        assert_eq!(roots(&c), ["লেখ", "লিখ"]);
    }

    #[test]
    fn empty_rules_are_identity() {
        let c = repair(&stem("লিখ"), None, &BTreeSet::new(), None, &RuleSet::default()).unwrap();
        assert_eq!(roots(&c), ["লিখ"]);
    }

    #[test]
    fn chained_rules_order_by_cost() {
        let rules = RuleSet::load("A\tিC$\t→\tেC\ttrue\t1\nB\tেC$\t→\tাC\ttrue\t5\nD\tC$\t→\tCা\ttrue\t2\n").unwrap();
        let c = repair(&stem("লিখ"), None, &BTreeSet::new(), None, &rules).unwrap();
        // A=1, D=2, A+D=3, A+B=6 ... unrepaired last
        assert_eq!(c[0].root, "লেখ");
        assert_eq!(c[1].root, "লিখা");
        assert_eq!(c.last().unwrap().root, "লিখ");
        assert!(c.windows(2).take(c.len() - 2).all(|w| w[0].cost <= w[1].cost));
        assert!(c.iter().all(|x| x.trace.len() <= MAX_RULE_DEPTH));
    }

    #[test]
    fn cycle_is_reported() {
        let rules = RuleSet::load("A\tি$\t→\tে\ttrue\t1\nB\tে$\t→\tি\ttrue\t1\n").unwrap();
        let err = repair(&stem("দি"), None, &BTreeSet::new(), None, &rules).unwrap_err();
        assert_eq!(err, RepairError::Cycle { stem: "দি".into(), rules: vec!["A".into(), "B".into()] });
    }

    #[test]
    fn depth_is_bounded() {
        // grows the stem forever without ever revisiting it
        let rules = RuleSet::load("G\tC$\t→\tCক\ttrue\t1\n").unwrap();
        let c = repair(&stem("ক"), None, &BTreeSet::new(), None, &rules).unwrap();
        assert_eq!(roots(&c), ["কক", "ককক", "কককক", "ক"]);
    }
}
