//! Generation/analysis round trip over the shipped lexicon.

mod common;

use dhatu::classifier::split_suffix;
use dhatu::conjugator::{conjugate, Cell};
use dhatu::{segment, Reading, Register, TenseClass};

use common::*;

#[test]
fn every_generated_form_analyzes_back_to_its_cell() {
    let o = round_trip();
    for m in &o.misses {
        eprintln!("miss: {m}");
    }
    for m in &o.rank_misses {
        eprintln!("not rank 0: {m}");
    }
    eprintln!("{} forms, {} recovered, chalit rank 0 {}/{}", o.forms, o.recovered, o.chalit_rank0, o.chalit);
    assert!(o.forms >= 2500);
    assert_eq!(o.recovered, o.forms);
    assert!(o.chalit_rank0 as f64 >= 0.95 * o.chalit as f64);
}

/// Each generated form ends, under the boundary-split convention, with the
/// table entry for its cell, unless a lexicon override supplied the form.
#[test]
fn generated_forms_end_in_their_cell_suffix() {
    let kit = kit();
    let table = &kit.analyzer.table;
    let mut checked = 0;
    for entry in kit.lexicon.entries() {
        for register in [Register::Chalit, Register::Sadhu] {
            for tense in TenseClass::ALL {
                for reading in Reading::CELLS {
                    let cell = Cell::new(register.clone(), tense, reading);
                    if entry.overrides.contains_key(&cell) {
                        continue;
                    }
                    let form = conjugate(entry, tense, reading, &register, &kit.paradigm).unwrap();
                    let suffix = kit.paradigm.suffix_for(&entry.stem_class, &entry.root, &cell).unwrap();
                    let sentry = table
                        .lookup(suffix, &register)
                        .unwrap_or_else(|| panic!("{suffix} ({cell}) missing from the {register} table"));
                    assert_eq!(sentry.tense, tense, "{form} {cell}");
                    assert!(sentry.readings.contains(&reading), "{form} {cell}");
                    let clusters = segment(&form).unwrap();
                    assert!(split_suffix(&clusters, &sentry.units).is_some(), "{form} does not end in {suffix}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked >= 2500, "{checked}");
}

#[test]
fn generation_is_deterministic() {
    let kit = kit();
    for entry in kit.lexicon.entries() {
        for register in [Register::Chalit, Register::Sadhu] {
            let a = dhatu::paradigm(entry, &register, &kit.paradigm);
            let b = dhatu::paradigm(entry, &register, &kit.paradigm);
            assert_eq!(a, b);
        }
    }
}
