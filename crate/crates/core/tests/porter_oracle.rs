//! Stemmer output against a frozen reference table generated by
//! `data/gen_porter_oracle.py`.

use kgrec_core::textprep::porter::stem;

const ORACLE: &str = include_str!("data/porter_oracle.tsv");

#[test]
fn matches_reference_table() {
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for line in ORACLE.lines().filter(|l| !l.is_empty()) {
        let (word, expected) = line.split_once('\t').expect("word<TAB>stem");
        let got = stem(word);
        if got != expected {
            mismatches.push(format!("{word}: expected {expected}, got {got}"));
        }
        checked += 1;
    }
    assert!(checked > 1000, "oracle table too small: {checked}");
    assert!(
        mismatches.is_empty(),
        "{} mismatches:\n{}",
        mismatches.len(),
        mismatches.join("\n")
    );
}

#[test]
fn stems_never_grow() {
    for line in ORACLE.lines().filter(|l| !l.is_empty()) {
        let (word, _) = line.split_once('\t').unwrap();
        assert!(stem(word).len() <= word.len(), "{word}");
    }
}
