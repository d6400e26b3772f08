use plagscan::textnorm::{stem_token, StemmerId};

const VECTORS: &str = include_str!("../data/porter-vectors.tsv");

#[test]
fn stems_match_reference_vectors() {
    let mut mismatches = Vec::new();
    let mut total = 0;
    for line in VECTORS.lines().filter(|l| !l.is_empty()) {
        let (word, expected) = line.split_once('\t').expect("word<TAB>stem");
        total += 1;
        let got = stem_token(word, StemmerId::Porter);
        if got != expected {
            mismatches.push(format!("{word}: expected {expected}, got {got}"));
        }
    }
    assert!(total >= 1000, "fixture has only {total} pairs");
    assert!(mismatches.is_empty(), "{} mismatches:\n{}", mismatches.len(), mismatches.join("\n"));
}
