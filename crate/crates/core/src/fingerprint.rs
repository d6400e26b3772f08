//! Sentence fingerprints built from each sentence's least frequent character
//! grams.
//!
//! Gram counts are taken over the whole document, then every sentence keeps
//! the [`FINGERPRINT_GRAMS`] distinct grams of its own with the smallest
//! document-level count. Those grams, concatenated, are the sentence's
//! fingerprint key. Two sentences are considered the same when their keys are
//! equal.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::textnorm::{NormalizedDocument, Sentence};

/// Grams selected per sentence.
pub const FINGERPRINT_GRAMS: usize = 3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FingerprintError {
    #[error("gram length must be at least 1")]
    InvalidGramLength,
    #[error("gram {0:?} is not in the frequency table")]
    GramNotFound(String),
    #[error("empty frequency table")]
    EmptyTable,
}

/// Gram length `K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct GramLength(usize);

impl GramLength {
    pub const DEFAULT: GramLength = GramLength(4);

    pub fn new(k: usize) -> Result<Self, FingerprintError> {
        if k == 0 {
            return Err(FingerprintError::InvalidGramLength);
        }
        Ok(Self(k))
    }

    pub fn get(self) -> usize {
        self.0
    }
}

impl Default for GramLength {
    fn default() -> Self {
        Self::DEFAULT
    }
}

impl TryFrom<usize> for GramLength {
    type Error = FingerprintError;

    fn try_from(k: usize) -> Result<Self, Self::Error> {
        Self::new(k)
    }
}

impl From<GramLength> for usize {
    fn from(k: GramLength) -> usize {
        k.0
    }
}

impl fmt::Display for GramLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `K` lowercase alphanumeric characters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Gram(String);

impl Gram {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Gram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Lowercases and drops everything that is not alphanumeric, spaces included.
pub fn clean_text(text: &str) -> Vec<char> {
    text.chars()
        .flat_map(char::to_lowercase)
        .filter(|c| c.is_alphanumeric())
        .collect()
}

/// Every window of `k` characters of the cleaned text, in order.
pub fn extract_grams(text: &str, k: GramLength) -> Vec<Gram> {
    clean_text(text)
        .windows(k.get())
        .map(|w| Gram(w.iter().collect()))
        .collect()
}

/// Document-level gram occurrence counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramFrequencyTable {
    k: GramLength,
    counts: BTreeMap<Gram, u64>,
    total: u64,
}

impl GramFrequencyTable {
    pub fn new(k: GramLength) -> Self {
        Self {
            k,
            counts: BTreeMap::new(),
            total: 0,
        }
    }

    pub fn add_text(&mut self, text: &str) {
        for gram in extract_grams(text, self.k) {
            *self.counts.entry(gram).or_insert(0) += 1;
            self.total += 1;
        }
    }

    pub fn k(&self) -> GramLength {
        self.k
    }

    pub fn count(&self, gram: &Gram) -> Option<u64> {
        self.counts.get(gram).copied()
    }

    pub fn counts(&self) -> &BTreeMap<Gram, u64> {
        &self.counts
    }

    /// Sum of all counts.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// Number of distinct grams, `J`.
    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// `m_i / Σ m_j` for every gram.
    pub fn weights(&self) -> impl Iterator<Item = (&Gram, f64)> + '_ {
        let total = self.total as f64;
        self.counts.iter().map(move |(g, &m)| (g, m as f64 / total))
    }
}

pub fn build_frequency_table(doc: &NormalizedDocument, k: GramLength) -> GramFrequencyTable {
    let mut table = GramFrequencyTable::new(k);
    for sentence in &doc.sentences {
        table.add_text(&sentence.joined_tokens());
    }
    table
}

/// Relative frequency of `gram` in the document the table was built from.
pub fn gram_weight(table: &GramFrequencyTable, gram: &Gram) -> Result<f64, FingerprintError> {
    if table.total == 0 {
        return Err(FingerprintError::EmptyTable);
    }
    let m = table
        .count(gram)
        .ok_or_else(|| FingerprintError::GramNotFound(gram.0.clone()))?;
    Ok(m as f64 / table.total as f64)
}

/// Picks up to `n` distinct grams of a sentence with the lowest
/// document-level count. Ties go to the gram that appears first in the
/// sentence, then to lexicographic order. The result is in selection order.
pub fn select_least_frequent(
    sentence_grams: &[Gram],
    table: &GramFrequencyTable,
    n: usize,
) -> Result<Vec<Gram>, FingerprintError> {
    let mut first_seen: HashMap<&Gram, usize> = HashMap::new();
    let mut ranked: Vec<(u64, usize, &Gram)> = Vec::new();
    for (pos, gram) in sentence_grams.iter().enumerate() {
        if first_seen.contains_key(gram) {
            continue;
        }
        first_seen.insert(gram, pos);
        let count = table
            .count(gram)
            .ok_or_else(|| FingerprintError::GramNotFound(gram.0.clone()))?;
        ranked.push((count, pos, gram));
    }
    ranked.sort_unstable();
    Ok(ranked.into_iter().take(n).map(|(_, _, g)| g.clone()).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentenceFingerprint {
    pub grams: Vec<Gram>,
    pub key: String,
}

/// Fingerprints one sentence against its document's table, or `None` when
/// the sentence is too short to yield a single gram.
pub fn fingerprint_sentence(
    sentence: &Sentence,
    table: &GramFrequencyTable,
) -> Result<Option<SentenceFingerprint>, FingerprintError> {
    let grams = extract_grams(&sentence.joined_tokens(), table.k);
    if grams.is_empty() {
        return Ok(None);
    }
    let grams = select_least_frequent(&grams, table, FINGERPRINT_GRAMS)?;
    let key = grams.iter().map(Gram::as_str).collect();
    Ok(Some(SentenceFingerprint { grams, key }))
}

/// The set `F(D)` of a document's sentence fingerprint keys, with the
/// sentences that produced each key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocumentFingerprintSet {
    pub doc_id: String,
    pub k: GramLength,
    pub sentence_map: BTreeMap<String, Vec<usize>>,
}

impl DocumentFingerprintSet {
    pub fn new(doc_id: impl Into<String>, k: GramLength) -> Self {
        Self {
            doc_id: doc_id.into(),
            k,
            sentence_map: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, key: impl Into<String>, sentence: usize) {
        let sentences = self.sentence_map.entry(key.into()).or_default();
        if !sentences.contains(&sentence) {
            sentences.push(sentence);
            sentences.sort_unstable();
        }
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.sentence_map.keys().map(String::as_str)
    }

    pub fn contains(&self, key: &str) -> bool {
        self.sentence_map.contains_key(key)
    }

    pub fn sentences_for(&self, key: &str) -> &[usize] {
        self.sentence_map.get(key).map_or(&[], Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.sentence_map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentence_map.is_empty()
    }
}

pub fn fingerprint_document(doc: &NormalizedDocument, k: GramLength) -> DocumentFingerprintSet {
    let table = build_frequency_table(doc, k);
    let mut set = DocumentFingerprintSet::new(doc.source_id.clone(), k);
    for sentence in &doc.sentences {
        let fingerprint = fingerprint_sentence(sentence, &table)
            .expect("frequency table covers every gram of its own document");
        if let Some(fp) = fingerprint {
            set.insert(fp.key, sentence.index);
        }
    }
    set
}

#[derive(Serialize, Deserialize)]
struct FingerprintSetRepr {
    doc_id: String,
    #[serde(rename = "K")]
    k: GramLength,
    fingerprints: Vec<FingerprintEntry>,
}

#[derive(Serialize, Deserialize)]
struct FingerprintEntry {
    key: String,
    sentences: Vec<usize>,
}

impl Serialize for DocumentFingerprintSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        FingerprintSetRepr {
            doc_id: self.doc_id.clone(),
            k: self.k,
            fingerprints: self
                .sentence_map
                .iter()
                .map(|(key, sentences)| FingerprintEntry {
                    key: key.clone(),
                    sentences: sentences.clone(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DocumentFingerprintSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = FingerprintSetRepr::deserialize(deserializer)?;
        let mut set = DocumentFingerprintSet::new(repr.doc_id, repr.k);
        for entry in repr.fingerprints {
            for s in entry.sentences {
                set.insert(entry.key.clone(), s);
            }
        }
        Ok(set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textnorm::Span;

    fn grams(text: &str) -> Vec<String> {
        extract_grams(text, GramLength::DEFAULT)
            .into_iter()
            .map(|g| g.0)
            .collect()
    }

    fn sentence(index: usize, tokens: &[&str]) -> Sentence {
        Sentence {
            index,
            raw_span: Span::new(index * 100, index * 100 + 10),
            tokens: tokens.iter().map(|t| t.to_string()).collect(),
        }
    }

    fn doc(sentences: Vec<Sentence>) -> NormalizedDocument {
        NormalizedDocument {
            source_id: "doc".into(),
            sentences,
            stopword_list_id: "test".into(),
            stemmer_id: crate::textnorm::StemmerId::None,
        }
    }

    fn table_of(pairs: &[(&str, u64)]) -> GramFrequencyTable {
        let mut t = GramFrequencyTable::new(GramLength::DEFAULT);
        for &(g, m) in pairs {
            t.counts.insert(Gram(g.into()), m);
            t.total += m;
        }
        t
    }

    fn g(s: &str) -> Gram {
        Gram(s.into())
    }

    #[test]
    fn soccer_sentence_grams() {
        assert_eq!(
            grams("soccer game is fantastic"),
            [
                "socc", "occe", "ccer", "cerg", "erga", "rgam", "game", "amei", "meis", "eisf",
                "isfa", "sfan", "fant", "anta", "ntas", "tast", "asti", "stic"
            ]
        );
    }

    #[test]
    fn short_and_single_window() {
        assert!(grams("abc").is_empty());
        assert_eq!(grams("aaaa"), ["aaaa"]);
        assert_eq!(grams("A-b c!D"), ["abcd"]);
    }

    #[test]
    fn zero_gram_length_rejected() {
        assert_eq!(GramLength::new(0), Err(FingerprintError::InvalidGramLength));
    }

    #[test]
    fn overlapping_run_counts() {
        let d = doc(vec![sentence(0, &["aaaa", "aaaa"])]);
        let t = build_frequency_table(&d, GramLength::DEFAULT);
        assert_eq!(t.count(&g("aaaa")), Some(5));
        assert_eq!(t.distinct(), 1);
        assert_eq!(t.total(), 5);
        assert_eq!(gram_weight(&t, &g("aaaa")), Ok(1.0));
    }

    #[test]
    fn empty_document_table() {
        let t = build_frequency_table(&doc(vec![]), GramLength::DEFAULT);
        assert!(t.is_empty());
        assert_eq!(t.total(), 0);
        assert_eq!(gram_weight(&t, &g("abcd")), Err(FingerprintError::EmptyTable));
    }

    #[test]
    fn uniform_weights() {
        let t = table_of(&[("aaaa", 1), ("bbbb", 1), ("cccc", 1), ("dddd", 1)]);
        for (_, w) in t.weights() {
            assert_eq!(w, 0.25);
        }
        assert_eq!(
            gram_weight(&t, &g("zzzz")),
            Err(FingerprintError::GramNotFound("zzzz".into()))
        );
    }

    #[test]
    fn select_orders_by_count() {
        let t = table_of(&[("xxxx", 5), ("yyyy", 1), ("zzzz", 2), ("wwww", 9)]);
        let picked = select_least_frequent(&[g("xxxx"), g("yyyy"), g("zzzz"), g("wwww")], &t, 3).unwrap();
        assert_eq!(picked, [g("yyyy"), g("zzzz"), g("xxxx")]);
    }

    #[test]
    fn select_takes_whole_population_of_three() {
        let t = table_of(&[("xxxx", 50), ("yyyy", 10), ("zzzz", 20)]);
        let picked = select_least_frequent(&[g("xxxx"), g("yyyy"), g("zzzz")], &t, 3).unwrap();
        assert_eq!(picked.len(), 3);
    }

    #[test]
    fn select_dedups_and_breaks_ties_by_position() {
        let t = table_of(&[("bbbb", 2), ("aaaa", 2), ("cccc", 1)]);
        let picked = select_least_frequent(&[g("bbbb"), g("bbbb"), g("aaaa"), g("cccc")], &t, 3).unwrap();
        assert_eq!(picked, [g("cccc"), g("bbbb"), g("aaaa")]);
    }

    #[test]
    fn select_reports_missing_gram() {
        let t = table_of(&[("aaaa", 1)]);
        assert_eq!(
            select_least_frequent(&[g("aaaa"), g("qqqq")], &t, 3),
            Err(FingerprintError::GramNotFound("qqqq".into()))
        );
    }

    #[test]
    fn soccer_fingerprint_key() {
        let d = doc(vec![sentence(0, &["soccer", "game", "is", "fantastic"])]);
        let t = build_frequency_table(&d, GramLength::DEFAULT);
        assert!(t.counts().values().all(|&m| m == 1));
        assert_eq!(t.distinct(), 18);
        let fp = fingerprint_sentence(&d.sentences[0], &t).unwrap().unwrap();
        assert_eq!(fp.key, "soccocceccer");
    }

    #[test]
    fn degenerate_sentences() {
        let d = doc(vec![sentence(0, &[]), sentence(1, &["abcde"])]);
        let t = build_frequency_table(&d, GramLength::DEFAULT);
        assert_eq!(fingerprint_sentence(&d.sentences[0], &t).unwrap(), None);
        let short = fingerprint_sentence(&d.sentences[1], &t).unwrap().unwrap();
        assert_eq!(short.key, "abcdbcde");
        assert_eq!(short.grams.len(), 2);
    }

    #[test]
    fn identical_sentences_collapse() {
        let d = doc(vec![
            sentence(0, &["plagiarism", "detection"]),
            sentence(1, &["fingerprint", "matching"]),
            sentence(2, &["plagiarism", "detection"]),
        ]);
        let set = fingerprint_document(&d, GramLength::DEFAULT);
        assert_eq!(set.len(), 2);
        let shared = set.sentence_map.values().find(|v| v.len() == 2).unwrap();
        assert_eq!(shared, &[0, 2]);
    }

    #[test]
    fn empty_document_fingerprints() {
        assert!(fingerprint_document(&doc(vec![]), GramLength::DEFAULT).is_empty());
    }

    #[test]
    fn json_shape() {
        let mut set = DocumentFingerprintSet::new("a.txt", GramLength::DEFAULT);
        set.insert("abcdbcdecdef", 2);
        set.insert("abcdbcdecdef", 0);
        let json = serde_json::to_string(&set).unwrap();
        assert_eq!(
            json,
            r#"{"doc_id":"a.txt","K":4,"fingerprints":[{"key":"abcdbcdecdef","sentences":[0,2]}]}"#
        );
        let back: DocumentFingerprintSet = serde_json::from_str(&json).unwrap();
        assert_eq!(back, set);
        assert!(serde_json::from_str::<DocumentFingerprintSet>(r#"{"doc_id":"x","K":0,"fingerprints":[]}"#).is_err());
    }
}
