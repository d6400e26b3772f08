//! Resemblance between fingerprint sets and sentence alignment.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fingerprint::{DocumentFingerprintSet, GramLength};
use crate::textnorm::{NormalizedDocument, Span};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ResemblanceError {
    #[error("fingerprints built with different gram lengths ({0} vs {1})")]
    GramLengthMismatch(GramLength, GramLength),
    #[error("threshold {0} is outside [0, 1]")]
    InvalidThreshold(f64),
    #[error("sentence {index} of {doc_id} has no recorded span")]
    MissingSentence { doc_id: String, index: usize },
}

/// `|F(A) ∩ F(B)| / |F(A) ∪ F(B)|`, zero when both sets are empty.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResemblanceScore {
    pub value: f64,
    pub intersection_size: usize,
    pub union_size: usize,
}

impl ResemblanceScore {
    pub fn from_counts(intersection_size: usize, union_size: usize) -> Self {
        debug_assert!(intersection_size <= union_size);
        let value = if union_size == 0 {
            0.0
        } else {
            intersection_size as f64 / union_size as f64
        };
        Self {
            value,
            intersection_size,
            union_size,
        }
    }

    /// Exact comparison of the underlying ratios.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        let lhs = self.intersection_size as u128 * other.union_size.max(1) as u128;
        let rhs = other.intersection_size as u128 * self.union_size.max(1) as u128;
        lhs.cmp(&rhs)
    }
}

/// Threshold on the resemblance value, within `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Threshold(f64);

impl Threshold {
    pub const DEFAULT: Threshold = Threshold(0.2);

    pub fn new(value: f64) -> Result<Self, ResemblanceError> {
        if !(0.0..=1.0).contains(&value) {
            return Err(ResemblanceError::InvalidThreshold(value));
        }
        Ok(Self(value))
    }

    pub fn get(self) -> f64 {
        self.0
    }

    pub fn admits(self, score: &ResemblanceScore) -> bool {
        score.value >= self.0
    }
}

impl Default for Threshold {
    fn default() -> Self {
        Self::DEFAULT
    }
}

impl TryFrom<f64> for Threshold {
    type Error = ResemblanceError;

    fn try_from(value: f64) -> Result<Self, Self::Error> {
        Self::new(value)
    }
}

impl From<Threshold> for f64 {
    fn from(t: Threshold) -> f64 {
        t.0
    }
}

fn check_k(a: &DocumentFingerprintSet, b: &DocumentFingerprintSet) -> Result<(), ResemblanceError> {
    if a.k != b.k {
        return Err(ResemblanceError::GramLengthMismatch(a.k, b.k));
    }
    Ok(())
}

pub fn resemblance(
    a: &DocumentFingerprintSet,
    b: &DocumentFingerprintSet,
) -> Result<ResemblanceScore, ResemblanceError> {
    check_k(a, b)?;
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let intersection = small.keys().filter(|k| large.contains(k)).count();
    let union = a.len() + b.len() - intersection;
    Ok(ResemblanceScore::from_counts(intersection, union))
}

/// A suspect sentence and a source sentence that share a fingerprint key.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SentenceMatch {
    pub suspect_sentence_index: usize,
    pub source_sentence_index: usize,
    pub fingerprint_key: String,
    pub suspect_span: Span,
    pub source_span: Span,
}

fn span_of(doc: &NormalizedDocument, index: usize) -> Result<Span, ResemblanceError> {
    doc.sentence(index)
        .map(|s| s.raw_span)
        .ok_or_else(|| ResemblanceError::MissingSentence {
            doc_id: doc.source_id.clone(),
            index,
        })
}

/// Every (suspect sentence, source sentence) pair sharing a key, ordered by
/// suspect sentence, then source sentence.
pub fn match_sentences(
    suspect: (&DocumentFingerprintSet, &NormalizedDocument),
    source: (&DocumentFingerprintSet, &NormalizedDocument),
) -> Result<Vec<SentenceMatch>, ResemblanceError> {
    let (suspect_set, suspect_doc) = suspect;
    let (source_set, source_doc) = source;
    check_k(suspect_set, source_set)?;

    let mut matches = Vec::new();
    for key in suspect_set.keys().filter(|k| source_set.contains(k)) {
        for &i in suspect_set.sentences_for(key) {
            for &j in source_set.sentences_for(key) {
                matches.push(SentenceMatch {
                    suspect_sentence_index: i,
                    source_sentence_index: j,
                    fingerprint_key: key.to_string(),
                    suspect_span: span_of(suspect_doc, i)?,
                    source_span: span_of(source_doc, j)?,
                });
            }
        }
    }
    matches.sort_by(|a, b| {
        (a.suspect_sentence_index, a.source_sentence_index, &a.fingerprint_key).cmp(&(
            b.suspect_sentence_index,
            b.source_sentence_index,
            &b.fingerprint_key,
        ))
    });
    Ok(matches)
}

/// Orders candidates by resemblance, highest first, ties by doc id. Only
/// candidates at or above `threshold` are kept.
pub fn rank_candidates(
    suspect: &DocumentFingerprintSet,
    candidates: &[DocumentFingerprintSet],
    threshold: Threshold,
) -> Result<Vec<(String, ResemblanceScore)>, ResemblanceError> {
    let mut ranked = Vec::with_capacity(candidates.len());
    for candidate in candidates {
        let score = resemblance(suspect, candidate)?;
        if threshold.admits(&score) {
            ranked.push((candidate.doc_id.clone(), score));
        }
    }
    ranked.sort_by(|(id_a, a), (id_b, b)| b.cmp_value(a).then_with(|| id_a.cmp(id_b)));
    Ok(ranked)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(id: &str, keys: &[&str]) -> DocumentFingerprintSet {
        let mut s = DocumentFingerprintSet::new(id, GramLength::DEFAULT);
        for (i, k) in keys.iter().enumerate() {
            s.insert(*k, i);
        }
        s
    }

    #[test]
    fn identity_and_disjoint() {
        let a = set("a", &["k1", "k2"]);
        assert_eq!(resemblance(&a, &a.clone()).unwrap().value, 1.0);
        let b = set("b", &["k3"]);
        assert_eq!(resemblance(&a, &b).unwrap().value, 0.0);
    }

    #[test]
    fn half_overlap() {
        let a = set("a", &["k1", "k2", "k3"]);
        let b = set("b", &["k2", "k3", "k4"]);
        let r = resemblance(&a, &b).unwrap();
        assert_eq!((r.intersection_size, r.union_size, r.value), (2, 4, 0.5));
    }

    #[test]
    fn both_empty_is_zero() {
        let r = resemblance(&set("a", &[]), &set("b", &[])).unwrap();
        assert_eq!((r.value, r.union_size), (0.0, 0));
    }

    #[test]
    fn k_mismatch() {
        let a = set("a", &["k"]);
        let b = DocumentFingerprintSet::new("b", GramLength::new(5).unwrap());
        assert!(matches!(resemblance(&a, &b), Err(ResemblanceError::GramLengthMismatch(..))));
    }

    #[test]
    fn threshold_bounds() {
        assert!(Threshold::new(1.2).is_err());
        assert!(Threshold::new(-0.1).is_err());
        assert!(Threshold::new(f64::NAN).is_err());
        assert_eq!(Threshold::default().get(), 0.2);
    }

    #[test]
    fn ranking_order_and_threshold() {
        let suspect = set("s", &["k1", "k2", "k3", "k4"]);
        let candidates = vec![
            set("c", &["k1"]),
            set("b", &["k1", "k2", "k3", "k4"]),
            set("a", &["k1"]),
            set("d", &["zz"]),
        ];
        let all = rank_candidates(&suspect, &candidates, Threshold::new(0.0).unwrap()).unwrap();
        let ids: Vec<_> = all.iter().map(|(id, _)| id.as_str()).collect();
        assert_eq!(ids, ["b", "a", "c", "d"]);
        assert_eq!(all[0].1.value, 1.0);

        let exact = rank_candidates(&suspect, &candidates, Threshold::new(1.0).unwrap()).unwrap();
        assert_eq!(exact.len(), 1);
        assert_eq!(exact[0].0, "b");
    }
}
