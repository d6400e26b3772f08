use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::index::{CorpusIndex, DocumentFrequency};
use crate::document::RawDocument;
use crate::textnorm::NormalizedDocument;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("search backend unavailable: {message}")]
    BackendUnavailable { message: String, retryable: bool },
    #[error("document {0:?} could not be found")]
    DocumentNotFound(String),
}

/// Terms drawn from one sentence of the suspect document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Query {
    pub terms: Vec<String>,
    pub origin_sentence: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchHit {
    pub doc_id: String,
    pub score: f64,
    pub snippet: Option<String>,
}

pub trait SearchBackend: Send + Sync {
    fn backend_id(&self) -> &str;

    /// Up to `top_k` hits, best first.
    fn search(&self, query: &Query, top_k: usize) -> Result<Vec<SearchHit>, SearchError>;

    /// Retrieves the full text of a hit.
    fn fetch(&self, doc_id: &str) -> Result<RawDocument, SearchError>;
}

/// One query per sentence from its first `window` tokens. When there are
/// more than `max_queries`, the ones whose terms are rarest in the corpus
/// (lowest summed document frequency) are kept, earlier sentences winning
/// ties. Queries come back in sentence order.
pub fn build_queries(
    doc: &NormalizedDocument,
    window: usize,
    max_queries: usize,
    stats: &dyn DocumentFrequency,
) -> Vec<Query> {
    let mut queries: Vec<Query> = doc
        .sentences
        .iter()
        .filter(|s| !s.tokens.is_empty())
        .map(|s| Query {
            terms: s.tokens.iter().take(window.max(1)).cloned().collect(),
            origin_sentence: s.index,
        })
        .collect();
    if queries.len() > max_queries {
        let mut scored: Vec<(usize, Query)> = queries
            .into_iter()
            .map(|q| (q.terms.iter().map(|t| stats.document_frequency(t)).sum(), q))
            .collect();
        scored.sort_by_key(|(df, q)| (*df, q.origin_sentence));
        queries = scored.into_iter().take(max_queries).map(|(_, q)| q).collect();
        queries.sort_by_key(|q| q.origin_sentence);
    }
    queries
}

/// Coordination-level matching over a [`CorpusIndex`]: a document scores
/// the number of distinct query terms it contains.
pub struct LocalSearch<'a> {
    index: &'a CorpusIndex,
}

impl<'a> LocalSearch<'a> {
    pub fn new(index: &'a CorpusIndex) -> Self {
        Self { index }
    }

    fn snippet(&self, doc_id: &str, terms: &BTreeSet<&str>) -> Option<String> {
        let doc = self.index.get(doc_id)?;
        let sentence = doc
            .normalized
            .sentences
            .iter()
            .find(|s| s.tokens.iter().any(|t| terms.contains(t.as_str())))?;
        sentence.raw_span.slice(&doc.raw.text).map(str::to_string)
    }
}

impl SearchBackend for LocalSearch<'_> {
    fn backend_id(&self) -> &str {
        "local"
    }

    fn search(&self, query: &Query, top_k: usize) -> Result<Vec<SearchHit>, SearchError> {
        let terms: BTreeSet<&str> = query.terms.iter().map(String::as_str).collect();
        let mut scores: BTreeMap<&str, usize> = BTreeMap::new();
        for term in &terms {
            for posting in self.index.postings(term) {
                *scores.entry(posting.doc_id.as_str()).or_insert(0) += 1;
            }
        }
        let mut ranked: Vec<(&str, usize)> = scores.into_iter().filter(|&(_, s)| s > 0).collect();
        ranked.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(b.0)));
        Ok(ranked
            .into_iter()
            .take(top_k)
            .map(|(doc_id, score)| SearchHit {
                doc_id: doc_id.to_string(),
                score: score as f64,
                snippet: self.snippet(doc_id, &terms),
            })
            .collect())
    }

    fn fetch(&self, doc_id: &str) -> Result<RawDocument, SearchError> {
        self.index
            .get(doc_id)
            .map(|d| d.raw.clone())
            .ok_or_else(|| SearchError::DocumentNotFound(doc_id.to_string()))
    }
}

pub fn search(query: &Query, backend: &dyn SearchBackend, top_k: usize) -> Result<Vec<SearchHit>, SearchError> {
    backend.search(query, top_k)
}

/// Merges the hits of many queries. Documents hit by more queries rank
/// higher; then higher summed score; then doc id. At most `cap` ids are kept.
pub fn gather_candidates(
    queries: &[Query],
    backend: &dyn SearchBackend,
    top_k: usize,
    cap: usize,
) -> Result<Vec<String>, SearchError> {
    let mut tally: HashMap<String, (usize, f64)> = HashMap::new();
    for query in queries {
        for hit in backend.search(query, top_k)? {
            let entry = tally.entry(hit.doc_id).or_insert((0, 0.0));
            entry.0 += 1;
            entry.1 += hit.score;
        }
    }
    let mut ranked: Vec<(String, (usize, f64))> = tally.into_iter().collect();
    ranked.sort_by(|(id_a, (votes_a, score_a)), (id_b, (votes_b, score_b))| {
        votes_b
            .cmp(votes_a)
            .then(score_b.total_cmp(score_a))
            .then(id_a.cmp(id_b))
    });
    Ok(ranked.into_iter().take(cap).map(|(id, _)| id).collect())
}
