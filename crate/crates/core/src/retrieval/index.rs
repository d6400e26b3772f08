use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use log::warn;
use serde::{Deserialize, Serialize};
use thiserror::Error;
use walkdir::WalkDir;

use crate::document::{Language, Origin, RawDocument};
use crate::fingerprint::{fingerprint_document, DocumentFingerprintSet, GramLength};
use crate::textnorm::{normalize_document, NormalizedDocument, StemmerId, StopwordList};

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("corpus directory {0} does not exist or is not a directory")]
    MissingDirectory(PathBuf),
    #[error("corpus directory {0} contains no readable documents")]
    EmptyCorpus(PathBuf),
    #[error("could not scan corpus directory {path}: {source}")]
    Scan {
        path: PathBuf,
        #[source]
        source: walkdir::Error,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Posting {
    pub doc_id: String,
    pub tf: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexedDocument {
    pub raw: RawDocument,
    pub normalized: NormalizedDocument,
    pub fingerprints: DocumentFingerprintSet,
}

/// Settings a corpus index was built with. An index is only reusable under
/// the same settings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexParams {
    pub language: Language,
    pub stoplist_id: String,
    pub stemmer: StemmerId,
    pub k: GramLength,
}

/// Inverted index over stemmed tokens plus the normalized text and
/// fingerprints of every document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusIndex {
    pub params: IndexParams,
    pub postings: BTreeMap<String, Vec<Posting>>,
    pub documents: BTreeMap<String, IndexedDocument>,
}

/// Number of documents containing a term.
pub trait DocumentFrequency {
    fn document_frequency(&self, term: &str) -> usize;
}

/// For backends that expose no statistics; every term counts as unseen.
pub struct NoStatistics;

impl DocumentFrequency for NoStatistics {
    fn document_frequency(&self, _term: &str) -> usize {
        0
    }
}

impl CorpusIndex {
    pub fn build(docs: Vec<RawDocument>, stoplist: &StopwordList, stemmer: StemmerId, k: GramLength, language: Language) -> Self {
        let mut documents = BTreeMap::new();
        for raw in docs {
            let normalized = normalize_document(&raw, stoplist, stemmer);
            let fingerprints = fingerprint_document(&normalized, k);
            documents.insert(
                raw.id.clone(),
                IndexedDocument {
                    raw,
                    normalized,
                    fingerprints,
                },
            );
        }

        let mut postings: BTreeMap<String, Vec<Posting>> = BTreeMap::new();
        // Documents are visited in id order, so every postings list comes out sorted.
        for (id, doc) in &documents {
            let mut tf: BTreeMap<&str, u32> = BTreeMap::new();
            for token in doc.normalized.sentences.iter().flat_map(|s| &s.tokens) {
                *tf.entry(token).or_insert(0) += 1;
            }
            for (token, count) in tf {
                postings.entry(token.to_string()).or_default().push(Posting {
                    doc_id: id.clone(),
                    tf: count,
                });
            }
        }

        Self {
            params: IndexParams {
                language,
                stoplist_id: stoplist.id().to_string(),
                stemmer,
                k,
            },
            postings,
            documents,
        }
    }

    pub fn doc_count(&self) -> usize {
        self.documents.len()
    }

    pub fn get(&self, doc_id: &str) -> Option<&IndexedDocument> {
        self.documents.get(doc_id)
    }

    pub fn postings(&self, term: &str) -> &[Posting] {
        self.postings.get(term).map_or(&[], Vec::as_slice)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("index serializes")
    }
}

impl DocumentFrequency for CorpusIndex {
    fn document_frequency(&self, term: &str) -> usize {
        self.postings(term).len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct IngestSummary {
    pub doc_count: usize,
    pub warnings: Vec<String>,
}

fn is_hidden(path: &Path, root: &Path) -> bool {
    path.strip_prefix(root)
        .unwrap_or(path)
        .components()
        .any(|c| c.as_os_str().to_string_lossy().starts_with('.'))
}

/// Regular, non-hidden files under `dir`, sorted by relative path.
pub(crate) fn corpus_files(dir: &Path) -> Result<Vec<(String, PathBuf)>, IngestError> {
    if !dir.is_dir() {
        return Err(IngestError::MissingDirectory(dir.to_path_buf()));
    }
    let mut files = Vec::new();
    for entry in WalkDir::new(dir).sort_by_file_name() {
        let entry = entry.map_err(|source| IngestError::Scan {
            path: dir.to_path_buf(),
            source,
        })?;
        if !entry.file_type().is_file() || is_hidden(entry.path(), dir) {
            continue;
        }
        let rel = entry.path().strip_prefix(dir).unwrap_or(entry.path());
        let id = rel
            .components()
            .map(|c| c.as_os_str().to_string_lossy())
            .collect::<Vec<_>>()
            .join("/");
        files.push((id, entry.path().to_path_buf()));
    }
    files.sort();
    Ok(files)
}

/// Reads every text file under `dir` into an index. Files that cannot be
/// read as UTF-8, or are blank, are skipped with a warning.
pub fn ingest_corpus(
    dir: &Path,
    stoplist: &StopwordList,
    stemmer: StemmerId,
    k: GramLength,
    language: Language,
) -> Result<(CorpusIndex, IngestSummary), IngestError> {
    let mut docs = Vec::new();
    let mut warnings = Vec::new();
    for (id, path) in corpus_files(dir)? {
        let text = match fs::read_to_string(&path) {
            Ok(text) => text,
            Err(e) => {
                let msg = format!("skipped unreadable file {id}: {e}");
                warn!("{msg}");
                warnings.push(msg);
                continue;
            }
        };
        match RawDocument::new(id.clone(), text, language, Origin::Corpus) {
            Ok(doc) => docs.push(doc),
            Err(e) => {
                let msg = format!("skipped {id}: {e}");
                warn!("{msg}");
                warnings.push(msg);
            }
        }
    }
    if docs.is_empty() {
        return Err(IngestError::EmptyCorpus(dir.to_path_buf()));
    }
    let index = CorpusIndex::build(docs, stoplist, stemmer, k, language);
    let summary = IngestSummary {
        doc_count: index.doc_count(),
        warnings,
    };
    Ok((index, summary))
}
