//! Candidate retrieval: corpus ingestion, an inverted index, query
//! formation, and search backends.

mod cache;
mod index;
mod remote;
mod search;

pub use cache::{cache_path, load_or_ingest, CacheError, CacheStatus, ManifestEntry, CACHE_FILE_NAME, CACHE_SCHEMA};
pub use index::{
    ingest_corpus, CorpusIndex, DocumentFrequency, IndexParams, IndexedDocument, IngestError, IngestSummary,
    NoStatistics, Posting,
};
pub use remote::HttpSearchBackend;
pub use search::{build_queries, gather_candidates, search, LocalSearch, Query, SearchBackend, SearchError, SearchHit};

/// Leading tokens per query.
pub const DEFAULT_WINDOW: usize = 8;
pub const DEFAULT_TOP_K: usize = 10;
/// Candidates passed on to comparison.
pub const DEFAULT_CAP: usize = 50;
pub const DEFAULT_MAX_QUERIES: usize = 40;
