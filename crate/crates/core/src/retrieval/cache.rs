//! On-disk index cache kept next to the corpus.
//!
//! The cache records a manifest of every corpus file (id, size, modification
//! time). It is reused only when the manifest and the index settings match
//! what is on disk now; otherwise the corpus is ingested again.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::time::UNIX_EPOCH;

use log::{info, warn};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::index::{corpus_files, ingest_corpus, CorpusIndex, IndexParams, IngestError, IngestSummary};
use crate::textnorm::StopwordList;

pub const CACHE_FILE_NAME: &str = ".plagscan-index.json";
pub const CACHE_SCHEMA: &str = "plagscan-index/v1";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error("could not write index cache {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub id: String,
    pub size: u64,
    pub modified_ns: u128,
}

#[derive(Debug, Serialize, Deserialize)]
struct CacheFile {
    schema: String,
    manifest: Vec<ManifestEntry>,
    summary: IngestSummary,
    index: CorpusIndex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheStatus {
    UpToDate,
    Rebuilt,
}

pub fn cache_path(corpus_dir: &Path) -> PathBuf {
    corpus_dir.join(CACHE_FILE_NAME)
}

fn manifest(corpus_dir: &Path) -> Result<Vec<ManifestEntry>, IngestError> {
    Ok(corpus_files(corpus_dir)?
        .into_iter()
        .map(|(id, path)| {
            let meta = fs::metadata(&path).ok();
            let modified_ns = meta
                .as_ref()
                .and_then(|m| m.modified().ok())
                .and_then(|t| t.duration_since(UNIX_EPOCH).ok())
                .map_or(0, |d| d.as_nanos());
            ManifestEntry {
                id,
                size: meta.map_or(0, |m| m.len()),
                modified_ns,
            }
        })
        .collect())
}

fn read_cache(path: &Path) -> Option<CacheFile> {
    let contents = fs::read_to_string(path).ok()?;
    match serde_json::from_str::<CacheFile>(&contents) {
        Ok(cache) if cache.schema == CACHE_SCHEMA => Some(cache),
        Ok(cache) => {
            info!("ignoring index cache with schema {}", cache.schema);
            None
        }
        Err(e) => {
            warn!("ignoring unreadable index cache {}: {e}", path.display());
            None
        }
    }
}

/// Loads the cached index for `corpus_dir`, rebuilding and rewriting it when
/// it is missing, stale, or was built with different settings.
pub fn load_or_ingest(
    corpus_dir: &Path,
    params: &IndexParams,
    stoplist: &StopwordList,
) -> Result<(CorpusIndex, IngestSummary, CacheStatus), CacheError> {
    let current = manifest(corpus_dir)?;
    let path = cache_path(corpus_dir);
    if let Some(cache) = read_cache(&path) {
        if cache.manifest == current && &cache.index.params == params {
            return Ok((cache.index, cache.summary, CacheStatus::UpToDate));
        }
        info!("index cache {} is stale, rebuilding", path.display());
    }

    let (index, summary) = ingest_corpus(corpus_dir, stoplist, params.stemmer, params.k, params.language)?;
    let cache = CacheFile {
        schema: CACHE_SCHEMA.to_string(),
        manifest: current,
        summary,
        index,
    };
    let json = serde_json::to_string(&cache).expect("cache serializes");
    let tmp = corpus_dir.join(format!("{CACHE_FILE_NAME}.tmp"));
    fs::write(&tmp, json)
        .and_then(|()| fs::rename(&tmp, &path))
        .map_err(|source| CacheError::Write { path: path.clone(), source })?;
    Ok((cache.index, cache.summary, CacheStatus::Rebuilt))
}
