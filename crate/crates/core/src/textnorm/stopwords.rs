use std::collections::HashSet;
use std::fs;
use std::path::Path;

use thiserror::Error;

const BUNDLED_ENGLISH: &str = include_str!("../../data/stopwords-en-v1.txt");
const BUNDLED_ENGLISH_ID: &str = "stopwords-en-v1";

#[derive(Debug, Error)]
pub enum StoplistError {
    #[error("could not load stop-word list {path}: {source}")]
    MissingStoplist {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("stop-word list {0} contains no words")]
    EmptyStoplist(String),
}

/// A named set of stop words. The id travels into reports so a result can
/// be traced back to the exact list that produced it.
#[derive(Debug, Clone)]
pub struct StopwordList {
    id: String,
    words: HashSet<String>,
}

impl StopwordList {
    /// Parses the one-word-per-line format; `#` comment lines and blank lines
    /// are skipped and every word is lowercased.
    pub fn parse(id: impl Into<String>, contents: &str) -> Result<Self, StoplistError> {
        let id = id.into();
        let words: HashSet<String> = contents
            .lines()
            .map(str::trim)
            .filter(|line| !line.is_empty() && !line.starts_with('#'))
            .map(str::to_lowercase)
            .collect();
        if words.is_empty() {
            return Err(StoplistError::EmptyStoplist(id));
        }
        Ok(Self { id, words })
    }

    /// Loads a list from disk. The id is the file stem.
    pub fn load(path: &Path) -> Result<Self, StoplistError> {
        let contents = fs::read_to_string(path).map_err(|source| StoplistError::MissingStoplist {
            path: path.display().to_string(),
            source,
        })?;
        let id = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        Self::parse(id, &contents)
    }

    /// The English list shipped with the crate.
    pub fn english() -> Self {
        Self::parse(BUNDLED_ENGLISH_ID, BUNDLED_ENGLISH).expect("bundled stop-word list is valid")
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word) || self.words.contains(&word.to_lowercase())
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.words.iter().map(String::as_str)
    }
}

pub fn remove_stopwords(tokens: &[String], stoplist: &StopwordList) -> Vec<String> {
    tokens.iter().filter(|t| !stoplist.contains(t)).cloned().collect()
}
