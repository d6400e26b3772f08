//! Raw documents as they enter the pipeline.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Languages the toolkit knows how to detect and route between.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Language {
    En,
    Ms,
}

impl Language {
    pub const ALL: [Language; 2] = [Language::En, Language::Ms];

    /// ISO 639-1 code.
    pub fn code(self) -> &'static str {
        match self {
            Language::En => "en",
            Language::Ms => "ms",
        }
    }
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unsupported language code {0:?} (supported: en, ms)")]
pub struct UnsupportedLanguage(pub String);

impl FromStr for Language {
    type Err = UnsupportedLanguage;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "en" => Ok(Language::En),
            "ms" => Ok(Language::Ms),
            _ => Err(UnsupportedLanguage(s.to_string())),
        }
    }
}

/// Where a document came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Origin {
    SuspectInput,
    Corpus,
    Fetched,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdmissionError {
    #[error("document {0:?} is empty")]
    EmptyText(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawDocument {
    pub id: String,
    pub text: String,
    pub language: Language,
    pub origin: Origin,
}

impl RawDocument {
    /// Admits a document into the pipeline. Text that is empty after
    /// trimming is rejected.
    pub fn new(
        id: impl Into<String>,
        text: impl Into<String>,
        language: Language,
        origin: Origin,
    ) -> Result<Self, AdmissionError> {
        let id = id.into();
        let text = text.into();
        if text.trim().is_empty() {
            return Err(AdmissionError::EmptyText(id));
        }
        Ok(Self {
            id,
            text,
            language,
            origin,
        })
    }
}
