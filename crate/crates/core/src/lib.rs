//! Cross-language plagiarism detection.
//!
//! A suspect document is translated into the corpus language, stripped of
//! stop words and stemmed, used to query a corpus for candidate sources, and
//! compared against each candidate through sentence fingerprints made of
//! three least-frequent character 4-grams.

pub mod document;
pub mod fingerprint;
mod http;
pub mod pipeline;
pub mod report;
pub mod resemblance;
pub mod retrieval;
pub mod textnorm;
pub mod translation;

pub use document::{Language, Origin, RawDocument};
pub use http::HttpSettings;
pub use pipeline::{DetectionSettings, Pipeline, PipelineError};
