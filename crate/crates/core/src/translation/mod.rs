//! Source-language to corpus-language translation behind a backend trait.

mod detect;
mod dictionary;
mod remote;

use std::time::Duration;

use thiserror::Error;

use crate::document::{Language, RawDocument};

pub use detect::{Detection, LanguageDetector};
pub use dictionary::{dictionary_translate, BilingualDictionary, DictionaryBackend, DictionaryError, DictionaryTranslation};
pub use remote::HttpTranslationBackend;

#[derive(Debug, Error)]
pub enum TranslationError {
    #[error("translation from {from} to {to} is not supported by this backend")]
    UnsupportedPair { from: Language, to: Language },
    #[error("translation backend unavailable: {message}")]
    BackendUnavailable {
        message: String,
        /// Whether trying again later may succeed.
        retryable: bool,
        retry_after: Option<Duration>,
    },
}

/// What a backend returns for one text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BackendOutput {
    pub text: String,
    pub untranslated_words: usize,
    /// Word count of the input, when the backend tracks it.
    pub total_words: Option<usize>,
}

pub trait TranslationBackend: Send + Sync {
    fn backend_id(&self) -> &str;

    fn supported_pairs(&self) -> Vec<(Language, Language)>;

    fn supports(&self, source: Language, target: Language) -> bool {
        self.supported_pairs().contains(&(source, target))
    }

    fn translate_text(&self, text: &str, source: Language, target: Language) -> Result<BackendOutput, TranslationError>;
}

/// Non-fatal findings of a translation run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TranslationWarning {
    /// Some words had no translation and were copied through verbatim.
    PartialTranslation { untranslated: usize, total: Option<usize> },
}

impl std::fmt::Display for TranslationWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TranslationWarning::PartialTranslation {
                untranslated,
                total: Some(total),
            } => write!(f, "partial translation: {untranslated} of {total} words left untranslated"),
            TranslationWarning::PartialTranslation { untranslated, total: None } => {
                write!(f, "partial translation: {untranslated} words left untranslated")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationOutcome {
    pub document: RawDocument,
    pub translated: bool,
    pub untranslated_words: usize,
    pub warnings: Vec<TranslationWarning>,
}

/// Translates `doc` into `target`. A document already in `target` comes back
/// unchanged without touching the backend.
pub fn translate_document(
    doc: &RawDocument,
    target: Language,
    backend: &dyn TranslationBackend,
) -> Result<TranslationOutcome, TranslationError> {
    if doc.language == target {
        return Ok(TranslationOutcome {
            document: doc.clone(),
            translated: false,
            untranslated_words: 0,
            warnings: Vec::new(),
        });
    }
    if !backend.supports(doc.language, target) {
        return Err(TranslationError::UnsupportedPair {
            from: doc.language,
            to: target,
        });
    }
    let output = backend.translate_text(&doc.text, doc.language, target)?;
    let mut warnings = Vec::new();
    if output.untranslated_words > 0 {
        warnings.push(TranslationWarning::PartialTranslation {
            untranslated: output.untranslated_words,
            total: output.total_words,
        });
    }
    Ok(TranslationOutcome {
        document: RawDocument {
            id: doc.id.clone(),
            text: output.text,
            language: target,
            origin: doc.origin,
        },
        translated: true,
        untranslated_words: output.untranslated_words,
        warnings,
    })
}
