use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use thiserror::Error;

use super::{BackendOutput, TranslationBackend, TranslationError};
use crate::document::Language;

const BUNDLED_MS_EN: &str = include_str!("../../data/ms-en-v1.tsv");

#[derive(Debug, Error)]
pub enum DictionaryError {
    #[error("could not read dictionary {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: expected `source<TAB>target`")]
    Malformed { line: usize },
    #[error("line {line}: {word:?} must be a lowercase alphanumeric word")]
    InvalidWord { line: usize, word: String },
    #[error("line {line}: {word:?} is already mapped")]
    DuplicateEntry { line: usize, word: String },
}

/// Word-for-word map between two languages. Each source word has exactly one
/// target word, both lowercase and made only of alphanumeric characters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilingualDictionary {
    pub source_lang: Language,
    pub target_lang: Language,
    entries: BTreeMap<String, String>,
}

fn valid_word(word: &str) -> bool {
    !word.is_empty()
        && word.chars().all(|c| c.is_alphanumeric())
        && word.chars().flat_map(char::to_lowercase).eq(word.chars())
}

impl BilingualDictionary {
    pub fn from_entries<I, S, T>(
        source_lang: Language,
        target_lang: Language,
        entries: I,
    ) -> Result<Self, DictionaryError>
    where
        I: IntoIterator<Item = (S, T)>,
        S: Into<String>,
        T: Into<String>,
    {
        let mut map = BTreeMap::new();
        for (i, (source, target)) in entries.into_iter().enumerate() {
            let (source, target) = (source.into(), target.into());
            for word in [&source, &target] {
                if !valid_word(word) {
                    return Err(DictionaryError::InvalidWord {
                        line: i + 1,
                        word: word.clone(),
                    });
                }
            }
            if map.contains_key(&source) {
                return Err(DictionaryError::DuplicateEntry { line: i + 1, word: source });
            }
            map.insert(source, target);
        }
        Ok(Self {
            source_lang,
            target_lang,
            entries: map,
        })
    }

    /// Parses the `source<TAB>target` format; `#` lines and blank lines are skipped.
    pub fn parse(source_lang: Language, target_lang: Language, contents: &str) -> Result<Self, DictionaryError> {
        let mut map = BTreeMap::new();
        for (i, line) in contents.lines().enumerate() {
            let line_no = i + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let (source, target) = trimmed
                .split_once('\t')
                .ok_or(DictionaryError::Malformed { line: line_no })?;
            let (source, target) = (source.trim(), target.trim());
            for word in [source, target] {
                if !valid_word(word) {
                    return Err(DictionaryError::InvalidWord {
                        line: line_no,
                        word: word.to_string(),
                    });
                }
            }
            if map.insert(source.to_string(), target.to_string()).is_some() {
                return Err(DictionaryError::DuplicateEntry {
                    line: line_no,
                    word: source.to_string(),
                });
            }
        }
        Ok(Self {
            source_lang,
            target_lang,
            entries: map,
        })
    }

    pub fn load(path: &Path, source_lang: Language, target_lang: Language) -> Result<Self, DictionaryError> {
        let contents = fs::read_to_string(path).map_err(|source| DictionaryError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(source_lang, target_lang, &contents)
    }

    /// The Malay to English dictionary shipped with the crate.
    pub fn malay_english() -> Self {
        Self::parse(Language::Ms, Language::En, BUNDLED_MS_EN).expect("bundled dictionary is valid")
    }

    pub fn lookup(&self, word: &str) -> Option<&str> {
        self.entries.get(word).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &str)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    /// The reverse direction. When several source words share a target, the
    /// lexicographically smallest source word wins.
    pub fn inverted(&self) -> Self {
        let mut map: BTreeMap<String, String> = BTreeMap::new();
        for (source, target) in &self.entries {
            map.entry(target.clone()).or_insert_with(|| source.clone());
        }
        Self {
            source_lang: self.target_lang,
            target_lang: self.source_lang,
            entries: map,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DictionaryTranslation {
    pub text: String,
    pub words: usize,
    pub untranslated: usize,
}

/// Substitutes every word (maximal run of alphanumeric characters) found in
/// the dictionary. Everything between words is copied through untouched, as
/// are words the dictionary does not know.
pub fn dictionary_translate(text: &str, dict: &BilingualDictionary) -> DictionaryTranslation {
    let mut out = String::with_capacity(text.len());
    let mut words = 0;
    let mut untranslated = 0;
    let mut rest = text;
    while !rest.is_empty() {
        let word_start = rest.find(char::is_alphanumeric).unwrap_or(rest.len());
        out.push_str(&rest[..word_start]);
        rest = &rest[word_start..];
        if rest.is_empty() {
            break;
        }
        let word_end = rest.find(|c: char| !c.is_alphanumeric()).unwrap_or(rest.len());
        let word = &rest[..word_end];
        words += 1;
        let lowered: String = word.chars().flat_map(char::to_lowercase).collect();
        match dict.lookup(&lowered) {
            Some(target) => out.push_str(target),
            None => {
                untranslated += 1;
                out.push_str(word);
            }
        }
        rest = &rest[word_end..];
    }
    DictionaryTranslation {
        text: out,
        words,
        untranslated,
    }
}

/// Offline backend over a [`BilingualDictionary`].
#[derive(Debug, Clone)]
pub struct DictionaryBackend {
    dict: BilingualDictionary,
}

impl DictionaryBackend {
    pub fn new(dict: BilingualDictionary) -> Self {
        Self { dict }
    }

    pub fn dictionary(&self) -> &BilingualDictionary {
        &self.dict
    }
}

impl TranslationBackend for DictionaryBackend {
    fn backend_id(&self) -> &str {
        "dictionary"
    }

    fn supported_pairs(&self) -> Vec<(Language, Language)> {
        vec![(self.dict.source_lang, self.dict.target_lang)]
    }

    fn translate_text(&self, text: &str, source: Language, target: Language) -> Result<BackendOutput, TranslationError> {
        if (source, target) != (self.dict.source_lang, self.dict.target_lang) {
            return Err(TranslationError::UnsupportedPair { from: source, to: target });
        }
        let t = dictionary_translate(text, &self.dict);
        Ok(BackendOutput {
            text: t.text,
            untranslated_words: t.untranslated,
            total_words: Some(t.words),
        })
    }
}
