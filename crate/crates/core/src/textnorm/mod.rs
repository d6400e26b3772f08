//! Raw text to stemmed, stop-word-filtered sentences.

mod porter;
mod segment;
mod stopwords;
mod tokenize;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::document::RawDocument;

pub use segment::{split_sentences, Span};
pub use stopwords::{remove_stopwords, StoplistError, StopwordList};
pub use tokenize::tokenize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown stemmer {0:?} (registered: porter, none)")]
pub struct UnknownStemmer(pub String);

/// Registered stemmers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StemmerId {
    Porter,
    /// Leaves tokens untouched.
    None,
}

impl StemmerId {
    pub fn as_str(self) -> &'static str {
        match self {
            StemmerId::Porter => "porter",
            StemmerId::None => "none",
        }
    }
}

impl fmt::Display for StemmerId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StemmerId {
    type Err = UnknownStemmer;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "porter" => Ok(StemmerId::Porter),
            "none" => Ok(StemmerId::None),
            other => Err(UnknownStemmer(other.to_string())),
        }
    }
}

/// Stems one lowercase token. Tokens with digits, or of length two or less,
/// come back unchanged.
pub fn stem_token(token: &str, stemmer: StemmerId) -> String {
    if token.chars().count() <= 2 || token.chars().any(|c| c.is_numeric()) {
        return token.to_string();
    }
    match stemmer {
        StemmerId::Porter => porter::stem(token),
        StemmerId::None => token.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sentence {
    pub index: usize,
    pub raw_span: Span,
    pub tokens: Vec<String>,
}

impl Sentence {
    /// Tokens joined without separators; the text grams are cut from.
    pub fn joined_tokens(&self) -> String {
        self.tokens.concat()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizedDocument {
    pub source_id: String,
    pub sentences: Vec<Sentence>,
    pub stopword_list_id: String,
    pub stemmer_id: StemmerId,
}

impl NormalizedDocument {
    pub fn sentence(&self, index: usize) -> Option<&Sentence> {
        self.sentences.get(index)
    }

    pub fn token_count(&self) -> usize {
        self.sentences.iter().map(|s| s.tokens.len()).sum()
    }
}

/// Segments, tokenizes, removes stop words and stems. Sentences left without
/// tokens are kept so indices stay aligned with the raw text.
pub fn normalize_document(
    doc: &RawDocument,
    stoplist: &StopwordList,
    stemmer: StemmerId,
) -> NormalizedDocument {
    let sentences = split_sentences(&doc.text)
        .into_iter()
        .enumerate()
        .map(|(index, (raw_span, text))| {
            let tokens = remove_stopwords(&tokenize(text), stoplist)
                .iter()
                .map(|t| stem_token(t, stemmer))
                .collect();
            Sentence {
                index,
                raw_span,
                tokens,
            }
        })
        .collect();
    NormalizedDocument {
        source_id: doc.id.clone(),
        sentences,
        stopword_list_id: stoplist.id().to_string(),
        stemmer_id: stemmer,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::{Language, Origin};

    fn doc(text: &str) -> RawDocument {
        RawDocument::new("d", text, Language::En, Origin::SuspectInput).unwrap()
    }

    #[test]
    fn games_were_running() {
        let n = normalize_document(&doc("The games were running."), &StopwordList::english(), StemmerId::Porter);
        assert_eq!(n.sentences.len(), 1);
        assert_eq!(n.sentences[0].tokens, ["game", "run"]);
        assert_eq!(n.stopword_list_id, "stopwords-en-v1");
    }

    #[test]
    fn all_stop_words_keeps_empty_sentence() {
        let n = normalize_document(&doc("The and of it."), &StopwordList::english(), StemmerId::Porter);
        assert_eq!(n.sentences.len(), 1);
        assert!(n.sentences[0].tokens.is_empty());
    }

    #[test]
    fn stem_token_passthrough_rules() {
        assert_eq!(stem_token("a1", StemmerId::Porter), "a1");
        assert_eq!(stem_token("runs2", StemmerId::Porter), "runs2");
        assert_eq!(stem_token("as", StemmerId::Porter), "as");
        assert_eq!(stem_token("caresses", StemmerId::Porter), "caress");
        assert_eq!(stem_token("running", StemmerId::None), "running");
    }

    #[test]
    fn unknown_stemmer_id() {
        assert_eq!("lancaster".parse::<StemmerId>(), Err(UnknownStemmer("lancaster".into())));
        assert_eq!("porter".parse::<StemmerId>(), Ok(StemmerId::Porter));
    }

    #[test]
    fn normalizing_twice_is_identical() {
        let d = doc("Stemming words helps. Retrieval systems index documents!");
        let list = StopwordList::english();
        assert_eq!(
            normalize_document(&d, &list, StemmerId::Porter),
            normalize_document(&d, &list, StemmerId::Porter)
        );
    }
}
