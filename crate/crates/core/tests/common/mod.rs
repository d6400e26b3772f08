#![allow(dead_code)]

use plagscan::textnorm::{NormalizedDocument, Sentence, Span, StemmerId};
use proptest::prelude::*;

/// Tokens over a small alphabet so grams repeat and counts tie often.
pub fn token() -> impl Strategy<Value = String> {
    "[abcd1]{1,7}"
}

/// One sentence of at most 80 characters of token text.
pub fn sentence_tokens() -> impl Strategy<Value = Vec<String>> {
    prop::collection::vec(token(), 0..12).prop_map(|mut tokens| {
        while tokens.concat().chars().count() > 80 {
            tokens.pop();
        }
        tokens
    })
}

pub fn document_from(id: &str, sentences: Vec<Vec<String>>) -> NormalizedDocument {
    NormalizedDocument {
        source_id: id.to_string(),
        sentences: sentences
            .into_iter()
            .enumerate()
            .map(|(index, tokens)| Sentence {
                index,
                raw_span: Span::new(index * 1000, index * 1000 + 1),
                tokens,
            })
            .collect(),
        stopword_list_id: "test".into(),
        stemmer_id: StemmerId::None,
    }
}

/// Documents of up to 10 sentences.
pub fn document() -> impl Strategy<Value = NormalizedDocument> {
    prop::collection::vec(sentence_tokens(), 0..=10).prop_map(|s| document_from("doc", s))
}

/// Brute-force windows of a sentence's joined tokens, as plain strings.
pub fn windows(tokens: &[String], k: usize) -> Vec<String> {
    let chars: Vec<char> = tokens.concat().chars().collect();
    if chars.len() < k {
        return Vec::new();
    }
    (0..=chars.len() - k).map(|i| chars[i..i + k].iter().collect()).collect()
}

/// Occurrences of `gram` across every sentence, recounted from scratch.
pub fn recount(doc: &NormalizedDocument, gram: &str, k: usize) -> u64 {
    doc.sentences
        .iter()
        .flat_map(|s| windows(&s.tokens, k))
        .filter(|w| w == gram)
        .count() as u64
}

/// Exhaustive selection: every distinct gram with its recounted document
/// count and first position, fully sorted, first `n` taken.
pub fn least_frequent_oracle(doc: &NormalizedDocument, sentence: usize, k: usize, n: usize) -> Vec<String> {
    let grams = windows(&doc.sentences[sentence].tokens, k);
    let mut distinct: Vec<(u64, usize, String)> = Vec::new();
    for (pos, g) in grams.iter().enumerate() {
        if grams[..pos].contains(g) {
            continue;
        }
        distinct.push((recount(doc, g, k), pos, g.clone()));
    }
    distinct.sort();
    distinct.into_iter().take(n).map(|(_, _, g)| g).collect()
}
