use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::document::Language;
use crate::textnorm::tokenize;

const ENGLISH_FUNCTION_WORDS: &str = include_str!("../../data/function-words-en.txt");
const MALAY_FUNCTION_WORDS: &str = include_str!("../../data/function-words-ms.txt");

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Detection {
    pub language: Language,
    /// Margin between the best and runner-up hit rates, in `[0, 1]`.
    pub confidence: f64,
}

/// Identifies a text's language by the share of its tokens that are function
/// words of each candidate language.
#[derive(Debug, Clone)]
pub struct LanguageDetector {
    lists: Vec<(Language, HashSet<String>)>,
    default: Language,
}

fn parse_word_list(contents: &str) -> HashSet<String> {
    contents
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_lowercase)
        .collect()
}

impl LanguageDetector {
    pub fn new(default: Language) -> Self {
        Self {
            lists: vec![
                (Language::En, parse_word_list(ENGLISH_FUNCTION_WORDS)),
                (Language::Ms, parse_word_list(MALAY_FUNCTION_WORDS)),
            ],
            default,
        }
    }

    pub fn with_lists(default: Language, lists: Vec<(Language, HashSet<String>)>) -> Self {
        Self { lists, default }
    }

    pub fn default_language(&self) -> Language {
        self.default
    }

    /// Hit rate of each language's function words over the text's tokens.
    pub fn hit_rates(&self, text: &str) -> Vec<(Language, f64)> {
        let tokens = tokenize(text);
        self.lists
            .iter()
            .map(|(lang, words)| {
                let rate = if tokens.is_empty() {
                    0.0
                } else {
                    tokens.iter().filter(|t| words.contains(*t)).count() as f64 / tokens.len() as f64
                };
                (*lang, rate)
            })
            .collect()
    }

    pub fn detect(&self, text: &str) -> Detection {
        let mut rates = self.hit_rates(text);
        // Highest rate first; equal rates fall back to the language order.
        rates.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        match rates.as_slice() {
            [(best, rate), rest @ ..] if *rate > 0.0 => {
                let runner_up = rest.first().map_or(0.0, |r| r.1);
                Detection {
                    language: *best,
                    confidence: (rate - runner_up).clamp(0.0, 1.0),
                }
            }
            _ => Detection {
                language: self.default,
                confidence: 0.0,
            },
        }
    }
}
