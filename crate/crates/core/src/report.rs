//! Detection summaries: which parts of the suspect were matched, against
//! which sources, and how similar each source is.
//!
//! The JSON form is the contract of record:
//!
//! ```text
//! {suspect_id, source_language, target_language, translated, status,
//!  parameters: {k, threshold, stoplist, stemmer, w, top_k, cap, max_queries,
//!               translation_backend, search_backend},
//!  warnings: [string],
//!  candidates: [{source_doc_id, similarity_percent, intersection_size, union_size,
//!                matches: [{suspect_sentence, source_sentence, fingerprint_key,
//!                           suspect_span, source_span,
//!                           suspect_excerpt, source_excerpt}]}]}
//! ```

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::document::{Language, RawDocument};
use crate::resemblance::{ResemblanceScore, SentenceMatch, Threshold};
use crate::textnorm::Span;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format {other:?} (expected text or json)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReportStatus {
    #[serde(rename = "plagiarism detected")]
    Detected,
    #[serde(rename = "no plagiarism detected above threshold")]
    Clean,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportParameters {
    pub k: usize,
    pub threshold: f64,
    pub stoplist: String,
    pub stemmer: String,
    pub w: usize,
    pub top_k: usize,
    pub cap: usize,
    pub max_queries: usize,
    pub translation_backend: String,
    pub search_backend: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchedSentence {
    pub suspect_sentence: usize,
    pub source_sentence: usize,
    pub fingerprint_key: String,
    pub suspect_span: Span,
    pub source_span: Span,
    pub suspect_excerpt: String,
    pub source_excerpt: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SourceMatch {
    pub source_doc_id: String,
    pub similarity_percent: f64,
    pub intersection_size: usize,
    pub union_size: usize,
    pub matches: Vec<MatchedSentence>,
}

impl SourceMatch {
    pub fn resemblance(&self) -> ResemblanceScore {
        ResemblanceScore::from_counts(self.intersection_size, self.union_size)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectionReport {
    pub suspect_id: String,
    pub source_language: Language,
    pub target_language: Language,
    pub translated: bool,
    pub status: ReportStatus,
    pub parameters: ReportParameters,
    pub warnings: Vec<String>,
    pub candidates: Vec<SourceMatch>,
    /// Wall-clock time per stage. Shown in text output only, so JSON stays
    /// reproducible.
    #[serde(skip)]
    pub timings: Vec<(String, Duration)>,
}

/// One scored candidate with its sentence alignment.
#[derive(Debug, Clone)]
pub struct CandidateEvidence<'a> {
    pub source: &'a RawDocument,
    pub score: ResemblanceScore,
    pub matches: Vec<SentenceMatch>,
}

#[derive(Debug, Clone)]
pub struct ReportMetadata {
    pub source_language: Language,
    pub target_language: Language,
    pub translated: bool,
    pub threshold: Threshold,
    pub parameters: ReportParameters,
    pub warnings: Vec<String>,
    pub timings: Vec<(String, Duration)>,
}

fn excerpt(text: &str, span: Span) -> String {
    span.slice(text).unwrap_or_default().to_string()
}

/// Builds the report for a suspect document. Candidates under the threshold
/// are dropped; the rest are ordered by resemblance, highest first, ties by
/// source id.
pub fn assemble_report(
    suspect: &RawDocument,
    candidates: Vec<CandidateEvidence<'_>>,
    metadata: ReportMetadata,
) -> DetectionReport {
    let mut kept: Vec<CandidateEvidence<'_>> = candidates
        .into_iter()
        .filter(|c| metadata.threshold.admits(&c.score))
        .collect();
    kept.sort_by(|a, b| b.score.cmp_value(&a.score).then_with(|| a.source.id.cmp(&b.source.id)));

    let candidates: Vec<SourceMatch> = kept
        .into_iter()
        .map(|c| SourceMatch {
            source_doc_id: c.source.id.clone(),
            similarity_percent: c.score.value * 100.0,
            intersection_size: c.score.intersection_size,
            union_size: c.score.union_size,
            matches: c
                .matches
                .iter()
                .map(|m| MatchedSentence {
                    suspect_sentence: m.suspect_sentence_index,
                    source_sentence: m.source_sentence_index,
                    fingerprint_key: m.fingerprint_key.clone(),
                    suspect_span: m.suspect_span,
                    source_span: m.source_span,
                    suspect_excerpt: excerpt(&suspect.text, m.suspect_span),
                    source_excerpt: excerpt(&c.source.text, m.source_span),
                })
                .collect(),
        })
        .collect();

    DetectionReport {
        suspect_id: suspect.id.clone(),
        source_language: metadata.source_language,
        target_language: metadata.target_language,
        translated: metadata.translated,
        status: if candidates.is_empty() {
            ReportStatus::Clean
        } else {
            ReportStatus::Detected
        },
        parameters: metadata.parameters,
        warnings: metadata.warnings,
        candidates,
        timings: metadata.timings,
    }
}

impl DetectionReport {
    pub fn is_detected(&self) -> bool {
        self.status == ReportStatus::Detected
    }

    pub fn from_json(json: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(json)
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "Suspect document: {}", self.suspect_id);
        if self.translated {
            let _ = writeln!(out, "Translated: {} -> {}", self.source_language, self.target_language);
        } else {
            let _ = writeln!(out, "Language: {}", self.target_language);
        }
        let p = &self.parameters;
        let _ = writeln!(
            out,
            "Parameters: k={} threshold={} stoplist={} stemmer={} w={} top_k={} cap={} max_queries={} translation={} search={}",
            p.k, p.threshold, p.stoplist, p.stemmer, p.w, p.top_k, p.cap, p.max_queries, p.translation_backend, p.search_backend
        );
        for w in &self.warnings {
            let _ = writeln!(out, "Warning: {w}");
        }
        let status = match self.status {
            ReportStatus::Detected => format!("plagiarism detected in {} source(s)", self.candidates.len()),
            ReportStatus::Clean => "no plagiarism detected above threshold".to_string(),
        };
        let _ = writeln!(out, "Result: {status}");

        for (rank, c) in self.candidates.iter().enumerate() {
            let _ = writeln!(out);
            let _ = writeln!(
                out,
                "[{}] {}  similarity {:.2}%  ({} of {} fingerprints shared)",
                rank + 1,
                c.source_doc_id,
                c.similarity_percent,
                c.intersection_size,
                c.union_size
            );
            for m in &c.matches {
                let _ = writeln!(out, "    suspect sentence {}: {}", m.suspect_sentence, m.suspect_excerpt);
                let _ = writeln!(out, "    source  sentence {}: {}", m.source_sentence, m.source_excerpt);
            }
        }
        if !self.timings.is_empty() {
            let _ = writeln!(out);
            let stages: Vec<String> = self
                .timings
                .iter()
                .map(|(stage, d)| format!("{stage} {:.1}ms", d.as_secs_f64() * 1000.0))
                .collect();
            let _ = writeln!(out, "Timings: {}", stages.join(", "));
        }
        out
    }
}

pub fn render(report: &DetectionReport, format: Format) -> Vec<u8> {
    match format {
        Format::Text => report.to_text().into_bytes(),
        Format::Json => report.to_json().into_bytes(),
    }
}

/// Resemblance of a single pair of documents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairComparison {
    pub document_a: String,
    pub document_b: String,
    pub resemblance: f64,
    pub intersection_size: usize,
    pub union_size: usize,
    pub matches: Vec<MatchedSentence>,
}

impl PairComparison {
    pub fn new(a: &RawDocument, b: &RawDocument, score: ResemblanceScore, matches: &[SentenceMatch]) -> Self {
        Self {
            document_a: a.id.clone(),
            document_b: b.id.clone(),
            resemblance: score.value,
            intersection_size: score.intersection_size,
            union_size: score.union_size,
            matches: matches
                .iter()
                .map(|m| MatchedSentence {
                    suspect_sentence: m.suspect_sentence_index,
                    source_sentence: m.source_sentence_index,
                    fingerprint_key: m.fingerprint_key.clone(),
                    suspect_span: m.suspect_span,
                    source_span: m.source_span,
                    suspect_excerpt: excerpt(&a.text, m.suspect_span),
                    source_excerpt: excerpt(&b.text, m.source_span),
                })
                .collect(),
        }
    }

    pub fn render(&self, format: Format) -> Vec<u8> {
        match format {
            Format::Json => {
                let mut out = serde_json::to_string_pretty(self).expect("comparison serializes");
                out.push('\n');
                out.into_bytes()
            }
            Format::Text => {
                let mut out = String::new();
                let _ = writeln!(out, "{} vs {}", self.document_a, self.document_b);
                let _ = writeln!(
                    out,
                    "R = {:.4} ({} of {} fingerprints shared)",
                    self.resemblance, self.intersection_size, self.union_size
                );
                for m in &self.matches {
                    let _ = writeln!(out, "    a sentence {}: {}", m.suspect_sentence, m.suspect_excerpt);
                    let _ = writeln!(out, "    b sentence {}: {}", m.source_sentence, m.source_excerpt);
                }
                out.into_bytes()
            }
        }
    }
}
