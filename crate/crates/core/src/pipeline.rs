//! End-to-end detection: translate, normalize, retrieve, fingerprint,
//! compare, summarize.

use std::time::{Duration, Instant};

use log::{debug, warn};
use thiserror::Error;

use crate::document::{AdmissionError, Language, Origin, RawDocument};
use crate::fingerprint::{fingerprint_document, DocumentFingerprintSet, GramLength};
use crate::report::{assemble_report, CandidateEvidence, DetectionReport, PairComparison, ReportMetadata, ReportParameters};
use crate::resemblance::{match_sentences, resemblance, ResemblanceError, Threshold};
use crate::retrieval::{
    build_queries, gather_candidates, CorpusIndex, DocumentFrequency, IndexParams, NoStatistics, SearchBackend,
    SearchError, DEFAULT_CAP, DEFAULT_MAX_QUERIES, DEFAULT_TOP_K, DEFAULT_WINDOW,
};
use crate::textnorm::{normalize_document, NormalizedDocument, StemmerId, StopwordList};
use crate::translation::{translate_document, LanguageDetector, TranslationBackend, TranslationError};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Admission(#[from] AdmissionError),
    #[error(transparent)]
    Translation(#[from] TranslationError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Resemblance(#[from] ResemblanceError),
}

impl PipelineError {
    /// True for failures of a remote service as opposed to bad input or
    /// configuration.
    pub fn is_backend_failure(&self) -> bool {
        matches!(
            self,
            PipelineError::Translation(TranslationError::BackendUnavailable { .. })
                | PipelineError::Search(SearchError::BackendUnavailable { .. })
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DetectionSettings {
    /// Language of the suspect; detected from the text when `None`.
    pub source_language: Option<Language>,
    pub corpus_language: Language,
    pub k: GramLength,
    pub threshold: Threshold,
    pub window: usize,
    pub top_k: usize,
    pub cap: usize,
    pub max_queries: usize,
    pub stemmer: StemmerId,
}

impl Default for DetectionSettings {
    fn default() -> Self {
        Self {
            source_language: None,
            corpus_language: Language::En,
            k: GramLength::DEFAULT,
            threshold: Threshold::DEFAULT,
            window: DEFAULT_WINDOW,
            top_k: DEFAULT_TOP_K,
            cap: DEFAULT_CAP,
            max_queries: DEFAULT_MAX_QUERIES,
            stemmer: StemmerId::Porter,
        }
    }
}

pub struct Pipeline {
    settings: DetectionSettings,
    stoplist: StopwordList,
    detector: LanguageDetector,
}

struct Stopwatch {
    last: Instant,
    laps: Vec<(String, Duration)>,
}

impl Stopwatch {
    fn start() -> Self {
        Self {
            last: Instant::now(),
            laps: Vec::new(),
        }
    }

    fn lap(&mut self, stage: &str) {
        let now = Instant::now();
        self.laps.push((stage.to_string(), now - self.last));
        self.last = now;
    }
}

impl Pipeline {
    pub fn new(settings: DetectionSettings, stoplist: StopwordList) -> Self {
        let detector = LanguageDetector::new(settings.corpus_language);
        Self {
            settings,
            stoplist,
            detector,
        }
    }

    pub fn settings(&self) -> &DetectionSettings {
        &self.settings
    }

    pub fn stoplist(&self) -> &StopwordList {
        &self.stoplist
    }

    pub fn index_params(&self) -> IndexParams {
        IndexParams {
            language: self.settings.corpus_language,
            stoplist_id: self.stoplist.id().to_string(),
            stemmer: self.settings.stemmer,
            k: self.settings.k,
        }
    }

    pub fn source_language_for(&self, text: &str) -> Language {
        self.settings.source_language.unwrap_or_else(|| {
            let detection = self.detector.detect(text);
            debug!("detected {} with confidence {:.3}", detection.language, detection.confidence);
            detection.language
        })
    }

    fn normalize(&self, doc: &RawDocument) -> NormalizedDocument {
        normalize_document(doc, &self.stoplist, self.settings.stemmer)
    }

    /// Runs the whole detection chain for one suspect text. `index` supplies
    /// precomputed candidate fingerprints and term statistics when the corpus
    /// is local.
    pub fn detect(
        &self,
        suspect_id: &str,
        text: &str,
        translator: &dyn TranslationBackend,
        search: &dyn SearchBackend,
        index: Option<&CorpusIndex>,
    ) -> Result<DetectionReport, PipelineError> {
        let s = &self.settings;
        let mut clock = Stopwatch::start();

        let source_language = self.source_language_for(text);
        let raw = RawDocument::new(suspect_id, text, source_language, Origin::SuspectInput)?;
        let translation = translate_document(&raw, s.corpus_language, translator)?;
        let suspect = translation.document;
        let mut warnings: Vec<String> = translation.warnings.iter().map(ToString::to_string).collect();
        clock.lap("translate");

        let normalized = self.normalize(&suspect);
        clock.lap("normalize");

        let stats: &dyn DocumentFrequency = match index {
            Some(index) => index,
            None => &NoStatistics,
        };
        let queries = build_queries(&normalized, s.window, s.max_queries, stats);
        let candidate_ids = gather_candidates(&queries, search, s.top_k, s.cap)?;
        debug!("{} queries produced {} candidates", queries.len(), candidate_ids.len());
        clock.lap("retrieve");

        let suspect_fps = fingerprint_document(&normalized, s.k);
        let mut resolved: Vec<(RawDocument, NormalizedDocument, DocumentFingerprintSet)> = Vec::new();
        for id in &candidate_ids {
            if let Some(doc) = index.and_then(|i| i.get(id)).filter(|d| d.fingerprints.k == s.k) {
                resolved.push((doc.raw.clone(), doc.normalized.clone(), doc.fingerprints.clone()));
                continue;
            }
            match search.fetch(id) {
                Ok(raw) => {
                    let norm = self.normalize(&raw);
                    let fps = fingerprint_document(&norm, s.k);
                    resolved.push((raw, norm, fps));
                }
                Err(SearchError::DocumentNotFound(id)) => {
                    warn!("candidate {id} could not be fetched");
                    warnings.push(format!("candidate {id} could not be fetched"));
                }
                Err(e) => return Err(e.into()),
            }
        }

        let mut evidence = Vec::with_capacity(resolved.len());
        for (raw, norm, fps) in &resolved {
            let score = resemblance(&suspect_fps, fps)?;
            let matches = match_sentences((&suspect_fps, &normalized), (fps, norm))?;
            evidence.push(CandidateEvidence {
                source: raw,
                score,
                matches,
            });
        }
        clock.lap("compare");

        let metadata = ReportMetadata {
            source_language,
            target_language: s.corpus_language,
            translated: translation.translated,
            threshold: s.threshold,
            parameters: ReportParameters {
                k: s.k.get(),
                threshold: s.threshold.get(),
                stoplist: self.stoplist.id().to_string(),
                stemmer: s.stemmer.to_string(),
                w: s.window,
                top_k: s.top_k,
                cap: s.cap,
                max_queries: s.max_queries,
                translation_backend: translator.backend_id().to_string(),
                search_backend: search.backend_id().to_string(),
            },
            warnings,
            timings: Vec::new(),
        };
        let mut report = assemble_report(&suspect, evidence, metadata);
        clock.lap("report");
        report.timings = clock.laps;
        Ok(report)
    }

    /// Fingerprints two documents and compares them directly.
    pub fn compare(&self, a: &RawDocument, b: &RawDocument) -> Result<PairComparison, PipelineError> {
        let (norm_a, norm_b) = (self.normalize(a), self.normalize(b));
        let fps_a = fingerprint_document(&norm_a, self.settings.k);
        let fps_b = fingerprint_document(&norm_b, self.settings.k);
        let score = resemblance(&fps_a, &fps_b)?;
        let matches = match_sentences((&fps_a, &norm_a), (&fps_b, &norm_b))?;
        Ok(PairComparison::new(a, b, score, &matches))
    }
}
