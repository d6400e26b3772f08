use plagscan::report::DetectionReport;
use plagscan::retrieval::{CorpusIndex, LocalSearch, Query, SearchBackend, SearchError, SearchHit};
use plagscan::textnorm::StopwordList;
use plagscan::translation::{dictionary_translate, BilingualDictionary, DictionaryBackend};
use plagscan::{DetectionSettings, Language, Origin, Pipeline, PipelineError, RawDocument};

const SOURCE: &str = "Students often copy text from online sources. \
Teachers use software to find copied sentences in student work. \
Translation makes copied text harder to recognise.";

const OTHER: &str = "The railway opened in the nineteenth century. \
Steam engines pulled long trains across the plains.";

fn corpus() -> CorpusIndex {
    let docs = vec![
        RawDocument::new("copying.txt", SOURCE, Language::En, Origin::Corpus).unwrap(),
        RawDocument::new("railway.txt", OTHER, Language::En, Origin::Corpus).unwrap(),
    ];
    let p = pipeline(DetectionSettings::default());
    CorpusIndex::build(docs, p.stoplist(), p.settings().stemmer, p.settings().k, Language::En)
}

fn pipeline(settings: DetectionSettings) -> Pipeline {
    Pipeline::new(settings, StopwordList::english())
}

fn translator() -> DictionaryBackend {
    DictionaryBackend::new(BilingualDictionary::malay_english())
}

fn detect(text: &str, settings: DetectionSettings) -> DetectionReport {
    let index = corpus();
    pipeline(settings)
        .detect("suspect", text, &translator(), &LocalSearch::new(&index), Some(&index))
        .unwrap()
}

#[test]
fn verbatim_copy_is_detected_first() {
    let report = detect(SOURCE, DetectionSettings::default());
    assert!(report.is_detected());
    assert!(!report.translated);
    assert_eq!(report.candidates[0].source_doc_id, "copying.txt");
    assert_eq!(report.candidates[0].similarity_percent, 100.0);
    assert_eq!(report.candidates[0].matches.len(), 3);
    assert!(report.candidates.iter().all(|c| c.source_doc_id != "railway.txt"));
}

#[test]
fn malay_rendering_is_traced_back() {
    let malay = dictionary_translate(SOURCE, &BilingualDictionary::malay_english().inverted()).text;
    let settings = DetectionSettings {
        source_language: Some(Language::Ms),
        ..DetectionSettings::default()
    };
    let report = detect(&malay, settings);
    assert!(report.translated);
    assert_eq!(report.source_language, Language::Ms);
    assert_eq!(report.candidates[0].source_doc_id, "copying.txt");
    assert!(report.candidates[0].similarity_percent >= 20.0);
}

#[test]
fn unrelated_text_is_clean() {
    let report = detect("Mountains are covered with snow in winter. Climbers need rope.", DetectionSettings::default());
    assert!(!report.is_detected());
    assert!(report.candidates.is_empty());
}

#[test]
fn json_is_deterministic_and_round_trips() {
    let a = detect(SOURCE, DetectionSettings::default());
    let b = detect(SOURCE, DetectionSettings::default());
    assert_eq!(a.to_json(), b.to_json());
    let back = DetectionReport::from_json(&a.to_json()).unwrap();
    assert_eq!(back.to_json(), a.to_json());
}

struct Failing;

impl SearchBackend for Failing {
    fn backend_id(&self) -> &str {
        "failing"
    }
    fn search(&self, _: &Query, _: usize) -> Result<Vec<SearchHit>, SearchError> {
        Err(SearchError::BackendUnavailable {
            message: "down".into(),
            retryable: true,
        })
    }
    fn fetch(&self, id: &str) -> Result<RawDocument, SearchError> {
        Err(SearchError::DocumentNotFound(id.into()))
    }
}

struct Phantom;

impl SearchBackend for Phantom {
    fn backend_id(&self) -> &str {
        "phantom"
    }
    fn search(&self, _: &Query, _: usize) -> Result<Vec<SearchHit>, SearchError> {
        Ok(vec![SearchHit {
            doc_id: "gone".into(),
            score: 1.0,
            snippet: None,
        }])
    }
    fn fetch(&self, id: &str) -> Result<RawDocument, SearchError> {
        Err(SearchError::DocumentNotFound(id.into()))
    }
}

#[test]
fn search_outage_is_a_backend_failure() {
    let err = pipeline(DetectionSettings::default())
        .detect("s", SOURCE, &translator(), &Failing, None)
        .unwrap_err();
    assert!(err.is_backend_failure());
}

#[test]
fn unfetchable_candidate_becomes_warning() {
    let report = pipeline(DetectionSettings::default())
        .detect("s", SOURCE, &translator(), &Phantom, None)
        .unwrap();
    assert!(!report.is_detected());
    assert!(report.warnings.iter().any(|w| w.contains("gone")));
}

#[test]
fn unsupported_pair_and_empty_text() {
    let settings = DetectionSettings {
        source_language: Some(Language::En),
        corpus_language: Language::Ms,
        ..DetectionSettings::default()
    };
    let err = pipeline(settings).detect("s", SOURCE, &translator(), &Phantom, None).unwrap_err();
    assert!(matches!(err, PipelineError::Translation(_)));
    assert!(!err.is_backend_failure());

    let err = pipeline(DetectionSettings::default())
        .detect("s", "   ", &translator(), &Phantom, None)
        .unwrap_err();
    assert!(matches!(err, PipelineError::Admission(_)));
}

#[test]
fn compare_pair() {
    let p = pipeline(DetectionSettings::default());
    let a = RawDocument::new("a", SOURCE, Language::En, Origin::SuspectInput).unwrap();
    let b = RawDocument::new("b", OTHER, Language::En, Origin::SuspectInput).unwrap();
    assert_eq!(p.compare(&a, &a).unwrap().resemblance, 1.0);
    assert_eq!(p.compare(&a, &b).unwrap().resemblance, 0.0);
}
