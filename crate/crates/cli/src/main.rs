//! `plagscan`: find the sources of a possibly translated document in a corpus.
//!
//! Exit codes: 0 no plagiarism found (or command succeeded), 3 plagiarism
//! detected, 1 configuration or input error, 2 backend failure.

mod config;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};
use log::warn;
use plagscan::retrieval::{load_or_ingest, CacheStatus, CorpusIndex, HttpSearchBackend, LocalSearch, SearchBackend};
use plagscan::textnorm::StopwordList;
use plagscan::translation::{BilingualDictionary, DictionaryBackend, HttpTranslationBackend, TranslationBackend};
use plagscan::{Language, Origin, Pipeline, RawDocument};

use config::{Config, Options, SearchKind, TranslationKind};

const EXIT_DETECTED: u8 = 3;
const EXIT_CONFIG: u8 = 1;
const EXIT_BACKEND: u8 = 2;

#[derive(Parser)]
#[command(name = "plagscan", version, about = "Cross-language plagiarism detection")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    options: Options,
}

#[derive(Subcommand)]
enum Command {
    /// Index a corpus directory, reusing the cached index when nothing changed
    Ingest { dir: Option<PathBuf> },
    /// Check a suspect document against the corpus
    Detect { file: PathBuf },
    /// Compare two documents directly
    Compare { a: PathBuf, b: PathBuf },
}

struct Failure {
    code: u8,
    error: anyhow::Error,
}

fn config_error(error: impl Into<anyhow::Error>) -> Failure {
    Failure {
        code: EXIT_CONFIG,
        error: error.into(),
    }
}

fn backend_error(error: impl Into<anyhow::Error>) -> Failure {
    Failure {
        code: EXIT_BACKEND,
        error: error.into(),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_CONFIG)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let config = Config::resolve(cli.options).map_err(config_error)?;
    let stoplist = match &config.stoplist {
        Some(path) => StopwordList::load(path).map_err(config_error)?,
        None => StopwordList::english(),
    };
    let pipeline = Pipeline::new(config.detection.clone(), stoplist);
    match cli.command {
        Command::Ingest { dir } => {
            let dir = dir
                .or_else(|| config.corpus.clone())
                .ok_or_else(|| config_error(anyhow!("ingest needs a corpus directory")))?;
            ingest(&pipeline, &dir)
        }
        Command::Detect { file } => detect(&pipeline, &config, &file),
        Command::Compare { a, b } => compare(&pipeline, &config, &a, &b),
    }
}

fn emit(bytes: &[u8]) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    out.write_all(bytes).and_then(|()| out.flush()).map_err(config_error)
}

fn load_index(pipeline: &Pipeline, dir: &Path) -> Result<(CorpusIndex, CacheStatus), Failure> {
    let (index, summary, status) = load_or_ingest(dir, &pipeline.index_params(), pipeline.stoplist()).map_err(config_error)?;
    for w in &summary.warnings {
        warn!("{w}");
    }
    Ok((index, status))
}

fn ingest(pipeline: &Pipeline, dir: &Path) -> Result<u8, Failure> {
    let (index, status) = load_index(pipeline, dir)?;
    let line = match status {
        CacheStatus::UpToDate => "cache up to date\n".to_string(),
        CacheStatus::Rebuilt => format!("ingested {} documents\n", index.doc_count()),
    };
    emit(line.as_bytes())?;
    Ok(0)
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .with_context(|| format!("could not read {}", path.display()))
        .map_err(config_error)
}

fn display_id(path: &Path) -> String {
    path.file_name()
        .map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned())
}

fn translator(config: &Config, source: Language) -> Result<Box<dyn TranslationBackend>, Failure> {
    let target = config.detection.corpus_language;
    Ok(match config.translation_backend {
        TranslationKind::Dictionary => {
            let dict = match &config.dictionary {
                Some(path) => BilingualDictionary::load(path, source, target).map_err(config_error)?,
                None => BilingualDictionary::malay_english(),
            };
            Box::new(DictionaryBackend::new(dict))
        }
        TranslationKind::Http => Box::new(HttpTranslationBackend::new(
            config.http_settings(&config.translation),
            vec![(source, target)],
        )),
    })
}

fn detect(pipeline: &Pipeline, config: &Config, file: &Path) -> Result<u8, Failure> {
    let text = read_text(file)?;
    let source = pipeline.source_language_for(&text);
    let translator = translator(config, source)?;

    let index = match config.search_backend {
        SearchKind::Local => {
            let dir = config
                .corpus
                .as_deref()
                .ok_or_else(|| config_error(anyhow!("the local search backend needs --corpus")))?;
            Some(load_index(pipeline, dir)?.0)
        }
        SearchKind::Http => None,
    };
    let search: Box<dyn SearchBackend + '_> = match &index {
        Some(index) => Box::new(LocalSearch::new(index)),
        None => Box::new(HttpSearchBackend::new(
            config.http_settings(&config.search),
            config.detection.corpus_language,
        )),
    };

    // Pin the language that was resolved above so detection runs only once.
    let mut settings = config.detection.clone();
    settings.source_language = Some(source);
    let pipeline = Pipeline::new(settings, pipeline.stoplist().clone());
    let report = pipeline
        .detect(&display_id(file), &text, translator.as_ref(), search.as_ref(), index.as_ref())
        .map_err(|e| if e.is_backend_failure() { backend_error(e) } else { config_error(e) })?;
    emit(&plagscan::report::render(&report, config.format))?;
    Ok(if report.is_detected() { EXIT_DETECTED } else { 0 })
}

fn compare(pipeline: &Pipeline, config: &Config, a: &Path, b: &Path) -> Result<u8, Failure> {
    let language = config.detection.corpus_language;
    let doc = |path: &Path| -> Result<RawDocument, Failure> {
        RawDocument::new(display_id(path), read_text(path)?, language, Origin::SuspectInput)
            .with_context(|| format!("{}", path.display()))
            .map_err(config_error)
    };
    let comparison = pipeline.compare(&doc(a)?, &doc(b)?).map_err(config_error)?;
    emit(&comparison.render(config.format))?;
    Ok(0)
}
