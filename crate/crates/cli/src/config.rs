//! Effective configuration: command-line flags over a TOML config file over
//! built-in defaults.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use plagscan::fingerprint::GramLength;
use plagscan::report::Format;
use plagscan::resemblance::Threshold;
use plagscan::retrieval::{DEFAULT_CAP, DEFAULT_MAX_QUERIES, DEFAULT_TOP_K, DEFAULT_WINDOW};
use plagscan::textnorm::StemmerId;
use plagscan::{DetectionSettings, HttpSettings, Language};
use serde::Deserialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TranslationKind {
    Dictionary,
    Http,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchKind {
    Local,
    Http,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Json,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Text => Format::Text,
            OutputFormat::Json => Format::Json,
        }
    }
}

/// Flags shared by every subcommand. Each one may also be set in the config
/// file under the same name.
#[derive(Debug, Default, Clone, Args, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct Options {
    /// Corpus directory
    #[arg(long, global = true, value_name = "DIR")]
    pub corpus: Option<PathBuf>,

    /// Language of the suspect document (en, ms); detected when omitted
    #[arg(long, global = true, value_name = "LANG")]
    pub source_lang: Option<String>,

    /// Language of the corpus [default: en]
    #[arg(long, global = true, value_name = "LANG")]
    pub corpus_lang: Option<String>,

    /// Character gram length [default: 4]
    #[arg(long, global = true)]
    pub k: Option<usize>,

    /// Minimum resemblance reported as plagiarism [default: 0.2]
    #[arg(long, global = true)]
    pub threshold: Option<f64>,

    /// Tokens per search query [default: 8]
    #[arg(long, global = true)]
    pub window: Option<usize>,

    /// Hits requested per query [default: 10]
    #[arg(long, global = true)]
    pub top_k: Option<usize>,

    /// Maximum number of candidate documents compared [default: 50]
    #[arg(long, global = true)]
    pub cap: Option<usize>,

    /// Maximum number of search queries [default: 40]
    #[arg(long, global = true)]
    pub max_queries: Option<usize>,

    /// Stop-word list, one word per line [default: bundled English list]
    #[arg(long, global = true, value_name = "FILE")]
    pub stoplist: Option<PathBuf>,

    /// Stemmer (porter, none) [default: porter]
    #[arg(long, global = true)]
    pub stemmer: Option<String>,

    /// Translation dictionary, `source<TAB>target` per line [default: bundled Malay-English]
    #[arg(long, global = true, value_name = "FILE")]
    pub dictionary: Option<PathBuf>,

    /// [default: dictionary]
    #[arg(long, global = true, value_enum)]
    pub translation_backend: Option<TranslationKind>,

    /// [default: local]
    #[arg(long, global = true, value_enum)]
    pub search_backend: Option<SearchKind>,

    /// [default: text]
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,

    /// Translation service URL (http translation backend)
    #[arg(long, global = true, value_name = "URL")]
    pub translation_endpoint: Option<String>,

    /// Header sent to the translation service, e.g. "Authorization: Bearer KEY"
    #[arg(long, global = true, value_name = "HEADER")]
    pub translation_auth: Option<String>,

    /// Search service URL (http search backend)
    #[arg(long, global = true, value_name = "URL")]
    pub search_endpoint: Option<String>,

    /// Header sent to the search service
    #[arg(long, global = true, value_name = "HEADER")]
    pub search_auth: Option<String>,

    /// Per-request timeout in seconds [default: 30]
    #[arg(long, global = true, value_name = "SECS")]
    pub timeout: Option<f64>,

    /// Concurrent requests allowed per remote backend [default: 4]
    #[arg(long, global = true, value_name = "N")]
    pub max_in_flight: Option<usize>,

    /// TOML file with any of the options above
    #[arg(long, global = true, value_name = "FILE")]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

macro_rules! overlay {
    ($base:ident, $top:ident, $($field:ident),+ $(,)?) => {
        Options { $($field: $top.$field.or($base.$field),)+ }
    };
}

impl Options {
    /// Values set in `self` win over those in `file`.
    pub fn over(self, file: Options) -> Options {
        overlay!(
            file, self, corpus, source_lang, corpus_lang, k, threshold, window, top_k, cap, max_queries,
            stoplist, stemmer, dictionary, translation_backend, search_backend, format, translation_endpoint,
            translation_auth, search_endpoint, search_auth, timeout, max_in_flight, config,
        )
    }

    pub fn from_file(path: &Path) -> Result<Options> {
        let contents = fs::read_to_string(path).with_context(|| format!("could not read config {}", path.display()))?;
        let mut options: Options =
            toml::from_str(&contents).with_context(|| format!("invalid config {}", path.display()))?;
        // Relative paths in a config file are taken from the file's directory.
        let base = path.parent().unwrap_or(Path::new(""));
        for p in [&mut options.corpus, &mut options.stoplist, &mut options.dictionary].into_iter().flatten() {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(options)
    }
}

#[derive(Debug, Clone)]
pub struct Remote {
    pub endpoint: Option<String>,
    pub auth: Option<String>,
}

#[derive(Debug, Clone)]
pub struct Config {
    pub corpus: Option<PathBuf>,
    pub detection: DetectionSettings,
    pub stoplist: Option<PathBuf>,
    pub dictionary: Option<PathBuf>,
    pub translation_backend: TranslationKind,
    pub search_backend: SearchKind,
    pub format: Format,
    pub translation: Remote,
    pub search: Remote,
    pub timeout: Duration,
    pub max_in_flight: usize,
}

fn language(code: &str) -> Result<Language> {
    code.parse().map_err(|e| anyhow::anyhow!("{e}"))
}

fn positive(name: &str, value: Option<usize>, default: usize) -> Result<usize> {
    match value {
        Some(0) => bail!("--{name} must be at least 1"),
        Some(v) => Ok(v),
        None => Ok(default),
    }
}

fn existing(name: &str, path: Option<PathBuf>) -> Result<Option<PathBuf>> {
    match path {
        Some(p) if !p.is_file() => bail!("--{name} {} does not exist", p.display()),
        other => Ok(other),
    }
}

impl Config {
    /// Merges `flags` over the config file they name, if any, and validates
    /// the result.
    pub fn resolve(flags: Options) -> Result<Config> {
        let options = match &flags.config {
            Some(path) => {
                let file = Options::from_file(path)?;
                flags.over(file)
            }
            None => flags,
        };
        Self::from_options(options)
    }

    fn from_options(o: Options) -> Result<Config> {
        let k = GramLength::new(o.k.unwrap_or(GramLength::DEFAULT.get())).map_err(|e| anyhow::anyhow!("--k: {e}"))?;
        let threshold = Threshold::new(o.threshold.unwrap_or(Threshold::DEFAULT.get()))
            .map_err(|e| anyhow::anyhow!("--threshold: {e}"))?;
        let stemmer: StemmerId = match &o.stemmer {
            Some(s) => s.parse().map_err(|e| anyhow::anyhow!("--stemmer: {e}"))?,
            None => StemmerId::Porter,
        };
        let detection = DetectionSettings {
            source_language: o.source_lang.as_deref().map(language).transpose()?,
            corpus_language: o.corpus_lang.as_deref().map(language).transpose()?.unwrap_or(Language::En),
            k,
            threshold,
            window: positive("window", o.window, DEFAULT_WINDOW)?,
            top_k: positive("top-k", o.top_k, DEFAULT_TOP_K)?,
            cap: positive("cap", o.cap, DEFAULT_CAP)?,
            max_queries: positive("max-queries", o.max_queries, DEFAULT_MAX_QUERIES)?,
            stemmer,
        };
        let timeout = match o.timeout {
            Some(t) if !(t.is_finite() && t > 0.0) => bail!("--timeout must be a positive number of seconds"),
            Some(t) => Duration::from_secs_f64(t),
            None => Duration::from_secs(30),
        };
        let config = Config {
            corpus: o.corpus,
            detection,
            stoplist: existing("stoplist", o.stoplist)?,
            dictionary: existing("dictionary", o.dictionary)?,
            translation_backend: o.translation_backend.unwrap_or(TranslationKind::Dictionary),
            search_backend: o.search_backend.unwrap_or(SearchKind::Local),
            format: o.format.unwrap_or(OutputFormat::Text).into(),
            translation: Remote {
                endpoint: o.translation_endpoint,
                auth: o.translation_auth,
            },
            search: Remote {
                endpoint: o.search_endpoint,
                auth: o.search_auth,
            },
            timeout,
            max_in_flight: positive("max-in-flight", o.max_in_flight, 4)?,
        };
        if config.translation_backend == TranslationKind::Http && config.translation.endpoint.is_none() {
            bail!("--translation-backend http needs --translation-endpoint");
        }
        if config.search_backend == SearchKind::Http && config.search.endpoint.is_none() {
            bail!("--search-backend http needs --search-endpoint");
        }
        for auth in [&config.translation.auth, &config.search.auth].into_iter().flatten() {
            if !auth.contains(':') {
                bail!("auth header {auth:?} must look like `Name: value`");
            }
        }
        Ok(config)
    }

    pub fn http_settings(&self, remote: &Remote) -> HttpSettings {
        let mut settings = HttpSettings::new(remote.endpoint.clone().unwrap_or_default());
        settings.timeout = self.timeout;
        settings.auth_header = remote.auth.clone();
        settings.max_in_flight = self.max_in_flight;
        settings
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = Config::resolve(Options::default()).unwrap();
        assert_eq!(c.detection, DetectionSettings::default());
        assert_eq!(c.translation_backend, TranslationKind::Dictionary);
        assert_eq!(c.search_backend, SearchKind::Local);
        assert_eq!(c.format, Format::Text);
    }

    #[test]
    fn flags_beat_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("plagscan.toml");
        fs::write(&path, "k = 5\nthreshold = 0.5\ntop-k = 3\ncorpus = \"docs\"\nformat = \"json\"\n").unwrap();
        let flags = Options {
            k: Some(6),
            config: Some(path),
            ..Options::default()
        };
        let c = Config::resolve(flags).unwrap();
        assert_eq!(c.detection.k.get(), 6);
        assert_eq!(c.detection.threshold.get(), 0.5);
        assert_eq!(c.detection.top_k, 3);
        assert_eq!(c.format, Format::Json);
        assert_eq!(c.corpus, Some(dir.path().join("docs")));
    }

    #[test]
    fn rejects_bad_values() {
        let bad = [
            Options { k: Some(0), ..Options::default() },
            Options { threshold: Some(1.5), ..Options::default() },
            Options { window: Some(0), ..Options::default() },
            Options { source_lang: Some("xx".into()), ..Options::default() },
            Options { stemmer: Some("snowball".into()), ..Options::default() },
            Options { stoplist: Some("/no/such/file".into()), ..Options::default() },
            Options { search_backend: Some(SearchKind::Http), ..Options::default() },
            Options { timeout: Some(-1.0), ..Options::default() },
        ];
        for o in bad {
            assert!(Config::resolve(o.clone()).is_err(), "{o:?}");
        }
    }

    #[test]
    fn unknown_config_key() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.toml");
        fs::write(&path, "gram-size = 4\n").unwrap();
        let flags = Options {
            config: Some(path),
            ..Options::default()
        };
        assert!(Config::resolve(flags).is_err());
    }
}
