use serde::Deserialize;

use super::search::{Query, SearchBackend, SearchError, SearchHit};
use crate::document::{Language, Origin, RawDocument};
use crate::http::{HttpSettings, InflightLimiter};

#[derive(Deserialize)]
struct SearchResponse {
    hits: Vec<WireHit>,
}

#[derive(Deserialize)]
struct WireHit {
    id: String,
    score: f64,
    #[serde(default)]
    snippet: Option<String>,
}

/// Adaptor for a web-search service answering `GET ?q=...` with
/// `{"hits": [{"id", "score", "snippet"}]}`. Hit ids that are http(s) URLs
/// can be fetched as plain text.
pub struct HttpSearchBackend {
    settings: HttpSettings,
    language: Language,
    agent: ureq::Agent,
    limiter: InflightLimiter,
}

impl HttpSearchBackend {
    pub fn new(settings: HttpSettings, language: Language) -> Self {
        Self {
            agent: settings.agent(),
            limiter: InflightLimiter::new(settings.max_in_flight),
            settings,
            language,
        }
    }

    fn get(&self, url: &str, query: Option<&str>) -> Result<ureq::http::Response<ureq::Body>, SearchError> {
        let _permit = self.limiter.acquire();
        let mut request = self.agent.get(url);
        if let Some(q) = query {
            request = request.query("q", q);
        }
        if let Some((name, value)) = self.settings.auth() {
            request = request.header(name, value);
        }
        let response = request.call().map_err(|e| SearchError::BackendUnavailable {
            message: format!("{url}: {e}"),
            retryable: true,
        })?;
        let status = response.status();
        if !status.is_success() {
            return Err(SearchError::BackendUnavailable {
                message: format!("{url} answered {status}"),
                retryable: status.is_server_error() || status.as_u16() == 429,
            });
        }
        Ok(response)
    }
}

fn malformed(url: &str, e: impl std::fmt::Display) -> SearchError {
    SearchError::BackendUnavailable {
        message: format!("malformed response from {url}: {e}"),
        retryable: false,
    }
}

impl SearchBackend for HttpSearchBackend {
    fn backend_id(&self) -> &str {
        "http"
    }

    fn search(&self, query: &Query, top_k: usize) -> Result<Vec<SearchHit>, SearchError> {
        let endpoint = &self.settings.endpoint;
        let mut response = self.get(endpoint, Some(&query.terms.join(" ")))?;
        let body: SearchResponse = response
            .body_mut()
            .read_json()
            .map_err(|e| malformed(endpoint, e))?;
        Ok(body
            .hits
            .into_iter()
            .filter(|h| h.score.is_finite() && h.score >= 0.0)
            .take(top_k)
            .map(|h| SearchHit {
                doc_id: h.id,
                score: h.score,
                snippet: h.snippet,
            })
            .collect())
    }

    fn fetch(&self, doc_id: &str) -> Result<RawDocument, SearchError> {
        if !(doc_id.starts_with("http://") || doc_id.starts_with("https://")) {
            return Err(SearchError::DocumentNotFound(doc_id.to_string()));
        }
        let mut response = self.get(doc_id, None)?;
        let text = response
            .body_mut()
            .read_to_string()
            .map_err(|e| malformed(doc_id, e))?;
        RawDocument::new(doc_id, text, self.language, Origin::Fetched)
            .map_err(|_| SearchError::DocumentNotFound(doc_id.to_string()))
    }
}
