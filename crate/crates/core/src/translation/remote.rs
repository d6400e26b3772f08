use serde::{Deserialize, Serialize};

use super::{BackendOutput, TranslationBackend, TranslationError};
use crate::document::Language;
use crate::http::{retry_after, HttpSettings, InflightLimiter};

#[derive(Serialize)]
struct TranslateRequest<'a> {
    text: &'a str,
    source: &'a str,
    target: &'a str,
}

#[derive(Deserialize)]
struct TranslateResponse {
    text: String,
}

/// Adaptor for any machine-translation service that accepts
/// `POST {"text", "source", "target"}` and answers `{"text"}`.
pub struct HttpTranslationBackend {
    settings: HttpSettings,
    pairs: Vec<(Language, Language)>,
    agent: ureq::Agent,
    limiter: InflightLimiter,
}

impl HttpTranslationBackend {
    pub fn new(settings: HttpSettings, pairs: Vec<(Language, Language)>) -> Self {
        Self {
            agent: settings.agent(),
            limiter: InflightLimiter::new(settings.max_in_flight),
            settings,
            pairs,
        }
    }
}

fn unavailable(message: String, retryable: bool) -> TranslationError {
    TranslationError::BackendUnavailable {
        message,
        retryable,
        retry_after: None,
    }
}

impl TranslationBackend for HttpTranslationBackend {
    fn backend_id(&self) -> &str {
        "http"
    }

    fn supported_pairs(&self) -> Vec<(Language, Language)> {
        self.pairs.clone()
    }

    fn translate_text(&self, text: &str, source: Language, target: Language) -> Result<BackendOutput, TranslationError> {
        let _permit = self.limiter.acquire();
        let mut request = self.agent.post(&self.settings.endpoint);
        if let Some((name, value)) = self.settings.auth() {
            request = request.header(name, value);
        }
        let mut response = request
            .send_json(TranslateRequest {
                text,
                source: source.code(),
                target: target.code(),
            })
            .map_err(|e| unavailable(format!("{}: {e}", self.settings.endpoint), true))?;

        let status = response.status();
        if !status.is_success() {
            return Err(TranslationError::BackendUnavailable {
                message: format!("{} answered {status}", self.settings.endpoint),
                retryable: status.is_server_error() || status.as_u16() == 429,
                retry_after: retry_after(&response),
            });
        }
        let body: TranslateResponse = response
            .body_mut()
            .read_json()
            .map_err(|e| unavailable(format!("malformed response from {}: {e}", self.settings.endpoint), false))?;
        Ok(BackendOutput {
            text: body.text,
            untranslated_words: 0,
            total_words: None,
        })
    }
}
