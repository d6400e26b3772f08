//! Blocking HTTP plumbing shared by the remote translation and search adaptors.

use std::sync::{Condvar, Mutex};
use std::time::Duration;

/// Connection settings for a remote backend.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HttpSettings {
    pub endpoint: String,
    pub timeout: Duration,
    /// A full header line, e.g. `Authorization: Bearer abc`.
    pub auth_header: Option<String>,
    pub max_in_flight: usize,
}

impl HttpSettings {
    pub fn new(endpoint: impl Into<String>) -> Self {
        Self {
            endpoint: endpoint.into(),
            timeout: Duration::from_secs(30),
            auth_header: None,
            max_in_flight: 4,
        }
    }

    pub(crate) fn auth(&self) -> Option<(String, String)> {
        let line = self.auth_header.as_deref()?;
        let (name, value) = line.split_once(':')?;
        Some((name.trim().to_string(), value.trim().to_string()))
    }

    pub(crate) fn agent(&self) -> ureq::Agent {
        ureq::Agent::config_builder()
            .timeout_global(Some(self.timeout))
            .http_status_as_error(false)
            .build()
            .into()
    }
}

/// Counting semaphore bounding concurrent requests.
#[derive(Debug)]
pub(crate) struct InflightLimiter {
    limit: usize,
    active: Mutex<usize>,
    released: Condvar,
}

pub(crate) struct Permit<'a> {
    limiter: &'a InflightLimiter,
}

impl InflightLimiter {
    pub(crate) fn new(limit: usize) -> Self {
        Self {
            limit: limit.max(1),
            active: Mutex::new(0),
            released: Condvar::new(),
        }
    }

    pub(crate) fn acquire(&self) -> Permit<'_> {
        let mut active = self.active.lock().unwrap_or_else(|e| e.into_inner());
        while *active >= self.limit {
            active = self.released.wait(active).unwrap_or_else(|e| e.into_inner());
        }
        *active += 1;
        Permit { limiter: self }
    }

    #[cfg(test)]
    fn active(&self) -> usize {
        *self.active.lock().unwrap()
    }
}

impl Drop for Permit<'_> {
    fn drop(&mut self) {
        let mut active = self.limiter.active.lock().unwrap_or_else(|e| e.into_inner());
        *active -= 1;
        self.limiter.released.notify_one();
    }
}

/// Seconds from a `Retry-After` header, when present and numeric.
pub(crate) fn retry_after<B>(response: &ureq::http::Response<B>) -> Option<Duration> {
    response
        .headers()
        .get("retry-after")?
        .to_str()
        .ok()?
        .trim()
        .parse::<u64>()
        .ok()
        .map(Duration::from_secs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::atomic::{AtomicUsize, Ordering};
    use std::sync::Arc;
    use std::thread;

    #[test]
    fn limiter_bounds_concurrency() {
        let limiter = Arc::new(InflightLimiter::new(2));
        let peak = Arc::new(AtomicUsize::new(0));
        let handles: Vec<_> = (0..8)
            .map(|_| {
                let limiter = Arc::clone(&limiter);
                let peak = Arc::clone(&peak);
                thread::spawn(move || {
                    let _permit = limiter.acquire();
                    peak.fetch_max(limiter.active(), Ordering::SeqCst);
                    thread::sleep(Duration::from_millis(10));
                })
            })
            .collect();
        for h in handles {
            h.join().unwrap();
        }
        assert!(peak.load(Ordering::SeqCst) <= 2);
        assert_eq!(limiter.active(), 0);
    }

    #[test]
    fn auth_header_split() {
        let mut s = HttpSettings::new("http://x");
        assert_eq!(s.auth(), None);
        s.auth_header = Some("Authorization: Bearer abc".into());
        assert_eq!(s.auth(), Some(("Authorization".into(), "Bearer abc".into())));
    }
}
