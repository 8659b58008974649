//! Read-only client for the OEIS search endpoint.
//!
//! Sends `GET {base}/search?q=a,b,c,...&fmt=text` and collects the A-numbers
//! from the `%I` lines of the plain-text response. Network failures are soft:
//! callers report the lookup as skipped.

use std::time::Duration;

use thiserror::Error;

pub const DEFAULT_BASE_URL: &str = "https://oeis.org";
pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(10);
pub const BASE_URL_ENV: &str = "PERMPROB_OEIS_URL";
pub const TIMEOUT_ENV: &str = "PERMPROB_OEIS_TIMEOUT";
pub const MIN_PREFIX: usize = 4;

#[derive(Debug, Error)]
pub enum OeisError {
    #[error("prefix has {0} terms, at least {MIN_PREFIX} are needed")]
    PrefixTooShort(usize),
    #[error("OEIS unreachable: {0}")]
    Unreachable(String),
    #[error("OEIS returned HTTP {0}")]
    Status(u16),
    #[error("malformed OEIS response: {0}")]
    Malformed(String),
}

impl OeisError {
    /// Errors that should downgrade to "lookup skipped" rather than fail.
    pub fn is_soft(&self) -> bool {
        matches!(self, OeisError::Unreachable(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OeisClient {
    base_url: String,
    timeout: Duration,
}

impl Default for OeisClient {
    fn default() -> Self {
        OeisClient::new(DEFAULT_BASE_URL, DEFAULT_TIMEOUT)
    }
}

impl OeisClient {
    pub fn new(base_url: impl Into<String>, timeout: Duration) -> Self {
        OeisClient {
            base_url: base_url.into().trim_end_matches('/').to_string(),
            timeout,
        }
    }

    /// Applies `PERMPROB_OEIS_URL` and `PERMPROB_OEIS_TIMEOUT` (seconds) on top of `self`.
    pub fn with_env_overrides(mut self) -> Self {
        if let Ok(url) = std::env::var(BASE_URL_ENV) {
            if !url.trim().is_empty() {
                self.base_url = url.trim().trim_end_matches('/').to_string();
            }
        }
        if let Some(secs) = std::env::var(TIMEOUT_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<f64>().ok())
        {
            if secs > 0.0 && secs.is_finite() {
                self.timeout = Duration::from_secs_f64(secs);
            }
        }
        self
    }

    pub fn base_url(&self) -> &str {
        &self.base_url
    }

    pub fn timeout(&self) -> Duration {
        self.timeout
    }

    /// Identifiers of the sequences whose terms contain `prefix`.
    pub fn lookup<T: ToString>(&self, prefix: &[T]) -> Result<Vec<String>, OeisError> {
        if prefix.len() < MIN_PREFIX {
            return Err(OeisError::PrefixTooShort(prefix.len()));
        }
        let query = prefix.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        let agent: ureq::Agent = ureq::Agent::config_builder()
            .timeout_global(Some(self.timeout))
            .http_status_as_error(false)
            .build()
            .into();
        let url = format!("{}/search", self.base_url);
        let mut response = agent
            .get(&url)
            .query("q", &query)
            .query("fmt", "text")
            .call()
            .map_err(classify)?;
        let status = response.status().as_u16();
        if status != 200 {
            return Err(OeisError::Status(status));
        }
        let body = response
            .body_mut()
            .read_to_string()
            .map_err(|e| OeisError::Malformed(e.to_string()))?;
        parse_search_text(&body)
    }
}

fn classify(err: ureq::Error) -> OeisError {
    match err {
        ureq::Error::StatusCode(code) => OeisError::Status(code),
        ureq::Error::BadUri(uri) => OeisError::Malformed(format!("bad URI {uri}")),
        other => OeisError::Unreachable(other.to_string()),
    }
}

/// Extracts A-numbers from a `fmt=text` search response.
pub fn parse_search_text(body: &str) -> Result<Vec<String>, OeisError> {
    let recognised = body.lines().any(|l| {
        let l = l.trim_start();
        l.starts_with('#') || l.starts_with("Search:") || l.starts_with('%')
    });
    if !recognised {
        let snippet: String = body.chars().take(60).collect();
        return Err(OeisError::Malformed(format!("unexpected body {snippet:?}")));
    }
    let mut ids: Vec<String> = Vec::new();
    for line in body.lines() {
        let Some(rest) = line.strip_prefix("%I ") else {
            continue;
        };
        let id = rest.split_whitespace().next().unwrap_or("");
        let valid = id.len() == 7 && id.starts_with('A') && id[1..].bytes().all(|b| b.is_ascii_digit());
        if !valid {
            return Err(OeisError::Malformed(format!("bad identifier line {line:?}")));
        }
        if !ids.iter().any(|x| x == id) {
            ids.push(id.to_string());
        }
    }
    Ok(ids)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# Greetings from The On-Line Encyclopedia of Integer Sequences! http://oeis.org/

Search: seq:0,1,2,9,44,265
Showing 1-2 of 2

%I A000166 M1937 N0766
%S A000166 1,0,1,2,9,44,265,1854,14833,133496,1334961,14684570,176214841,
%N A000166 Subfactorial or rencontres numbers, or derangements: number of permutations of [n] with no fixed points.
%I A000240
%S A000240 1,0,3,8,45,264,2835,26656,302400,3999760,58848156,
%I A000166
";

    #[test]
    fn parses_identifiers_once_each() {
        assert_eq!(parse_search_text(SAMPLE).unwrap(), ["A000166", "A000240"]);
    }

    #[test]
    fn no_results_is_empty() {
        let body = "# Greetings\n\nSearch: seq:11,44,110,220,385,1\nNo results.\n";
        assert!(parse_search_text(body).unwrap().is_empty());
    }

    #[test]
    fn html_is_malformed() {
        let err = parse_search_text("<html><body>oops</body></html>").unwrap_err();
        assert!(matches!(err, OeisError::Malformed(_)));
        assert!(!err.is_soft());
        let err = parse_search_text("# hi\n%I B12\n").unwrap_err();
        assert!(matches!(err, OeisError::Malformed(_)));
    }

    #[test]
    fn short_prefix_rejected() {
        let err = OeisClient::default().lookup(&[1, 2, 3]).unwrap_err();
        assert!(matches!(err, OeisError::PrefixTooShort(3)));
    }

    #[test]
    fn trailing_slash_trimmed() {
        let c = OeisClient::new("http://example.org/", Duration::from_secs(1));
        assert_eq!(c.base_url(), "http://example.org");
    }
}
