//! Retrieval of a site's `/ai.txt`.
//!
//! Mirrors common robots.txt client behavior: a missing file (404/410)
//! means "no policy", bodies are capped at 512 KiB, at most five redirects
//! are followed, and any other failure is reported rather than guessed at.

use std::io::Read;
use std::time::Duration;

use reqwest::StatusCode;
use thiserror::Error;
use url::Url;

pub const MAX_BODY_BYTES: u64 = 512 * 1024;
pub const MAX_REDIRECTS: usize = 5;
pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(10);
pub const TIMEOUT_ENV: &str = "AITXT_TIMEOUT_SECS";
pub const POLICY_PATH: &str = "/ai.txt";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FetchOutcome {
    Found(String),
    NoPolicy,
    TransportError(String),
    TooLarge,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OriginError {
    #[error("`{0}` is not a URL")]
    NotAUrl(String),
    #[error("unsupported scheme `{0}`: expected http or https")]
    Scheme(String),
    #[error("`{0}` has no host")]
    NoHost(String),
}

/// The scheme and authority of a site. Any path, query or fragment in the
/// input is dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Origin {
    policy_url: Url,
}

impl Origin {
    pub fn parse(input: &str) -> Result<Self, OriginError> {
        let url = Url::parse(input).map_err(|_| OriginError::NotAUrl(input.to_string()))?;
        if url.scheme() != "http" && url.scheme() != "https" {
            return Err(OriginError::Scheme(url.scheme().to_string()));
        }
        let host = url
            .host_str()
            .filter(|h| !h.is_empty())
            .ok_or_else(|| OriginError::NoHost(input.to_string()))?;
        let authority = match url.port() {
            Some(port) => format!("{host}:{port}"),
            None => host.to_string(),
        };
        let policy_url = Url::parse(&format!("{}://{authority}{POLICY_PATH}", url.scheme()))
            .map_err(|_| OriginError::NotAUrl(input.to_string()))?;
        Ok(Origin { policy_url })
    }

    /// `<scheme>://<authority>/ai.txt`
    pub fn policy_url(&self) -> &Url {
        &self.policy_url
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FetchConfig {
    pub timeout: Duration,
}

impl Default for FetchConfig {
    fn default() -> Self {
        FetchConfig {
            timeout: DEFAULT_TIMEOUT,
        }
    }
}

impl FetchConfig {
    /// Default settings, with the timeout overridden by `AITXT_TIMEOUT_SECS`
    /// when it holds a positive integer.
    pub fn from_env() -> Self {
        let timeout = std::env::var(TIMEOUT_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<u64>().ok())
            .filter(|&secs| secs > 0)
            .map_or(DEFAULT_TIMEOUT, Duration::from_secs);
        FetchConfig { timeout }
    }
}

pub fn fetch(origin: &Origin) -> FetchOutcome {
    fetch_with(origin, &FetchConfig::from_env())
}

pub fn fetch_with(origin: &Origin, config: &FetchConfig) -> FetchOutcome {
    let client = match reqwest::blocking::Client::builder()
        .timeout(config.timeout)
        .redirect(reqwest::redirect::Policy::limited(MAX_REDIRECTS))
        .user_agent(concat!("aitxt/", env!("CARGO_PKG_VERSION")))
        .build()
    {
        Ok(client) => client,
        Err(e) => return FetchOutcome::TransportError(format!("cannot build HTTP client: {e}")),
    };

    let response = match client.get(origin.policy_url().clone()).send() {
        Ok(response) => response,
        Err(e) => return FetchOutcome::TransportError(describe(&e)),
    };

    match response.status() {
        StatusCode::OK => {}
        StatusCode::NOT_FOUND | StatusCode::GONE => return FetchOutcome::NoPolicy,
        status => return FetchOutcome::TransportError(format!("unexpected HTTP status {status}")),
    }

    if response
        .content_length()
        .is_some_and(|len| len > MAX_BODY_BYTES)
    {
        return FetchOutcome::TooLarge;
    }
    let mut body = Vec::new();
    if let Err(e) = response.take(MAX_BODY_BYTES + 1).read_to_end(&mut body) {
        return FetchOutcome::TransportError(format!("error reading body: {e}"));
    }
    if body.len() as u64 > MAX_BODY_BYTES {
        return FetchOutcome::TooLarge;
    }
    match String::from_utf8(body) {
        Ok(text) => FetchOutcome::Found(text),
        Err(_) => FetchOutcome::TransportError("body is not valid UTF-8".into()),
    }
}

fn describe(e: &reqwest::Error) -> String {
    if e.is_redirect() {
        format!("too many redirects (limit {MAX_REDIRECTS})")
    } else if e.is_timeout() {
        "request timed out".into()
    } else {
        let mut message = e.to_string();
        let mut source = std::error::Error::source(e);
        while let Some(inner) = source {
            message.push_str(": ");
            message.push_str(&inner.to_string());
            source = inner.source();
        }
        message
    }
}
