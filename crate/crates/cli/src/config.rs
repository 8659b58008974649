//! Run configuration: built-in defaults, then an optional `key=value` file,
//! then command-line flags.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Duration;

use permprob_core::oeis::{OeisClient, DEFAULT_BASE_URL, DEFAULT_TIMEOUT};
use permprob_core::{Limits, MatrixFamily};

use crate::error::CliError;

/// Config file read when `--config` is not given.
pub const DEFAULT_CONFIG_FILE: &str = "permprob.conf";
/// Environment variable naming an alternative default config file.
pub const CONFIG_ENV: &str = "PERMPROB_CONFIG";

pub const DEFAULT_GRID: usize = 101;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
    Svg,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            "svg" => Ok(OutputFormat::Svg),
            other => Err(format!("unknown format {other:?}, expected csv, json or svg")),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
            OutputFormat::Svg => "svg",
        })
    }
}

/// Settings that may come from the config file or flags. `None` means unset.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    pub family: Option<MatrixFamily>,
    pub n: Option<usize>,
    pub grid: Option<usize>,
    pub format: Option<OutputFormat>,
    pub out: Option<PathBuf>,
    pub force: Option<bool>,
    pub oeis: Option<bool>,
    pub oeis_url: Option<String>,
    pub oeis_timeout: Option<f64>,
}

impl Settings {
    /// Fields set in `over` replace those in `self`.
    pub fn overlay(self, over: Settings) -> Settings {
        Settings {
            family: over.family.or(self.family),
            n: over.n.or(self.n),
            grid: over.grid.or(self.grid),
            format: over.format.or(self.format),
            out: over.out.or(self.out),
            force: over.force.or(self.force),
            oeis: over.oeis.or(self.oeis),
            oeis_url: over.oeis_url.or(self.oeis_url),
            oeis_timeout: over.oeis_timeout.or(self.oeis_timeout),
        }
    }

    /// Parses `key = value` lines; blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Settings, CliError> {
        let mut s = Settings::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |msg: String| CliError::Usage(format!("config line {}: {msg}", idx + 1));
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| bad(format!("expected key=value, got {line:?}")))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "family" => s.family = Some(value.parse().map_err(|e| bad(format!("{e}")))?),
                "n" => s.n = Some(value.parse().map_err(|_| bad(format!("bad n {value:?}")))?),
                "grid" => s.grid = Some(value.parse().map_err(|_| bad(format!("bad grid {value:?}")))?),
                "format" => s.format = Some(value.parse().map_err(bad)?),
                "out" => s.out = Some(PathBuf::from(value)),
                "force" => s.force = Some(parse_bool(value).ok_or_else(|| bad(format!("bad boolean {value:?}")))?),
                "oeis" => s.oeis = Some(parse_bool(value).ok_or_else(|| bad(format!("bad boolean {value:?}")))?),
                "oeis_url" => s.oeis_url = Some(value.to_string()),
                "oeis_timeout" => {
                    s.oeis_timeout = Some(
                        value
                            .parse()
                            .ok()
                            .filter(|t: &f64| *t > 0.0 && t.is_finite())
                            .ok_or_else(|| bad(format!("bad timeout {value:?}")))?,
                    )
                }
                other => return Err(bad(format!("unknown key {other:?}"))),
            }
        }
        Ok(s)
    }

    /// Reads `path`; with `required = false` a missing file yields empty settings.
    pub fn load(path: &Path, required: bool) -> Result<Settings, CliError> {
        match fs::read_to_string(path) {
            Ok(text) => Settings::parse(&text),
            Err(e) if !required && e.kind() == std::io::ErrorKind::NotFound => Ok(Settings::default()),
            Err(e) => Err(CliError::Usage(format!("cannot read config {}: {e}", path.display()))),
        }
    }
}

fn parse_bool(v: &str) -> Option<bool> {
    match v.to_ascii_lowercase().as_str() {
        "1" | "true" | "yes" | "on" => Some(true),
        "0" | "false" | "no" | "off" => Some(false),
        _ => None,
    }
}

/// Fully resolved configuration for one command.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub family: Option<MatrixFamily>,
    pub n: Option<usize>,
    pub grid_points: usize,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
    pub force: bool,
    pub oeis_enabled: bool,
    pub oeis_url: String,
    pub oeis_timeout: Duration,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig::from_settings(Settings::default())
    }
}

impl RunConfig {
    pub fn from_settings(s: Settings) -> RunConfig {
        RunConfig {
            family: s.family,
            n: s.n,
            grid_points: s.grid.unwrap_or(DEFAULT_GRID),
            output_format: s.format.unwrap_or_default(),
            output_path: s.out,
            force: s.force.unwrap_or(false),
            oeis_enabled: s.oeis.unwrap_or(false),
            oeis_url: s.oeis_url.unwrap_or_else(|| DEFAULT_BASE_URL.to_string()),
            oeis_timeout: s.oeis_timeout.map_or(DEFAULT_TIMEOUT, Duration::from_secs_f64),
        }
    }

    pub fn limits(&self) -> Limits {
        Limits::with_force(self.force)
    }

    /// Config-file URL and timeout, then the environment overrides.
    pub fn oeis_client(&self) -> OeisClient {
        OeisClient::new(self.oeis_url.clone(), self.oeis_timeout).with_env_overrides()
    }

    pub fn require_n(&self) -> Result<usize, CliError> {
        match self.n {
            Some(0) => Err(CliError::Usage("--n must be at least 1".into())),
            Some(n) => Ok(n),
            None => Err(CliError::Usage("--n is required".into())),
        }
    }

    pub fn require_family(&self) -> Result<MatrixFamily, CliError> {
        self.family
            .ok_or_else(|| CliError::Usage("--family is required".into()))
    }
}
