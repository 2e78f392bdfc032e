//! Flat key = value configuration files and the flag/config/default
//! resolution chain.
//!
//! Precedence: command-line flags override config-file values override
//! built-in defaults.

use std::collections::HashMap;
use std::path::Path;

use crate::CliError;

/// Keys any command may read; unknown keys in a config file are rejected
/// so typos fail loudly instead of silently using a default.
const KNOWN_KEYS: &[&str] = &[
    "channel",
    "alpha",
    "S",
    "lambda-over-gamma0",
    "delta",
    "solver",
    "convention",
    "tol",
    "grid-points",
    "t-max",
    "state",
    "werner-r",
    "schmidt-theta",
    "measure",
    "family",
    "pair",
    "compare",
    "values",
    "figure",
];

#[derive(Debug, Default, Clone)]
pub struct Config {
    values: HashMap<String, String>,
}

impl Config {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Config(format!("cannot read config file {}: {e}", path.display()))
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut values = HashMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Config(format!(
                    "config line {} is not `key = value`: `{raw}`",
                    idx + 1
                )));
            };
            let key = key.trim().to_string();
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(CliError::Config(format!(
                    "unknown config key `{key}` on line {}",
                    idx + 1
                )));
            }
            values.insert(key, value.trim().to_string());
        }
        Ok(Self { values })
    }

    fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// Flag wins, then config, then the default.
    pub fn resolve_f64(&self, key: &str, flag: Option<f64>, default: f64) -> Result<f64, CliError> {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.raw(key) {
            Some(s) => s
                .parse::<f64>()
                .map_err(|_| CliError::Config(format!("config key `{key}`: invalid number `{s}`"))),
            None => Ok(default),
        }
    }

    pub fn resolve_usize(
        &self,
        key: &str,
        flag: Option<usize>,
        default: usize,
    ) -> Result<usize, CliError> {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.raw(key) {
            Some(s) => s.parse::<usize>().map_err(|_| {
                CliError::Config(format!("config key `{key}`: invalid integer `{s}`"))
            }),
            None => Ok(default),
        }
    }

    pub fn resolve_string(&self, key: &str, flag: Option<&str>, default: &str) -> String {
        if let Some(v) = flag {
            return v.to_string();
        }
        self.raw(key).unwrap_or(default).to_string()
    }

    pub fn resolve_bool(&self, key: &str, flag: bool, default: bool) -> Result<bool, CliError> {
        if flag {
            return Ok(true);
        }
        match self.raw(key) {
            Some("true") | Some("1") | Some("yes") => Ok(true),
            Some("false") | Some("0") | Some("no") => Ok(false),
            Some(other) => Err(CliError::Config(format!(
                "config key `{key}`: expected a boolean, got `{other}`"
            ))),
            None => Ok(default),
        }
    }
}
