//! Flat `section.key = value` configuration files.
//!
//! Blank lines and lines starting with `#` are ignored. A key given twice
//! keeps its last value, except `scenarios.rule`, which accumulates.

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

pub const KNOWN_KEYS: &[&str] = &[
    "input.portfolio",
    "input.benchmark",
    "input.exposure",
    "output.path",
    "analysis.frequency",
    "analysis.threshold",
    "analysis.format",
    "analysis.allow_inner_join",
    "analysis.extended_underwater",
    "series.periods_per_year",
    "protocol.benchmark_label",
    "protocol.strategy_label",
    "protocol.fee_treatment",
    "protocol.data_source",
    "protocol.liquidity_assumptions",
    "protocol.episode_basis",
    "protocol.recovery_constraint",
    "scenarios.rule",
    "voltarget.target_vol",
    "voltarget.lookback",
    "voltarget.cap",
];

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Config {
    path: PathBuf,
    entries: Vec<(String, String, usize)>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
        Self::parse(&text, path)
    }

    pub fn parse(text: &str, path: &Path) -> Result<Self> {
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| Error::Config { path: path.to_path_buf(), line: i + 1, message };
            let (key, value) =
                line.split_once('=').ok_or_else(|| err(format!("expected `section.key = value`, got `{line}`")))?;
            let key = key.trim();
            if !KNOWN_KEYS.contains(&key) {
                return Err(err(format!("unknown key `{key}`")));
            }
            entries.push((key.to_string(), value.trim().to_string(), i + 1));
        }
        Ok(Self { path: path.to_path_buf(), entries })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().rev().find(|e| e.0 == key).map(|e| e.1.as_str())
    }

    pub fn get_all(&self, key: &str) -> Vec<&str> {
        self.entries.iter().filter(|e| e.0 == key).map(|e| e.1.as_str()).collect()
    }

    /// Parses the last value of `key` with `parse`, reporting failures
    /// against the line the value came from.
    pub fn get_parsed<T>(&self, key: &str, parse: impl Fn(&str) -> Result<T, String>) -> Result<Option<T>> {
        let Some((_, value, line)) = self.entries.iter().rev().find(|e| e.0 == key) else {
            return Ok(None);
        };
        parse(value).map(Some).map_err(|message| Error::Config {
            path: self.path.clone(),
            line: *line,
            message: format!("{key}: {message}"),
        })
    }
}
