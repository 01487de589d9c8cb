//! Report and table rendering.
//!
//! JSON keeps raw doubles; CSV keeps raw doubles with an empty cell plus a
//! reason column for undefined values; markdown shows percentages with one
//! decimal place.

use std::fmt;
use std::str::FromStr;

use chrono::NaiveDate;
use pathlens_core::Metric;

pub mod csv;
pub mod json;
pub mod markdown;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Markdown,
}

impl Format {
    pub const fn as_str(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Markdown => "markdown",
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "markdown" | "md" => Ok(Format::Markdown),
            other => Err(format!("unknown format `{other}` (json, csv, markdown)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RenderOptions {
    /// Show extended underwater counts next to the in-window counts in
    /// human-readable output. JSON always carries both.
    pub extended_underwater: bool,
}

/// Why a date is absent.
pub mod date_reason {
    pub const INCEPTION: &str = "inception";
    pub const UNRESOLVED: &str = "unresolved";
    pub const NOT_SUBMERGED: &str = "not_submerged";
}

pub const DATE_REASONS: &[&str] = &[date_reason::INCEPTION, date_reason::UNRESOLVED, date_reason::NOT_SUBMERGED];

/// One decimal place. Values that round to zero print as
/// `0.0%` rather than `-0.0%`.
pub fn pct(x: f64) -> String {
    let s = format!("{:.1}%", x * 100.0);
    if s == "-0.0%" {
        "0.0%".to_string()
    } else {
        s
    }
}

pub fn pct_metric(m: Metric) -> String {
    match m {
        Metric::Value(v) => pct(v),
        Metric::Undefined(r) => format!("n/a ({r})"),
    }
}

pub fn date_str(d: NaiveDate) -> String {
    d.format("%Y-%m-%d").to_string()
}

pub(crate) fn opt_date_str(d: Option<NaiveDate>, reason: &str) -> String {
    d.map_or_else(|| format!("n/a ({reason})"), date_str)
}
