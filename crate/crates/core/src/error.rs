use alloc::string::String;

use chrono::NaiveDate;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("validation failed: {0}")]
    Validation(String),

    #[error("duplicate date {0}")]
    DuplicateDate(NaiveDate),

    #[error("return {ret} on {date} is not above -1")]
    ReturnOutOfRange { date: NaiveDate, ret: f64 },

    #[error("series is empty")]
    EmptySeries,

    #[error("frequency mismatch: {left} vs {right}")]
    FrequencyMismatch { left: &'static str, right: &'static str },

    #[error("alignment failed: {0}")]
    Alignment(String),

    #[error("insufficient data: need at least {needed} observations, have {have}")]
    InsufficientData { needed: usize, have: usize },

    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),

    #[error("window {start}..={end} out of range for length {len}")]
    WindowOutOfRange { start: usize, end: usize, len: usize },

    #[error("empty input")]
    EmptyInput,

    #[error("value {value} outside domain {domain}")]
    Domain { value: f64, domain: &'static str },

    #[error("undefined: {0}")]
    Undefined(&'static str),

    #[error("invalid exposure rule: {0}")]
    InvalidRule(String),

    #[error("report inputs disagree with series metadata: {0}")]
    MetadataMismatch(String),
}
