use core::fmt;

/// Why a metric has no value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reason {
    /// Too few observations (including an empty conditioning set).
    InsufficientData,
    /// Benchmark conditional return below the capture denominator guard.
    GuardEpsilon,
    /// Burden reduction needs a strictly positive benchmark depth.
    UndefinedBr,
    /// The benchmark episode has not recovered by the end of the sample.
    TruncatedEpisode,
    /// Zero-variance input where a standardized moment was requested.
    DegenerateInput,
    /// Section or metric not requested by the report inputs.
    NotRequested,
}

impl Reason {
    pub const fn code(self) -> &'static str {
        match self {
            Reason::InsufficientData => "insufficient_data",
            Reason::GuardEpsilon => "guard_epsilon",
            Reason::UndefinedBr => "undefined_br",
            Reason::TruncatedEpisode => "truncated_episode",
            Reason::DegenerateInput => "degenerate_input",
            Reason::NotRequested => "not_requested",
        }
    }

    pub const ALL: [Reason; 6] = [
        Reason::InsufficientData,
        Reason::GuardEpsilon,
        Reason::UndefinedBr,
        Reason::TruncatedEpisode,
        Reason::DegenerateInput,
        Reason::NotRequested,
    ];

    pub fn from_code(code: &str) -> Option<Reason> {
        Reason::ALL.into_iter().find(|r| r.code() == code)
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// A number that may be undefined. Undefined values always carry a reason
/// and are never stood in for by `0.0` or `NaN`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Metric {
    Value(f64),
    Undefined(Reason),
}

impl Metric {
    pub fn value(self) -> Option<f64> {
        match self {
            Metric::Value(v) => Some(v),
            Metric::Undefined(_) => None,
        }
    }

    pub fn reason(self) -> Option<Reason> {
        match self {
            Metric::Value(_) => None,
            Metric::Undefined(r) => Some(r),
        }
    }

    pub fn is_defined(self) -> bool {
        matches!(self, Metric::Value(_))
    }

    pub fn map(self, f: impl FnOnce(f64) -> f64) -> Metric {
        match self {
            Metric::Value(v) => Metric::Value(f(v)),
            u => u,
        }
    }

    /// Panics if undefined. Test and example convenience.
    #[track_caller]
    pub fn unwrap(self) -> f64 {
        match self {
            Metric::Value(v) => v,
            Metric::Undefined(r) => panic!("metric undefined: {r}"),
        }
    }
}

impl From<f64> for Metric {
    fn from(v: f64) -> Self {
        Metric::Value(v)
    }
}
