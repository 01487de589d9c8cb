//! Path-dependent risk diagnostics over periodic return series.
//!
//! The crate is `no_std` with `alloc`. It covers wealth paths and
//! high-water marks, submergence episode segmentation, recovery
//! arithmetic, conditional capture ratios, exposure-rule scenarios and
//! assembly of the recovery-efficiency report. Reading files, rendering
//! and the command line live in the `pathlens` crate.
//!
//! ```
//! use pathlens_core::{align, recovery_profiles, AlignMode, Frequency, ReturnSeries};
//!
//! let dates: Vec<_> = (1..=5).map(|m| chrono::NaiveDate::from_ymd_opt(2024, m, 28).unwrap()).collect();
//! let b = ReturnSeries::from_parts("index", Frequency::Monthly, &dates, &[0.10, -0.20, 0.05, 0.10, 0.12])?;
//! let p = ReturnSeries::from_parts("fund", Frequency::Monthly, &dates, &[0.08, -0.10, 0.04, 0.08, 0.09])?;
//! let profiles = recovery_profiles(&align(&p, &b, AlignMode::Strict)?, 0.10)?;
//! assert!((profiles[0].br.unwrap() - 5.0 / 9.0).abs() < 1e-12);
//! # Ok::<(), pathlens_core::Error>(())
//! ```

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;
mod math;
mod metric;

pub mod capture;
pub mod episodes;
pub mod pathcalc;
pub mod protocol;
pub mod recovery;
pub mod scenarios;
pub mod series;

pub use error::{Error, Result};
pub use metric::{Metric, Reason};

pub use capture::{capture_over_window, capture_stats, CaptureStats, GUARD_EPSILON};
pub use episodes::{
    benchmark_window_drawdown, segment_episodes, underwater_duration, Episode, Underwater, DEFAULT_THRESHOLD,
};
pub use pathcalc::{coskewness, skewness, summary_stats, volatility, wealth_path, SummaryStats, WealthPath};
pub use protocol::{build_report, Costs, EpisodeBasis, ProtocolInputs, ProtocolReport, REPORT_VERSION};
pub use recovery::{
    burden_reduction, recovery_profiles, recovery_table, required_recovery, RecoveryProfile, RecoveryRow,
    STANDARD_DEPTHS,
};
pub use scenarios::{apply_rule, compare_designs, design_costs, ComparisonRow, DesignCosts, ExposureRule, Scenario};
pub use series::{align, AlignMode, AlignedPair, Frequency, Observation, ReturnSeries};
