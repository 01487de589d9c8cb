//! Assembly of the recovery-efficiency report.
//!
//! The report has one section per protocol step: declared inputs, the
//! full-period profile, benchmark-defined episodes with their recovery
//! profiles, the portfolio's own episodes, design costs and an optional
//! design comparison. Benchmark-defined and portfolio-own episodes are
//! segmented independently.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::str::FromStr;

use chrono::NaiveDate;

use crate::capture::{capture_stats, CaptureStats};
use crate::episodes::{segment_episodes, Episode};
use crate::error::{Error, Result};
use crate::metric::{Metric, Reason};
use crate::pathcalc::{self, summary_stats, wealth_path, SummaryStats, WealthPath};
use crate::recovery::{recovery_profiles, RecoveryProfile};
use crate::scenarios::{check_threshold, ComparisonRow, DesignCosts};
use crate::series::{AlignedPair, Frequency};

/// Version of the serialized report layout.
pub const REPORT_VERSION: &str = "1.0.0";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EpisodeBasis {
    BenchmarkDefined,
    PortfolioDefined,
    #[default]
    Both,
}

impl EpisodeBasis {
    pub const fn as_str(self) -> &'static str {
        match self {
            EpisodeBasis::BenchmarkDefined => "benchmark_defined",
            EpisodeBasis::PortfolioDefined => "portfolio_defined",
            EpisodeBasis::Both => "both",
        }
    }

    fn benchmark(self) -> bool {
        self != EpisodeBasis::PortfolioDefined
    }

    fn portfolio(self) -> bool {
        self != EpisodeBasis::BenchmarkDefined
    }
}

impl FromStr for EpisodeBasis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "benchmark_defined" | "benchmark" => Ok(EpisodeBasis::BenchmarkDefined),
            "portfolio_defined" | "portfolio" => Ok(EpisodeBasis::PortfolioDefined),
            "both" => Ok(EpisodeBasis::Both),
            other => Err(Error::Validation(format!("unknown episode basis `{other}`"))),
        }
    }
}

/// Declared protocol inputs. Free-text fields are carried verbatim; nothing
/// is computed from them.
#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolInputs {
    pub benchmark_label: String,
    pub strategy_label: String,
    pub frequency: Frequency,
    pub sample_start: NaiveDate,
    pub sample_end: NaiveDate,
    pub fee_treatment: String,
    pub data_source: String,
    pub liquidity_assumptions: String,
    pub drawdown_threshold: f64,
    pub episode_basis: EpisodeBasis,
    pub recovery_constraint: String,
}

impl ProtocolInputs {
    /// Inputs consistent with `pair`, with empty free-text declarations.
    pub fn for_pair(pair: &AlignedPair, drawdown_threshold: f64) -> Self {
        Self {
            benchmark_label: String::from(pair.benchmark().label()),
            strategy_label: String::from(pair.portfolio().label()),
            frequency: pair.frequency(),
            sample_start: pair.benchmark().first_date(),
            sample_end: pair.benchmark().last_date(),
            fee_treatment: String::new(),
            data_source: String::new(),
            liquidity_assumptions: String::new(),
            drawdown_threshold,
            episode_basis: EpisodeBasis::Both,
            recovery_constraint: String::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_threshold(self.drawdown_threshold)?;
        if self.benchmark_label.trim().is_empty() || self.strategy_label.trim().is_empty() {
            return Err(Error::Validation(String::from("benchmark and strategy labels must be non-empty")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FullPeriod {
    pub portfolio: SummaryStats,
    pub benchmark: SummaryStats,
    pub capture: CaptureStats,
    /// Auxiliary statistic, not part of the recovery diagnostics.
    pub coskewness: Metric,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Costs {
    Supplied(DesignCosts),
    DeclaredUnavailable,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolReport {
    pub inputs: ProtocolInputs,
    /// Shared date axis; episode indices refer to it.
    pub dates: Vec<NaiveDate>,
    pub full_period: FullPeriod,
    /// `None` when the episode basis excludes this view.
    pub benchmark_episodes: Option<Vec<RecoveryProfile>>,
    pub own_episodes: Option<Vec<Episode>>,
    pub costs: Costs,
    pub comparisons: Option<Vec<ComparisonRow>>,
    pub portfolio_path: WealthPath,
    pub benchmark_path: WealthPath,
}

impl ProtocolReport {
    pub fn date_at(&self, index: usize) -> NaiveDate {
        self.dates[index]
    }
}

fn check_metadata(pair: &AlignedPair, inputs: &ProtocolInputs) -> Result<()> {
    inputs.validate()?;
    if inputs.frequency != pair.frequency() {
        return Err(Error::MetadataMismatch(format!(
            "declared frequency {} but series are {}",
            inputs.frequency,
            pair.frequency()
        )));
    }
    let (first, last) = (pair.benchmark().first_date(), pair.benchmark().last_date());
    if inputs.sample_start != first || inputs.sample_end != last {
        return Err(Error::MetadataMismatch(format!(
            "declared sample {}..{} but series cover {}..{}",
            inputs.sample_start, inputs.sample_end, first, last
        )));
    }
    Ok(())
}

pub fn build_report(
    pair: &AlignedPair,
    inputs: ProtocolInputs,
    costs: Option<DesignCosts>,
    comparisons: Option<Vec<ComparisonRow>>,
) -> Result<ProtocolReport> {
    check_metadata(pair, &inputs)?;
    let threshold = inputs.drawdown_threshold;
    let portfolio_path = wealth_path(pair.portfolio());
    let benchmark_path = wealth_path(pair.benchmark());

    let coskewness = match pathcalc::coskewness(pair) {
        Ok(v) => Metric::Value(v),
        Err(Error::DegenerateInput(_)) => Metric::Undefined(Reason::DegenerateInput),
        Err(_) => Metric::Undefined(Reason::InsufficientData),
    };
    let full_period = FullPeriod {
        portfolio: summary_stats(pair.portfolio()),
        benchmark: summary_stats(pair.benchmark()),
        capture: capture_stats(pair)?,
        coskewness,
    };

    let benchmark_episodes =
        if inputs.episode_basis.benchmark() { Some(recovery_profiles(pair, threshold)?) } else { None };
    let own_episodes = inputs.episode_basis.portfolio().then(|| segment_episodes(&portfolio_path, threshold));

    Ok(ProtocolReport {
        inputs,
        dates: pair.dates(),
        full_period,
        benchmark_episodes,
        own_episodes,
        costs: costs.map_or(Costs::DeclaredUnavailable, Costs::Supplied),
        comparisons,
        portfolio_path,
        benchmark_path,
    })
}
