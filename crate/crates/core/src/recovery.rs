//! Recovery arithmetic and per-episode recovery-efficiency profiles.

use alloc::vec::Vec;

use crate::capture::capture_over_window;
use crate::episodes::{self, segment_episodes, Episode, Underwater};
use crate::error::{Error, Result};
use crate::metric::{Metric, Reason};
use crate::pathcalc::wealth_path;
use crate::series::AlignedPair;

/// Drawdown depths of the standard recovery table.
pub const STANDARD_DEPTHS: [f64; 10] = [0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.40, 0.50, 0.60, 0.80];

fn check_depth(d: f64) -> Result<()> {
    if (0.0..1.0).contains(&d) {
        Ok(())
    } else {
        Err(Error::Domain { value: d, domain: "[0, 1)" })
    }
}

/// Gain needed to regain a peak after losing the fraction `d` of it:
/// `1 / (1 - d) - 1`, evaluated as `d / (1 - d)`.
pub fn required_recovery(d: f64) -> Result<f64> {
    check_depth(d)?;
    Ok(d / (1.0 - d))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecoveryRow {
    pub depth: f64,
    pub value_after: f64,
    pub required: f64,
}

pub fn recovery_table(depths: &[f64]) -> Result<Vec<RecoveryRow>> {
    depths
        .iter()
        .map(|&depth| Ok(RecoveryRow { depth, value_after: 1.0 - depth, required: required_recovery(depth)? }))
        .collect()
}

/// `1 - R(d_portfolio) / R(d_benchmark)`. Positive when the portfolio needs
/// a smaller recovery gain than the benchmark over the same episode.
pub fn burden_reduction(d_benchmark: f64, d_portfolio: f64) -> Result<f64> {
    check_depth(d_benchmark)?;
    check_depth(d_portfolio)?;
    if d_benchmark == 0.0 {
        return Err(Error::Undefined("burden reduction needs a positive benchmark depth"));
    }
    Ok(1.0 - required_recovery(d_portfolio)? / required_recovery(d_benchmark)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecoveryProfile {
    /// One-based position among the benchmark episodes.
    pub episode_id: usize,
    pub episode: Episode,
    pub d_benchmark: f64,
    pub d_portfolio: f64,
    pub r_benchmark: f64,
    pub r_portfolio: f64,
    pub br: Metric,
    pub underwater: Underwater,
    pub underwater_extended: Underwater,
    /// Upside capture over the returns realized from the benchmark trough
    /// through its recovery.
    pub uc_recovery: Metric,
    /// Where the portfolio regained its own value at the benchmark peak.
    pub portfolio_recovery_index: Option<usize>,
    /// Unresolved benchmark episode; depth and burden figures are provisional.
    pub truncated: bool,
}

pub fn recovery_profiles(pair: &AlignedPair, threshold: f64) -> Result<Vec<RecoveryProfile>> {
    let bench_path = wealth_path(pair.benchmark());
    let port_path = wealth_path(pair.portfolio());
    segment_episodes(&bench_path, threshold)
        .into_iter()
        .enumerate()
        .map(|(k, episode)| {
            let d_portfolio = episodes::benchmark_window_drawdown(&port_path, &episode)?;
            let d_benchmark = episode.depth;
            let br = match burden_reduction(d_benchmark, d_portfolio) {
                Ok(v) => Metric::Value(v),
                Err(Error::Undefined(_)) => Metric::Undefined(Reason::UndefinedBr),
                Err(e) => return Err(e),
            };
            let uc_recovery = match episode.recovery_index {
                Some(b) => capture_over_window(pair, episode.trough_index + 1..=b)?.uc_geometric,
                None => Metric::Undefined(Reason::TruncatedEpisode),
            };
            Ok(RecoveryProfile {
                episode_id: k + 1,
                episode,
                d_benchmark,
                d_portfolio,
                r_benchmark: required_recovery(d_benchmark)?,
                r_portfolio: required_recovery(d_portfolio)?,
                br,
                underwater: episodes::underwater_duration(&port_path, &episode, false)?,
                underwater_extended: episodes::underwater_duration(&port_path, &episode, true)?,
                uc_recovery,
                portfolio_recovery_index: episodes::portfolio_recovery_index(&port_path, &episode),
                truncated: episode.truncated,
            })
        })
        .collect()
}
