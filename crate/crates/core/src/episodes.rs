//! Submergence episode segmentation.
//!
//! An episode is a maximal run of periods with wealth strictly below the
//! running high-water mark. Its peak is the last index at that mark before
//! the run (or the initial unit of wealth when the run starts at the first
//! observation), its trough is the earliest minimum inside the run, and it
//! recovers at the first index whose wealth is back at or above the peak.
//! A run still open at the end of the sample is reported as truncated.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::pathcalc::WealthPath;

/// Episode depth threshold used when none is configured.
pub const DEFAULT_THRESHOLD: f64 = 0.10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Episode {
    /// Observation index of the peak; `None` is the initial unit of wealth.
    pub peak_index: Option<usize>,
    pub trough_index: usize,
    /// First index back at or above the peak; `None` while unresolved.
    pub recovery_index: Option<usize>,
    pub depth: f64,
    /// Periods strictly below the peak (observed so far when truncated).
    pub underwater_periods: usize,
    pub truncated: bool,
}

impl Episode {
    /// First observation index inside the episode window.
    pub fn window_start(&self) -> usize {
        self.peak_index.unwrap_or(0)
    }

    /// Last observation index of the episode window: the recovery index, or
    /// the last underwater period of a truncated episode.
    pub fn window_end(&self) -> usize {
        self.recovery_index.unwrap_or(self.first_underwater() + self.underwater_periods - 1)
    }

    pub fn first_underwater(&self) -> usize {
        self.peak_index.map_or(0, |p| p + 1)
    }
}

/// Episodes with depth at or above `threshold`, in chronological order.
pub fn segment_episodes(path: &WealthPath, threshold: f64) -> Vec<Episode> {
    segment_wealth(&path.wealth, threshold)
}

pub(crate) fn segment_wealth(wealth: &[f64], threshold: f64) -> Vec<Episode> {
    let mut out = Vec::new();
    let mut peak: Option<usize> = None;
    let mut peak_wealth = 1.0_f64;
    let mut t = 0;
    while t < wealth.len() {
        if wealth[t] >= peak_wealth {
            peak = Some(t);
            peak_wealth = wealth[t];
            t += 1;
            continue;
        }
        let start = t;
        let mut trough = t;
        while t < wealth.len() && wealth[t] < peak_wealth {
            if wealth[t] < wealth[trough] {
                trough = t;
            }
            t += 1;
        }
        let recovery = (t < wealth.len()).then_some(t);
        let depth = 1.0 - wealth[trough] / peak_wealth;
        if depth >= threshold {
            out.push(Episode {
                peak_index: peak,
                trough_index: trough,
                recovery_index: recovery,
                depth,
                underwater_periods: t - start,
                truncated: recovery.is_none(),
            });
        }
    }
    out
}

fn check_window(path: &WealthPath, episode: &Episode) -> Result<()> {
    let end = episode.window_end();
    if end >= path.len() {
        return Err(Error::WindowOutOfRange { start: episode.window_start(), end, len: path.len() });
    }
    Ok(())
}

/// Portfolio drawdown measured over a benchmark episode window, relative to
/// portfolio wealth at the benchmark peak and clamped at zero.
pub fn benchmark_window_drawdown(portfolio: &WealthPath, episode: &Episode) -> Result<f64> {
    check_window(portfolio, episode)?;
    let base = portfolio.wealth_at(episode.peak_index);
    let lowest =
        portfolio.wealth[episode.first_underwater()..=episode.window_end()].iter().copied().fold(base, f64::min);
    Ok((1.0 - lowest / base).max(0.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Underwater {
    pub periods: usize,
    /// The count stopped at the end of the sample rather than at a recovery.
    pub truncated: bool,
}

/// Periods in which portfolio wealth sits below its value at the benchmark
/// peak. In-window counting covers `(peak, recovery]`. Extended counting
/// keeps going past the benchmark recovery while the portfolio is still
/// below that value, stopping at its first return or the end of the sample.
pub fn underwater_duration(portfolio: &WealthPath, episode: &Episode, extended: bool) -> Result<Underwater> {
    check_window(portfolio, episode)?;
    let base = portfolio.wealth_at(episode.peak_index);
    let end = episode.window_end();
    let mut periods = portfolio.wealth[episode.first_underwater()..=end].iter().filter(|&&w| w < base).count();
    let still_below = portfolio.wealth[end] < base;
    if !extended {
        return Ok(Underwater { periods, truncated: episode.truncated });
    }
    if !still_below {
        return Ok(Underwater { periods, truncated: false });
    }
    let mut t = end + 1;
    while t < portfolio.len() && portfolio.wealth[t] < base {
        periods += 1;
        t += 1;
    }
    Ok(Underwater { periods, truncated: t == portfolio.len() })
}

/// First index after the benchmark peak at which the portfolio is back at or
/// above its own value at that peak.
pub fn portfolio_recovery_index(portfolio: &WealthPath, episode: &Episode) -> Option<usize> {
    let base = portfolio.wealth_at(episode.peak_index);
    let from = episode.first_underwater();
    let first_below = (from..portfolio.len()).find(|&t| portfolio.wealth[t] < base)?;
    (first_below..portfolio.len()).find(|&t| portfolio.wealth[t] >= base)
}
