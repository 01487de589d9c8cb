//! Exposure rules that turn a benchmark into candidate return streams, and
//! the comparison table built from them.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::capture::{capture_stats, CaptureStats};
use crate::error::{Error, Result};
use crate::math;
use crate::pathcalc::{summary_stats, SummaryStats};
use crate::recovery::{recovery_profiles, RecoveryProfile};
use crate::series::{align, AlignMode, AlignedPair, Frequency, Observation, ReturnSeries};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExposureRule {
    /// Same exposure in every period.
    Constant { weight: f64 },
    /// Exposure inversely proportional to trailing annualized volatility,
    /// capped at `cap`.
    VolTarget { target_vol: f64, lookback: usize, cap: f64 },
}

impl ExposureRule {
    pub const DEFAULT_TARGET_VOL: f64 = 0.10;
    pub const DEFAULT_CAP: f64 = 1.5;

    pub fn default_lookback(frequency: Frequency) -> usize {
        match frequency {
            Frequency::Daily => 21,
            Frequency::Weekly => 13,
            Frequency::Monthly => 12,
            Frequency::Quarterly => 8,
        }
    }

    pub fn default_vol_target(frequency: Frequency) -> Self {
        ExposureRule::VolTarget {
            target_vol: Self::DEFAULT_TARGET_VOL,
            lookback: Self::default_lookback(frequency),
            cap: Self::DEFAULT_CAP,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            ExposureRule::Constant { weight } => {
                if !(weight.is_finite() && weight >= 0.0) {
                    return Err(Error::InvalidRule(format!("constant weight {weight} must be >= 0")));
                }
            }
            ExposureRule::VolTarget { target_vol, lookback, cap } => {
                if !(target_vol.is_finite() && target_vol > 0.0) {
                    return Err(Error::InvalidRule(format!("target_vol {target_vol} must be > 0")));
                }
                if lookback < 2 {
                    return Err(Error::InvalidRule(format!("lookback {lookback} must be >= 2")));
                }
                if !(cap.is_finite() && cap >= 0.0) {
                    return Err(Error::InvalidRule(format!("cap {cap} must be >= 0")));
                }
            }
        }
        Ok(())
    }

    /// Exposure path for `returns`. Period `t` only sees returns before `t`;
    /// vol-target periods without a full lookback hold `min(cap, 1)`.
    pub fn exposures(&self, returns: &[f64], periods_per_year: u32) -> Vec<f64> {
        match *self {
            ExposureRule::Constant { weight } => alloc::vec![weight; returns.len()],
            ExposureRule::VolTarget { target_vol, lookback, cap } => {
                let annualizer = math::sqrt(periods_per_year as f64);
                (0..returns.len())
                    .map(|t| {
                        if t < lookback {
                            return cap.min(1.0);
                        }
                        let window = &returns[t - lookback..t];
                        let (_, m2, _) = math::central_moments(window);
                        let n = lookback as f64;
                        let trailing = math::sqrt(m2 * n / (n - 1.0)) * annualizer;
                        if trailing > 0.0 {
                            cap.min(target_vol / trailing)
                        } else {
                            cap
                        }
                    })
                    .collect()
            }
        }
    }
}

impl fmt::Display for ExposureRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExposureRule::Constant { weight } => write!(f, "constant:{weight}"),
            ExposureRule::VolTarget { target_vol, lookback, cap } => {
                write!(f, "voltarget:{target_vol},{lookback},{cap}")
            }
        }
    }
}

/// A benchmark-derived return stream and the exposures that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub series: ReturnSeries,
    pub exposure: Vec<f64>,
}

/// `P_t = w_t * B_t` on the benchmark's dates. Turnover is reported by
/// [`design_costs`]; no trading cost is charged against returns.
pub fn apply_rule(benchmark: &ReturnSeries, rule: &ExposureRule) -> Result<Scenario> {
    rule.validate()?;
    if let ExposureRule::VolTarget { lookback, .. } = *rule {
        if benchmark.len() <= lookback {
            return Err(Error::InsufficientData { needed: lookback + 1, have: benchmark.len() });
        }
    }
    let returns = benchmark.returns();
    let exposure = rule.exposures(&returns, benchmark.periods_per_year());
    let obs = benchmark
        .observations()
        .iter()
        .zip(&exposure)
        .map(|(o, &w)| Observation { date: o.date, ret: w * o.ret })
        .collect();
    let series = ReturnSeries::new(rule.to_string(), benchmark.frequency(), obs)?
        .with_periods_per_year(benchmark.periods_per_year())?;
    Ok(Scenario { series, exposure })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DesignCosts {
    /// Sum of absolute exposure changes, per year.
    pub turnover: f64,
    /// Annualized sample standard deviation of `P_t - B_t`.
    pub tracking_error: f64,
    pub mean_exposure: f64,
}

pub fn design_costs(pair: &AlignedPair, exposure: &[f64]) -> Result<DesignCosts> {
    let n = pair.len();
    if exposure.len() != n {
        return Err(Error::Validation(format!("{} exposures for {} periods", exposure.len(), n)));
    }
    if n < 2 {
        return Err(Error::InsufficientData { needed: 2, have: n });
    }
    let ppy = pair.periods_per_year() as f64;
    let changes: f64 = exposure.windows(2).map(|w| (w[1] - w[0]).abs()).sum();
    let active: Vec<f64> = pair.portfolio_returns().iter().zip(pair.benchmark_returns()).map(|(p, b)| p - b).collect();
    let (_, m2, _) = math::central_moments(&active);
    let nf = n as f64;
    Ok(DesignCosts {
        turnover: changes * ppy / nf,
        tracking_error: math::sqrt(m2 * nf / (nf - 1.0)) * math::sqrt(ppy),
        mean_exposure: math::mean(exposure),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub label: String,
    pub rule: ExposureRule,
    pub summary: SummaryStats,
    pub capture: CaptureStats,
    pub profiles: Vec<RecoveryProfile>,
    pub costs: DesignCosts,
}

pub(crate) fn check_threshold(threshold: f64) -> Result<()> {
    if threshold > 0.0 && threshold < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain { value: threshold, domain: "(0, 1)" })
    }
}

/// One row per rule, in input order, each comparing the rule's output with
/// the benchmark it was derived from.
pub fn compare_designs(
    benchmark: &ReturnSeries,
    rules: &[(String, ExposureRule)],
    threshold: f64,
) -> Result<Vec<ComparisonRow>> {
    check_threshold(threshold)?;
    if rules.is_empty() {
        return Err(Error::InvalidRule("at least one rule is required".to_string()));
    }
    rules
        .iter()
        .map(|(label, rule)| {
            let scenario = apply_rule(benchmark, rule)?;
            let series = scenario.series.with_label(label.clone());
            let pair = align(&series, benchmark, AlignMode::Strict)?;
            Ok(ComparisonRow {
                label: label.clone(),
                rule: *rule,
                summary: summary_stats(&series),
                capture: capture_stats(&pair)?,
                profiles: recovery_profiles(&pair, threshold)?,
                costs: design_costs(&pair, &scenario.exposure)?,
            })
        })
        .collect()
}
