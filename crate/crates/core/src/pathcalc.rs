//! Wealth paths, high-water marks, drawdowns and full-period statistics.
//!
//! Wealth is normalized to `W_0 = 1` before the first observation. The
//! initial unit is not stored, but it does count toward the high-water
//! mark, so a series that opens with a loss is underwater from its first
//! observation.

use alloc::vec::Vec;

use chrono::NaiveDate;

use crate::error::{Error, Result};
use crate::math;
use crate::metric::{Metric, Reason};
use crate::series::{AlignedPair, ReturnSeries};

#[derive(Debug, Clone, PartialEq)]
pub struct WealthPath {
    pub dates: Vec<NaiveDate>,
    pub wealth: Vec<f64>,
    pub hwm: Vec<f64>,
    pub drawdown: Vec<f64>,
}

impl WealthPath {
    pub(crate) fn from_returns(dates: Vec<NaiveDate>, returns: &[f64]) -> Self {
        debug_assert_eq!(dates.len(), returns.len());
        let n = returns.len();
        let mut wealth = Vec::with_capacity(n);
        let mut hwm = Vec::with_capacity(n);
        let mut drawdown = Vec::with_capacity(n);
        let mut w = 1.0_f64;
        let mut h = 1.0_f64;
        for &r in returns {
            w *= 1.0 + r;
            if w > h {
                h = w;
            }
            wealth.push(w);
            hwm.push(h);
            drawdown.push(if w < h { 1.0 - w / h } else { 0.0 });
        }
        Self { dates, wealth, hwm, drawdown }
    }

    pub fn len(&self) -> usize {
        self.wealth.len()
    }

    pub fn is_empty(&self) -> bool {
        self.wealth.is_empty()
    }

    pub fn terminal_wealth(&self) -> f64 {
        self.wealth.last().copied().unwrap_or(1.0)
    }

    /// Wealth at `index`, or the initial unit when `index` is `None`.
    pub fn wealth_at(&self, index: Option<usize>) -> f64 {
        index.map_or(1.0, |i| self.wealth[i])
    }

    pub fn max_drawdown(&self) -> f64 {
        self.drawdown.iter().copied().fold(0.0, f64::max)
    }

    /// Longest run of consecutive periods strictly below the high-water mark.
    pub fn longest_underwater(&self) -> usize {
        let (mut best, mut run) = (0, 0);
        for &dd in &self.drawdown {
            if dd > 0.0 {
                run += 1;
                best = best.max(run);
            } else {
                run = 0;
            }
        }
        best
    }
}

pub fn wealth_path(series: &ReturnSeries) -> WealthPath {
    WealthPath::from_returns(series.dates(), &series.returns())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryStats {
    pub periods: usize,
    pub periods_per_year: u32,
    /// Per-period arithmetic mean.
    pub arithmetic_mean: f64,
    /// Per-period geometric return.
    pub geometric_return: f64,
    /// Per-period sample standard deviation (n - 1).
    pub volatility: Metric,
    pub annualized_return: f64,
    pub annualized_volatility: Metric,
    /// `mean - variance / 2` with the population variance.
    pub drag_approx: f64,
    /// Exact mean of `ln(1 + r)`, the quantity `drag_approx` approximates.
    pub mean_log_growth: f64,
    /// Standardized third central moment (population moments).
    pub skewness: Metric,
    pub max_drawdown: f64,
    pub longest_underwater: usize,
    pub terminal_wealth: f64,
}

/// Sample standard deviation.
pub fn volatility(returns: &[f64]) -> Result<f64> {
    if returns.len() < 2 {
        return Err(Error::InsufficientData { needed: 2, have: returns.len() });
    }
    let (_, m2, _) = math::central_moments(returns);
    let n = returns.len() as f64;
    Ok(math::sqrt(m2 * n / (n - 1.0)))
}

/// `m3 / m2^(3/2)` from population central moments.
pub fn skewness(returns: &[f64]) -> Result<f64> {
    if returns.len() < 2 {
        return Err(Error::InsufficientData { needed: 2, have: returns.len() });
    }
    let (_, m2, m3) = math::central_moments(returns);
    let sd = math::sqrt(m2);
    if math::is_degenerate(sd, returns) {
        return Err(Error::DegenerateInput("zero-variance series has no skewness"));
    }
    Ok(m3 / (sd * sd * sd))
}

fn geometric_return(returns: &[f64]) -> f64 {
    let mean_log = returns.iter().map(|&r| math::ln_1p(r)).sum::<f64>() / returns.len() as f64;
    math::exp_m1(mean_log)
}

fn metric_of(r: Result<f64>) -> Metric {
    match r {
        Ok(v) => Metric::Value(v),
        Err(Error::DegenerateInput(_)) => Metric::Undefined(Reason::DegenerateInput),
        Err(_) => Metric::Undefined(Reason::InsufficientData),
    }
}

pub fn summary_stats(series: &ReturnSeries) -> SummaryStats {
    let returns = series.returns();
    let path = wealth_path(series);
    let ppy = series.periods_per_year();
    let n = returns.len() as f64;

    let (mu, m2, _) = math::central_moments(&returns);
    let g = geometric_return(&returns);
    let mean_log_growth = returns.iter().map(|&r| math::ln_1p(r)).sum::<f64>() / n;
    let vol = metric_of(volatility(&returns));

    SummaryStats {
        periods: returns.len(),
        periods_per_year: ppy,
        arithmetic_mean: mu,
        geometric_return: g,
        volatility: vol,
        annualized_return: math::powi(1.0 + g, ppy as i32) - 1.0,
        annualized_volatility: vol.map(|s| s * math::sqrt(ppy as f64)),
        drag_approx: mu - 0.5 * m2,
        mean_log_growth,
        skewness: metric_of(skewness(&returns)),
        max_drawdown: path.max_drawdown(),
        longest_underwater: path.longest_underwater(),
        terminal_wealth: path.terminal_wealth(),
    }
}

pub(crate) fn coskewness_of(portfolio: &[f64], benchmark: &[f64]) -> Result<f64> {
    debug_assert_eq!(portfolio.len(), benchmark.len());
    let n = portfolio.len();
    if n < 3 {
        return Err(Error::InsufficientData { needed: 3, have: n });
    }
    let (mu_p, m2_p, _) = math::central_moments(portfolio);
    let (mu_b, m2_b, _) = math::central_moments(benchmark);
    let (sd_p, sd_b) = (math::sqrt(m2_p), math::sqrt(m2_b));
    if math::is_degenerate(sd_p, portfolio) || math::is_degenerate(sd_b, benchmark) {
        return Err(Error::DegenerateInput("coskewness needs variance in both legs"));
    }
    let cross =
        portfolio.iter().zip(benchmark).map(|(&p, &b)| (p - mu_p) * (b - mu_b) * (b - mu_b)).sum::<f64>() / n as f64;
    Ok(cross / (sd_p * sd_b * sd_b))
}

/// `E[(P - mu_P)(B - mu_B)^2] / (sd_P * sd_B^2)` with population moments.
///
/// Auxiliary statistic: a standard standardized cross third moment, reported
/// alongside the path diagnostics rather than feeding into them.
pub fn coskewness(pair: &AlignedPair) -> Result<f64> {
    coskewness_of(&pair.portfolio_returns(), &pair.benchmark_returns())
}
