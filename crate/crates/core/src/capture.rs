//! Conditional upside/downside capture.
//!
//! Periods are split on the sign of the benchmark return; zero-benchmark
//! periods fall in neither set and are only counted. Three conventions are
//! computed per side:
//!
//! * geometric: conditional geometric per-period return of the portfolio
//!   over that of the benchmark (the headline convention),
//! * arithmetic: conditional mean over conditional mean,
//! * growth factor: conditional product of `1 + P` over that of `1 + B`.
//!
//! Every ratio on a side is suppressed when the benchmark's conditional
//! return on that side is smaller in magnitude than [`GUARD_EPSILON`]. The
//! conditional returns and counts are always kept.

use core::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::math;
use crate::metric::{Metric, Reason};
use crate::series::AlignedPair;

/// Per-period magnitude below which a benchmark conditional return is too
/// close to zero to divide by.
pub const GUARD_EPSILON: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaptureStats {
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
    pub uc_geometric: Metric,
    pub dc_geometric: Metric,
    pub uc_arithmetic: Metric,
    pub dc_arithmetic: Metric,
    pub growth_factor_up: Metric,
    pub growth_factor_down: Metric,
    /// `uc_geometric - dc_geometric`.
    pub asymmetry: Metric,
    /// `uc_arithmetic - dc_arithmetic`.
    pub asymmetry_arithmetic: Metric,
    /// Conditional geometric per-period returns.
    pub portfolio_cond_up: Metric,
    pub portfolio_cond_down: Metric,
    pub benchmark_cond_up: Metric,
    pub benchmark_cond_down: Metric,
    /// Conditional arithmetic means.
    pub portfolio_mean_up: Metric,
    pub portfolio_mean_down: Metric,
    pub benchmark_mean_up: Metric,
    pub benchmark_mean_down: Metric,
    pub guard_up: bool,
    pub guard_down: bool,
}

struct Side {
    n: usize,
    sum_log_p: f64,
    sum_log_b: f64,
    sum_p: f64,
    sum_b: f64,
}

impl Side {
    fn new() -> Self {
        Side { n: 0, sum_log_p: 0.0, sum_log_b: 0.0, sum_p: 0.0, sum_b: 0.0 }
    }

    fn push(&mut self, p: f64, b: f64) {
        self.n += 1;
        self.sum_log_p += math::ln_1p(p);
        self.sum_log_b += math::ln_1p(b);
        self.sum_p += p;
        self.sum_b += b;
    }
}

struct SideStats {
    p_geo: Metric,
    b_geo: Metric,
    p_mean: Metric,
    b_mean: Metric,
    geometric: Metric,
    arithmetic: Metric,
    growth: Metric,
    guard: bool,
}

fn side_stats(s: &Side) -> SideStats {
    if s.n == 0 {
        let u = Metric::Undefined(Reason::InsufficientData);
        return SideStats {
            p_geo: u,
            b_geo: u,
            p_mean: u,
            b_mean: u,
            geometric: u,
            arithmetic: u,
            growth: u,
            guard: false,
        };
    }
    let n = s.n as f64;
    let p_geo = math::exp_m1(s.sum_log_p / n);
    let b_geo = math::exp_m1(s.sum_log_b / n);
    let p_mean = s.sum_p / n;
    let b_mean = s.sum_b / n;
    let guard = b_geo.abs() < GUARD_EPSILON || b_mean.abs() < GUARD_EPSILON;
    let ratio = |v: f64| {
        if guard {
            Metric::Undefined(Reason::GuardEpsilon)
        } else {
            Metric::Value(v)
        }
    };
    SideStats {
        p_geo: p_geo.into(),
        b_geo: b_geo.into(),
        p_mean: p_mean.into(),
        b_mean: b_mean.into(),
        geometric: ratio(p_geo / b_geo),
        arithmetic: ratio(p_mean / b_mean),
        growth: ratio(libm::exp(s.sum_log_p - s.sum_log_b)),
        guard,
    }
}

fn difference(a: Metric, b: Metric) -> Metric {
    match (a, b) {
        (Metric::Value(x), Metric::Value(y)) => Metric::Value(x - y),
        (Metric::Undefined(r), _) | (_, Metric::Undefined(r)) => Metric::Undefined(r),
    }
}

pub(crate) fn capture_of(portfolio: &[f64], benchmark: &[f64]) -> Result<CaptureStats> {
    debug_assert_eq!(portfolio.len(), benchmark.len());
    if benchmark.is_empty() {
        return Err(Error::EmptyInput);
    }
    let (mut up, mut down, mut n_zero) = (Side::new(), Side::new(), 0);
    for (&p, &b) in portfolio.iter().zip(benchmark) {
        if b > 0.0 {
            up.push(p, b);
        } else if b < 0.0 {
            down.push(p, b);
        } else {
            n_zero += 1;
        }
    }
    let u = side_stats(&up);
    let d = side_stats(&down);
    Ok(CaptureStats {
        n_plus: up.n,
        n_minus: down.n,
        n_zero,
        uc_geometric: u.geometric,
        dc_geometric: d.geometric,
        uc_arithmetic: u.arithmetic,
        dc_arithmetic: d.arithmetic,
        growth_factor_up: u.growth,
        growth_factor_down: d.growth,
        asymmetry: difference(u.geometric, d.geometric),
        asymmetry_arithmetic: difference(u.arithmetic, d.arithmetic),
        portfolio_cond_up: u.p_geo,
        portfolio_cond_down: d.p_geo,
        benchmark_cond_up: u.b_geo,
        benchmark_cond_down: d.b_geo,
        portfolio_mean_up: u.p_mean,
        portfolio_mean_down: d.p_mean,
        benchmark_mean_up: u.b_mean,
        benchmark_mean_down: d.b_mean,
        guard_up: u.guard,
        guard_down: d.guard,
    })
}

pub fn capture_stats(pair: &AlignedPair) -> Result<CaptureStats> {
    capture_of(&pair.portfolio_returns(), &pair.benchmark_returns())
}

/// Capture restricted to the observations in `window` (inclusive indices).
pub fn capture_over_window(pair: &AlignedPair, window: RangeInclusive<usize>) -> Result<CaptureStats> {
    let (start, end) = (*window.start(), *window.end());
    if start > end {
        return Err(Error::EmptyInput);
    }
    if end >= pair.len() {
        return Err(Error::WindowOutOfRange { start, end, len: pair.len() });
    }
    let p = pair.portfolio_returns();
    let b = pair.benchmark_returns();
    capture_of(&p[window.clone()], &b[window])
}
