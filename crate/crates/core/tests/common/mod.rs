#![allow(dead_code)]

use chrono::{Days, NaiveDate};
use pathlens_core::{align, AlignMode, AlignedPair, Frequency, ReturnSeries};
use rand::Rng;

pub fn dates(n: usize) -> Vec<NaiveDate> {
    let start = NaiveDate::from_ymd_opt(1990, 1, 1).unwrap();
    (0..n).map(|i| start + Days::new(i as u64)).collect()
}

pub fn series(label: &str, rets: &[f64]) -> ReturnSeries {
    ReturnSeries::from_parts(label, Frequency::Daily, &dates(rets.len()), rets).unwrap()
}

pub fn monthly(label: &str, rets: &[f64]) -> ReturnSeries {
    ReturnSeries::from_parts(label, Frequency::Monthly, &dates(rets.len()), rets).unwrap()
}

pub fn pair(p: &[f64], b: &[f64]) -> AlignedPair {
    align(&series("p", p), &series("b", b), AlignMode::Strict).unwrap()
}

/// Returns uniform in `[-scale, scale]`.
pub fn random_returns(rng: &mut impl Rng, n: usize, scale: f64) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-scale..=scale)).collect()
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}
