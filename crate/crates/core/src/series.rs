//! Dated return series, their validation and pairwise alignment.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use chrono::NaiveDate;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Frequency {
    Daily,
    Weekly,
    Monthly,
    Quarterly,
}

impl Frequency {
    pub const fn periods_per_year(self) -> u32 {
        match self {
            Frequency::Daily => 252,
            Frequency::Weekly => 52,
            Frequency::Monthly => 12,
            Frequency::Quarterly => 4,
        }
    }

    pub const fn as_str(self) -> &'static str {
        match self {
            Frequency::Daily => "daily",
            Frequency::Weekly => "weekly",
            Frequency::Monthly => "monthly",
            Frequency::Quarterly => "quarterly",
        }
    }
}

impl fmt::Display for Frequency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Frequency {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "daily" => Ok(Frequency::Daily),
            "weekly" => Ok(Frequency::Weekly),
            "monthly" => Ok(Frequency::Monthly),
            "quarterly" => Ok(Frequency::Quarterly),
            other => Err(Error::Validation(format!("unknown frequency `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Observation {
    pub date: NaiveDate,
    pub ret: f64,
}

impl Observation {
    pub fn new(date: NaiveDate, ret: f64) -> Self {
        Self { date, ret }
    }
}

/// Non-empty, strictly date-ordered simple returns, each above -1.
#[derive(Debug, Clone, PartialEq)]
pub struct ReturnSeries {
    label: String,
    frequency: Frequency,
    periods_per_year: u32,
    observations: Vec<Observation>,
}

impl ReturnSeries {
    /// Builds a series from observations already in date order.
    pub fn new(label: impl Into<String>, frequency: Frequency, observations: Vec<Observation>) -> Result<Self> {
        if observations.is_empty() {
            return Err(Error::EmptySeries);
        }
        for obs in &observations {
            if !obs.ret.is_finite() || obs.ret <= -1.0 {
                return Err(Error::ReturnOutOfRange { date: obs.date, ret: obs.ret });
            }
        }
        for w in observations.windows(2) {
            if w[1].date == w[0].date {
                return Err(Error::DuplicateDate(w[1].date));
            }
            if w[1].date < w[0].date {
                return Err(Error::Validation(format!("dates not increasing: {} after {}", w[1].date, w[0].date)));
            }
        }
        Ok(Self { label: label.into(), frequency, periods_per_year: frequency.periods_per_year(), observations })
    }

    /// Sorts by date (stable) before validating.
    pub fn from_unsorted(
        label: impl Into<String>,
        frequency: Frequency,
        mut observations: Vec<Observation>,
    ) -> Result<Self> {
        observations.sort_by_key(|o| o.date);
        Self::new(label, frequency, observations)
    }

    /// Convenience constructor pairing returns with a date sequence.
    pub fn from_parts(
        label: impl Into<String>,
        frequency: Frequency,
        dates: &[NaiveDate],
        returns: &[f64],
    ) -> Result<Self> {
        if dates.len() != returns.len() {
            return Err(Error::Validation(format!("{} dates for {} returns", dates.len(), returns.len())));
        }
        let obs = dates.iter().zip(returns).map(|(&date, &ret)| Observation { date, ret }).collect();
        Self::new(label, frequency, obs)
    }

    /// Overrides the annualization factor implied by the frequency.
    pub fn with_periods_per_year(mut self, periods_per_year: u32) -> Result<Self> {
        if periods_per_year == 0 {
            return Err(Error::Validation("periods_per_year must be positive".to_string()));
        }
        self.periods_per_year = periods_per_year;
        Ok(self)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn frequency(&self) -> Frequency {
        self.frequency
    }

    pub fn periods_per_year(&self) -> u32 {
        self.periods_per_year
    }

    pub fn observations(&self) -> &[Observation] {
        &self.observations
    }

    pub fn len(&self) -> usize {
        self.observations.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn returns(&self) -> Vec<f64> {
        self.observations.iter().map(|o| o.ret).collect()
    }

    pub fn dates(&self) -> Vec<NaiveDate> {
        self.observations.iter().map(|o| o.date).collect()
    }

    pub fn first_date(&self) -> NaiveDate {
        self.observations[0].date
    }

    pub fn last_date(&self) -> NaiveDate {
        self.observations[self.observations.len() - 1].date
    }

    fn retain_dates(&self, keep: &BTreeSet<NaiveDate>) -> Result<Self> {
        let obs = self.observations.iter().filter(|o| keep.contains(&o.date)).copied().collect();
        let mut out = Self::new(self.label.clone(), self.frequency, obs)?;
        out.periods_per_year = self.periods_per_year;
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AlignMode {
    /// Date sets must be identical.
    #[default]
    Strict,
    /// Keep only the dates present in both legs.
    InnerJoin,
}

/// Portfolio and benchmark legs over one shared date sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct AlignedPair {
    portfolio: ReturnSeries,
    benchmark: ReturnSeries,
}

impl AlignedPair {
    pub fn portfolio(&self) -> &ReturnSeries {
        &self.portfolio
    }

    pub fn benchmark(&self) -> &ReturnSeries {
        &self.benchmark
    }

    pub fn dates(&self) -> Vec<NaiveDate> {
        self.benchmark.dates()
    }

    pub fn portfolio_returns(&self) -> Vec<f64> {
        self.portfolio.returns()
    }

    pub fn benchmark_returns(&self) -> Vec<f64> {
        self.benchmark.returns()
    }

    pub fn len(&self) -> usize {
        self.benchmark.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn frequency(&self) -> Frequency {
        self.benchmark.frequency()
    }

    pub fn periods_per_year(&self) -> u32 {
        self.benchmark.periods_per_year()
    }
}

pub fn align(portfolio: &ReturnSeries, benchmark: &ReturnSeries, mode: AlignMode) -> Result<AlignedPair> {
    if portfolio.frequency != benchmark.frequency {
        return Err(Error::FrequencyMismatch {
            left: portfolio.frequency.as_str(),
            right: benchmark.frequency.as_str(),
        });
    }
    if portfolio.periods_per_year != benchmark.periods_per_year {
        return Err(Error::Alignment(format!(
            "periods_per_year differs: {} vs {}",
            portfolio.periods_per_year, benchmark.periods_per_year
        )));
    }

    let same_dates = portfolio.len() == benchmark.len()
        && portfolio.observations.iter().zip(&benchmark.observations).all(|(p, b)| p.date == b.date);
    if same_dates {
        return Ok(AlignedPair { portfolio: portfolio.clone(), benchmark: benchmark.clone() });
    }

    let p_dates: BTreeSet<NaiveDate> = portfolio.observations.iter().map(|o| o.date).collect();
    let b_dates: BTreeSet<NaiveDate> = benchmark.observations.iter().map(|o| o.date).collect();
    let shared: BTreeSet<NaiveDate> = p_dates.intersection(&b_dates).copied().collect();
    if shared.is_empty() {
        return Err(Error::Alignment("no dates in common".to_string()));
    }
    if mode == AlignMode::Strict {
        let only_p = p_dates.len() - shared.len();
        let only_b = b_dates.len() - shared.len();
        return Err(Error::Alignment(format!(
            "date sets differ ({only_p} portfolio-only, {only_b} benchmark-only); \
             inner-join alignment was not requested"
        )));
    }
    Ok(AlignedPair { portfolio: portfolio.retain_dates(&shared)?, benchmark: benchmark.retain_dates(&shared)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn d(y: i32, m: u32, day: u32) -> NaiveDate {
        NaiveDate::from_ymd_opt(y, m, day).unwrap()
    }

    fn monthly(dates: &[NaiveDate], rets: &[f64]) -> ReturnSeries {
        ReturnSeries::from_parts("s", Frequency::Monthly, dates, rets).unwrap()
    }

    fn months(n: usize) -> Vec<NaiveDate> {
        (0..n).map(|i| d(2020 + (i / 12) as i32, (i % 12) as u32 + 1, 1)).collect()
    }

    #[test]
    fn rejects_minus_one() {
        let err = ReturnSeries::new("s", Frequency::Monthly, vec![Observation::new(d(2020, 1, 31), -1.0)]).unwrap_err();
        assert!(matches!(err, Error::ReturnOutOfRange { .. }));
    }

    #[test]
    fn rejects_empty_and_duplicates() {
        assert_eq!(ReturnSeries::new("s", Frequency::Daily, vec![]).unwrap_err(), Error::EmptySeries);
        let obs = vec![Observation::new(d(2020, 1, 31), 0.01), Observation::new(d(2020, 1, 31), 0.02)];
        assert_eq!(
            ReturnSeries::from_unsorted("s", Frequency::Daily, obs).unwrap_err(),
            Error::DuplicateDate(d(2020, 1, 31))
        );
    }

    #[test]
    fn unsorted_input_matches_sorted() {
        let sorted = vec![
            Observation::new(d(2020, 1, 31), 0.02),
            Observation::new(d(2020, 2, 29), -0.05),
            Observation::new(d(2020, 3, 31), 0.01),
        ];
        let mut shuffled = sorted.clone();
        shuffled.swap(0, 2);
        let a = ReturnSeries::new("s", Frequency::Monthly, sorted).unwrap();
        let b = ReturnSeries::from_unsorted("s", Frequency::Monthly, shuffled).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn periods_per_year_table() {
        assert_eq!(Frequency::Daily.periods_per_year(), 252);
        assert_eq!(Frequency::Weekly.periods_per_year(), 52);
        assert_eq!(Frequency::Monthly.periods_per_year(), 12);
        assert_eq!(Frequency::Quarterly.periods_per_year(), 4);
        assert_eq!("Monthly".parse::<Frequency>().unwrap(), Frequency::Monthly);
        assert!("hourly".parse::<Frequency>().is_err());
    }

    #[test]
    fn align_self_is_identity() {
        let dates = months(4);
        let s = monthly(&dates, &[0.01, -0.02, 0.03, 0.0]);
        let pair = align(&s, &s, AlignMode::Strict).unwrap();
        assert_eq!(pair.portfolio(), &s);
        assert_eq!(pair.benchmark(), &s);
    }

    #[test]
    fn disjoint_dates_fail_in_both_modes() {
        let a = monthly(&months(2), &[0.01, 0.02]);
        let later: Vec<_> = months(4)[2..].to_vec();
        let b = monthly(&later, &[0.01, 0.02]);
        assert!(matches!(align(&a, &b, AlignMode::Strict), Err(Error::Alignment(_))));
        assert!(matches!(align(&a, &b, AlignMode::InnerJoin), Err(Error::Alignment(_))));
    }

    #[test]
    fn extra_benchmark_month() {
        let dates = months(13);
        let rets: Vec<f64> = (0..13).map(|i| 0.001 * i as f64).collect();
        let p = monthly(&dates[..12], &rets[..12]);
        let b = monthly(&dates, &rets);
        assert!(matches!(align(&p, &b, AlignMode::Strict), Err(Error::Alignment(_))));

        let pair = align(&p, &b, AlignMode::InnerJoin).unwrap();
        // oracle: set intersection of the two date sets
        let expected: BTreeSet<_> = dates[..12].iter().copied().collect();
        assert_eq!(pair.len(), 12);
        assert_eq!(pair.dates().into_iter().collect::<BTreeSet<_>>(), expected);
        assert_eq!(pair.portfolio_returns(), pair.benchmark_returns());
    }

    #[test]
    fn frequency_mismatch() {
        let dates = months(2);
        let a = monthly(&dates, &[0.01, 0.02]);
        let b = ReturnSeries::from_parts("b", Frequency::Quarterly, &dates, &[0.01, 0.02]).unwrap();
        assert!(matches!(align(&a, &b, AlignMode::Strict), Err(Error::FrequencyMismatch { .. })));
    }
}
