//! JSON documents. Key order is fixed by construction; undefined values are
//! `null` with a sibling `<name>_reason` string.

use chrono::NaiveDate;
use pathlens_core::protocol::FullPeriod;
use pathlens_core::{
    CaptureStats, ComparisonRow, Costs, DesignCosts, Episode, Metric, ProtocolReport, Reason, RecoveryProfile,
    RecoveryRow, SummaryStats, GUARD_EPSILON, REPORT_VERSION,
};
use serde_json::{Map, Value};

use super::{date_reason, date_str};

/// The report schema shipped with the crate.
pub const REPORT_SCHEMA: &str = include_str!("../../schema/report.schema.json");

#[derive(Default)]
pub(crate) struct Obj(Map<String, Value>);

impl Obj {
    pub(crate) fn new() -> Self {
        Self(Map::new())
    }

    pub(crate) fn put(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.0.insert(key.to_string(), value.into());
        self
    }

    pub(crate) fn num(self, key: &str, value: f64) -> Self {
        debug_assert!(value.is_finite(), "{key} = {value}");
        self.put(key, value)
    }

    pub(crate) fn metric(self, key: &str, m: Metric) -> Self {
        match m {
            Metric::Value(v) => self.num(key, v),
            Metric::Undefined(r) => self.put(key, Value::Null).put(&format!("{key}_reason"), r.code()),
        }
    }

    fn date(self, key: &str, d: Option<NaiveDate>, reason: &str) -> Self {
        match d {
            Some(d) => self.put(key, date_str(d)),
            None => self.put(key, Value::Null).put(&format!("{key}_reason"), reason),
        }
    }

    fn section(self, key: &str, v: Option<Value>) -> Self {
        match v {
            Some(v) => self.put(key, v),
            None => self.put(key, Value::Null).put(&format!("{key}_reason"), Reason::NotRequested.code()),
        }
    }

    pub(crate) fn build(self) -> Value {
        Value::Object(self.0)
    }
}

pub fn summary_json(s: &SummaryStats) -> Value {
    Obj::new()
        .put("periods", s.periods)
        .put("periods_per_year", s.periods_per_year)
        .num("arithmetic_mean", s.arithmetic_mean)
        .num("geometric_return", s.geometric_return)
        .metric("volatility", s.volatility)
        .num("annualized_return", s.annualized_return)
        .metric("annualized_volatility", s.annualized_volatility)
        .num("drag_approx", s.drag_approx)
        .num("mean_log_growth", s.mean_log_growth)
        .metric("skewness", s.skewness)
        .num("max_drawdown", s.max_drawdown)
        .put("longest_underwater", s.longest_underwater)
        .num("terminal_wealth", s.terminal_wealth)
        .build()
}

pub fn capture_json(c: &CaptureStats) -> Value {
    Obj::new()
        .put("n_plus", c.n_plus)
        .put("n_minus", c.n_minus)
        .put("n_zero", c.n_zero)
        .metric("uc_geometric", c.uc_geometric)
        .metric("dc_geometric", c.dc_geometric)
        .metric("asymmetry", c.asymmetry)
        .metric("uc_arithmetic", c.uc_arithmetic)
        .metric("dc_arithmetic", c.dc_arithmetic)
        .metric("asymmetry_arithmetic", c.asymmetry_arithmetic)
        .metric("growth_factor_up", c.growth_factor_up)
        .metric("growth_factor_down", c.growth_factor_down)
        .metric("portfolio_cond_up", c.portfolio_cond_up)
        .metric("portfolio_cond_down", c.portfolio_cond_down)
        .metric("benchmark_cond_up", c.benchmark_cond_up)
        .metric("benchmark_cond_down", c.benchmark_cond_down)
        .metric("portfolio_mean_up", c.portfolio_mean_up)
        .metric("portfolio_mean_down", c.portfolio_mean_down)
        .metric("benchmark_mean_up", c.benchmark_mean_up)
        .metric("benchmark_mean_down", c.benchmark_mean_down)
        .put("guard_up", c.guard_up)
        .put("guard_down", c.guard_down)
        .num("guard_epsilon", GUARD_EPSILON)
        .build()
}

fn episode_fields(obj: Obj, e: &Episode, dates: &[NaiveDate]) -> Obj {
    obj.date("peak_date", e.peak_index.map(|i| dates[i]), date_reason::INCEPTION)
        .put("trough_date", date_str(dates[e.trough_index]))
        .date("recovery_date", e.recovery_index.map(|i| dates[i]), date_reason::UNRESOLVED)
        .num("depth", e.depth)
        .put("underwater_periods", e.underwater_periods)
        .put("truncated", e.truncated)
}

pub fn episode_json(e: &Episode, dates: &[NaiveDate]) -> Value {
    episode_fields(Obj::new(), e, dates).build()
}

pub fn profile_json(p: &RecoveryProfile, dates: &[NaiveDate]) -> Value {
    let portfolio_recovery = p.portfolio_recovery_index.map(|i| dates[i]);
    let recovery_reason = if p.underwater_extended.periods == 0 && p.underwater.periods == 0 {
        date_reason::NOT_SUBMERGED
    } else {
        date_reason::UNRESOLVED
    };
    episode_fields(Obj::new().put("episode_id", p.episode_id), &p.episode, dates)
        .put("provisional", p.truncated)
        .num("d_benchmark", p.d_benchmark)
        .num("d_portfolio", p.d_portfolio)
        .num("r_benchmark", p.r_benchmark)
        .num("r_portfolio", p.r_portfolio)
        .metric("br", p.br)
        .put("underwater_in_window", p.underwater.periods)
        .put("underwater_in_window_truncated", p.underwater.truncated)
        .put("underwater_extended", p.underwater_extended.periods)
        .put("underwater_extended_truncated", p.underwater_extended.truncated)
        .metric("uc_recovery", p.uc_recovery)
        .date("portfolio_recovery_date", portfolio_recovery, recovery_reason)
        .build()
}

pub fn costs_json(c: &Costs) -> Value {
    match c {
        Costs::Supplied(d) => design_costs_json(d),
        Costs::DeclaredUnavailable => Obj::new().put("status", "declared_unavailable").build(),
    }
}

fn design_costs_json(d: &DesignCosts) -> Value {
    Obj::new()
        .put("status", "supplied")
        .num("turnover", d.turnover)
        .num("tracking_error", d.tracking_error)
        .num("mean_exposure", d.mean_exposure)
        .build()
}

pub fn comparison_json(row: &ComparisonRow, dates: &[NaiveDate]) -> Value {
    Obj::new()
        .put("label", row.label.clone())
        .put("rule", row.rule.to_string())
        .put("summary", summary_json(&row.summary))
        .put("capture", capture_json(&row.capture))
        .put("episodes", Value::Array(row.profiles.iter().map(|p| profile_json(p, dates)).collect()))
        .put("costs", design_costs_json(&row.costs))
        .build()
}

pub fn comparisons_json(rows: &[ComparisonRow], dates: &[NaiveDate]) -> Value {
    Value::Array(rows.iter().map(|r| comparison_json(r, dates)).collect())
}

fn full_period_json(f: &FullPeriod) -> Value {
    Obj::new()
        .put("portfolio", summary_json(&f.portfolio))
        .put("benchmark", summary_json(&f.benchmark))
        .put("capture", capture_json(&f.capture))
        .metric("coskewness", f.coskewness)
        .build()
}

pub fn report_json(r: &ProtocolReport) -> Value {
    let i = &r.inputs;
    let inputs = Obj::new()
        .put("benchmark_label", i.benchmark_label.clone())
        .put("strategy_label", i.strategy_label.clone())
        .put("frequency", i.frequency.as_str())
        .put("periods_per_year", r.full_period.benchmark.periods_per_year)
        .put("sample_start", date_str(i.sample_start))
        .put("sample_end", date_str(i.sample_end))
        .put("observations", r.dates.len())
        .put("fee_treatment", i.fee_treatment.clone())
        .put("data_source", i.data_source.clone())
        .put("liquidity_assumptions", i.liquidity_assumptions.clone())
        .num("drawdown_threshold", i.drawdown_threshold)
        .put("episode_basis", i.episode_basis.as_str())
        .put("recovery_constraint", i.recovery_constraint.clone())
        .build();
    let dates = &r.dates;
    Obj::new()
        .put("report_version", REPORT_VERSION)
        .put("inputs", inputs)
        .put("full_period", full_period_json(&r.full_period))
        .section(
            "benchmark_episodes",
            r.benchmark_episodes.as_ref().map(|ps| Value::Array(ps.iter().map(|p| profile_json(p, dates)).collect())),
        )
        .section(
            "own_episodes",
            r.own_episodes.as_ref().map(|es| Value::Array(es.iter().map(|e| episode_json(e, dates)).collect())),
        )
        .put("costs", costs_json(&r.costs))
        .section("comparisons", r.comparisons.as_ref().map(|c| comparisons_json(c, dates)))
        .build()
}

pub fn recovery_table_json(rows: &[RecoveryRow]) -> Value {
    let rows = rows
        .iter()
        .map(|r| {
            Obj::new()
                .num("depth", r.depth)
                .num("value_after", r.value_after)
                .num("required_recovery", r.required)
                .build()
        })
        .collect();
    Obj::new().put("rows", Value::Array(rows)).build()
}

/// Pretty-printed with a trailing newline.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("Value serialization cannot fail");
    s.push('\n');
    s
}
