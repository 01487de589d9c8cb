//! CSV output. Numbers are written with shortest round-trip formatting. An
//! undefined metric is an empty cell followed by a `<name>_reason` cell,
//! which is empty when the value is defined.
//!
//! A protocol report becomes a bundle: one file per populated section plus
//! `manifest.csv` naming them.

use chrono::NaiveDate;
use pathlens_core::protocol::FullPeriod;
use pathlens_core::{
    CaptureStats, ComparisonRow, Costs, Episode, Metric, ProtocolReport, RecoveryProfile, RecoveryRow, SummaryStats,
    WealthPath, GUARD_EPSILON, REPORT_VERSION,
};

use super::{date_reason, date_str};

pub const MANIFEST: &str = "manifest.csv";

/// A header plus rows of already formatted cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.header.len(), "row width");
        self.rows.push(row);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn to_text(&self) -> String {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("cells are UTF-8")
    }
}

/// Named CSV files in emission order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Bundle {
    pub files: Vec<(String, String)>,
}

impl Bundle {
    /// All files concatenated for stdout, each preceded by `# file: <name>`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (name, body) in &self.files {
            out.push_str("# file: ");
            out.push_str(name);
            out.push('\n');
            out.push_str(body);
        }
        out
    }
}

fn num(x: f64) -> String {
    x.to_string()
}

fn metric_cells(m: Metric) -> [String; 2] {
    match m {
        Metric::Value(v) => [num(v), String::new()],
        Metric::Undefined(r) => [String::new(), r.code().to_string()],
    }
}

fn date_cells(d: Option<NaiveDate>, reason: &str) -> [String; 2] {
    match d {
        Some(d) => [date_str(d), String::new()],
        None => [String::new(), reason.to_string()],
    }
}

fn with_reasons<'a>(names: &'a [&'a str]) -> impl Iterator<Item = String> + 'a {
    names.iter().flat_map(|n| [n.to_string(), format!("{n}_reason")])
}

pub fn recovery_table(rows: &[RecoveryRow]) -> Table {
    let mut t = Table::new(["depth", "value_after", "required_recovery"]);
    for r in rows {
        t.push(vec![num(r.depth), num(r.value_after), num(r.required)]);
    }
    t
}

fn summary_cells(s: &SummaryStats) -> Vec<(&'static str, [String; 2])> {
    let plain = |x: f64| [num(x), String::new()];
    vec![
        ("periods", [s.periods.to_string(), String::new()]),
        ("periods_per_year", [s.periods_per_year.to_string(), String::new()]),
        ("arithmetic_mean", plain(s.arithmetic_mean)),
        ("geometric_return", plain(s.geometric_return)),
        ("volatility", metric_cells(s.volatility)),
        ("annualized_return", plain(s.annualized_return)),
        ("annualized_volatility", metric_cells(s.annualized_volatility)),
        ("drag_approx", plain(s.drag_approx)),
        ("mean_log_growth", plain(s.mean_log_growth)),
        ("skewness", metric_cells(s.skewness)),
        ("max_drawdown", plain(s.max_drawdown)),
        ("longest_underwater", [s.longest_underwater.to_string(), String::new()]),
        ("terminal_wealth", plain(s.terminal_wealth)),
    ]
}

fn capture_cells(c: &CaptureStats) -> Vec<(&'static str, [String; 2])> {
    let count = |n: usize| [n.to_string(), String::new()];
    let flag = |b: bool| [b.to_string(), String::new()];
    vec![
        ("n_plus", count(c.n_plus)),
        ("n_minus", count(c.n_minus)),
        ("n_zero", count(c.n_zero)),
        ("uc_geometric", metric_cells(c.uc_geometric)),
        ("dc_geometric", metric_cells(c.dc_geometric)),
        ("asymmetry", metric_cells(c.asymmetry)),
        ("uc_arithmetic", metric_cells(c.uc_arithmetic)),
        ("dc_arithmetic", metric_cells(c.dc_arithmetic)),
        ("asymmetry_arithmetic", metric_cells(c.asymmetry_arithmetic)),
        ("growth_factor_up", metric_cells(c.growth_factor_up)),
        ("growth_factor_down", metric_cells(c.growth_factor_down)),
        ("portfolio_cond_up", metric_cells(c.portfolio_cond_up)),
        ("portfolio_cond_down", metric_cells(c.portfolio_cond_down)),
        ("benchmark_cond_up", metric_cells(c.benchmark_cond_up)),
        ("benchmark_cond_down", metric_cells(c.benchmark_cond_down)),
        ("portfolio_mean_up", metric_cells(c.portfolio_mean_up)),
        ("portfolio_mean_down", metric_cells(c.portfolio_mean_down)),
        ("benchmark_mean_up", metric_cells(c.benchmark_mean_up)),
        ("benchmark_mean_down", metric_cells(c.benchmark_mean_down)),
        ("guard_up", flag(c.guard_up)),
        ("guard_down", flag(c.guard_down)),
        ("guard_epsilon", [num(GUARD_EPSILON), String::new()]),
    ]
}

/// Long format: `metric,value,reason`.
pub fn capture_table(c: &CaptureStats) -> Table {
    let mut t = Table::new(["metric", "value", "reason"]);
    for (name, [v, r]) in capture_cells(c) {
        t.push(vec![name.to_string(), v, r]);
    }
    t
}

fn full_period_table(f: &FullPeriod) -> Table {
    let mut t = Table::new(["metric", "portfolio", "portfolio_reason", "benchmark", "benchmark_reason"]);
    for ((name, [pv, pr]), (_, [bv, br])) in summary_cells(&f.portfolio).into_iter().zip(summary_cells(&f.benchmark)) {
        t.push(vec![name.to_string(), pv, pr, bv, br]);
    }
    let [cv, cr] = metric_cells(f.coskewness);
    t.push(vec!["coskewness".to_string(), cv, cr, String::new(), String::new()]);
    t
}

fn episode_cells(e: &Episode, dates: &[NaiveDate]) -> Vec<String> {
    let [peak, peak_reason] = date_cells(e.peak_index.map(|i| dates[i]), date_reason::INCEPTION);
    let [rec, rec_reason] = date_cells(e.recovery_index.map(|i| dates[i]), date_reason::UNRESOLVED);
    vec![
        peak,
        peak_reason,
        date_str(dates[e.trough_index]),
        rec,
        rec_reason,
        num(e.depth),
        e.underwater_periods.to_string(),
        e.truncated.to_string(),
    ]
}

fn episode_header() -> Vec<String> {
    vec![
        "peak_date".into(),
        "peak_date_reason".into(),
        "trough_date".into(),
        "recovery_date".into(),
        "recovery_date_reason".into(),
        "depth".into(),
        "underwater_periods".into(),
        "truncated".into(),
    ]
}

pub fn episodes_table(episodes: &[Episode], dates: &[NaiveDate]) -> Table {
    let mut header = vec!["episode_id".to_string()];
    header.extend(episode_header());
    let mut t = Table::new(header);
    for (k, e) in episodes.iter().enumerate() {
        let mut row = vec![(k + 1).to_string()];
        row.extend(episode_cells(e, dates));
        t.push(row);
    }
    t
}

pub fn profiles_table(profiles: &[RecoveryProfile], dates: &[NaiveDate]) -> Table {
    let mut header = vec!["episode_id".to_string()];
    header.extend(episode_header());
    header.extend(
        ["provisional", "d_benchmark", "d_portfolio", "r_benchmark", "r_portfolio"].iter().map(|s| s.to_string()),
    );
    header.extend(with_reasons(&["br"]));
    header.extend(
        [
            "underwater_in_window",
            "underwater_in_window_truncated",
            "underwater_extended",
            "underwater_extended_truncated",
        ]
        .iter()
        .map(|s| s.to_string()),
    );
    header.extend(with_reasons(&["uc_recovery", "portfolio_recovery_date"]));
    let mut t = Table::new(header);
    for p in profiles {
        let mut row = vec![p.episode_id.to_string()];
        row.extend(episode_cells(&p.episode, dates));
        row.extend([
            p.truncated.to_string(),
            num(p.d_benchmark),
            num(p.d_portfolio),
            num(p.r_benchmark),
            num(p.r_portfolio),
        ]);
        row.extend(metric_cells(p.br));
        row.extend([
            p.underwater.periods.to_string(),
            p.underwater.truncated.to_string(),
            p.underwater_extended.periods.to_string(),
            p.underwater_extended.truncated.to_string(),
        ]);
        row.extend(metric_cells(p.uc_recovery));
        let reason = if p.underwater.periods == 0 && p.underwater_extended.periods == 0 {
            date_reason::NOT_SUBMERGED
        } else {
            date_reason::UNRESOLVED
        };
        row.extend(date_cells(p.portfolio_recovery_index.map(|i| dates[i]), reason));
        t.push(row);
    }
    t
}

fn costs_table(c: &Costs) -> Table {
    let mut t = Table::new(["status", "turnover", "tracking_error", "mean_exposure"]);
    match c {
        Costs::Supplied(d) => {
            t.push(vec!["supplied".into(), num(d.turnover), num(d.tracking_error), num(d.mean_exposure)]);
        }
        Costs::DeclaredUnavailable => {
            t.push(vec!["declared_unavailable".into(), String::new(), String::new(), String::new()]);
        }
    }
    t
}

/// One row per design: headline summary, capture and cost figures.
pub fn comparisons_table(rows: &[ComparisonRow]) -> Table {
    let mut header: Vec<String> = vec!["label".into(), "rule".into(), "annualized_return".into()];
    header.extend(with_reasons(&["annualized_volatility"]));
    header.extend(["max_drawdown".to_string(), "longest_underwater".to_string()]);
    header.extend(with_reasons(&["uc_geometric", "dc_geometric", "asymmetry", "uc_arithmetic", "dc_arithmetic"]));
    header.extend(["episodes", "turnover", "tracking_error", "mean_exposure"].iter().map(|s| s.to_string()));
    let mut t = Table::new(header);
    for r in rows {
        let mut row = vec![r.label.clone(), r.rule.to_string(), num(r.summary.annualized_return)];
        row.extend(metric_cells(r.summary.annualized_volatility));
        row.extend([num(r.summary.max_drawdown), r.summary.longest_underwater.to_string()]);
        for m in [
            r.capture.uc_geometric,
            r.capture.dc_geometric,
            r.capture.asymmetry,
            r.capture.uc_arithmetic,
            r.capture.dc_arithmetic,
        ] {
            row.extend(metric_cells(m));
        }
        row.extend([
            r.profiles.len().to_string(),
            num(r.costs.turnover),
            num(r.costs.tracking_error),
            num(r.costs.mean_exposure),
        ]);
        t.push(row);
    }
    t
}

/// Wealth and drawdown series for external plotting. Row 0 is the implicit
/// starting wealth of 1 and has no date.
pub fn paths_table(dates: &[NaiveDate], portfolio: &WealthPath, benchmark: &WealthPath) -> Table {
    let mut t =
        Table::new(["date", "portfolio_wealth", "portfolio_drawdown", "benchmark_wealth", "benchmark_drawdown"]);
    t.push(vec![String::new(), num(1.0), num(0.0), num(1.0), num(0.0)]);
    for (i, d) in dates.iter().enumerate() {
        t.push(vec![
            date_str(*d),
            num(portfolio.wealth[i]),
            num(portfolio.drawdown[i]),
            num(benchmark.wealth[i]),
            num(benchmark.drawdown[i]),
        ]);
    }
    t
}

fn inputs_table(r: &ProtocolReport) -> Table {
    let i = &r.inputs;
    let mut t = Table::new(["key", "value"]);
    for (k, v) in [
        ("report_version", REPORT_VERSION.to_string()),
        ("benchmark_label", i.benchmark_label.clone()),
        ("strategy_label", i.strategy_label.clone()),
        ("frequency", i.frequency.as_str().to_string()),
        ("periods_per_year", r.full_period.benchmark.periods_per_year.to_string()),
        ("sample_start", date_str(i.sample_start)),
        ("sample_end", date_str(i.sample_end)),
        ("observations", r.dates.len().to_string()),
        ("fee_treatment", i.fee_treatment.clone()),
        ("data_source", i.data_source.clone()),
        ("liquidity_assumptions", i.liquidity_assumptions.clone()),
        ("drawdown_threshold", num(i.drawdown_threshold)),
        ("episode_basis", i.episode_basis.as_str().to_string()),
        ("recovery_constraint", i.recovery_constraint.clone()),
    ] {
        t.push(vec![k.to_string(), v]);
    }
    t
}

/// Section files of a report. Sections the report does not carry are left
/// out, and so is their manifest entry.
pub fn report_bundle(r: &ProtocolReport) -> Bundle {
    let dates = &r.dates;
    let mut sections: Vec<(&str, Table)> = vec![
        ("inputs", inputs_table(r)),
        ("full_period", full_period_table(&r.full_period)),
        ("capture", capture_table(&r.full_period.capture)),
    ];
    if let Some(ps) = &r.benchmark_episodes {
        sections.push(("benchmark_episodes", profiles_table(ps, dates)));
    }
    if let Some(es) = &r.own_episodes {
        sections.push(("own_episodes", episodes_table(es, dates)));
    }
    sections.push(("costs", costs_table(&r.costs)));
    if let Some(rows) = &r.comparisons {
        sections.push(("comparisons", comparisons_table(rows)));
    }
    sections.push(("paths", paths_table(dates, &r.portfolio_path, &r.benchmark_path)));

    let mut manifest = Table::new(["section", "file", "rows"]);
    let mut files = Vec::with_capacity(sections.len() + 1);
    for (name, table) in &sections {
        let file = format!("{name}.csv");
        manifest.push(vec![name.to_string(), file.clone(), table.len().to_string()]);
        files.push((file, table.to_text()));
    }
    files.insert(0, (MANIFEST.to_string(), manifest.to_text()));
    Bundle { files }
}
