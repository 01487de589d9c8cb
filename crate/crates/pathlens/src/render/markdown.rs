//! Markdown tables. Returns, drawdowns and capture ratios print as
//! percentages with one decimal place.

use std::fmt::Write as _;

use chrono::NaiveDate;
use pathlens_core::{
    CaptureStats, ComparisonRow, Costs, Episode, Metric, ProtocolReport, RecoveryProfile, RecoveryRow, REPORT_VERSION,
};

use super::{date_reason, date_str, opt_date_str, pct, pct_metric, RenderOptions};

struct Md {
    header: Vec<String>,
    align_right: Vec<bool>,
    rows: Vec<Vec<String>>,
}

impl Md {
    /// Columns whose name starts with `>` are right-aligned.
    fn new(columns: &[&str]) -> Self {
        Self {
            header: columns.iter().map(|c| c.trim_start_matches('>').to_string()).collect(),
            align_right: columns.iter().map(|c| c.starts_with('>')).collect(),
            rows: Vec::new(),
        }
    }

    fn row(&mut self, cells: Vec<String>) {
        assert_eq!(cells.len(), self.header.len(), "row width");
        self.rows.push(cells);
    }

    fn render(&self, out: &mut String) {
        let line = |out: &mut String, cells: &[String]| {
            out.push('|');
            for c in cells {
                let _ = write!(out, " {} |", c.replace('|', "\\|"));
            }
            out.push('\n');
        };
        line(out, &self.header);
        out.push('|');
        for &right in &self.align_right {
            out.push_str(if right { "---:|" } else { "---|" });
        }
        out.push('\n');
        for r in &self.rows {
            line(out, r);
        }
    }
}

fn ratio(m: Metric) -> String {
    match m {
        Metric::Value(v) => format!("{v:.2}"),
        Metric::Undefined(r) => format!("n/a ({r})"),
    }
}

fn or_none(s: &str) -> &str {
    if s.is_empty() {
        "(not stated)"
    } else {
        s
    }
}

pub fn recovery_table(rows: &[RecoveryRow]) -> String {
    let mut t = Md::new(&[">Drawdown depth", ">Portfolio value after drawdown", ">Required recovery return"]);
    for r in rows {
        t.row(vec![pct(r.depth), format!("{:.2}", r.value_after), pct(r.required)]);
    }
    let mut out = String::new();
    t.render(&mut out);
    out
}

fn capture_into(out: &mut String, c: &CaptureStats) {
    let mut t = Md::new(&["Measure", ">Upside", ">Downside", ">Asymmetry"]);
    t.row(vec![
        "Geometric capture".into(),
        pct_metric(c.uc_geometric),
        pct_metric(c.dc_geometric),
        pct_metric(c.asymmetry),
    ]);
    t.row(vec![
        "Arithmetic capture".into(),
        pct_metric(c.uc_arithmetic),
        pct_metric(c.dc_arithmetic),
        pct_metric(c.asymmetry_arithmetic),
    ]);
    t.row(vec!["Growth factor ratio".into(), ratio(c.growth_factor_up), ratio(c.growth_factor_down), String::new()]);
    t.row(vec!["Periods".into(), c.n_plus.to_string(), c.n_minus.to_string(), format!("{} flat", c.n_zero)]);
    t.render(out);
}

pub fn capture(c: &CaptureStats) -> String {
    let mut out = String::new();
    capture_into(&mut out, c);
    out
}

fn episodes_into(out: &mut String, episodes: &[Episode], dates: &[NaiveDate]) {
    if episodes.is_empty() {
        out.push_str("No episodes at this threshold.\n");
        return;
    }
    let mut t = Md::new(&[">#", "Peak", "Trough", "Recovery", ">Depth", ">Underwater periods"]);
    for (k, e) in episodes.iter().enumerate() {
        let mut under = e.underwater_periods.to_string();
        if e.truncated {
            under.push_str(" (provisional)");
        }
        t.row(vec![
            (k + 1).to_string(),
            opt_date_str(e.peak_index.map(|i| dates[i]), date_reason::INCEPTION),
            date_str(dates[e.trough_index]),
            opt_date_str(e.recovery_index.map(|i| dates[i]), date_reason::UNRESOLVED),
            pct(e.depth),
            under,
        ]);
    }
    t.render(out);
}

pub fn episodes(episodes: &[Episode], dates: &[NaiveDate]) -> String {
    let mut out = String::new();
    episodes_into(&mut out, episodes, dates);
    out
}

fn profiles_into(out: &mut String, profiles: &[RecoveryProfile], dates: &[NaiveDate], opts: RenderOptions) {
    if profiles.is_empty() {
        out.push_str("No benchmark episodes at this threshold.\n");
        return;
    }
    let mut cols = vec![
        ">#",
        "Peak",
        "Trough",
        "Recovery",
        ">Benchmark depth",
        ">Portfolio depth",
        ">Burden reduction",
        ">Portfolio underwater",
    ];
    if opts.extended_underwater {
        cols.push(">Underwater (extended)");
    }
    cols.push(">Recovery upside capture");
    let mut t = Md::new(&cols);
    for p in profiles {
        let e = &p.episode;
        let mut under = p.underwater.periods.to_string();
        if p.underwater.truncated {
            under.push_str(" (provisional)");
        }
        let mut row = vec![
            p.episode_id.to_string(),
            opt_date_str(e.peak_index.map(|i| dates[i]), date_reason::INCEPTION),
            date_str(dates[e.trough_index]),
            opt_date_str(e.recovery_index.map(|i| dates[i]), date_reason::UNRESOLVED),
            pct(p.d_benchmark),
            pct(p.d_portfolio),
            pct_metric(p.br),
            under,
        ];
        if opts.extended_underwater {
            let mut ext = p.underwater_extended.periods.to_string();
            if p.underwater_extended.truncated {
                ext.push_str(" (provisional)");
            }
            row.push(ext);
        }
        row.push(pct_metric(p.uc_recovery));
        t.row(row);
    }
    t.render(out);
}

pub fn profiles(profiles: &[RecoveryProfile], dates: &[NaiveDate], opts: RenderOptions) -> String {
    let mut out = String::new();
    profiles_into(&mut out, profiles, dates, opts);
    out
}

fn comparisons_into(out: &mut String, rows: &[ComparisonRow]) {
    let mut t = Md::new(&[
        "Design",
        "Rule",
        ">Annualized return",
        ">Annualized volatility",
        ">Max drawdown",
        ">Longest underwater",
        ">Upside capture",
        ">Downside capture",
        ">Asymmetry",
        ">Turnover",
        ">Tracking error",
        ">Mean exposure",
    ]);
    for r in rows {
        t.row(vec![
            r.label.clone(),
            r.rule.to_string(),
            pct(r.summary.annualized_return),
            pct_metric(r.summary.annualized_volatility),
            pct(r.summary.max_drawdown),
            r.summary.longest_underwater.to_string(),
            pct_metric(r.capture.uc_geometric),
            pct_metric(r.capture.dc_geometric),
            pct_metric(r.capture.asymmetry),
            pct(r.costs.turnover),
            pct(r.costs.tracking_error),
            format!("{:.2}", r.costs.mean_exposure),
        ]);
    }
    t.render(out);
}

pub fn comparisons(rows: &[ComparisonRow]) -> String {
    let mut out = String::new();
    comparisons_into(&mut out, rows);
    out
}

pub fn report(r: &ProtocolReport, opts: RenderOptions) -> String {
    let i = &r.inputs;
    let f = &r.full_period;
    let mut out = String::new();
    let _ = writeln!(out, "# Recovery-efficiency report\n\nReport version {REPORT_VERSION}.\n");

    out.push_str("## 1. Protocol inputs\n\n");
    let mut t = Md::new(&["Input", "Value"]);
    for (k, v) in [
        ("Benchmark", i.benchmark_label.clone()),
        ("Strategy", i.strategy_label.clone()),
        ("Frequency", format!("{} ({} periods per year)", i.frequency, f.benchmark.periods_per_year)),
        (
            "Sample",
            format!("{} to {} ({} observations)", date_str(i.sample_start), date_str(i.sample_end), r.dates.len()),
        ),
        ("Fee treatment", or_none(&i.fee_treatment).to_string()),
        ("Data source", or_none(&i.data_source).to_string()),
        ("Liquidity assumptions", or_none(&i.liquidity_assumptions).to_string()),
        ("Drawdown threshold", pct(i.drawdown_threshold)),
        ("Episode basis", i.episode_basis.as_str().to_string()),
    ] {
        t.row(vec![k.to_string(), v]);
    }
    t.render(&mut out);

    out.push_str("\n## 2. Full-period profile\n\n");
    let mut t = Md::new(&["Measure", ">Portfolio", ">Benchmark"]);
    let (p, b) = (&f.portfolio, &f.benchmark);
    t.row(vec!["Annualized return".into(), pct(p.annualized_return), pct(b.annualized_return)]);
    t.row(vec![
        "Annualized volatility".into(),
        pct_metric(p.annualized_volatility),
        pct_metric(b.annualized_volatility),
    ]);
    t.row(vec!["Maximum drawdown".into(), pct(p.max_drawdown), pct(b.max_drawdown)]);
    t.row(vec![
        "Longest underwater (periods)".into(),
        p.longest_underwater.to_string(),
        b.longest_underwater.to_string(),
    ]);
    t.row(vec!["Skewness".into(), ratio(p.skewness), ratio(b.skewness)]);
    t.row(vec!["Terminal wealth".into(), format!("{:.2}", p.terminal_wealth), format!("{:.2}", b.terminal_wealth)]);
    t.render(&mut out);
    out.push('\n');
    capture_into(&mut out, &f.capture);
    let _ = writeln!(out, "\nCoskewness with the benchmark: {}.", ratio(f.coskewness));

    out.push_str("\n## 3. Benchmark drawdown episodes\n\n");
    match &r.benchmark_episodes {
        Some(ps) => profiles_into(&mut out, ps, &r.dates, opts),
        None => out.push_str("Not requested (episode basis excludes this view).\n"),
    }

    out.push_str("\n## 4. Portfolio submergence episodes\n\n");
    match &r.own_episodes {
        Some(es) => episodes_into(&mut out, es, &r.dates),
        None => out.push_str("Not requested (episode basis excludes this view).\n"),
    }

    out.push_str("\n## 5. Cost of the design\n\n");
    match &r.costs {
        Costs::Supplied(c) => {
            let mut t = Md::new(&["Cost", ">Value"]);
            t.row(vec!["Turnover per year".into(), pct(c.turnover)]);
            t.row(vec!["Tracking error".into(), pct(c.tracking_error)]);
            t.row(vec!["Mean exposure".into(), format!("{:.2}", c.mean_exposure)]);
            t.render(&mut out);
        }
        Costs::DeclaredUnavailable => out.push_str("Declared unavailable.\n"),
    }

    out.push_str("\n## 6. Recovery constraint and design comparison\n\n");
    let _ = writeln!(out, "Recovery constraint: {}.\n", or_none(&i.recovery_constraint));
    match &r.comparisons {
        Some(rows) => comparisons_into(&mut out, rows),
        None => out.push_str("No candidate designs compared.\n"),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_table_layout() {
        let rows = pathlens_core::recovery_table(&[0.05, 0.80]).unwrap();
        assert_eq!(
            recovery_table(&rows),
            "| Drawdown depth | Portfolio value after drawdown | Required recovery return |\n\
             |---:|---:|---:|\n\
             | 5.0% | 0.95 | 5.3% |\n\
             | 80.0% | 0.20 | 400.0% |\n"
        );
    }

    #[test]
    fn pipes_are_escaped() {
        let mut t = Md::new(&["a"]);
        t.row(vec!["x|y".into()]);
        let mut out = String::new();
        t.render(&mut out);
        assert!(out.contains("x\\|y"));
    }
}
