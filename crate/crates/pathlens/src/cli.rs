//! Command-line front end.
//!
//! Exit codes: 0 success, 1 input or validation failure, 2 usage or
//! configuration error. Only the artifact goes to stdout; diagnostics go
//! to stderr.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use pathlens_core::{
    align, build_report, capture_stats, compare_designs, design_costs, recovery_profiles, recovery_table,
    segment_episodes, wealth_path, AlignMode, AlignedPair, EpisodeBasis, ExposureRule, Frequency, ProtocolInputs,
    ReturnSeries, DEFAULT_THRESHOLD, STANDARD_DEPTHS,
};
use serde_json::Value;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::io::{load_csv, load_exposure};
use crate::render::{csv as rcsv, json, markdown, Format, RenderOptions};

pub const CONFIG_ENV: &str = "PATHLENS_CONFIG";

#[derive(Debug, Parser)]
#[command(name = "pathlens", version, about = "Path-dependent risk diagnostics for return series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Full recovery-efficiency report for a portfolio against a benchmark.
    Analyze(AnalyzeArgs),
    /// Required recovery return for a list of drawdown depths.
    #[command(name = "table-r")]
    TableR(TableArgs),
    /// Drawdown episodes of one series, or benchmark episodes with portfolio diagnostics.
    Episodes(Shared),
    /// Upside and downside capture of a portfolio against a benchmark.
    Capture(Shared),
    /// Compare exposure rules applied to a benchmark.
    Compare(CompareArgs),
}

#[derive(Debug, Args)]
struct Shared {
    #[arg(long, value_name = "CSV")]
    portfolio: Option<PathBuf>,
    #[arg(long, value_name = "CSV")]
    benchmark: Option<PathBuf>,
    /// daily, weekly, monthly or quarterly [default: monthly]
    #[arg(long)]
    frequency: Option<String>,
    /// Episode depth threshold in (0, 1) [default: 0.10]
    #[arg(long, allow_hyphen_values = true)]
    threshold: Option<String>,
    /// json, csv or markdown [default: json]
    #[arg(long)]
    format: Option<String>,
    /// Output file; a directory for the csv report bundle
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Align on the common dates instead of requiring identical dates
    #[arg(long)]
    allow_inner_join: bool,
    /// Also show underwater counts that run past the episode window
    #[arg(long)]
    extended_underwater: bool,
    /// Override the annualization factor
    #[arg(long, value_name = "N")]
    periods_per_year: Option<String>,
    #[arg(long, env = CONFIG_ENV, value_name = "FILE")]
    config: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TableArgs {
    /// Comma-separated depths in [0, 1) [default: the ten standard depths]
    #[arg(long, allow_hyphen_values = true)]
    depths: Option<String>,
    #[command(flatten)]
    shared: Shared,
}

#[derive(Debug, Args)]
struct CompareArgs {
    /// Exposure rule, `constant:W` or `voltarget:TARGET[,LOOKBACK[,CAP]]`; repeatable
    #[arg(long = "rule", value_name = "RULE")]
    rules: Vec<String>,
    #[command(flatten)]
    shared: Shared,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[arg(long)]
    benchmark_label: Option<String>,
    #[arg(long)]
    strategy_label: Option<String>,
    #[arg(long)]
    fee_treatment: Option<String>,
    #[arg(long)]
    data_source: Option<String>,
    #[arg(long)]
    liquidity_assumptions: Option<String>,
    /// benchmark_defined, portfolio_defined or both [default: both]
    #[arg(long)]
    episode_basis: Option<String>,
    #[arg(long)]
    recovery_constraint: Option<String>,
    /// `date,exposure` file used to report the design's costs
    #[arg(long, value_name = "CSV")]
    exposure: Option<PathBuf>,
    /// Candidate exposure rule to compare; repeatable
    #[arg(long = "rule", value_name = "RULE")]
    rules: Vec<String>,
    #[command(flatten)]
    shared: Shared,
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                2
            } else {
                let _ = write!(stdout, "{text}");
                0
            };
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "pathlens: error: {e}");
            e.exit_code()
        }
    }
}

fn execute(command: Command, stdout: &mut dyn Write) -> Result<()> {
    match command {
        Command::TableR(a) => table_r(a, stdout),
        Command::Episodes(s) => episodes(s, stdout),
        Command::Capture(s) => capture(s, stdout),
        Command::Compare(a) => compare(a, stdout),
        Command::Analyze(a) => analyze(a, stdout),
    }
}

/// Flags merged over the config file over defaults.
#[derive(Debug)]
struct Settings {
    config: Config,
    portfolio: Option<PathBuf>,
    benchmark: Option<PathBuf>,
    frequency: Frequency,
    threshold: f64,
    format: Format,
    out: Option<PathBuf>,
    allow_inner_join: bool,
    extended_underwater: bool,
    periods_per_year: Option<u32>,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

fn parse_threshold(s: &str) -> std::result::Result<f64, String> {
    let t: f64 = s.trim().parse().map_err(|_| format!("threshold `{s}` is not a number"))?;
    if t > 0.0 && t < 1.0 {
        Ok(t)
    } else {
        Err(format!("threshold {s} must lie strictly between 0 and 1"))
    }
}

fn parse_bool(s: &str) -> std::result::Result<bool, String> {
    match s.trim() {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        other => Err(format!("expected true or false, got `{other}`")),
    }
}

fn parse_ppy(s: &str) -> std::result::Result<u32, String> {
    match s.trim().parse::<u32>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("periods per year `{s}` must be a positive integer")),
    }
}

fn parse_frequency(s: &str) -> std::result::Result<Frequency, String> {
    s.trim().parse::<Frequency>().map_err(|_| format!("unknown frequency `{s}` (daily, weekly, monthly, quarterly)"))
}

/// A flag value parsed with `parse`, else the config value, else `None`.
fn pick<T>(
    flag: Option<&str>,
    config: &Config,
    key: &str,
    parse: impl Fn(&str) -> std::result::Result<T, String>,
) -> Result<Option<T>> {
    match flag {
        Some(v) => parse(v).map(Some).map_err(|m| usage(format!("--{}: {m}", key.rsplit('.').next().unwrap_or(key)))),
        None => config.get_parsed(key, parse),
    }
}

impl Settings {
    fn resolve(s: Shared) -> Result<Self> {
        let config = match &s.config {
            Some(path) => Config::load(path).map_err(|e| match e {
                Error::Io { path, source } => usage(format!("cannot read config {}: {source}", path.display())),
                other => other,
            })?,
            None => Config::default(),
        };
        let path_of = |flag: Option<PathBuf>, key: &str| flag.or_else(|| config.get(key).map(PathBuf::from));
        let portfolio = path_of(s.portfolio, "input.portfolio");
        let benchmark = path_of(s.benchmark, "input.benchmark");
        let out = path_of(s.out, "output.path");
        let frequency =
            pick(s.frequency.as_deref(), &config, "analysis.frequency", parse_frequency)?.unwrap_or(Frequency::Monthly);
        let threshold =
            pick(s.threshold.as_deref(), &config, "analysis.threshold", parse_threshold)?.unwrap_or(DEFAULT_THRESHOLD);
        let format =
            pick(s.format.as_deref(), &config, "analysis.format", |v| v.trim().parse::<Format>())?.unwrap_or_default();
        let periods_per_year = pick(s.periods_per_year.as_deref(), &config, "series.periods_per_year", parse_ppy)?;
        let allow_inner_join =
            s.allow_inner_join || config.get_parsed("analysis.allow_inner_join", parse_bool)?.unwrap_or(false);
        let extended_underwater =
            s.extended_underwater || config.get_parsed("analysis.extended_underwater", parse_bool)?.unwrap_or(false);
        Ok(Self {
            config,
            portfolio,
            benchmark,
            frequency,
            threshold,
            format,
            out,
            allow_inner_join,
            extended_underwater,
            periods_per_year,
        })
    }

    fn options(&self) -> RenderOptions {
        RenderOptions { extended_underwater: self.extended_underwater }
    }

    fn load(&self, path: &Path) -> Result<ReturnSeries> {
        let series = load_csv(path, self.frequency)?;
        match self.periods_per_year {
            Some(n) => series.with_periods_per_year(n).map_err(|source| Error::Invalid { path: path.into(), source }),
            None => Ok(series),
        }
    }

    fn require<'a>(&self, path: &'a Option<PathBuf>, flag: &str) -> Result<&'a Path> {
        path.as_deref().ok_or_else(|| usage(format!("--{flag} is required")))
    }

    fn load_pair(&self) -> Result<AlignedPair> {
        let portfolio = self.load(self.require(&self.portfolio, "portfolio")?)?;
        let benchmark = self.load(self.require(&self.benchmark, "benchmark")?)?;
        let mode = if self.allow_inner_join { AlignMode::InnerJoin } else { AlignMode::Strict };
        Ok(align(&portfolio, &benchmark, mode)?)
    }

    /// Rules from flags if any were given, else from the config file.
    fn rules(&self, flags: &[String]) -> Result<Vec<(String, ExposureRule)>> {
        let from_config = flags.is_empty();
        let specs: Vec<&str> = if from_config {
            self.config.get_all("scenarios.rule")
        } else {
            flags.iter().map(String::as_str).collect()
        };
        specs
            .into_iter()
            .map(|spec| {
                let rule = parse_rule(spec, self.frequency, &self.config).map_err(|m| {
                    usage(if from_config { format!("config scenarios.rule: {m}") } else { format!("--rule: {m}") })
                })?;
                Ok((spec.trim().to_string(), rule))
            })
            .collect()
    }

    fn emit(&self, stdout: &mut dyn Write, text: &str) -> Result<()> {
        match &self.out {
            Some(path) => write_file(path, text),
            None => stdout.write_all(text.as_bytes()).map_err(|source| Error::Io { path: "<stdout>".into(), source }),
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

/// `constant:W` or `voltarget:TARGET[,LOOKBACK[,CAP]]`. Missing vol-target
/// parameters come from the config file's `voltarget.*` keys, then from the
/// frequency defaults.
pub fn parse_rule(spec: &str, frequency: Frequency, config: &Config) -> std::result::Result<ExposureRule, String> {
    let (kind, params) = spec.trim().split_once(':').unwrap_or((spec.trim(), ""));
    let nums: Vec<&str> =
        if params.trim().is_empty() { Vec::new() } else { params.split(',').map(str::trim).collect() };
    let float = |s: &str| s.parse::<f64>().map_err(|_| format!("`{s}` is not a number in rule `{spec}`"));
    let rule = match kind.trim() {
        "constant" => match nums.as_slice() {
            [w] => ExposureRule::Constant { weight: float(w)? },
            _ => return Err(format!("rule `{spec}`: expected constant:WEIGHT")),
        },
        "voltarget" => {
            if nums.len() > 3 {
                return Err(format!("rule `{spec}`: expected voltarget:TARGET[,LOOKBACK[,CAP]]"));
            }
            let ExposureRule::VolTarget { target_vol, lookback, cap } = ExposureRule::default_vol_target(frequency)
            else {
                unreachable!("default_vol_target returns a vol-target rule")
            };
            let conf_f = |key: &str, default: f64| match config.get(key) {
                Some(v) => v.parse::<f64>().map_err(|_| format!("config {key}: `{v}` is not a number")),
                None => Ok(default),
            };
            let target_vol = match nums.first() {
                Some(s) => float(s)?,
                None => conf_f("voltarget.target_vol", target_vol)?,
            };
            let lookback = match nums.get(1).copied().or(config.get("voltarget.lookback")) {
                Some(s) => s.parse::<usize>().map_err(|_| format!("lookback `{s}` must be a whole number"))?,
                None => lookback,
            };
            let cap = match nums.get(2) {
                Some(s) => float(s)?,
                None => conf_f("voltarget.cap", cap)?,
            };
            ExposureRule::VolTarget { target_vol, lookback, cap }
        }
        other => return Err(format!("unknown rule kind `{other}` (constant, voltarget)")),
    };
    rule.validate().map_err(|e| e.to_string())?;
    Ok(rule)
}

fn parse_depths(s: &str) -> Result<Vec<f64>> {
    let depths = s
        .split(',')
        .map(|d| {
            let v: f64 = d.trim().parse().map_err(|_| usage(format!("--depths: `{}` is not a number", d.trim())))?;
            if (0.0..1.0).contains(&v) {
                Ok(v)
            } else {
                Err(usage(format!("--depths: {v} must lie in [0, 1)")))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    if depths.is_empty() {
        return Err(usage("--depths is empty"));
    }
    Ok(depths)
}

fn table_r(a: TableArgs, stdout: &mut dyn Write) -> Result<()> {
    let s = Settings::resolve(a.shared)?;
    let depths = match a.depths.as_deref() {
        Some(d) => parse_depths(d)?,
        None => STANDARD_DEPTHS.to_vec(),
    };
    let rows = recovery_table(&depths)?;
    let text = match s.format {
        Format::Json => json::to_text(&json::recovery_table_json(&rows)),
        Format::Csv => rcsv::recovery_table(&rows).to_text(),
        Format::Markdown => markdown::recovery_table(&rows),
    };
    s.emit(stdout, &text)
}

fn episodes(shared: Shared, stdout: &mut dyn Write) -> Result<()> {
    let s = Settings::resolve(shared)?;
    let text = if s.portfolio.is_some() && s.benchmark.is_some() {
        let pair = s.load_pair()?;
        let profiles = recovery_profiles(&pair, s.threshold)?;
        let dates = &pair.dates();
        match s.format {
            Format::Json => json::to_text(
                &json::Obj::new()
                    .put("benchmark", pair.benchmark().label())
                    .put("portfolio", pair.portfolio().label())
                    .num("threshold", s.threshold)
                    .put("episodes", Value::Array(profiles.iter().map(|p| json::profile_json(p, dates)).collect()))
                    .build(),
            ),
            Format::Csv => rcsv::profiles_table(&profiles, dates).to_text(),
            Format::Markdown => markdown::profiles(&profiles, dates, s.options()),
        }
    } else {
        let path = match (&s.portfolio, &s.benchmark) {
            (Some(p), None) | (None, Some(p)) => p.clone(),
            _ => return Err(usage("episodes needs --benchmark, --portfolio, or both")),
        };
        let series = s.load(&path)?;
        let episodes = segment_episodes(&wealth_path(&series), s.threshold);
        let dates = series.dates();
        match s.format {
            Format::Json => json::to_text(
                &json::Obj::new()
                    .put("series", series.label())
                    .num("threshold", s.threshold)
                    .put("episodes", Value::Array(episodes.iter().map(|e| json::episode_json(e, &dates)).collect()))
                    .build(),
            ),
            Format::Csv => rcsv::episodes_table(&episodes, &dates).to_text(),
            Format::Markdown => markdown::episodes(&episodes, &dates),
        }
    };
    s.emit(stdout, &text)
}

fn capture(shared: Shared, stdout: &mut dyn Write) -> Result<()> {
    let s = Settings::resolve(shared)?;
    let pair = s.load_pair()?;
    let c = capture_stats(&pair)?;
    let text = match s.format {
        Format::Json => json::to_text(
            &json::Obj::new()
                .put("benchmark", pair.benchmark().label())
                .put("portfolio", pair.portfolio().label())
                .put("capture", json::capture_json(&c))
                .build(),
        ),
        Format::Csv => rcsv::capture_table(&c).to_text(),
        Format::Markdown => markdown::capture(&c),
    };
    s.emit(stdout, &text)
}

fn compare(a: CompareArgs, stdout: &mut dyn Write) -> Result<()> {
    let s = Settings::resolve(a.shared)?;
    let rules = s.rules(&a.rules)?;
    if rules.is_empty() {
        return Err(usage("compare needs at least one --rule"));
    }
    let benchmark = s.load(s.require(&s.benchmark, "benchmark")?)?;
    let rows = compare_designs(&benchmark, &rules, s.threshold)?;
    let dates = benchmark.dates();
    let text = match s.format {
        Format::Json => json::to_text(
            &json::Obj::new()
                .put("benchmark", benchmark.label())
                .put("frequency", benchmark.frequency().as_str())
                .num("threshold", s.threshold)
                .put("designs", json::comparisons_json(&rows, &dates))
                .build(),
        ),
        Format::Csv => rcsv::comparisons_table(&rows).to_text(),
        Format::Markdown => markdown::comparisons(&rows),
    };
    s.emit(stdout, &text)
}

fn analyze(a: AnalyzeArgs, stdout: &mut dyn Write) -> Result<()> {
    let s = Settings::resolve(a.shared)?;
    let pair = s.load_pair()?;
    let text_of = |flag: Option<String>, key: &str| flag.or_else(|| s.config.get(key).map(String::from));

    let mut inputs = ProtocolInputs::for_pair(&pair, s.threshold);
    if let Some(v) = text_of(a.benchmark_label, "protocol.benchmark_label") {
        inputs.benchmark_label = v;
    }
    if let Some(v) = text_of(a.strategy_label, "protocol.strategy_label") {
        inputs.strategy_label = v;
    }
    inputs.fee_treatment = text_of(a.fee_treatment, "protocol.fee_treatment").unwrap_or_default();
    inputs.data_source = text_of(a.data_source, "protocol.data_source").unwrap_or_default();
    inputs.liquidity_assumptions =
        text_of(a.liquidity_assumptions, "protocol.liquidity_assumptions").unwrap_or_default();
    inputs.recovery_constraint = text_of(a.recovery_constraint, "protocol.recovery_constraint").unwrap_or_default();
    let basis = |v: &str| v.trim().parse::<EpisodeBasis>().map_err(|e| e.to_string());
    if let Some(b) = pick(a.episode_basis.as_deref(), &s.config, "protocol.episode_basis", basis)? {
        inputs.episode_basis = b;
    }
    inputs.validate().map_err(|e| usage(e.to_string()))?;

    let costs = match a.exposure.or_else(|| s.config.get("input.exposure").map(PathBuf::from)) {
        Some(path) => {
            let w = load_exposure(&path, &pair.dates())?;
            Some(design_costs(&pair, &w).map_err(|source| Error::Invalid { path, source })?)
        }
        None => None,
    };
    let rules = s.rules(&a.rules)?;
    let comparisons =
        if rules.is_empty() { None } else { Some(compare_designs(pair.benchmark(), &rules, s.threshold)?) };

    let report = build_report(&pair, inputs, costs, comparisons)?;
    match s.format {
        Format::Json => s.emit(stdout, &json::to_text(&json::report_json(&report))),
        Format::Markdown => s.emit(stdout, &markdown::report(&report, s.options())),
        Format::Csv => {
            let bundle = rcsv::report_bundle(&report);
            match &s.out {
                Some(dir) => {
                    std::fs::create_dir_all(dir).map_err(|source| Error::Io { path: dir.clone(), source })?;
                    for (name, body) in &bundle.files {
                        write_file(&dir.join(name), body)?;
                    }
                    Ok(())
                }
                None => s.emit(stdout, &bundle.to_text()),
            }
        }
    }
}
