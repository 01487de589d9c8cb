#![allow(dead_code)]

use std::path::Path;

use chrono::{Months, NaiveDate};
use pathlens::render::DATE_REASONS;
use pathlens_core::{
    align, build_report, compare_designs, design_costs, AlignMode, AlignedPair, EpisodeBasis, ExposureRule, Frequency,
    ProtocolInputs, ProtocolReport, Reason, ReturnSeries,
};
use rand::Rng;
use serde_json::Value;

pub const E1_BENCHMARK: [f64; 5] = [0.10, -0.20, 0.05, 0.10, 0.12];
pub const E1_PORTFOLIO: [f64; 5] = [0.08, -0.10, 0.04, 0.08, 0.09];

/// Month ends from January 2000.
pub fn month_ends(n: usize) -> Vec<NaiveDate> {
    let first = NaiveDate::from_ymd_opt(2000, 2, 1).unwrap();
    (0..n).map(|i| (first + Months::new(i as u32)).pred_opt().unwrap()).collect()
}

pub fn monthly(label: &str, rets: &[f64]) -> ReturnSeries {
    ReturnSeries::from_parts(label, Frequency::Monthly, &month_ends(rets.len()), rets).unwrap()
}

pub fn pair(p: &[f64], b: &[f64]) -> AlignedPair {
    align(&monthly("portfolio", p), &monthly("benchmark", b), AlignMode::Strict).unwrap()
}

pub fn write_series(path: &Path, rets: &[f64]) {
    let mut text = String::from("date,return\n");
    for (d, r) in month_ends(rets.len()).iter().zip(rets) {
        text.push_str(&format!("{},{r}\n", d.format("%Y-%m-%d")));
    }
    std::fs::write(path, text).unwrap();
}

/// A report with randomly chosen length, volatility, episode basis, costs
/// and comparisons. Some draws use flat or constant legs so that undefined
/// metrics show up.
pub fn random_report(rng: &mut impl Rng) -> ProtocolReport {
    let n = rng.gen_range(1..=120);
    let scale = [0.001, 0.03, 0.1][rng.gen_range(0..3)];
    let mut b: Vec<f64> = (0..n).map(|_| rng.gen_range(-scale..=scale)).collect();
    let mut p: Vec<f64> = (0..n).map(|_| rng.gen_range(-scale..=scale)).collect();
    match rng.gen_range(0..6) {
        0 => p.iter_mut().for_each(|r| *r = 0.004),
        1 => b.iter_mut().for_each(|r| *r = if rng.gen_bool(0.5) { 0.0 } else { *r * 1e-5 }),
        2 => p.clone_from(&b),
        _ => {}
    }
    let pair = pair(&p, &b);
    let mut inputs = ProtocolInputs::for_pair(&pair, rng.gen_range(0.01..0.3));
    inputs.episode_basis =
        [EpisodeBasis::Both, EpisodeBasis::BenchmarkDefined, EpisodeBasis::PortfolioDefined][rng.gen_range(0..3)];
    inputs.fee_treatment = "net of fees".into();
    let costs = if n >= 2 && rng.gen_bool(0.5) {
        let w: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.5)).collect();
        Some(design_costs(&pair, &w).unwrap())
    } else {
        None
    };
    let comparisons = if n >= 4 && rng.gen_bool(0.5) {
        let rules = vec![
            ("half".to_string(), ExposureRule::Constant { weight: 0.5 }),
            ("vt".to_string(), ExposureRule::VolTarget { target_vol: 0.1, lookback: 3, cap: 1.5 }),
        ];
        Some(compare_designs(pair.benchmark(), &rules, inputs.drawdown_threshold).unwrap())
    } else {
        None
    };
    build_report(&pair, inputs, costs, comparisons).unwrap()
}

/// Paths (as `a.b[3].c`) of null values lacking a valid `<key>_reason`
/// sibling.
pub fn unexplained_nulls(v: &Value) -> Vec<String> {
    fn walk(v: &Value, at: &str, out: &mut Vec<String>) {
        match v {
            Value::Object(map) => {
                for (k, child) in map {
                    let here = format!("{at}.{k}");
                    if child.is_null() {
                        let ok = map
                            .get(&format!("{k}_reason"))
                            .and_then(Value::as_str)
                            .is_some_and(|r| Reason::from_code(r).is_some() || DATE_REASONS.contains(&r));
                        if !ok {
                            out.push(here.clone());
                        }
                    }
                    walk(child, &here, out);
                }
            }
            Value::Array(items) => {
                for (i, child) in items.iter().enumerate() {
                    walk(child, &format!("{at}[{i}]"), out);
                }
            }
            _ => {}
        }
    }
    let mut out = Vec::new();
    walk(v, "$", &mut out);
    out
}

pub fn schema_validator() -> jsonschema::Validator {
    let schema: Value = serde_json::from_str(pathlens::render::json::REPORT_SCHEMA).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

pub fn schema_errors(validator: &jsonschema::Validator, doc: &Value) -> Vec<String> {
    validator.iter_errors(doc).map(|e| format!("{} at {}", e, e.instance_path)).collect()
}
