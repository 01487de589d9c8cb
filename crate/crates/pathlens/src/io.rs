//! `date,return` CSV files.
//!
//! Dates are `YYYY-MM-DD`; returns are decimal fractions parsed once with
//! Rust's locale-independent float parser. Rows may arrive in any order and
//! are sorted by date before validation.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use chrono::NaiveDate;
use pathlens_core::{Frequency, Observation, ReturnSeries};

use crate::error::{Error, Result};

const DATE_FORMAT: &str = "%Y-%m-%d";

pub fn load_csv(path: &Path, frequency: Frequency) -> Result<ReturnSeries> {
    let file = File::open(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    let label = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    read_csv(file, path, &label, frequency)
}

fn parse_rows<R: Read>(reader: R, path: &Path, header: [&str; 2]) -> Result<Vec<(u64, NaiveDate, f64)>> {
    let parse_err = |line: u64, message: String| Error::Parse { path: path.to_path_buf(), line, message };
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(reader);
    let found = rdr.headers().map_err(|e| parse_err(1, e.to_string()))?.clone();
    if found.len() != 2 || found.get(0) != Some(header[0]) || found.get(1) != Some(header[1]) {
        return Err(parse_err(1, format!("expected header `{},{}`", header[0], header[1])));
    }
    let mut rows = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_err(line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let date = NaiveDate::parse_from_str(&record[0], DATE_FORMAT)
            .map_err(|e| parse_err(line, format!("bad date `{}`: {e}", &record[0])))?;
        let value: f64 = record[1].parse().map_err(|_| parse_err(line, format!("bad number `{}`", &record[1])))?;
        if !value.is_finite() {
            return Err(parse_err(line, format!("non-finite value `{}`", &record[1])));
        }
        rows.push((line, date, value));
    }
    Ok(rows)
}

pub fn read_csv<R: Read>(reader: R, path: &Path, label: &str, frequency: Frequency) -> Result<ReturnSeries> {
    let rows = parse_rows(reader, path, ["date", "return"])?;
    if let Some(&(line, date, ret)) = rows.iter().find(|r| r.2 <= -1.0) {
        return Err(Error::Parse {
            path: path.to_path_buf(),
            line,
            message: format!("return {ret} on {date} is not above -1"),
        });
    }
    let obs = rows.into_iter().map(|(_, date, ret)| Observation { date, ret }).collect();
    ReturnSeries::from_unsorted(label, frequency, obs)
        .map_err(|source| Error::Invalid { path: path.to_path_buf(), source })
}

/// Writes `date,return` with the shortest representation that parses back
/// to the same `f64`.
pub fn write_csv<W: Write>(series: &ReturnSeries, writer: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["date", "return"])?;
    for o in series.observations() {
        w.write_record([o.date.format(DATE_FORMAT).to_string(), o.ret.to_string()])?;
    }
    w.flush()
}

/// `date,exposure` file aligned to `dates`; used to derive design costs.
pub fn load_exposure(path: &Path, dates: &[NaiveDate]) -> Result<Vec<f64>> {
    let file = File::open(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    let mut rows = parse_rows(file, path, ["date", "exposure"])?;
    rows.sort_by_key(|r| r.1);
    let found: Vec<NaiveDate> = rows.iter().map(|r| r.1).collect();
    if found != dates {
        return Err(Error::Parse {
            path: path.to_path_buf(),
            line: 0,
            message: format!("exposure dates must match the aligned series ({} rows expected)", dates.len()),
        });
    }
    Ok(rows.into_iter().map(|r| r.2).collect())
}
