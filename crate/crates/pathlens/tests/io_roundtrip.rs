mod common;

use common::{month_ends, monthly};
use pathlens::io::{load_csv, read_csv, write_csv};
use pathlens::Error;
use pathlens_core::Frequency;
use proptest::prelude::*;
use std::path::Path;

fn decimal() -> impl Strategy<Value = String> {
    (any::<bool>(), 0u64..3, 0u64..10_000_000_000, 0usize..=10).prop_map(|(neg, int, frac, digits)| {
        let frac = frac % 10u64.pow(digits as u32);
        let body = if digits == 0 { format!("{int}") } else { format!("{int}.{frac:0digits$}") };
        if neg && int == 0 {
            format!("-{body}")
        } else {
            body
        }
    })
}

proptest! {
    #[test]
    fn write_then_load_is_bit_exact(texts in prop::collection::vec(decimal(), 1..60)) {
        let dates = month_ends(texts.len());
        let mut input = String::from("date,return\n");
        for (d, t) in dates.iter().zip(&texts) {
            input.push_str(&format!("{},{t}\n", d.format("%Y-%m-%d")));
        }
        let first = read_csv(input.as_bytes(), Path::new("in.csv"), "s", Frequency::Monthly).unwrap();
        for (o, t) in first.observations().iter().zip(&texts) {
            prop_assert_eq!(o.ret.to_bits(), t.parse::<f64>().unwrap().to_bits());
        }
        let mut out = Vec::new();
        write_csv(&first, &mut out).unwrap();
        let second = read_csv(out.as_slice(), Path::new("out.csv"), "s", Frequency::Monthly).unwrap();
        prop_assert_eq!(first.observations(), second.observations());
        let mut again = Vec::new();
        write_csv(&second, &mut again).unwrap();
        prop_assert_eq!(out, again);
    }
}

#[test]
fn file_round_trip_uses_the_stem_as_label() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fund_a.csv");
    let s = monthly("x", &[0.0123456789, -0.5, 0.0]);
    write_csv(&s, std::fs::File::create(&path).unwrap()).unwrap();
    let loaded = load_csv(&path, Frequency::Monthly).unwrap();
    assert_eq!(loaded.label(), "fund_a");
    assert_eq!(loaded.observations(), s.observations());
}

#[test]
fn duplicate_dates_are_invalid() {
    let text = "date,return\n2020-01-31,0.01\n2020-01-31,0.02\n";
    let err = read_csv(text.as_bytes(), Path::new("dup.csv"), "d", Frequency::Monthly).unwrap_err();
    assert!(matches!(err, Error::Invalid { .. }), "{err:?}");
    assert!(err.to_string().starts_with("dup.csv"));
}

#[test]
fn missing_file_names_the_path() {
    let err = load_csv(Path::new("/nonexistent/none.csv"), Frequency::Monthly).unwrap_err();
    assert_eq!(err.exit_code(), 1);
    assert!(err.to_string().contains("/nonexistent/none.csv"));
}
