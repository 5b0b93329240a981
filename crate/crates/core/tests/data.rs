mod common;

use std::fs;

use common::data_path;
use infoeq::grid::linspace;
use infoeq::timeseries::{align, load_csv, loess_smooth, CsvSchema, LoessConfig};

const SNAPSHOTS: [&str; 9] = [
    "gdp_us.csv",
    "mbcurrcir_us.csv",
    "ambsl_us.csv",
    "pcepilfe_us.csv",
    "gs10_us.csv",
    "tb3ms_us.csv",
    "cpilfesl_us.csv",
    "hours_us.csv",
    "rknanpusa_us.csv",
];

fn declared_rows(file: &str) -> usize {
    let text = fs::read_to_string(data_path(file)).unwrap();
    text.lines()
        .find_map(|l| l.strip_prefix("# rows:"))
        .map(|r| r.trim().parse().unwrap())
        .unwrap()
}

#[test]
fn snapshots_load_with_declared_row_counts() {
    for file in SNAPSHOTS {
        let ts = load_csv(data_path(file), &CsvSchema::default()).unwrap();
        assert_eq!(ts.len(), declared_rows(file), "{file}");
        assert!(ts.values().iter().all(|v| *v > 0.0), "{file}");
    }
    assert_eq!(declared_rows("gdp_us.csv"), 273);
}

#[test]
fn gdp_and_currency_align_on_annual_grid() {
    let gdp = load_csv(data_path("gdp_us.csv"), &CsvSchema::default()).unwrap();
    let cur = load_csv(data_path("mbcurrcir_us.csv"), &CsvSchema::default()).unwrap();
    let grid = linspace(1960.0, 2014.0, 55).unwrap();
    let rows = align(&gdp, &cur, &grid).unwrap();
    assert_eq!(rows.len(), 55);
    assert!(rows.iter().all(|&(_, n, m)| n > m));
}

#[test]
fn smoothing_preserves_row_count() {
    let gdp = load_csv(data_path("gdp_us.csv"), &CsvSchema::default()).unwrap();
    let smooth = loess_smooth(&gdp, &LoessConfig::default()).unwrap();
    assert_eq!(smooth.len(), gdp.len());
    assert_eq!(smooth.times(), gdp.times());
}

#[test]
fn saved_series_reload_exactly() {
    let gdp = load_csv(data_path("gdp_us.csv"), &CsvSchema::default()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gdp.csv");
    gdp.save_csv(&path).unwrap();
    let back = load_csv(&path, &CsvSchema::default()).unwrap();
    assert_eq!(back.times(), gdp.times());
    assert_eq!(back.values(), gdp.values());
}

#[test]
fn missing_file_is_an_io_error() {
    let err = load_csv(data_path("no_such_series.csv"), &CsvSchema::default()).unwrap_err();
    assert!(matches!(err, infoeq::Error::Io { .. }));
}
