use std::collections::BTreeMap;

use winding_core::curves::{read_path_csv, read_path_from, sample_brownian, shapes, write_path_csv};
use winding_core::measure::{measure_from_field, tails};
use winding_core::winding::{winding_field, write_field_csv, FieldSidecar, GridSpec};
use winding_core::{Error, RngSeed};

#[test]
fn path_csv_round_trip_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("b.csv");
    let path = sample_brownian(1000, RngSeed(17)).unwrap();
    write_path_csv(&file, &path).unwrap();
    assert_eq!(read_path_csv(&file).unwrap(), path);
}

#[test]
fn path_csv_errors_name_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.csv");
    let err = read_path_csv(&missing).unwrap_err();
    assert!(matches!(err, Error::Io { .. }));
    assert!(err.to_string().contains("missing.csv"));

    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "t,x,y\n0,0,0\n1,zz,1\n").unwrap();
    let err = read_path_csv(&bad).unwrap_err();
    assert!(err.to_string().contains("bad.csv"), "{err}");

    assert!(read_path_from("a,b,c\n0,0,0\n1,1,1\n".as_bytes()).is_err());
    // decreasing times
    assert!(read_path_from("t,x,y\n0,0,0\n1,1,1\n0.5,2,2\n".as_bytes()).is_err());
}

#[test]
fn field_export_matches_measure() {
    let square = shapes::unit_square();
    let grid = GridSpec::new(-1.0, -1.0, 3.0 / 64.0, 64, 64).unwrap();
    let field = winding_field(&square, grid).unwrap();
    let mut buf = Vec::new();
    write_field_csv(&mut buf, &field).unwrap();

    let mut rdr = csv::Reader::from_reader(buf.as_slice());
    assert_eq!(rdr.headers().unwrap().iter().collect::<Vec<_>>(), ["ix", "iy", "theta"]);
    let mut counts: BTreeMap<i32, u64> = BTreeMap::new();
    let mut rows = 0;
    for rec in rdr.records() {
        let rec = rec.unwrap();
        *counts.entry(rec[2].parse().unwrap()).or_default() += 1;
        rows += 1;
    }
    let sidecar = FieldSidecar::from(&field);
    assert_eq!(rows + sidecar.masked_cells, 64 * 64);
    let json = serde_json::to_string(&sidecar).unwrap();
    let back: FieldSidecar = serde_json::from_str(&json).unwrap();
    assert_eq!(back, sidecar);

    let m = measure_from_field(&field);
    assert_eq!(m.get(1), counts[&1] as f64 * grid.cell_area());
    assert!((m.get(1) - 1.0).abs() <= 4.0 * grid.cell, "{}", m.get(1));
}

#[test]
fn measure_and_tail_csv() {
    let path = shapes::circle(512, 2);
    let field = winding_field(&path, GridSpec::for_path(&path, 256).unwrap()).unwrap();
    let m = measure_from_field(&field);
    let mut buf = Vec::new();
    m.write_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert_eq!(text.lines().next(), Some("n,area"));
    assert!(text.lines().any(|l| l.starts_with("2,")));

    let t = tails(&m, 3);
    let mut buf = Vec::new();
    t.write_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "N,D_plus,D_minus");
    assert_eq!(lines.len(), 4);
    assert!(lines[3].starts_with("3,0"));
}
