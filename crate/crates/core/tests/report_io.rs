use posroot::criterion::{certify_moment, emit_report};
use posroot::scalars::rat;
use posroot::{CertificateReport, CertifyConfig, FunctionSpec, LambdaPolicy, ReportFormat};

fn report() -> CertificateReport {
    let cfg = CertifyConfig::default().with_grid(6);
    certify_moment(
        &FunctionSpec::bessel(rat(1, 1)).unwrap(),
        &cfg,
        &LambdaPolicy::ZeroTable,
    )
    .unwrap()
}

#[test]
fn json_and_csv_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bessel.json");
    let files = emit_report(&report(), ReportFormat::Both, &path).unwrap();
    assert_eq!(
        files,
        vec![
            dir.path().join("bessel.json"),
            dir.path().join("bessel.csv")
        ]
    );

    let text = std::fs::read_to_string(&files[0]).unwrap();
    assert_eq!(CertificateReport::from_json(&text).unwrap(), report());
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    for key in [
        "function",
        "mode",
        "lambda",
        "rho",
        "grid_bound",
        "precision_bits",
        "cells",
        "verdict",
        "failures",
        "metadata",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["schema"], 1);
    assert!(v["statement"]
        .as_str()
        .unwrap()
        .contains("bounded certificate to j+k <= 6"));

    let csv = std::fs::read_to_string(&files[1]).unwrap();
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows.len(), 8);
    assert_eq!(rows[0], "j,k0,k1,k2,k3,k4,k5,k6");
    for (j, row) in rows[1..].iter().enumerate() {
        assert_eq!(row.split(',').count(), 1 + 7 - j);
        assert!(row.split(',').skip(1).all(|c| c.ends_with(":N")));
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    emit_report(&report(), ReportFormat::Json, &a).unwrap();
    emit_report(&report(), ReportFormat::Json, &b).unwrap();
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}
