use std::process::{Command, Output};

fn gpatch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gpatch")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn value(text: &str, key: &str) -> f64 {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key} = ")))
        .unwrap_or_else(|| panic!("{key} missing in {text}"))
        .parse()
        .unwrap()
}

const REFERENCE_CFG: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../paper.cfg");

#[test]
fn design_prints_reference_dimensions() {
    let o = gpatch(&["design", "--f0", "280GHz", "--er", "3.5", "--tand", "0.0027", "--h", "50um"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!((value(&text, "W_um") - 356.9).abs() < 0.05);
    assert!((value(&text, "L_um") - 262.2).abs() < 0.05);
}

#[test]
fn fdtd_check_reports_small_error() {
    let o = gpatch(&["fdtd-check", "--ef", "1.2eV", "--tau", "1.2ps", "--resolution", "200"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(value(&stdout(&o), "max_error") < 0.01);
}

#[test]
fn usage_errors_exit_1() {
    let o = gpatch(&["design", "--bogus"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));

    let o = gpatch(&["design", "--h", "50"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--h"));

    let o = gpatch(&["analyze", "--ef", "5eV"]);
    assert_eq!(o.status.code(), Some(1));

    assert_eq!(gpatch(&["--help"]).status.code(), Some(0));
}

#[test]
fn numerical_failures_exit_2() {
    let o = gpatch(&["resize", "--ef", "0.05eV", "--tau", "1ps"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bracket"));
}

#[test]
fn bad_config_exits_1_and_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    let text = std::fs::read_to_string(REFERENCE_CFG).unwrap().replace("0.3:1.2:0.3 eV", "5 eV");
    std::fs::write(&cfg, text).unwrap();
    let o = gpatch(&["sweep", cfg.to_str().unwrap(), "--out", dir.path().join("x").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("sweep.fermi_level") && err.contains("line 18"), "{err}");
    assert!(!dir.path().join("x_summary.csv").exists());
}

#[test]
fn sweep_writes_csv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let stem = dir.path().join("out/paper");
    let o = gpatch(&["sweep", REFERENCE_CFG, "--out", stem.to_str().unwrap(), "--quiet"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stderr.is_empty());
    let summary = std::fs::read_to_string(dir.path().join("out/paper_summary.csv")).unwrap();
    assert_eq!(summary.lines().count(), 18);
    let o = gpatch(&["sweep", REFERENCE_CFG, "--out", stem.to_str().unwrap(), "--format", "json", "--quiet"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("out/paper.json")).unwrap()).unwrap();
    assert_eq!(doc["spectra"].as_array().unwrap().len(), 17 * 421);
}

#[test]
fn resize_with_reference_note() {
    let o = gpatch(&["resize", "--ef", "1.2eV", "--tau", "1.2ps", "--reference-length", "220um", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let row = &doc[0];
    assert!(row["L_um"].as_f64().unwrap() < 262.0);
    assert_eq!(row["reference_L_um"], 220.0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("reference"));
}

#[test]
fn spp_table_is_csv() {
    let o = gpatch(&["spp", "--ef", "0.3,1.2eV", "--points", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("fermi_eV,tau_ps,freq_GHz,"));
    assert_eq!(text.lines().count(), 1 + 10);
}
