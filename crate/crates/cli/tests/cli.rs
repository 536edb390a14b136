use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn octonic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_octonic")).args(args).output().expect("spawn octonic")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn csv_rows(o: &Output) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    let headers = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect();
    (headers, rows)
}

fn column(headers: &[String], name: &str) -> usize {
    headers.iter().position(|h| h == name).unwrap_or_else(|| panic!("missing column {name}"))
}

fn ndjson(path: &Path) -> Vec<Value> {
    std::fs::read_to_string(path).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn verify_all_passes_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("all.ndjson");
    let o = octonic(&["verify", "all", "--json", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let lines = ndjson(&path);
    assert_eq!(lines[0]["type"], "header");
    assert!(lines.iter().filter(|l| l["type"] == "check").all(|l| l["status"] != "fail"));
    assert_eq!(lines.last().unwrap()["failed"], 0);
    assert!(stdout(&o).contains("0 failed"));
}

#[test]
fn injected_table_fault_fails_with_counterexample() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fault.ndjson");
    let o = octonic(&["verify", "algebra", "--inject-fault", "j,K", "--json", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let failed: Vec<Value> = ndjson(&path).into_iter().filter(|l| l["status"] == "fail").collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|l| l["counterexample"].is_object()));
    let names_pair = |l: &Value| {
        let t: Vec<&str> = l["counterexample"]["triple"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
        t.windows(2).any(|w| w == ["j", "K"])
    };
    assert!(failed.iter().any(names_pair));
}

#[test]
fn eigen_report_carries_anchors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("eigen.ndjson");
    let o = octonic(&["verify", "eigen", "--json", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let checks: Vec<Value> = ndjson(&path).into_iter().filter(|l| l["type"] == "check").collect();
    assert!(checks.iter().any(|c| c["id"].as_str().unwrap().starts_with("eigen.idempotent-product")));
    assert!(checks.iter().all(|c| c["anchor"].as_str().is_some_and(|a| !a.is_empty())));
}

#[test]
fn report_defaults_to_out_dir_env() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_octonic"))
        .args(["verify", "operators"])
        .env("OCTONIC_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(dir.path().join("verify-operators.ndjson").exists());
}

#[test]
fn same_seed_gives_identical_reports() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.ndjson");
    let b = dir.path().join("b.ndjson");
    octonic(&["verify", "representations", "--seed", "7", "--json", a.to_str().unwrap()]);
    octonic(&["verify", "representations", "--seed", "7", "--sequential", "--json", b.to_str().unwrap()]);
    let strip = |p: &Path| ndjson(p).into_iter().filter(|l| l["type"] != "header").collect::<Vec<_>>();
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn unknown_suite_is_a_usage_error() {
    assert_eq!(octonic(&["verify", "nonsense"]).status.code(), Some(2));
}

#[test]
fn spectrum_defaults_match_closed_form() {
    let o = octonic(&["spectrum"]);
    assert_eq!(o.status.code(), Some(0));
    let (h, rows) = csv_rows(&o);
    let e = column(&h, "energy[energy]");
    let got: Vec<f64> = rows.iter().map(|r| r[e].parse().unwrap()).collect();
    assert_eq!(got, vec![1.0, 0.0, 2.0, 1.0, 3.0, 2.0]);
}

#[test]
fn relativistic_spectrum_row() {
    let o = octonic(&["spectrum", "--relativistic", "--nmax", "0"]);
    let (h, rows) = csv_rows(&o);
    let e: f64 = rows[0][column(&h, "energy[energy]")].parse().unwrap();
    assert!((e - 3f64.sqrt()).abs() < 1e-12);
}

#[test]
fn spectrum_oracle_agrees() {
    let o = octonic(&["spectrum", "--with-oracle", "--nmax", "3", "-B", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let (h, rows) = csv_rows(&o);
    let r = column(&h, "relative_error[1]");
    assert_eq!(rows.len(), 8);
    for row in &rows {
        assert!(row[r].parse::<f64>().unwrap() <= 1e-4);
    }
}

#[test]
fn spectrum_oracle_level_cap() {
    assert_eq!(octonic(&["spectrum", "--with-oracle", "--nmax", "10"]).status.code(), Some(0));
    assert_eq!(octonic(&["spectrum", "--with-oracle", "--nmax", "11"]).status.code(), Some(2));
}

#[test]
fn dispersion_at_rest_has_fourfold_roots() {
    let o = octonic(&["dispersion", "--p-steps", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let (h, rows) = csv_rows(&o);
    let (lo, hi) = (column(&h, "root_minus[energy]"), column(&h, "root_plus[energy]"));
    let (nl, nh) = (column(&h, "nullity_minus"), column(&h, "nullity_plus"));
    assert_eq!(rows.len(), 10);
    for row in &rows {
        assert!((row[lo].parse::<f64>().unwrap() + 1.0).abs() < 1e-10);
        assert!((row[hi].parse::<f64>().unwrap() - 1.0).abs() < 1e-10);
        assert_eq!((row[nl].as_str(), row[nh].as_str()), ("4", "4"));
    }
}

#[test]
fn dispersion_variants_agree_along_grid() {
    let o = octonic(&["dispersion", "--direction", "1,-2,0.5", "--p-max", "2.5", "--p-steps", "5", "-m", "0.7"]);
    assert_eq!(o.status.code(), Some(0));
    let (h, rows) = csv_rows(&o);
    let (px, hi, ok) = (column(&h, "p_x[momentum]"), column(&h, "root_plus[energy]"), column(&h, "ok"));
    for group in rows.chunks(10) {
        let first: f64 = group[0][hi].parse().unwrap();
        for row in group {
            assert_eq!(row[px], group[0][px]);
            assert_eq!(row[ok], "true");
            assert!((row[hi].parse::<f64>().unwrap() - first).abs() < 1e-9);
        }
    }
}

#[test]
fn massless_dispersion_is_light_cone() {
    let o = octonic(&["dispersion", "-m", "0", "--p-max", "2", "--p-steps", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let (h, rows) = csv_rows(&o);
    let (px, hi) = (column(&h, "p_x[momentum]"), column(&h, "expected_root[energy]"));
    for row in &rows {
        let p: f64 = row[px].parse().unwrap();
        assert!((row[hi].parse::<f64>().unwrap() - p.abs()).abs() < 1e-12);
    }
}

#[test]
fn unknown_variant_is_a_usage_error() {
    assert_eq!(octonic(&["dispersion", "--variant", "nope"]).status.code(), Some(2));
}

fn fields_json(args: &[&str]) -> Value {
    let mut all = vec!["fields"];
    all.extend_from_slice(args);
    let o = octonic(&all);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn rest_state_fields_vanish_on_shell() {
    let v = fields_json(&[]);
    assert_eq!(v["on_shell"], true);
    assert_eq!(v["fields_zero"], true);
    assert!(v["residual_norms"]["max"].as_f64().unwrap() < 1e-12);
}

#[test]
fn off_shell_state_leaves_residual() {
    let v = fields_json(&["--energy", "2"]);
    assert_eq!(v["on_shell"], false);
    assert!(v["residual_norms"]["max"].as_f64().unwrap() > 1.0);
}

#[test]
fn nullspace_amplitudes_give_zero_fields() {
    for idx in ["0", "3"] {
        let v = fields_json(&["--p", "0.3,-1,0.5", "--nullspace", idx, "--phi", "0.2", "--a", "0.1,0,-0.4"]);
        assert_eq!(v["fields_zero"], true);
        assert!(v["residual_norms"]["max"].as_f64().unwrap() < 1e-10);
    }
}

#[test]
fn non_constant_samples_are_rejected() {
    let o = octonic(&["fields", "--phi-samples", "0,0.5,1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("constant"));
    assert_eq!(fields_json(&["--phi-samples", "0.5,0.5"])["on_shell"], true);
}
