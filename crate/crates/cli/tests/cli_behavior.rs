//! Contract tests for the CLI: output shapes, exit codes, seeds.

use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn hh() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hh"));
    cmd.env_remove("HH_SEED");
    cmd
}

fn temp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("hh-cli-{}-{name}", std::process::id()));
    p
}

fn read_json(path: &PathBuf) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn family_standard_triangle_has_seven_members_with_common_barycenter() {
    let out = temp_path("family2.json");
    let status = hh()
        .args(["family", "--dim", "2", "--out", out.to_str().unwrap()])
        .status()
        .unwrap();
    assert!(status.success());
    let report = read_json(&out);
    let entries = report["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 7);
    let barycenters: Vec<&Value> = entries.iter().map(|e| &e["barycenter"]).collect();
    for b in &barycenters {
        assert_eq!(*b, barycenters[0]);
    }
    // K={0} leaves the segment (2/3, 0) - (0, 2/3).
    let k0 = entries
        .iter()
        .find(|e| e["k_set"] == serde_json::json!([0]))
        .unwrap();
    let vertices = k0["vertices"].as_array().unwrap();
    assert_eq!(vertices.len(), 2);
    assert!((vertices[0][0].as_f64().unwrap() - 2.0 / 3.0).abs() < 1e-12);
    assert!((vertices[1][1].as_f64().unwrap() - 2.0 / 3.0).abs() < 1e-12);
    std::fs::remove_file(&out).ok();
}

#[test]
fn family_dim_one_collapses_singletons_to_the_midpoint() {
    let out = temp_path("family1.json");
    assert!(hh()
        .args(["family", "--dim", "1", "--out", out.to_str().unwrap()])
        .status()
        .unwrap()
        .success());
    let report = read_json(&out);
    let entries = report["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 3);
    for e in entries.iter().filter(|e| e["cardinality"] == 1) {
        let vertices = e["vertices"].as_array().unwrap();
        assert_eq!(vertices.len(), 1);
        assert!((vertices[0][0].as_f64().unwrap() - 0.5).abs() < 1e-12);
    }
    std::fs::remove_file(&out).ok();
}

#[test]
fn family_dim_six_random_has_all_127_members() {
    let out = temp_path("family6.json");
    assert!(hh()
        .args([
            "family",
            "--dim",
            "6",
            "--simplex",
            "random",
            "--seed",
            "7",
            "--out",
            out.to_str().unwrap(),
        ])
        .status()
        .unwrap()
        .success());
    let report = read_json(&out);
    assert_eq!(report["entries"].as_array().unwrap().len(), 127);
    assert_eq!(report["config"]["seed"], 7);
    std::fs::remove_file(&out).ok();
}

#[test]
fn family_beyond_dim_six_is_a_config_error() {
    let output = hh().args(["family", "--dim", "7"]).output().unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn verify_standard_triangle_passes() {
    let out = temp_path("verify_ok.json");
    let output = hh()
        .args([
            "verify",
            "--dim",
            "2",
            "--samples",
            "20000",
            "--out",
            out.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    assert!(output.stdout.is_empty(), "stdout must stay silent without --verbose");
    let report = read_json(&out);
    assert_eq!(report["summary"]["fail"], 0);
    assert_eq!(report["config"]["mc_samples"], 20000);
    // Catalog order of results is alphabetical by function id.
    let ids: Vec<&str> = report["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["function_id"].as_str().unwrap())
        .collect();
    let mut sorted = ids.clone();
    sorted.sort_unstable();
    assert_eq!(ids, sorted);
    std::fs::remove_file(&out).ok();
}

#[test]
fn verify_rejects_unknown_function() {
    let output = hh()
        .args(["verify", "--func", "does_not_exist"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("does_not_exist"));
}

#[test]
fn verify_exact_method_requires_polynomials() {
    let output = hh().args(["verify", "--method", "exact"]).output().unwrap();
    assert_eq!(output.status.code(), Some(2));

    let out = temp_path("verify_exact.json");
    let status = hh()
        .args([
            "verify",
            "--method",
            "exact",
            "--func",
            "affine,psd_quadratic",
            "--out",
            out.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert!(status.success());
    std::fs::remove_file(&out).ok();
}

#[test]
fn subdivide_series_shape() {
    let out = temp_path("subdivide.csv");
    assert!(hh()
        .args([
            "subdivide",
            "--dim",
            "1",
            "--pmax",
            "3",
            "--out",
            out.to_str().unwrap(),
        ])
        .status()
        .unwrap()
        .success());
    let body = std::fs::read_to_string(&out).unwrap();
    let mut lines = body.lines();
    let config_line = lines.next().unwrap();
    assert!(config_line.starts_with("# config: {"));
    let header = lines.next().unwrap();
    assert!(header.starts_with("p,count,"));
    let affine_col = header
        .split(',')
        .position(|c| c == "avg_affine")
        .expect("affine column");
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 4);
    // count = (n+1)^p for the interval.
    for (p, row) in rows.iter().enumerate() {
        assert_eq!(row[0], p.to_string());
        assert_eq!(row[1], (1usize << p).to_string());
    }
    // The affine column is constant.
    let first = rows[0][affine_col];
    assert!(rows.iter().all(|r| r[affine_col] == first));
    std::fs::remove_file(&out).ok();
}

#[test]
fn subdivide_cap_overflow_exits_three_naming_the_cap() {
    let output = hh()
        .args(["subdivide", "--dim", "2", "--pmax", "20"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(3));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("1000000"), "cap not named: {stderr}");
}

#[test]
fn file_simplex_round_trips_and_rejects_bad_input() {
    let simplex_path = temp_path("triangle.json");
    std::fs::write(&simplex_path, "[[0.0, 0.0], [2.0, 0.0], [0.0, 2.0]]").unwrap();
    let out = temp_path("family_file.json");
    assert!(hh()
        .args([
            "family",
            "--simplex",
            &format!("file:{}", simplex_path.display()),
            "--out",
            out.to_str().unwrap(),
        ])
        .status()
        .unwrap()
        .success());
    let report = read_json(&out);
    assert_eq!(report["entries"].as_array().unwrap().len(), 7);
    assert_eq!(report["config"]["dim"], 2);

    // Degenerate file: exit 3.
    let degenerate_path = temp_path("degenerate.json");
    std::fs::write(&degenerate_path, "[[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]]").unwrap();
    let output = hh()
        .args([
            "family",
            "--simplex",
            &format!("file:{}", degenerate_path.display()),
        ])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(3));

    // Unparseable file: exit 2.
    let garbage_path = temp_path("garbage.json");
    std::fs::write(&garbage_path, "not json").unwrap();
    let output = hh()
        .args([
            "family",
            "--simplex",
            &format!("file:{}", garbage_path.display()),
        ])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));

    // Dimension conflict: exit 2.
    let output = hh()
        .args([
            "family",
            "--dim",
            "3",
            "--simplex",
            &format!("file:{}", simplex_path.display()),
        ])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));

    for p in [&simplex_path, &out, &degenerate_path, &garbage_path] {
        std::fs::remove_file(p).ok();
    }
}

#[test]
fn hh_seed_env_var_is_used_and_overridden_by_flag() {
    let out = temp_path("seed_env.json");
    assert!(hh()
        .env("HH_SEED", "5")
        .args(["family", "--dim", "1", "--out", out.to_str().unwrap()])
        .status()
        .unwrap()
        .success());
    assert_eq!(read_json(&out)["config"]["seed"], 5);

    assert!(hh()
        .env("HH_SEED", "5")
        .args([
            "family",
            "--dim",
            "1",
            "--seed",
            "9",
            "--out",
            out.to_str().unwrap(),
        ])
        .status()
        .unwrap()
        .success());
    assert_eq!(read_json(&out)["config"]["seed"], 9);

    let output = hh()
        .env("HH_SEED", "not-a-number")
        .args(["family", "--dim", "1"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    std::fs::remove_file(&out).ok();
}

#[test]
fn format_mismatch_is_a_config_error() {
    let output = hh().args(["family", "--format", "csv"]).output().unwrap();
    assert_eq!(output.status.code(), Some(2));
    let output = hh().args(["subdivide", "--format", "json"]).output().unwrap();
    assert_eq!(output.status.code(), Some(2));
}
