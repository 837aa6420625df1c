use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use spinthermal_cli::{parse_config, run, Exit, RunError};

fn exe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinthermal")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn critical_prints_six_decimals() {
    let o = exe(&["critical", "--model", "xx"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("z_c = 0.455410"), "{text}");
    assert!(text.contains("x_c = -0.786557"), "{text}");
    assert!(text.contains("T_c/|J| = 1.271364"), "{text}");
}

#[test]
fn critical_above_isotropic_point() {
    let o = exe(&["critical", "--model", "xxz", "--delta", "1.5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("no entanglement"));
}

#[test]
fn verify_passes_with_summary() {
    let o = exe(&["verify"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let last = text.lines().last().unwrap();
    assert!(last.starts_with("verify: ") && last.ends_with(" 0 failed"), "{last}");
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 15);
}

#[test]
fn temperature_sweep_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t_sweep.csv");
    let o = exe(&[
        "sweep", "--model", "xxzfield", "--J", "1", "--delta", "1", "--B", "1",
        "--set", "grid.axis=T", "--set", "grid.min=0.02", "--set", "grid.max=4", "--set", "grid.steps=200",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(&out).unwrap();
    assert!(!csv.contains('\r'));
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "T,C");
    assert_eq!(lines.len(), 201);
    assert_eq!(lines[1], "0.02,0.333333333333");
    assert!(lines[200].starts_with("4,"));
    // nothing besides the requested file
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.ini");
    fs::write(&cfg, "command = concurrence\nT = 1\n[model]\nmodel = xx\nJ = 1\n").unwrap();
    let o = exe(&["--config", cfg.to_str().unwrap(), "--J", "-30"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[1], "0.333333333333");
}

#[test]
fn json_has_meta_and_rows() {
    let o = exe(&["eig", "--model", "xxz", "--J", "-1", "--delta", "-0.5", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["meta"]["model"], "xxz");
    assert_eq!(v["meta"]["delta"], -0.5);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 8);
    assert_eq!(rows[0]["E_analytic"], -3.0);
}

#[test]
fn xyz_model_has_empty_analytic_column() {
    let o = exe(&["eig", "--model", "xyz", "--set", "J1=1", "--set", "J2=0.5", "--set", "J3=-0.2"]);
    assert_eq!(o.status.code(), Some(0));
    for line in stdout(&o).lines().skip(1) {
        assert!(line.ends_with(','), "{line}");
    }
}

#[test]
fn config_errors_exit_2() {
    for args in [
        &["concurrence", "--model", "xx", "--T", "1"][..],
        &["concurrence", "--model", "xx", "--J", "1", "--T", "-1"],
        &["sweep", "--model", "xx", "--J", "1", "--T", "1"],
        &["critical", "--model", "xxzfield"],
        &["frobnicate"],
        &["eig", "--model", "xx", "--J", "abc"],
        &["eig", "--model", "xx", "--J", "1", "--set", "model.K=1"],
        &["eig", "--config", "/nonexistent/run.ini"],
    ] {
        let o = exe(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn missing_field_named_in_message() {
    let o = exe(&["concurrence", "--model", "xx", "--T", "1"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("J: required"));
}

#[test]
fn unwritable_output_is_reported() {
    let cfg = parse_config("command = eig\n[model]\nmodel = xx\nJ = 1\n[output]\npath = /nonexistent/dir/x.csv\n").unwrap();
    let err = run(&cfg, &mut Vec::new()).unwrap_err();
    assert!(matches!(err, RunError::Io { .. }));
    assert_eq!(err.exit(), Exit::ConfigError);
}

#[test]
fn numeric_errors_map_to_exit_3() {
    let err = RunError::Numeric(spinthermal::Error::NoConvergence { sweeps: 100, off_norm: 1.0 });
    assert_eq!(err.exit().code(), 3);
    let err = RunError::Numeric(spinthermal::Error::NotPsd { eigenvalue: -1.0 });
    assert_eq!(err.exit().code(), 3);
}

#[test]
fn thermal_row_is_a_density_matrix() {
    let cfg = parse_config("command = thermal\nT = 0.5\n[model]\nmodel = xxzfield\nJ = 1\ndelta = 0.5\nB = 0.3\n").unwrap();
    let mut buf = Vec::new();
    assert_eq!(run(&cfg, &mut buf).unwrap(), Exit::Ok);
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<f64> = lines.next().unwrap().split(',').map(|c| c.parse().unwrap()).collect();
    let get = |name: &str| row[header.iter().position(|h| *h == name).unwrap()];
    let trace = get("rho11") + get("rho22") + get("rho33") + get("rho44");
    assert!((trace - 1.0).abs() < 1e-11);
    assert!((get("Z").ln() - get("lnZ")).abs() < 1e-10);
}

#[test]
fn same_config_same_bytes_in_process() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let text = format!(
        "command = sweep\nT = 1\n[model]\nmodel = xxz\nJ = -1\n[grid]\naxis = delta\nmin = -10\nmax = 1\nsteps = 50\n[output]\nformat = json\ncolumns = delta,C,witness,Tc\npath = {}\n",
        path.display()
    );
    let cfg = parse_config(&text).unwrap();
    let read = |p: &Path| fs::read(p).unwrap();
    run(&cfg, &mut Vec::new()).unwrap();
    let first = read(&path);
    run(&cfg, &mut Vec::new()).unwrap();
    assert_eq!(first, read(&path));
    let v: serde_json::Value = serde_json::from_slice(&first).unwrap();
    assert!(v["rows"][49]["Tc"].is_null());
}
