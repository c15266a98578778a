use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn rmspace(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_rmspace")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn norm_report_envelope() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "z.json", r#"{"kind":"polynomial","coeffs":[[0,0],[1,0]]}"#);
    let out = dir.path().join("report.json");
    let (code, stdout, _) =
        rmspace(&["norm", "--spec", &spec, "--p", "1", "--q", "inf", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["tool"], "rmspace");
    assert_eq!(v["config"]["q"], "inf");
    // rho_{1,inf}(z) = int_0^1 r dr
    assert!((v["result"]["value"].as_f64().unwrap() - 0.5).abs() < 1e-12);
}

#[test]
fn reports_are_deterministic() {
    let a = rmspace(&["lp-check", "--corpus", "3", "--all-pairs", "--grid-angles", "64", "--grid-depth", "10"]);
    let b = rmspace(&["lp-check", "--corpus", "3", "--all-pairs", "--grid-angles", "64", "--grid-depth", "10"]);
    assert_eq!(a.0, 0);
    assert_eq!(a.1, b.1);
    let c = rmspace(&["lp-check", "--corpus", "3", "--seed", "0x1", "--grid-angles", "64", "--grid-depth", "10"]);
    assert_ne!(a.1, c.1);
}

#[test]
fn l1_copy_two_thirds() {
    let (code, stdout, _) = rmspace(&["extremal", "l1-copy", "--beta", "2", "--n", "1"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert!((v["result"]["closed_form"].as_f64().unwrap() - 2.0 / 3.0).abs() < 1e-15);
    assert!((v["result"]["quadrature"].as_f64().unwrap() - 2.0 / 3.0).abs() < 1e-6);
}

#[test]
fn failed_check_exits_two() {
    // g = 10 z^2 violates the hypothesis (1-|z|)|g'| <= B for B = 1: a usage error, not a failed check
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "g.json", r#"{"kind":"polynomial","coeffs":[[0,0],[0,0],[10,0]]}"#);
    let (code, _, stderr) = rmspace(&["bloch", "--spec", &spec, "--b", "1"]);
    assert_eq!(code, 1, "{stderr}");
    let (code, stdout, _) = rmspace(&["bloch", "--spec", &spec, "--b", "25"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["result"]["second_derivative"]["holds"], true);
    let (code, _, _) = rmspace(&["extremal", "l1-copy", "--n", "3", "--tolerance", "1e-30"]);
    assert_eq!(code, 2);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(rmspace(&["norm"]).0, 1);
    assert_eq!(rmspace(&["norm", "--spec", "/nonexistent/spec.json"]).0, 1);
    assert_eq!(rmspace(&["frobnicate"]).0, 1);
    assert_eq!(rmspace(&["--help"]).0, 0);
    let (code, _, stderr) = rmspace(&["converse", "--corpus", "2", "--p", "1", "--q", "inf"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("--experimental"));
    let (code, _, _) = rmspace(&[
        "converse",
        "--corpus",
        "2",
        "--p",
        "1",
        "--q",
        "inf",
        "--experimental",
        "--grid-angles",
        "32",
        "--grid-depth",
        "8",
    ]);
    assert_eq!(code, 0);
}

#[test]
fn luecking_dump_csv() {
    let (code, stdout, _) = rmspace(&["luecking", "dump", "--depth", "3"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[0], "n,j,r_lo,r_hi,theta_lo,theta_hi,area,nc_count");
    assert_eq!(lines.len(), 1 + 1 + 2 + 4);
    let nc: Vec<&str> = lines[1..].iter().map(|l| l.rsplit(',').next().unwrap()).collect();
    assert_eq!(nc, ["3", "7", "7", "9", "9", "9", "9"]);
}

#[test]
fn profile_csv_and_spec_from_stdin() {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_rmspace"))
        .args(["norm", "--spec", "-", "--profile", "boundary", "--csv"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(br#"{"kind":"log_kernel","lambda":[1,0]}"#).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("rho,value,quantity\n"));
    assert!(text.lines().skip(1).all(|l| l.ends_with(",boundary_decay")));
}
