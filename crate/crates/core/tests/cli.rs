use std::path::PathBuf;
use std::process::{Command, Output};

fn pstar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pstar"))
        .args(args)
        .env_remove("PSTAR_SEED")
        .output()
        .expect("spawn pstar")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture() -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures/florentine.adj")
        .display()
        .to_string()
}

#[test]
fn stats_on_fixture() {
    let o = pstar(&["stats", &fixture()]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o).trim(),
        r#"{"edges":20,"two_stars":47,"triangles":3}"#
    );
}

#[test]
fn stats_on_edge_list() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("g.txt");
    std::fs::write(&f, "0 1\n1 2\n0 2\n2 3\n").unwrap();
    let o = pstar(&[
        "stats",
        f.to_str().unwrap(),
        "--format",
        "edge-list",
        "--n",
        "4",
    ]);
    assert_eq!(
        stdout(&o).trim(),
        r#"{"edges":4,"two_stars":5,"triangles":1}"#
    );
}

#[test]
fn phase_output() {
    let o = pstar(&[
        "phase",
        "--theta",
        "-1.6",
        "--theta2",
        "-0.0111111111",
        "--theta3",
        "0.1111111111",
        "--n",
        "18",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "HIGH, p*≈0.166604");

    let o = pstar(&[
        "phase", "--theta", "-0.1", "--theta2", "-0.23", "--theta3", "0.97", "--n", "18", "--json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["phase"], "LOW");
    assert_eq!(v["fixed_points"].as_array().unwrap().len(), 3);
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(pstar(&["stats"]).status.code(), Some(1));
    assert_eq!(
        pstar(&["stats", "/nonexistent/file"]).status.code(),
        Some(1)
    );
    assert_eq!(pstar(&["frobnicate"]).status.code(), Some(1));
    let o = pstar(&["estimate", "--method", "mf", "--moments", "1,2", "--n", "5"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn estimate_both_methods_on_fixture() {
    let o = pstar(&[
        "estimate",
        "--method",
        "mf",
        "--graph",
        &fixture(),
        "--iters",
        "100000",
        "--gamma",
        "1e-4",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["method"], "MF_MLLE");
    assert_eq!(v["phase"]["phase"], "HIGH");
    let th: Vec<f64> = serde_json::from_value(v["theta_star"].clone()).unwrap();
    assert!((th[0] + 1.5553).abs() < 0.05 && (th[2] - 0.2106).abs() < 0.05);

    let o = pstar(&[
        "estimate",
        "--method",
        "mple",
        "--graph",
        &fixture(),
        "--iters",
        "1000000",
        "--grad-tol",
        "1e-9",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["converged"], true);
    let th: Vec<f64> = serde_json::from_value(v["theta_star"].clone()).unwrap();
    assert!((th[0] + 1.6231).abs() < 0.02 && (th[2] - 0.2459).abs() < 0.02);
}

#[test]
fn unmet_tolerance_exits_with_three() {
    let o = pstar(&[
        "estimate",
        "--method",
        "mple",
        "--graph",
        &fixture(),
        "--iters",
        "5",
        "--grad-tol",
        "1e-12",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn low_phase_is_refused_under_strict() {
    let args = [
        "sample",
        "--theta",
        "-0.1",
        "--theta2",
        "-0.23",
        "--theta3",
        "0.97",
        "--n",
        "18",
        "--samples",
        "2",
    ];
    let o = pstar(&args);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    let mut strict = args.to_vec();
    strict.push("--strict");
    assert_eq!(pstar(&strict).status.code(), Some(2));
}

#[test]
fn sample_then_estimate_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let samples = dir.path().join("s.jsonl");
    let log = dir.path().join("run.log");
    let result = dir.path().join("r.json");
    let trace = dir.path().join("t.csv");
    let base = [
        "sample",
        "--theta",
        "-1.6",
        "--theta2",
        "-0.02",
        "--theta3",
        "0.2",
        "--n",
        "10",
        "--samples",
        "200",
        "--chains",
        "2",
    ];
    let mut args = base.to_vec();
    args.extend([
        "--seed",
        "9",
        "--out",
        samples.to_str().unwrap(),
        "--log",
        log.to_str().unwrap(),
    ]);
    assert!(pstar(&args).status.success());
    let text = std::fs::read_to_string(&samples).unwrap();
    assert_eq!(text.lines().count(), 401);

    // Same seed again, through the environment this time.
    let again = dir.path().join("s2.jsonl");
    let mut args = base.to_vec();
    args.extend(["--out", again.to_str().unwrap()]);
    let o = Command::new(env!("CARGO_BIN_EXE_pstar"))
        .args(&args)
        .env("PSTAR_SEED", "9")
        .output()
        .unwrap();
    assert!(o.status.success());
    assert_eq!(std::fs::read(&again).unwrap(), text.as_bytes());

    let o = pstar(&[
        "estimate",
        "--method",
        "mf",
        "--samples",
        samples.to_str().unwrap(),
        "--iters",
        "1000",
        "--gamma",
        "1e-2",
        "--out",
        result.to_str().unwrap(),
        "--trace",
        trace.to_str().unwrap(),
        "--trace-every",
        "100",
        "--log",
        log.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert_eq!(std::fs::read_to_string(&result).unwrap(), stdout(&o));
    let csv = std::fs::read_to_string(&trace).unwrap();
    assert_eq!(csv.lines().count(), 11);
    assert!(csv.starts_with("iter,theta1,theta2,theta3,grad1,grad2,grad3,iter_time_ms"));

    let records: Vec<serde_json::Value> = std::fs::read_to_string(&log)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(records.len(), 2);
    assert_eq!(records[0]["command"], "sample");
    assert_eq!(records[0]["seed"], 9);
    assert_eq!(records[1]["command"], "estimate");
    assert_eq!(records[1]["outputs"].as_array().unwrap().len(), 2);
}

#[test]
fn estimate_is_deterministic() {
    let run = || {
        let o = pstar(&[
            "estimate",
            "--method",
            "mple",
            "--graph",
            &fixture(),
            "--iters",
            "500",
        ]);
        let mut v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        v.as_object_mut().unwrap().remove("total_time_ms");
        v
    };
    assert_eq!(run(), run());
}

#[test]
fn oracle_subcommands() {
    let o = pstar(&[
        "oracle",
        "distribution",
        "--theta",
        "0",
        "--theta2",
        "0",
        "--theta3",
        "0",
        "--n",
        "3",
    ]);
    let v: Vec<serde_json::Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.len(), 8);
    assert!(v
        .iter()
        .all(|r| (r["probability"].as_f64().unwrap() - 0.125).abs() < 1e-15));

    let o = pstar(&[
        "oracle",
        "partition",
        "--theta",
        "0",
        "--theta2",
        "0",
        "--theta3",
        "0",
        "--n",
        "4",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["log_partition"].as_f64().unwrap() - 6.0 * 2f64.ln()).abs() < 1e-12);

    let o = pstar(&[
        "oracle", "moments", "--theta", "0", "--theta2", "0", "--theta3", "0", "--n", "12",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn reproduce_florentine_prints_both_estimates() {
    let o = pstar(&["reproduce", "florentine"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("MF-MLLE  (-1.55527"));
    assert!(s.contains("MPLE     (-1.62319"));
}
