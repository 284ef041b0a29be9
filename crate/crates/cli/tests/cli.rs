use std::process::{Command, Output};

use serde_json::Value;

fn thermoq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thermoq")).args(args).output().expect("binary runs")
}

fn thermoq_threads(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thermoq"))
        .args(args)
        .env("THERMOQ_THREADS", threads)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn steady_defaults_cool() {
    let v = stdout_json(&thermoq(&["steady"]));
    assert_eq!(v["model"], "collision");
    assert_eq!(v["cooling"], true);
    assert!((v["efficiency"].as_f64().unwrap() - 2.0).abs() < 1e-12);
    assert!((v["carnot_efficiency"].as_f64().unwrap() - 9.45).abs() < 1e-9);
    assert!((v["q_c"].as_f64().unwrap() - 0.010138).abs() < 1e-6);
    assert_eq!(v["basis"][1], "|10>");
    assert_eq!(v["config"]["t_h"], 20.0);
}

#[test]
fn summary_goes_to_stderr() {
    let out = thermoq(&["steady"]);
    let err = stderr(&out);
    assert!(err.contains("Q_c =") && err.contains("eta_C = 9.45") && err.contains("cooling: yes"), "{err}");
}

#[test]
fn equal_temperatures_give_no_current() {
    let v = stdout_json(&thermoq(&["steady", "--tc", "2", "--tr", "2", "--th", "2"]));
    assert_eq!(v["cooling"], false);
    assert_eq!(v["carnot_efficiency"], Value::Null);
    for q in ["q_c", "q_h", "q_r"] {
        assert!(v[q].as_f64().unwrap().abs() < 1e-12);
    }
}

#[test]
fn bosonic_model_shares_the_state() {
    let c = stdout_json(&thermoq(&["steady"]));
    let b = stdout_json(&thermoq(&["steady", "--model", "bosonic"]));
    assert_eq!(b["model"], "bosonic");
    assert!(b["gamma"]["h"].as_f64().unwrap() > 0.0);
    for k in 0..4 {
        let (x, y) = (c["populations"][k].as_f64().unwrap(), b["populations"][k].as_f64().unwrap());
        assert!((x - y).abs() < 1e-10);
    }
}

#[test]
fn gap_below_e1_is_a_validation_error() {
    let out = thermoq(&["steady", "--e2", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("E2 must exceed E1") && err.contains("`e2`"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn config_file_errors_report_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    std::fs::write(&path, "{\n  \"e1\": 1.0,\n  \"t_hot\": 3\n}\n").unwrap();
    let out = thermoq(&["steady", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
}

#[test]
fn config_file_and_flags_combine() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    std::fs::write(&path, r#"{"e2": 3.0, "t_h": 50.0}"#).unwrap();
    let v = stdout_json(&thermoq(&["steady", "--config", path.to_str().unwrap(), "--th", "40"]));
    assert_eq!(v["config"]["e2"], 3.0);
    assert_eq!(v["config"]["t_h"], 40.0);
}

#[test]
fn sweep_is_byte_deterministic_and_ordered() {
    let args = ["sweep", "--sweep", "th:1.2:1000:24:log"];
    let one = thermoq_threads(&args, "1");
    let many = thermoq_threads(&args, "4");
    assert!(one.status.success(), "{}", stderr(&one));
    assert_eq!(one.stdout, many.stdout);
    assert_eq!(one.stdout, thermoq_threads(&args, "4").stdout);

    let text = String::from_utf8(one.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# thermoq sweep config={"));
    assert_eq!(lines.next().unwrap(), "# basis: |00>,|10>,|01>,|11>");
    assert!(lines.next().unwrap().starts_with("th,status,r1,"));
    let xs: Vec<f64> = lines.map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(xs.len(), 24);
    assert!(xs.windows(2).all(|w| w[0] < w[1]));
    assert_eq!((xs[0], xs[23]), (1.2, 1000.0));
}

#[test]
fn sweep_flags_invalid_points() {
    let out = thermoq(&["sweep", "--sweep", "e2:0.5:2:4"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().skip(3).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows[0].contains(",skipped,") && rows[0].contains("E2 must exceed E1"));
    assert!(rows[3].contains(",ok,"));
}

#[test]
fn bad_sweep_specs_exit_two() {
    for spec in ["th:1:2:1", "th:5:2:10", "warp:1:2:3"] {
        assert_eq!(thermoq(&["sweep", "--sweep", spec]).status.code(), Some(2), "{spec}");
    }
}

#[test]
fn sweep_writes_csv_and_plot() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("compare.csv");
    let run = thermoq(&["sweep", "--model", "compare", "--sweep", "th:1.5:100:6:log", "--out", out.to_str().unwrap(), "--plot"]);
    assert!(run.status.success(), "{}", stderr(&run));
    let csv = std::fs::read_to_string(&out).unwrap();
    assert!(csv.contains("q_c_two_qubit,q_c_qutrit,winner"));
    let svg = std::fs::read_to_string(out.with_extension("svg")).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 2);
}

#[test]
fn carnot_needs_a_gradient() {
    let out = thermoq(&["carnot", "--tc", "1.1", "--tr", "1.1"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("T_c = T_r"));
}

#[test]
fn carnot_point_is_verified() {
    let v = stdout_json(&thermoq(&["carnot"]));
    assert_eq!(v["verified"], true);
    assert!((v["e2"].as_f64().unwrap() - 1.2116402116).abs() < 1e-9);
    assert!(v["q_c_above"].as_f64().unwrap() > 0.0);
    assert!(v["q_c_below"].as_f64().unwrap() < 0.0);
}

#[test]
fn optimize_e2_finds_interior_maximum() {
    let v = stdout_json(&thermoq(&["optimize-e2"]));
    assert!((v["e2_opt"].as_f64().unwrap() - 5.173).abs() < 1e-2);
    assert!(v["q_c_opt"].as_f64().unwrap() > 0.0196);
}

#[test]
fn optimize_e2_edge_maximum_exits_four() {
    let out = thermoq(&["optimize-e2", "--bracket", "1.5:3"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("--bracket"), "{}", stderr(&out));
}

#[test]
fn evolve_csv_shape() {
    let out = thermoq(&["evolve", "--rows", "10", "--t-final", "5"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = String::from_utf8(out.stdout).unwrap();
    let data: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(data[0].split(',').count(), 1 + 4 + 12);
    assert_eq!(data.len(), 1 + 11);
    let first: Vec<f64> = data[1].split(',').map(|c| c.parse().unwrap()).collect();
    assert_eq!(&first[..5], &[0.0, 1.0, 0.0, 0.0, 0.0]);
    let last: Vec<f64> = data[11].split(',').map(|c| c.parse().unwrap()).collect();
    assert!((last[0] - 5.0).abs() < 1e-12);
    assert!((last[1..5].iter().sum::<f64>() - 1.0).abs() < 1e-12);
}

#[test]
fn evolve_from_steady_state_stays_put() {
    let out = thermoq(&["evolve", "--initial", "steady", "--rows", "2", "--t-final", "1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let data: Vec<Vec<f64>> = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    let (a, b) = (data.first().unwrap(), data.last().unwrap());
    assert!(a[1..].iter().zip(&b[1..]).all(|(x, y)| (x - y).abs() < 1e-10));
}

#[test]
fn compare_search_is_seeded() {
    let a = stdout_json(&thermoq(&["compare", "--search", "20", "--seed", "7"]));
    let b = stdout_json(&thermoq(&["compare", "--search", "20", "--seed", "7"]));
    assert_eq!(a, b);
    let total: u64 = ["two_qubit_wins", "qutrit_wins", "ties", "failed"].iter().map(|k| a[k].as_u64().unwrap()).sum();
    assert_eq!(total, 20);
}

#[test]
fn qutrit_steady_state() {
    let v = stdout_json(&thermoq(&["steady", "--model", "qutrit"]));
    assert_eq!(v["basis"].as_array().unwrap().len(), 3);
    assert!((v["q_c"].as_f64().unwrap() - 0.012888).abs() < 1e-6);
}
