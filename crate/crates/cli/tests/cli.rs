use std::process::Command;

use relational_qm_cli::run_captured;
use serde_json::Value;

fn json(args: &[&str]) -> Value {
    let mut argv = vec!["relational-qm"];
    argv.extend_from_slice(args);
    argv.push("--json");
    let (code, out, err) = run_captured(argv);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn born_table_selects_two() {
    let v = json(&["born", "--max-n", "10"]);
    assert_eq!(v["exponents"], serde_json::json!([2]));
    assert_eq!(v["rows"].as_array().unwrap().len(), 11);
    assert_eq!(v["quaternion_witness_found"], Value::Bool(false));
}

#[test]
fn lorentz_table_has_negative_time_at_event_two() {
    let v = json(&["lorentz"]);
    let row = &v["rows"][1];
    assert_eq!(row["event"], 2);
    assert_eq!(row["girls"]["t"].as_f64(), Some(-0.0025));
    assert_eq!(row["girls"]["x"].as_f64(), Some(1250.0));
    assert_eq!(v["gamma"].as_f64(), Some(1.25));
    let custom = json(&["lorentz", "--t", "0.002", "--x", "1000"]);
    assert_eq!(custom["event"]["out"]["t"].as_f64(), Some(0.0));
    assert_eq!(custom["event"]["out"]["x"].as_f64(), Some(800.0));
}

#[test]
fn contract_reports_ccr_and_phase() {
    let v = json(&["contract", "--hbar", "2", "--mass", "3"]);
    assert_eq!(v["jacobi_violations"], 0);
    assert_eq!(v["m_central"], Value::Bool(true));
    assert_eq!(v["ccr"][0][1], "0");
    assert_eq!(v["weyl_phase"]["magnitude"].as_f64(), Some(1.5));
    let g = json(&["contract", "--galilean"]);
    assert!(g["ccr"].as_array().unwrap().iter().flat_map(|r| r.as_array().unwrap()).all(|c| c == "0"));
    let (code, _, _) = run_captured(["relational-qm", "contract", "--hbar", "0"]);
    assert_eq!(code, 1);
}

#[test]
fn density_and_optics_subcommands() {
    let d = json(&["density", "--group", "S3", "--states", "5"]);
    for row in d["irreps"].as_array().unwrap() {
        assert!(row["reconstruction_error"].as_f64().unwrap() < 1e-10);
    }
    let ifm = json(&["ifm"]);
    assert_eq!(ifm["p_d2"].as_f64(), Some(0.125));
    assert_eq!(ifm["x_plus_after_d2"].as_f64(), Some(0.5));
    let qle = json(&["qle"]);
    assert_eq!(qle["p_d2"].as_f64(), Some(0.125));
    assert_eq!(qle["both_blocked_d1_d2"].as_f64(), Some(0.0));
    let bell = json(&["bell"]);
    assert_eq!(bell["random_settings"].as_f64(), Some(0.5));
    assert_eq!(bell["local_bound"], "5/9");
}

#[test]
fn exit_codes() {
    assert_eq!(run_captured(["relational-qm", "frobnicate"]).0, 1);
    assert_eq!(run_captured(["relational-qm"]).0, 1);
    assert_eq!(run_captured(["relational-qm", "--help"]).0, 0);
    assert_eq!(run_captured(["relational-qm", "mzi", "/nonexistent.bench"]).0, 1);
    assert_eq!(run_captured(["relational-qm", "twinslit", "--trials", "0"]).0, 1);
    assert_eq!(run_captured(["relational-qm", "twinslit", "--depth", "1.5"]).0, 1);
    let (code, _, err) = run_captured(["relational-qm", "density", "--group", "D4"]);
    assert_eq!(code, 1);
    assert!(err.contains("Z2"));
}

#[test]
fn seeded_commands_are_deterministic() {
    let a = run_captured(["relational-qm", "twinslit", "--trials", "2000", "--seed", "5", "--json"]);
    let b = run_captured(["relational-qm", "twinslit", "--trials", "2000", "--seed", "5", "--json"]);
    assert_eq!(a, b);
    let c = run_captured(["relational-qm", "twinslit", "--trials", "2000", "--seed", "6", "--json"]);
    assert_ne!(a.1, c.1);
    let x = run_captured(["relational-qm", "bell", "--trials", "500", "--seed", "3", "--json"]);
    let y = run_captured(["relational-qm", "bell", "--trials", "500", "--seed", "3", "--json"]);
    assert_eq!(x, y);
}

#[test]
fn twinslit_outputs() {
    let v = json(&["twinslit", "--trials", "500", "--bins", "16"]);
    assert_eq!(v["bin_edges"].as_array().unwrap().len(), 17);
    assert_eq!(v["counts"].as_array().unwrap().len(), 16);
    assert!(v["visibility"].as_f64().is_some());
    let (code, csv, err) = run_captured(["relational-qm", "twinslit", "--trials", "500", "--csv"]);
    assert_eq!(code, 0);
    assert!(err.contains("warning"));
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "trial,family,first_z,first_y,end_z,end_y");
    assert_eq!(lines.len(), 501);
}

#[test]
fn seed_comes_from_environment() {
    let bin = env!("CARGO_BIN_EXE_relational-qm");
    let run = |seed: Option<&str>| {
        let mut c = Command::new(bin);
        c.args(["bell", "--trials", "300", "--json"]);
        match seed {
            Some(s) => c.env("RELATIONAL_QM_SEED", s),
            None => c.env_remove("RELATIONAL_QM_SEED"),
        };
        let out = c.output().unwrap();
        assert!(out.status.success());
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        v["simulated"]["seed"].as_u64().unwrap()
    };
    assert_eq!(run(Some("42")), 42);
    assert_eq!(run(None), 1);
}
