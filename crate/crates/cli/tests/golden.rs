use std::path::PathBuf;

use relational_qm_cli::run_captured;
use serde_json::Value;

const SCRIPTS: [&str; 5] = ["fig11", "fig12a", "fig12b", "fig13", "fig14"];

fn bench(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../benches").join(format!("{name}.bench"))
}

fn golden(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"));
    std::fs::read_to_string(p).unwrap()
}

fn mzi_json(name: &str) -> String {
    let (code, out, err) = run_captured(["relational-qm", "mzi", bench(name).to_str().unwrap(), "--json"]);
    assert_eq!(code, 0, "{err}");
    out
}

#[test]
fn outputs_match_golden_files_byte_for_byte() {
    for name in SCRIPTS {
        assert_eq!(mzi_json(name), golden(name), "{name}");
    }
}

fn amplitudes(v: &Value) -> Vec<(f64, f64)> {
    v["amplitudes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|z| (z[0].as_f64().unwrap(), z[1].as_f64().unwrap()))
        .collect()
}

#[test]
fn golden_files_hold_the_expected_amplitudes() {
    let s = 0.707106781187;
    let parse = |n: &str| -> Value { serde_json::from_str(&golden(n)).unwrap() };
    assert_eq!(amplitudes(&parse("fig11")), vec![(1.0, 0.0), (0.0, 0.0)]);
    assert_eq!(amplitudes(&parse("fig12a")), vec![(0.5, 0.0), (-0.5, 0.0), (s, 0.0)]);
    assert_eq!(amplitudes(&parse("fig12b")), vec![(0.5, 0.0), (0.5, 0.0), (s, 0.0)]);
    let p13: Vec<f64> = parse("fig13")["probabilities"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    assert_eq!(p13, vec![0.625, 0.125, 0.25]);
    let p14 = parse("fig14");
    assert_eq!(p14["probabilities"][1].as_f64(), Some(0.125));
}
