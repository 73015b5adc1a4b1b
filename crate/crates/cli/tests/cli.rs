use std::path::PathBuf;
use std::process::Command;

use netquality_cli::{main_with_args, NetFile};
use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("netquality").chain(args.iter().copied());
    let code = main_with_args(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "stderr: {err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn tval_both_on_van_der_corput() {
    let v = json(&["tval", "--net", &fixture("vdc.json"), "--algorithm", "both"]);
    assert_eq!(v["t"], 0);
    assert_eq!(v["degQ"], 3);
    let v = json(&["tval", "--net", &fixture("rep1.json")]);
    assert_eq!((v["t"].as_u64(), v["degQ"].as_u64()), (Some(0), Some(2)));
    let v = json(&["tval", "--net", &fixture("vdc.json"), "--algorithm", "oracle"]);
    assert_eq!(v["method"], "oracle");
}

#[test]
fn tval_csv() {
    let (code, out, _) = run(&["tval", "--net", &fixture("vdc.json"), "--out", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out, "t,method,degQ\n0,alg2,3\n");
    let (code, out, _) = run(&["tval", "--net", &fixture("id1.json"), "--out", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out, "t,method,degQ\n0,alg2,\n");
}

#[test]
fn sobol_grid() {
    let (code, out, err) = run(&["tval", "--sobol", "joe-kuo", "--dims", "3..6", "--m", "2..4", "--out", "csv"]);
    assert_eq!(code, 0, "{err}");
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "m \\ s,3,4,5,6");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("2,1,1,1,1"));
    let v = json(&["tval", "--sobol", "bratley-fox", "--dims", "2", "--m", "5", "--algorithm", "both"]);
    assert_eq!(v["cells"][0]["t"], 0);
    assert_eq!(v["directions"], "bratley-fox");
}

#[test]
fn wep_outputs() {
    let v = json(&["wep", "--net", &fixture("vdc.json"), "--full"]);
    assert_eq!(v["coeffs"], serde_json::json!(["1", "0", "0", "2", "1"]));
    assert_eq!(v["scale"], "2^2");
    assert_eq!(v["valid_to"], 4);
    let v = json(&["wep", "--net", &fixture("vdc.json"), "--l", "2"]);
    assert_eq!(v["coeffs"], serde_json::json!(["1", "0", "0"]));
    let v = json(&["wep", "--net", &fixture("id1.json"), "--full"]);
    assert_eq!(v["coeffs"], serde_json::json!(["1", "0", "0", "0"]));
    let v = json(&["wep", "--net", &fixture("rep1.json"), "--full"]);
    assert_eq!(v["coeffs"], serde_json::json!(["1", "0", "1"]));
    let (_, out, _) = run(&["wep", "--net", &fixture("vdc.json"), "--full", "--out", "csv"]);
    assert_eq!(out, "degree,coefficient\n0,1\n1,0\n2,0\n3,2\n4,1\n");
}

#[test]
fn multivariate_outputs() {
    let v = json(&["wep", "--net", &fixture("vdc.json"), "--gw", "--cap", "3"]);
    assert_eq!(v["terms"].as_array().unwrap().len(), 3);
    let v = json(&["wep", "--net", &fixture("vdc.json"), "--gw", "--project", "1"]);
    assert_eq!(v["coeffs"], serde_json::json!(["1", "0", "0"]));
    let v = json(&["wep", "--net", &fixture("vdc.json"), "--gw", "--cap", "3", "--worst", "2"]);
    assert_eq!(v["u"], serde_json::json!([1, 2]));
    assert_eq!(v["degree"], 3);
    let (code, _, err) = run(&["wep", "--net", &fixture("vdc.json"), "--gw", "--cap", "1", "--worst", "1"]);
    assert_eq!(code, 3, "{err}");
}

#[test]
fn check_modes() {
    let v = json(&["check", "--net", &fixture("vdc.json")]);
    assert_eq!(v["pass"], true);
    assert_eq!(v["values"]["minNRT"], 3);
    let v = json(&["check", "--net", &fixture("klein.json")]);
    assert_eq!(v["pass"], true);
    let v = json(&["check", "--random", "--b", "2", "--m", "4", "--s", "3", "--count", "100", "--seed", "7"]);
    assert_eq!((v["instances"].as_u64(), v["agree"].as_u64()), (Some(100), Some(100)));
    let v = json(&["check", "--points", &fixture("shifted.json")]);
    assert_eq!(v["lower_bound"], 0);
    assert!(v["oracle_t"].as_u64().unwrap() >= 3);
    assert_eq!(v["strict"], true);
    let v = json(&["wep", "--points", &fixture("shifted.json")]);
    assert_eq!(v["source"], "points");
    assert_eq!(v["coeffs"][1], "0");
}

#[test]
fn input_errors_exit_with_two() {
    let (code, _, err) = run(&["tval", "--net", &fixture("bad.json")]);
    assert_eq!(code, 2);
    assert!(err.contains("shape"), "{err}");
    assert_eq!(run(&["tval", "--net", "/nonexistent.json"]).0, 2);
    assert_eq!(run(&["tval", "--points", &fixture("shifted.json")]).0, 2);
    assert_eq!(run(&["tval", "--net", &fixture("vdc.json"), "--sobol", "joe-kuo"]).0, 2);
    assert_eq!(run(&["tval", "--sobol", "joe-kuo", "--dims", "3"]).0, 2);
    assert_eq!(run(&["wep", "--net", &fixture("vdc.json"), "--full", "--l", "2"]).0, 2);
    assert_eq!(run(&["wep", "--net", &fixture("vdc.json"), "--cap", "2"]).0, 2);
    assert_eq!(run(&["check", "--random", "--b", "2"]).0, 2);
    assert_eq!(run(&["tval", "--sobol", "bratley-fox", "--dims", "41", "--m", "3"]).0, 2);
    assert_eq!(run(&["bogus"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn resource_bounds_exit_with_three() {
    let (code, _, err) = run(&["check", "--net", &fixture("vdc.json"), "--max-duals", "2"]);
    assert_eq!(code, 3, "{err}");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("wide.json");
    let id = vec![vec![1u64]];
    let wide = NetFile::from_matrices(2, vec![id; 13]);
    std::fs::write(&path, serde_json::to_string(&wide).unwrap()).unwrap();
    let (code, _, _) = run(&["wep", "--net", path.to_str().unwrap(), "--gw"]);
    assert_eq!(code, 3);
}

#[test]
fn direction_files_from_disk() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dirs.txt");
    std::fs::write(&path, "d s a m_i\n2 1 0 1\n3 2 1 1 3\n").unwrap();
    let v = json(&["tval", "--sobol", path.to_str().unwrap(), "--dims", "3", "--m", "4"]);
    assert_eq!(v["cells"][0]["s"], 3);
    std::fs::write(&path, "d s a m_i\n2 1 0 2\n").unwrap();
    assert_eq!(run(&["tval", "--sobol", path.to_str().unwrap(), "--dims", "2", "--m", "4"]).0, 2);
}

#[test]
fn thread_count_does_not_change_output() {
    let args = ["tval", "--sobol", "joe-kuo", "--dims", "3..10", "--m", "2..10", "--out", "csv"];
    let base = run(&args).1;
    for t in ["1", "3", "8"] {
        let mut a = args.to_vec();
        a.extend(["--threads", t]);
        assert_eq!(run(&a).1, base);
    }
    assert_eq!(run(&["tval", "--net", &fixture("vdc.json"), "--threads", "0"]).0, 2);
}

#[test]
fn binary_reads_thread_env() {
    let exe = env!("CARGO_BIN_EXE_netquality");
    let out = Command::new(exe)
        .args(["wep", "--net", &fixture("vdc.json"), "--full", "--out", "csv"])
        .env("NETQUALITY_THREADS", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "degree,coefficient\n0,1\n1,0\n2,0\n3,2\n4,1\n");
    let out = Command::new(exe)
        .args(["tval", "--net", &fixture("bad.json")])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn net_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(fixture("vdc.json")).unwrap();
    let file: NetFile = serde_json::from_str(&text).unwrap();
    let path = dir.path().join("copy.json");
    std::fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();
    assert_eq!(NetFile::load(&path).unwrap(), NetFile::load(PathBuf::from(fixture("vdc.json")).as_path()).unwrap());
    let bad = r#"{"b": 2, "group": [2], "s": 1, "m": 1, "n": 1, "matrices": [[[1]]]}"#;
    std::fs::write(&path, bad).unwrap();
    assert!(NetFile::load(&path).is_err());
    std::fs::write(&path, r#"{"b": 2, "s": 1, "m": 1, "n": 1, "matrices": [[[1]]], "extra": 0}"#).unwrap();
    assert!(NetFile::load(&path).is_err());
}
