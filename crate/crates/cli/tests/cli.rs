use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_entroplex"));
    c.env_remove("ENTROPLEX_SEED");
    c
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad JSON ({e}); stderr: {}",
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn num(v: &Value, path: &str) -> f64 {
    v.pointer(path)
        .and_then(Value::as_f64)
        .unwrap_or_else(|| panic!("{path} missing"))
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing");
    v
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn bounds_for_the_qutrit_example() {
    let out = run(&[
        "bounds",
        "--x",
        &data("qutrit_x.json"),
        "--z",
        &data("qutrit_z.json"),
        "--state",
        &data("qutrit_mixed.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["schema"], "entroplex.report/v1");
    assert_eq!(v["inputs"].as_array().unwrap().len(), 3);
    assert_eq!(v["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
    let b = "/results/bounds";
    assert!((num(&v, &format!("{b}/q_mu")) - 1.5f64.log2()).abs() < 1e-9);
    assert!((num(&v, &format!("{b}/q_prime")) - 0.623).abs() < 0.005);
    assert!((num(&v, &format!("{b}/q_opt")) - 0.64).abs() < 0.005);
    assert!((num(&v, &format!("{b}/q_state")) - 2.0 / 3.0 * 3f64.log2()).abs() < 1e-9);
    assert!((num(&v, &format!("{b}/r_hall")) - 6f64.log2()).abs() < 1e-12);
    assert!((num(&v, &format!("{b}/r_grudka")) - 5f64.log2()).abs() < 1e-12);
    assert!((num(&v, &format!("{b}/r")) - 4.5f64.log2()).abs() < 1e-12);
}

#[test]
fn identical_measurements_give_trivial_bounds() {
    let x = data("qutrit_x.json");
    let v = json_of(&run(&["bounds", "--x", &x, "--z", &x]));
    for field in ["q_mu", "q_prime", "q_opt"] {
        assert!(
            num(&v, &format!("/results/bounds/{field}")).abs() < 1e-9,
            "{field}"
        );
    }
    for field in ["r", "r_hall", "r_grudka"] {
        assert!(
            (num(&v, &format!("/results/bounds/{field}")) - 2.0 * 3f64.log2()).abs() < 1e-9,
            "{field}"
        );
    }
}

#[test]
fn povm_input_omits_the_basis_only_bound() {
    let v = json_of(&run(&[
        "bounds",
        "--x",
        &data("qubit_trine.json"),
        "--z",
        "computational:2",
    ]));
    assert!(v["results"]["bounds"]["r_grudka"].is_null());
    assert!(num(&v, "/results/bounds/q_opt") > 0.0);
}

#[test]
fn malformed_json_reports_its_position() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "{\"unitary\": [[[1, 0], [0 0]]]}");
    let out = run(&[
        "bounds",
        "--x",
        bad.to_str().unwrap(),
        "--z",
        "computational:2",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 1 column"), "{err}");

    let unknown = write(dir.path(), "unknown.json", "{\"matrix\": []}");
    let out = run(&[
        "bounds",
        "--x",
        unknown.to_str().unwrap(),
        "--z",
        "computational:2",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let missing = run(&[
        "bounds",
        "--x",
        "/nonexistent/file.json",
        "--z",
        "computational:2",
    ]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn invalid_inputs_name_the_violated_invariant() {
    let dir = tempfile::tempdir().unwrap();
    let nu = write(
        dir.path(),
        "nu.json",
        "{\"unitary\": [[[1,0],[1,0]],[[0,0],[1,0]]]}",
    );
    let out = run(&[
        "bounds",
        "--x",
        nu.to_str().unwrap(),
        "--z",
        "computational:2",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not unitary"));

    let incomplete = write(
        dir.path(),
        "half.json",
        "{\"dim\": 2, \"elements\": [[[[0.5,0],[0,0]],[[0,0],[0.5,0]]]]}",
    );
    let out = run(&[
        "bounds",
        "--x",
        incomplete.to_str().unwrap(),
        "--z",
        "computational:2",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("sum to the identity"));

    let state = write(
        dir.path(),
        "s.json",
        "{\"dims\": [2], \"data\": [[[2,0],[0,0]],[[0,0],[-1,0]]]}",
    );
    let out = run(&[
        "bounds",
        "--x",
        "fourier:2",
        "--z",
        "computational:2",
        "--state",
        state.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));

    let mismatch = run(&["bounds", "--x", "fourier:2", "--z", "computational:3"]);
    assert_eq!(mismatch.status.code(), Some(3));
}

#[test]
fn shape_errors_are_parse_errors() {
    let dir = tempfile::tempdir().unwrap();
    let ragged = write(
        dir.path(),
        "r.json",
        "{\"dims\": [2], \"data\": [[[1,0],[0,0]],[[0,0]]]}",
    );
    let out = run(&[
        "bounds",
        "--x",
        "fourier:2",
        "--z",
        "computational:2",
        "--state",
        ragged.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let wrong_dims = write(
        dir.path(),
        "w.json",
        "{\"dims\": [3], \"data\": [[[1,0],[0,0]],[[0,0],[0,0]]]}",
    );
    let out = run(&[
        "bounds",
        "--x",
        "fourier:2",
        "--z",
        "computational:2",
        "--state",
        wrong_dims.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let ok = run(&["verify", "sum-norm", "--trials", "20", "--seed", "3"]);
    assert_eq!(ok.status.code(), Some(0));
    let v = json_of(&ok);
    assert_eq!(v["seed"], 3);
    assert_eq!(v["results"]["passed"], true);
    assert_eq!(
        v["results"]["suites"][0]["records"]
            .as_array()
            .unwrap()
            .len(),
        20
    );

    let failing = run(&["verify", "sum-norm", "--trials", "5", "--tol=-1"]);
    assert_eq!(failing.status.code(), Some(1));
    assert_eq!(json_of(&failing)["results"]["passed"], false);

    assert_eq!(run(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(
        run(&["verify", "pinching", "--dims", "2y2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "all", "--dims", "2x2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "pinching", "--dims", "2x2"]).status.code(),
        Some(3)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn maximally_entangled_preset() {
    let out = run(&[
        "verify",
        "ur-bipartite",
        "--dims",
        "9x9",
        "--state",
        "max-entangled",
        "--trials",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let records = v["results"]["suites"][0]["records"].as_array().unwrap();
    assert!(!records.is_empty());
    for r in records {
        assert!(r["rhs"].as_f64().unwrap() < 0.0);
        assert_eq!(r["pass"], true);
    }
}

#[test]
fn runs_are_reproducible_and_the_seed_variable_is_a_fallback() {
    let a = json_of(&run(&[
        "verify", "ur-povm", "--trials", "10", "--seed", "42",
    ]));
    let b = json_of(&run(&[
        "verify",
        "ur-povm",
        "--trials",
        "10",
        "--seed",
        "42",
        "--sequential",
    ]));
    let c = json_of(
        &bin()
            .args(["verify", "ur-povm", "--trials", "10"])
            .env("ENTROPLEX_SEED", "42")
            .output()
            .unwrap(),
    );
    let a = without_timing(a);
    assert_eq!(a, without_timing(b));
    assert_eq!(a, without_timing(c));
    let d = json_of(&run(&[
        "verify", "ur-povm", "--trials", "10", "--seed", "43",
    ]));
    assert_ne!(a["results"], d["results"]);
}

#[test]
fn output_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&[
        "example1",
        "--samples",
        "200",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "example1");
    assert!((num(&v, "/results/bounds/r") - 4.5f64.log2()).abs() < 1e-12);
    assert_eq!(v["results"]["haar_average_q_state"]["samples"], 200);
}

#[test]
fn fig1_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("fig1.csv");
    let out = run(&["fig1", "--points", "101", "--csv", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("p,lambda_min"));
    let rows: Vec<(f64, f64)> = lines
        .map(|l| {
            let (p, v) = l.split_once(',').unwrap();
            (p.parse().unwrap(), v.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 101);
    let peak = rows.iter().map(|r| r.1).fold(f64::NEG_INFINITY, f64::max);
    assert!((peak - 0.64).abs() < 0.005);
    assert!((num(&json_of(&out), "/results/max/lambda_min") - peak).abs() < 1e-11);
    assert_eq!(run(&["fig1", "--points", "1"]).status.code(), Some(2));
}

#[test]
fn gap_csv_is_monotone() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("gap.csv");
    let out = run(&[
        "gap",
        "--dims",
        "8,16,32,64",
        "--theta",
        "0.7854",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("d,theta,c_max,c_2,delta,predicted_delta")
    );
    let delta: Vec<f64> = lines
        .map(|l| l.split(',').nth(4).unwrap().parse().unwrap())
        .collect();
    assert_eq!(delta.len(), 4);
    assert!(delta.windows(2).all(|w| w[1] > w[0]));
    assert_eq!(json_of(&out)["results"]["increasing"], true);
    assert_eq!(run(&["gap", "--dims", "2,8"]).status.code(), Some(3));
    assert_eq!(run(&["gap", "--dims", "8,x"]).status.code(), Some(2));
}

#[test]
fn capacity_of_the_identity_channel() {
    let out = run(&[
        "capacity",
        "--channel",
        &data("qubit_identity_channel.json"),
        "--x",
        "computational:2",
        "--xb",
        "computational:2",
        "--z",
        &data("qubit_hadamard.json"),
        "--zb",
        &data("qubit_hadamard.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert!((num(&v, "/results/capacity/witness") - 1.0).abs() < 1e-9);
    assert!((num(&v, "/results/capacity/coherent_information") - 1.0).abs() < 1e-9);
    assert_eq!(v["inputs"].as_array().unwrap().len(), 5);

    let dep = json_of(&run(&[
        "capacity",
        "--channel",
        "depolarizing:2",
        "--x",
        "computational:2",
        "--xb",
        "computational:2",
        "--z",
        "fourier:2",
        "--zb",
        "fourier:2",
    ]));
    assert!((num(&dep, "/results/capacity/witness") + 1.0).abs() < 1e-9);
    let bad = run(&[
        "capacity",
        "--channel",
        "teleport:2",
        "--x",
        "computational:2",
        "--xb",
        "computational:2",
        "--z",
        "fourier:2",
        "--zb",
        "fourier:2",
    ]);
    assert_eq!(bad.status.code(), Some(2));
}
