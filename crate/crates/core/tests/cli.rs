use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn boole(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_boole"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("boole-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn exceptional_first_level() {
    let out = boole(&["exceptional", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["k"], 1);
    assert_eq!(v["roots"], serde_json::json!([-1.0, 0.0, 1.0]));
    assert_eq!(v["isolating_intervals"].as_array().unwrap().len(), 3);
}

#[test]
fn orbit_through_the_pole() {
    let out = boole(&["orbit", "--x0", "1", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["points"], serde_json::json!([1.0, 0.0, 0.0, 0.0]));
    assert_eq!(v["pole_hit"], 1);
}

#[test]
fn invalid_arguments_exit_two() {
    for args in [
        vec!["lyapunov", "--n", "0"],
        vec!["lyapunov", "--b", "-1"],
        vec!["birkhoff", "--observable", "nonsense"],
        vec!["nosuchcommand"],
    ] {
        let out = boole(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn same_seed_same_bytes() {
    let args = [
        "lyapunov",
        "--a",
        "1.5",
        "--b",
        "0.5",
        "--n",
        "100000",
        "--seed",
        "42",
        "--replicas",
        "3",
    ];
    let first = boole(&args);
    let second = boole(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let other = boole(&[
        "lyapunov",
        "--a",
        "1.5",
        "--b",
        "0.5",
        "--n",
        "100000",
        "--seed",
        "43",
        "--replicas",
        "3",
    ]);
    assert_ne!(first.stdout, other.stdout);
}

#[test]
fn lyapunov_report() {
    let out = boole(&["lyapunov", "--n", "1e6", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let est = v["estimate"].as_f64().unwrap();
    assert!((est - std::f64::consts::LN_2).abs() < 0.02, "{est}");
    assert_eq!(v["n"], 1_000_000);
}

#[test]
fn weighted_observable_average() {
    let out = boole(&[
        "birkhoff",
        "--observable",
        "gauss_weighted",
        "--n",
        "1000000",
        "--seed",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let est = json(&out)["estimate"].as_f64().unwrap();
    assert!((est - 1.0).abs() < 0.02, "{est}");
}

#[test]
fn verify_passes_and_tightened_verify_fails() {
    let ok = boole(&["verify", "--n", "20000"]);
    assert_eq!(
        ok.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&ok.stdout)
    );
    let v = json(&ok);
    assert!(v.as_object().unwrap().values().all(|c| c["pass"] == true));

    let strict = boole(&["verify", "--n", "20000", "--tol", "1e-15"]);
    assert_eq!(strict.status.code(), Some(1));
}

#[test]
fn config_file_with_flag_override() {
    let path = scratch("config.json");
    std::fs::write(&path, r#"{"a": 2.0, "b": 0.5, "n": 5, "x0": 2.3}"#).unwrap();
    let cfg = path.to_str().unwrap();

    let v = json(&boole(&["orbit", "--config", cfg]));
    assert_eq!(v["a"], 2.0);
    assert_eq!(v["points"].as_array().unwrap().len(), 6);

    let v = json(&boole(&["orbit", "--config", cfg, "--n", "2"]));
    assert_eq!(v["a"], 2.0);
    assert_eq!(v["points"].as_array().unwrap().len(), 3);

    std::fs::write(&path, r#"{"a": 2.0, "colour": "red"}"#).unwrap();
    assert_eq!(boole(&["orbit", "--config", cfg]).status.code(), Some(2));
}

#[test]
fn output_file_is_written() {
    let path = scratch("sample.csv");
    let out = boole(&[
        "sample",
        "--n",
        "4",
        "--format",
        "csv",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert_eq!(text.lines().next(), Some("value"));
}

#[test]
fn csv_headers() {
    let cases: [(&[&str], &str); 5] = [
        (
            &["lyapunov", "--n", "100", "--format", "csv"],
            "k,running_average",
        ),
        (
            &[
                "lyapunov",
                "--n",
                "100",
                "--replicas",
                "2",
                "--format",
                "csv",
            ],
            "replica,k,running_average",
        ),
        (&["orbit", "--n", "2", "--format", "csv"], "k,x"),
        (
            &["exceptional", "--k", "2", "--format", "csv"],
            "root,lo,hi,level",
        ),
        (
            &["verify", "--n", "1000", "--format", "csv"],
            "check,value,target,abs_error,tolerance,converged,pass",
        ),
    ];
    for (args, header) in cases {
        let out = boole(args);
        let text = String::from_utf8(out.stdout).unwrap();
        assert_eq!(text.lines().next(), Some(header), "{args:?}");
    }
}

#[test]
fn exceptional_csv_has_every_root() {
    let out = boole(&["exceptional", "--k", "3", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1 + 15);
}
