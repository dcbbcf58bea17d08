use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use affsatake::json::{Envelope, Formula};
use affsatake::{LatticeVector, QRat};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_affsatake"))
        .args(args)
        .env_remove("AFFSATAKE_PRECISION")
        .output()
        .expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Each `NAME.cmd` holds one argument per line; `NAME.out` is its recorded output.
/// Set `UPDATE_GOLDEN=1` to rewrite the recordings.
#[test]
fn goldens() {
    let mut seen = 0;
    let mut entries: Vec<_> = fs::read_dir(golden_dir()).unwrap().map(|e| e.unwrap().path()).collect();
    entries.sort();
    for cmd in entries
        .into_iter()
        .filter(|p| p.extension().is_some_and(|e| e == "cmd"))
    {
        let text = fs::read_to_string(&cmd).unwrap();
        let args: Vec<&str> = text.lines().collect();
        let out = run(&args);
        assert!(
            out.status.success(),
            "{}: {}",
            cmd.display(),
            String::from_utf8_lossy(&out.stderr)
        );
        let expected = cmd.with_extension("out");
        if std::env::var_os("UPDATE_GOLDEN").is_some() {
            fs::write(&expected, &out.stdout).unwrap();
        }
        let want = fs::read(&expected).unwrap_or_else(|_| panic!("missing {}", expected.display()));
        assert!(out.stdout == want, "{} differs from its recording", cmd.display());
        seen += 1;
    }
    assert!(seen >= 6);
}

fn coeff(env: &Envelope, exp: LatticeVector) -> QRat {
    env.series().to_series(None).unwrap().coeff(&exp)
}

#[test]
fn macdonald_a1_example() {
    let v = ok_json(&["macdonald", "--type", "A1", "--lambda", "1"]);
    let env: Envelope = serde_json::from_value(v).unwrap();
    assert_eq!(env.formula, Formula::Mac);
    assert_eq!(env.terms.len(), 3);
    let q = QRat::q_pow(1);
    assert_eq!(coeff(&env, LatticeVector::finite(vec![1])), q);
    assert_eq!(coeff(&env, LatticeVector::finite(vec![0])), &q - &QRat::one());
    assert_eq!(coeff(&env, LatticeVector::finite(vec![-1])), q);
}

#[test]
fn tamagawa_affine_example() {
    let v = ok_json(&["tamagawa-affine", "--type", "A3"]);
    assert_eq!(v["product"], "ζ(4)");
    assert_eq!(v["cancelled"], true);
}

#[test]
fn delta_both_example() {
    let v = ok_json(&["delta", "--type", "A1", "--N", "2", "--mode", "both"]);
    assert_eq!(v["agree"], true);
    let want: Vec<QRat> = ["1", "q^-1 - q^-2", "q^-1 - q^-3"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    for key in ["product", "sum"] {
        let got: Vec<QRat> = v[key]
            .as_array()
            .unwrap()
            .iter()
            .map(|s| s.as_str().unwrap().parse().unwrap())
            .collect();
        assert_eq!(got, want, "{key}");
    }
}

#[test]
fn envelopes_reparse() {
    for args in [
        vec!["macdonald", "--type", "B2", "--lambda", "2,1"],
        vec![
            "macdonald",
            "--type",
            "A1",
            "--lambda",
            "1",
            "--level",
            "2",
            "--N",
            "1",
            "--L",
            "10",
        ],
        vec!["delta", "--type", "A2", "--N", "1"],
        vec!["gk", "--type", "A1", "--N", "1", "--height", "3"],
    ] {
        let out = run(&args);
        assert!(out.status.success(), "{args:?}");
        let env: Envelope = serde_json::from_slice(&out.stdout).expect("envelope schema");
        let s = env.series().to_series(None).unwrap();
        let again =
            serde_json::to_vec_pretty(&Envelope::new(env.formula, env.lambda.as_ref(), env.shells, &s)).unwrap();
        assert_eq!(again, out.stdout[..out.stdout.len() - 1].to_vec(), "{args:?}");
    }
}

#[test]
fn every_command_emits_json() {
    let p1 = r#"{"q":4,"genus":0,"L_poly":[1]}"#;
    let ell = r#"{"q":5,"genus":1,"L_poly":[1,-2,5]}"#;
    let cases: Vec<Vec<&str>> = vec![
        vec!["rootdata", "--type", "G2"],
        vec!["rootdata", "--type", "A2", "--affine", "--N", "1"],
        vec!["kostka", "--type", "A2", "--lambda", "1,1"],
        vec!["hecke-check", "--type", "A2"],
        vec!["hecke-check", "--type", "A1", "--affine"],
        vec!["zeta", "--curve", ell, "--s", "0.5,3"],
        vec!["tamagawa", "--type", "A2", "--curve", ell],
        vec!["tamagawa-affine", "--type", "D4", "--curve", p1],
        vec!["constant-term", "--type", "A1", "--curve", p1, "--sigma", "3"],
        vec![
            "constant-term",
            "--type",
            "A2",
            "--curve",
            p1,
            "--residue",
            "--gamma",
            "1,0",
        ],
        vec![
            "affine-ct",
            "--type",
            "A1",
            "--curve",
            p1,
            "--s",
            "1",
            "--mode",
            "w-sum",
            "--L",
            "3",
            "--sigma",
            "0.3",
        ],
    ];
    for args in cases {
        let v = ok_json(&args);
        assert!(v.is_object(), "{args:?}");
    }
    let v = ok_json(&["tamagawa", "--type", "A2", "--curve", ell]);
    assert_eq!(v["exact_agree"], true);
    assert!(v["relative_difference"].as_f64().unwrap() < 1e-12);
    let v = ok_json(&["constant-term", "--type", "A2", "--curve", p1, "--residue"]);
    assert_eq!(v["within_tolerance"], true);
    assert!(v["tolerances"].is_object());
}

#[test]
fn deterministic_output() {
    let p1 = r#"{"q":2,"genus":0,"L_poly":[1]}"#;
    for args in [
        vec![
            "macdonald",
            "--type",
            "A2",
            "--lambda",
            "1,1",
            "--level",
            "2",
            "--N",
            "1",
        ],
        vec![
            "--format",
            "tsv",
            "affine-ct",
            "--type",
            "A1",
            "--curve",
            p1,
            "--s",
            "2",
        ],
        vec!["kostka", "--type", "B2", "--lambda", "1,1"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn tsv_layouts() {
    let out = run(&["--format", "tsv", "delta", "--type", "A1", "--N", "2", "--mode", "both"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("j\tproduct\tsum"));
    assert_eq!(text.lines().count(), 4);
    let out = run(&["--format", "tsv", "tamagawa-affine", "--type", "A3"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("product\tζ(4)\n"));
}

fn exit_code(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let err: Value = serde_json::from_slice(&out.stderr).expect("structured error on stderr");
    assert!(out.stdout.is_empty());
    (out.status.code().unwrap(), err)
}

#[test]
fn validation_errors_exit_2() {
    for args in [
        vec!["macdonald", "--type", "A1", "--lambda", "1", "--bogus", "3"],
        vec!["macdonald", "--type", "Q3", "--lambda", "1"],
        vec!["macdonald", "--type", "A2", "--lambda", "1"],
        vec!["macdonald", "--type", "A2", "--lambda", "-1,0"],
        vec!["kostka", "--type", "A1", "--lambda", "x"],
        vec!["tamagawa-affine", "--type", "B2"],
        vec!["zeta", "--curve", r#"{"q":6,"genus":0,"L_poly":[1]}"#],
        vec!["zeta", "--curve", "/nonexistent/curve.json"],
        vec!["zeta", "--curve", r#"{"q":4,"genus":0,"L_poly":[1]}"#, "--s", "1"],
        vec![
            "--precision",
            "4096",
            "zeta",
            "--curve",
            r#"{"q":4,"genus":0,"L_poly":[1]}"#,
        ],
        vec![
            "affine-ct",
            "--type",
            "A1",
            "--curve",
            r#"{"q":2,"genus":0,"L_poly":[1]}"#,
            "--s",
            "-1",
        ],
    ] {
        let (code, err) = exit_code(&args);
        assert_eq!(code, 2, "{args:?}: {err}");
        for k in ["module", "operation", "message"] {
            assert!(err["error"][k].is_string(), "{args:?}");
        }
    }
    let (_, err) = exit_code(&["macdonald", "--type", "A2", "--lambda", "-1,0"]);
    assert_eq!(err["error"]["module"], "satake");
    assert_eq!(err["error"]["operation"], "macdonald_finite");
}

#[test]
fn stabilization_failure_exits_3() {
    let (code, err) = exit_code(&[
        "macdonald",
        "--type",
        "A1",
        "--lambda",
        "0",
        "--level",
        "1",
        "--N",
        "3",
        "--L",
        "2",
    ]);
    assert_eq!(code, 3, "{err}");
    assert_eq!(err["error"]["module"], "satake");
}

#[test]
fn precision_from_environment() {
    let args = ["zeta", "--curve", r#"{"q":4,"genus":0,"L_poly":[1]}"#];
    let out = Command::new(env!("CARGO_BIN_EXE_affsatake"))
        .args(args)
        .env("AFFSATAKE_PRECISION", "53")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["precision_bits"], 53);
    assert_eq!(ok_json(&args)["precision_bits"], 128);
}
