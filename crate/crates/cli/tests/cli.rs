//! End-to-end runs of the constaq binary: golden transcripts of the
//! worked examples, exit-code contracts, and JSON round-trips.

use std::process::{Command, Output};

fn constaq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_constaq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn opcount_matches_reference_cells() {
    let out = constaq(&["opcount", "--n", "2", "--t", "1"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("O_Syn=32 O_Spec=20"));
    let out = constaq(&["opcount", "--table"]);
    let text = stdout(&out);
    assert!(text.contains("13154"));
    assert!(text.contains("91644"));
    assert!(text.contains("note:"));
}

#[test]
fn factor_lists_thirteen_linear_factors() {
    let out = constaq(&[
        "factor",
        "--field",
        "GF(27;1,2,0,1;s=1)",
        "--n",
        "13",
        "--lambda",
        "w^13",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.matches("r=").count(), 13);
    assert!(text.contains("w^24 + x"));
}

#[test]
fn decode_worked_example() {
    let out = constaq(&[
        "decode",
        "--field",
        "GF(9;2,2,1;s=1)",
        "--n",
        "4",
        "--beta=-w",
        "--s",
        "2",
        "--k",
        "1",
        "--received",
        "0,1,1,1",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("mu = 0,w^7,w^2,w^5"));
    assert!(text.contains("gamma = 2 + w^3*x"));
    assert!(text.contains("message = 1"));
    assert!(text.contains("spectrum D = 1,1,1,1"));
}

#[test]
fn decode_failure_exits_5() {
    let out = constaq(&[
        "decode",
        "--field",
        "GF(9;2,2,1;s=1)",
        "--n",
        "4",
        "--beta=-w",
        "--s",
        "2",
        "--k",
        "1",
        "--received",
        "0,1,1,w^3",
    ]);
    assert_eq!(out.status.code(), Some(5));
    assert!(stdout(&out).contains("failure"));
    let out = constaq(&[
        "decode",
        "--output",
        "json",
        "--field",
        "GF(9;2,2,1;s=1)",
        "--n",
        "4",
        "--beta=-w",
        "--s",
        "2",
        "--k",
        "1",
        "--received",
        "0,1,1,w^3",
    ]);
    assert_eq!(out.status.code(), Some(5));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["status"], "failure");
}

#[test]
fn css_reports_mds_code() {
    let out = constaq(&[
        "css",
        "--field",
        "GF(27;1,2,0,1;s=1)",
        "--n",
        "13",
        "--beta=-1",
        "--s",
        "3",
        "--zero-set",
        "0,1,2,3,4,5,6,7,8,9",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("[[13,7,4]]"));
    assert!(text.contains("weakly-self-dual"));
    // JSON mirror parses and carries the same parameters
    let out = constaq(&[
        "css",
        "--output",
        "json",
        "--field",
        "GF(27;1,2,0,1;s=1)",
        "--n",
        "13",
        "--beta=-1",
        "--s",
        "3",
        "--zero-set",
        "0,1,2,3,4,5,6,7,8,9",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["css"]["n"], 13);
    assert_eq!(v["css"]["k"], 7);
    assert_eq!(v["css"]["d_lower"], 4);
}

#[test]
fn containment_violation_exits_3() {
    let out = constaq(&[
        "css",
        "--field",
        "GF(27;1,2,0,1;s=1)",
        "--n",
        "13",
        "--beta=-1",
        "--s",
        "3",
        "--zero-set",
        "0,1,2,3,4,5",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn invalid_plan_exits_2() {
    let out = constaq(&["factor", "--field", "GF(10)", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = constaq(&[
        "factor",
        "--field",
        "GF(27;1,2,0,1;s=1)",
        "--n",
        "3",
        "--lambda",
        "1",
    ]);
    // n = 3 shares the characteristic: repeated-root plans are refused
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cosets_command() {
    let out = constaq(&["cosets", "--n", "5", "--q", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("C_1 = [1, 2, 3, 4] (symmetric)"));
}

#[test]
fn qsim_relations_and_roundtrip() {
    let out = constaq(&["qsim", "verify-relations", "--field", "GF(4)", "--n", "3"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("8/8 pass"));

    let out = constaq(&[
        "qsim",
        "roundtrip",
        "--field",
        "GF(5)",
        "--n",
        "4",
        "--delta",
        "3",
        "--b1",
        "0",
        "--b2",
        "1",
        "--error",
        "X:2:w",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("fidelity = 1.000000000"));

    let out = constaq(&[
        "qsim", "syndrome", "--field", "GF(4)", "--n", "3", "--error", "none",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("s_X = 0"));
    assert!(text.contains("s_Z = 0"));

    let out = constaq(&["qsim", "encode", "--field", "GF(32)", "--n", "31"]);
    assert_eq!(out.status.code(), Some(6));
}

#[test]
fn seed_env_var_overrides_flag() {
    let run = |env: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_constaq"));
        cmd.args([
            "qsim", "encode", "--field", "GF(4)", "--n", "3", "--dump", "--seed", "7",
        ]);
        if let Some(seed) = env {
            cmd.env("CONSTAQ_SEED", seed);
        }
        String::from_utf8_lossy(&cmd.output().unwrap().stdout).into_owned()
    };
    let with_flag = run(None);
    let with_env = run(Some("8"));
    assert_ne!(with_flag, with_env);
    assert_eq!(with_env, run(Some("8")));
}

#[test]
fn repro_is_green() {
    let out = constaq(&["repro"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert_eq!(text.matches(": PASS").count(), 7);
    assert!(!text.contains("FAIL"));
}
