//! End-to-end tests against the built binary.

use std::process::{Command, Output};

fn pinchcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pinchcalc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn invariants_json_fields() {
    let out = pinchcalc(&["invariants", "4", "9", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["p"], 4);
    assert_eq!(v["q"], 9);
    assert_eq!(v["mirrored"], false);
    assert_eq!(v["n"], 2);
    assert_eq!(v["sigma"], -16);
    assert_eq!(v["upsilon"], -8);
    assert_eq!(v["gap"], 0);
    assert_eq!(v["oss_lower"], 0);
    assert_eq!(v["gamma4_predicted"], 2);
    assert_eq!(v["gamma4_lower"], 0);
    assert_eq!(v["gamma4_upper"], 2);
    assert_eq!(v["classification"], "counterexample-descended");
}

#[test]
fn invariants_unknot_and_errors() {
    let out = pinchcalc(&["invariants", "1", "1", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["n"], 0);
    assert_eq!(v["sigma"], 0);
    assert_eq!(v["upsilon"], 0);
    assert_eq!(v["classification"], "unknot");

    let out = pinchcalc(&["invariants", "6", "9"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(err.contains("not coprime"), "stderr was: {err}");
}

#[test]
fn invariants_mirrored_input() {
    let out = pinchcalc(&["invariants", "-4", "9", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["mirrored"], true);
    // values are reported for the positive knot, never silently negated
    assert_eq!(v["sigma"], -16);
}

#[test]
fn pinch_steps_and_seed() {
    let out = pinchcalc(&["pinch", "4", "9"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0], "T(4,9) --(-1)--> T(2,5)");
    assert_eq!(lines[1], "T(2,5) --(-1)--> T(0,1)");
    assert_eq!(lines[2], "seed {n=2, p0=0, q1=5, eps=[-1,-1], ms=[2]}");

    // the figure-one example: the first step of (7,4), taken in the typed
    // orientation, lands on T(3,2)
    let out = pinchcalc(&["pinch", "7", "4"]);
    let text = stdout(&out);
    assert!(
        text.lines().next().unwrap().contains("T(3,2)"),
        "got: {text}"
    );

    let out = pinchcalc(&["pinch", "2", "1"]);
    let text = stdout(&out);
    assert_eq!(
        text.lines().count(),
        1,
        "unknot reduces in zero steps: {text}"
    );
    assert!(text.starts_with("seed {n=0"));
}

#[test]
fn synthesize_round_trip_and_errors() {
    let out = pinchcalc(&[
        "synthesize",
        "--p0",
        "0",
        "--q1",
        "5",
        "--eps",
        "-1,-1",
        "--ms",
        "2",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("T(4,9)"));

    let out = pinchcalc(&[
        "synthesize",
        "--p0",
        "2",
        "--q1",
        "3",
        "--eps",
        "1,1",
        "--ms",
        "2",
    ]);
    assert!(stdout(&out).starts_with("T(6,5)"));

    let out = pinchcalc(&["synthesize", "--p0", "1", "--q1", "3", "--eps", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(err.contains("constraint (b)"), "stderr was: {err}");

    let out = pinchcalc(&["synthesize", "--p0", "0", "--q1", "4", "--eps", "-1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr.clone())
        .unwrap()
        .contains("constraint (c)"));

    let out = pinchcalc(&[
        "synthesize",
        "--p0",
        "0",
        "--q1",
        "5",
        "--eps",
        "-1,-1",
        "--ms",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr.clone())
        .unwrap()
        .contains("even"));
}

#[test]
fn scan_filters_and_content() {
    let out = pinchcalc(&[
        "scan", "--pmax", "30", "--qmax", "30", "--filter", "verified",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text
        .lines()
        .next()
        .unwrap()
        .starts_with("p,q,mirrored,n,sigma"));
    assert!(text.lines().any(|l| l.starts_with("6,5,")));
    assert!(text.lines().any(|l| l.starts_with("8,7,")));

    let out = pinchcalc(&[
        "scan", "--pmax", "10", "--qmax", "10", "--filter", "moebius",
    ]);
    let text = stdout(&out);
    assert!(text.lines().any(|l| l.starts_with("5,3,")));
    assert!(text.lines().any(|l| l.starts_with("7,3,")));

    let out = pinchcalc(&[
        "scan",
        "--pmax",
        "4",
        "--qmax",
        "9",
        "--filter",
        "counterexample",
    ]);
    let text = stdout(&out);
    assert!(text.lines().any(|l| l.starts_with("4,9,")));
}

#[test]
fn scan_is_deterministic_across_jobs() {
    let baseline = pinchcalc(&["scan", "--pmax", "40", "--qmax", "40", "--format", "json"]);
    for jobs in ["2", "4", "7"] {
        let out = pinchcalc(&[
            "scan", "--pmax", "40", "--qmax", "40", "--format", "json", "--jobs", jobs,
        ]);
        assert_eq!(
            out.stdout, baseline.stdout,
            "output differs with --jobs {jobs}"
        );
    }
}

#[test]
fn scan_record_round_trips_through_invariants() {
    let out = pinchcalc(&["scan", "--pmax", "20", "--qmax", "20", "--format", "json"]);
    assert!(out.status.success());
    for line in stdout(&out).lines().take(40) {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        let p = v["p"].to_string();
        let q = v["q"].to_string();
        let single = pinchcalc(&["invariants", &p, &q, "--format", "json"]);
        assert_eq!(
            stdout(&single).trim(),
            line,
            "record mismatch for T({p},{q})"
        );
    }
}

#[test]
fn scan_rejects_out_of_cap_bounds() {
    let out = pinchcalc(&["scan", "--pmax", "100000", "--qmax", "10"]);
    assert_eq!(out.status.code(), Some(2));
    let out = pinchcalc(&["scan", "--pmax", "1", "--qmax", "10"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn selftest_passes_and_detects_corruption() {
    let out = pinchcalc(&[
        "selftest",
        "--pmax",
        "25",
        "--qmax",
        "25",
        "--oracle-cap",
        "60",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("0 failures"));
    assert!(text.contains("oracle agreement"));

    let out = pinchcalc(&[
        "selftest",
        "--pmax",
        "25",
        "--qmax",
        "25",
        "--inject-corruption",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("first offenders"));
}

#[test]
fn oracle_cap_env_var_is_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_pinchcalc"))
        .args([
            "selftest",
            "--pmax",
            "25",
            "--qmax",
            "25",
            "--oracle-cap",
            "120",
        ])
        .env("PINCHCALC_ORACLE_CAP", "40")
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("skipped by dim cap"));
    let skipped: Vec<&str> = text.lines().filter(|l| l.contains("skipped")).collect();
    assert!(
        !skipped[0].contains("0 skipped"),
        "env cap should skip some knots: {skipped:?}"
    );
}
