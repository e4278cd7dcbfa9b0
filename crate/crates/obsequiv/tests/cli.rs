//! End-to-end tests of the command-line interface: exit-code contract
//! (0 pass, 2 verdict rejection, 1 usage error) and byte-identical reports
//! for identical invocations.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_obsequiv"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn entropy_prints_exact_value() {
    let out = run(&["entropy", "--probs", "0.5,0.5"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1");

    let out = run(&[
        "entropy",
        "--probs",
        "0.333333333333333333,0.666666666666666666",
    ]);
    let h: f64 = stdout(&out).trim().parse().unwrap();
    assert!((h - 0.918_295_834_054_489_6).abs() < 1e-9);
}

#[test]
fn usage_errors_exit_one() {
    let out = run(&["entropy"]); // missing --probs
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["entropy", "--probs", "0.9,0.3"]); // bad distribution
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn coarse_grain_then_expected_bernoulli_rejection() {
    let dir = tempfile::tempdir().unwrap();
    let seq = dir.path().join("seq.txt");
    let out = run(&[
        "coarse-grain",
        "--system",
        "baker",
        "--partition",
        "dyadic:1",
        "--len",
        "100000",
        "--seed",
        "7",
        "--out",
        seq.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&seq).unwrap();
    assert!(text.starts_with("alphabet=4\n"));

    // Rejection is the expected verdict here: exit 2, report still written.
    let report = dir.path().join("witness.json");
    let out = run(&[
        "test-bernoulli",
        "--input",
        seq.to_str().unwrap(),
        "--out",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["payload"]["reject"], true);

    // The same sequence passes the Markov test: exit 0.
    let out = run(&["test-markov", "--input", seq.to_str().unwrap()]);
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );

    // And the stationarity check.
    let out = run(&[
        "test-stationary",
        "--input",
        seq.to_str().unwrap(),
        "--blocks",
        "5",
    ]);
    assert!(out.status.success());
}

#[test]
fn bernoulli_control_is_not_rejected() {
    // A fair coin from the left/right observation passes test-bernoulli.
    let dir = tempfile::tempdir().unwrap();
    let seq = dir.path().join("fair.txt");
    run(&[
        "coarse-grain",
        "--system",
        "baker",
        "--partition",
        "leftright",
        "--len",
        "100000",
        "--seed",
        "11",
        "--out",
        seq.to_str().unwrap(),
    ]);
    let out = run(&["test-bernoulli", "--input", seq.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn certify_markov_exit_codes_and_manifest() {
    let out = run(&[
        "certify-markov",
        "--n",
        "1",
        "--len",
        "200000",
        "--seed",
        "42",
    ]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["tool"], "obsequiv");
    assert_eq!(json["seed"], 42);
    assert_eq!(json["payload"]["pass"], true);
    assert!(json["invocation"].as_array().unwrap().len() >= 7);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let args = [
        "certify-markov",
        "--n",
        "1",
        "--len",
        "150000",
        "--seed",
        "5",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let m = [
        "mixing",
        "--system",
        "rotation",
        "--a-lo",
        "0",
        "--a-hi",
        "0.5",
        "--b-lo",
        "0",
        "--b-hi",
        "0.5",
        "--max-lag",
        "5",
        "--samples",
        "20000",
        "--seed",
        "9",
    ];
    let a = run(&m);
    let b = run(&m);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn orbit_csv_and_json() {
    let out = run(&[
        "orbit", "--system", "baker", "--steps", "4", "--x0", "0.3", "--y0", "0.3",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,y"));
    assert_eq!(lines.next(), Some("0.3,0.3"));
    assert_eq!(text.lines().count(), 5);

    // Random start requires a seed.
    let out = run(&["orbit", "--system", "baker", "--steps", "4"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&[
        "orbit", "--system", "rotation", "--alpha", "0.25", "--steps", "4", "--x0", "0.0",
        "--format", "json",
    ]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["payload"]["points"][2][0], 0.5);
}

#[test]
fn conjugacy_subcommand_passes() {
    let out = run(&[
        "conjugacy",
        "--points",
        "300",
        "--steps",
        "40",
        "--width",
        "64",
        "--seed",
        "3",
    ]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["payload"]["failures"], 0);
}

#[test]
fn window_equiv_and_transition_flows() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    for (path, seed) in [(&a, 21u64), (&b, 22u64)] {
        run(&[
            "coarse-grain",
            "--system",
            "baker",
            "--partition",
            "leftright",
            "--len",
            "50000",
            "--seed",
            &seed.to_string(),
            "--out",
            path.to_str().unwrap(),
        ]);
    }
    let out = run(&[
        "window-equiv",
        "--input-a",
        a.to_str().unwrap(),
        "--input-b",
        b.to_str().unwrap(),
        "--window",
        "3",
        "--tol",
        "0.02",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let out = run(&["transition", "--input", a.to_str().unwrap()]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let m = &json["payload"]["matrix"];
    assert!((m[0][0].as_f64().unwrap() - 0.5).abs() < 0.02);
}

#[test]
fn chain_analyze_from_matrix_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    std::fs::write(&path, "[[0.0,1.0],[1.0,0.0]]").unwrap();
    let out = run(&["chain-analyze", "--matrix", path.to_str().unwrap()]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["payload"]["irreducible"], true);
    assert_eq!(json["payload"]["aperiodic"], false);
    assert_eq!(json["payload"]["periods"][0], 2);
    assert_eq!(json["payload"]["nontriviality"]["nontrivial"], false);
}

#[test]
fn congruence_subcommand() {
    let out = run(&[
        "congruence",
        "--n",
        "1",
        "--len",
        "50000",
        "--seed",
        "31",
        "--points",
        "200",
        "--steps",
        "30",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["payload"]["bound"]["pass"], true);
    assert_eq!(json["payload"]["conjugacy"]["pass"], true);
    assert_eq!(json["payload"]["window_equivalence"]["pass"], true);
}

#[test]
fn partition_file_round_trip() {
    // A partition serialized by the library feeds back into coarse-grain.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("part.json");
    let part = obsequiv::partitions::left_right_partition();
    std::fs::write(&path, serde_json::to_string(&part).unwrap()).unwrap();
    let out = run(&[
        "coarse-grain",
        "--system",
        "baker",
        "--partition-file",
        path.to_str().unwrap(),
        "--len",
        "1000",
        "--seed",
        "1",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("alphabet=2\n"));
}
