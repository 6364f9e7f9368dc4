use assert_cmd::Command;
use hopfperm::format::Expansion;
use predicates::prelude::*;

fn hopfperm() -> Command {
    let mut cmd = Command::cargo_bin("hopfperm").unwrap();
    cmd.env_remove("HOPFPERM_MAX_DEGREE");
    cmd
}

fn stdout(args: &[&str]) -> String {
    let out = hopfperm().args(args).output().unwrap();
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout)
        .unwrap()
        .trim_end()
        .to_string()
}

#[test]
fn expand_monomial_to_fundamental() {
    assert_eq!(
        stdout(&[
            "expand",
            "--algebra",
            "ssym",
            "--from",
            "M",
            "--to",
            "F",
            "4123"
        ]),
        "F[4123] - F[4132] - F[4213] + F[4321]"
    );
}

#[test]
fn quasi_shuffle_product() {
    let out = stdout(&[
        "product",
        "--algebra",
        "qsym",
        "--basis",
        "M",
        "(2)",
        "(1,1)",
    ]);
    let terms: Vec<&str> = out.split(" + ").collect();
    assert_eq!(terms.len(), 5, "{out}");
    for t in ["M(1,1,2)", "M(1,2,1)", "M(2,1,1)", "M(1,3)", "M(3,1)"] {
        assert!(terms.contains(&t), "{t} missing from {out}");
    }
}

#[test]
fn global_descent_series() {
    assert_eq!(
        stdout(&["series", "--name", "G1", "--terms", "7"]),
        "1 1 3 13 71 461 3447"
    );
    assert_eq!(
        stdout(&["series", "--name", "G2", "--terms", "6"]),
        "1 2 7 32 177 1142"
    );
}

#[test]
fn products_coproducts_and_antipodes() {
    assert_eq!(
        stdout(&["product", "--basis", "F", "12", "312"])
            .split(" + ")
            .count(),
        10
    );
    assert_eq!(
        stdout(&["coproduct", "--basis", "F", "42531"])
            .split(" + ")
            .count(),
        6
    );
    assert_eq!(
        stdout(&["antipode", "--basis", "F", "231"]),
        "F[132] - F[213] - 2*F[231] + F[312]"
    );
    assert_eq!(
        stdout(&["antipode", "--basis", "F", "--takeuchi", "231"]),
        "F[132] - F[213] - 2*F[231] + F[312]"
    );
    assert_eq!(
        stdout(&["antipode", "--basis", "M", "--power", "4", "231"]),
        "-4*M[132] + 4*M[213] + M[231]"
    );
    assert_eq!(
        stdout(&[
            "antipode",
            "--algebra",
            "qsym",
            "--basis",
            "M",
            "--power",
            "2",
            "(2,1)"
        ]),
        "M(2,1)"
    );
    assert_eq!(
        stdout(&["product", "--basis", "M", "--dual", "1", "1"]),
        "M*[21]"
    );
}

#[test]
fn json_output_round_trips() {
    for args in [
        vec!["--json", "product", "--basis", "M", "12", "21"],
        vec!["--json", "coproduct", "--basis", "M", "3412"],
        vec![
            "--json",
            "product",
            "--algebra",
            "qsym",
            "--basis",
            "F",
            "{1}:2",
            "(1,2)",
        ],
        vec![
            "--json",
            "coproduct",
            "--algebra",
            "qsym",
            "--basis",
            "M",
            "(1,2)",
        ],
        vec!["--json", "antipode", "--dual", "--basis", "F", "231"],
    ] {
        let json = stdout(&args);
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        let x = Expansion::from_json(&value).unwrap();
        assert_eq!(x.to_json(), value, "{args:?}");
        let text = stdout(&args[1..]);
        assert_eq!(x.to_text(), text);
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["--json", "product", "--basis", "M", "123", "21"];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn tables_series_and_lists() {
    let csv = stdout(&["table", "--name", "d", "--degree", "3"]);
    assert_eq!(csv.lines().next().unwrap(), "d,{},{1},\"{1,2}\",{2}");
    assert_eq!(csv.lines().count(), 5);
    let theta: serde_json::Value = serde_json::from_str(&stdout(&[
        "--json", "table", "--name", "theta", "--degree", "3",
    ]))
    .unwrap();
    assert_eq!(theta["values"].as_array().unwrap().len(), 6);
    assert_eq!(
        stdout(&["kernel", "--degree", "3"]),
        "dimension 2\n132\n213"
    );
    assert_eq!(
        stdout(&["primitives", "--degree", "3"])
            .lines()
            .next()
            .unwrap(),
        "dimension 3"
    );
    assert_eq!(stdout(&["mobius", "123", "321"]), "1");
    assert_eq!(stdout(&["mobius", "12", "21"]), "-1");
    assert_eq!(stdout(&["mobius", "132", "321"]), "0");
}

#[test]
fn verify_reports_and_passes() {
    let out = stdout(&["verify", "--suite", "all", "--max-degree", "4"]);
    assert!(out.ends_with(" 0 failed"), "{out}");
    let json: serde_json::Value = serde_json::from_str(&stdout(&[
        "--json",
        "verify",
        "--suite",
        "gessel",
        "--max-degree",
        "5",
    ]))
    .unwrap();
    assert_eq!(json["failed"], 0);
    assert_eq!(json["passed"], 6);
    assert!(stdout(&["verify", "--list"]).contains("weak-order:"));
}

#[test]
fn parse_errors_exit_with_status_two() {
    hopfperm()
        .args(["expand", "--from", "M", "--to", "F", "1233"])
        .assert()
        .code(2)
        .stderr(predicate::str::contains("Usage"));
    hopfperm().args(["frobnicate"]).assert().code(2);
    hopfperm().args(["series", "--name", "H1"]).assert().code(2);
    hopfperm()
        .args(["verify", "--suite", "nope"])
        .assert()
        .code(2);
    hopfperm()
        .args(["product", "--basis", "F", "F[12]", "M[1]"])
        .assert()
        .code(2);
    hopfperm()
        .env("HOPFPERM_MAX_DEGREE", "lots")
        .args(["kernel", "--degree", "2"])
        .assert()
        .code(2);
}

#[test]
fn degree_cap_exits_with_status_three() {
    hopfperm()
        .args(["expand", "--from", "M", "--to", "F", "123456789"])
        .assert()
        .code(3);
    hopfperm()
        .env("HOPFPERM_MAX_DEGREE", "3")
        .args(["kernel", "--degree", "4"])
        .assert()
        .code(3);
    hopfperm()
        .env("HOPFPERM_MAX_DEGREE", "9")
        .args(["product", "--basis", "F", "1234", "12345"])
        .assert()
        .success();
    hopfperm()
        .args(["product", "--basis", "F", "1234", "12345"])
        .assert()
        .code(3);
    hopfperm()
        .args(["verify", "--max-degree", "12"])
        .assert()
        .code(3);
}
