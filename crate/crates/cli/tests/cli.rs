use std::fs;
use std::process::{Command, Output};

use design_forge::blocks::{enumerate_u, enumerate_w, groups_u2};
use design_forge::{verify_bibd, verify_gdd, BinaryField, FieldElement};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_design-forge"))
        .args(args)
        .env_remove("DESIGN_FORGE_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn csv_row<'a>(text: &'a str, k: &str) -> Vec<&'a str> {
    text.lines()
        .map(|l| l.split(',').collect::<Vec<_>>())
        .find(|cells| cells[0] == k)
        .unwrap()
}

#[test]
fn enumerate_counts() {
    let out = run(&["enumerate", "--m", "3", "--k", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 7);
    assert!(String::from_utf8_lossy(&out.stderr).contains(r#""count":7"#));

    let out = run(&["enumerate", "--m", "3", "--k", "3", "--family", "U", "--alpha", "1"]);
    assert_eq!(stdout(&out).lines().count(), 28);
    assert!(stdout(&out).starts_with(r#"{"m":3,"k":3,"family":"U","alpha":1,"block":["#));
}

#[test]
fn enumerate_ranges_of_k() {
    let out = run(&["enumerate", "--m", "4", "--k", "3..4", "--format", "csv"]);
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("m,k,family,alpha,block"));
    assert_eq!(text.lines().count(), 1 + 35 + 105);
}

#[test]
fn exit_codes() {
    let out = run(&["enumerate", "--m", "4", "--k", "99"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert_eq!(run(&["enumerate", "--m", "2", "--k", "3"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate", "--m", "3", "--k", "3", "--family", "I"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate", "--m", "3", "--k", "3", "--family", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["verify-gdd", "--m", "3", "--k", "3"]).status.code(), Some(2));
}

#[test]
fn budget_overrun_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.jsonl");
    let out = run(&["export", "--m", "4", "--k", "6", "--budget", "100", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(!path.exists());

    let env = Command::new(env!("CARGO_BIN_EXE_design-forge"))
        .args(["enumerate", "--m", "4", "--k", "6"])
        .env("DESIGN_FORGE_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(3));
    // the flag beats the environment
    let flag = Command::new(env!("CARGO_BIN_EXE_design-forge"))
        .args(["enumerate", "--m", "4", "--k", "6", "--budget", "100000"])
        .env("DESIGN_FORGE_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(flag.status.code(), Some(0));
}

#[test]
fn params_rows() {
    let m4 = stdout(&run(&["params", "--m", "4"]));
    assert_eq!(
        m4.lines().next(),
        Some("k,b_k,r_k,lambda_k,lambda_prime_k,lambda_k_closed_form,prior_work_lambda")
    );
    let k4 = csv_row(&m4, "4");
    assert_eq!((k4[3], k4[4]), ("6", "12"));

    let m5 = stdout(&run(&["params", "--m", "5"]));
    assert_eq!(csv_row(&m5, "5")[3], "112");

    let m3 = stdout(&run(&["params", "--m", "3"]));
    assert_eq!(csv_row(&m3, "2")[3], "0");
    assert_eq!(csv_row(&m3, "5")[3], "0");

    // exact decimal strings all the way up
    let big = stdout(&run(&["params", "--m", "12"]));
    let cells = big.lines().skip(1).flat_map(|l| l.split(','));
    assert!(cells.clone().all(|c| c.chars().all(|ch| ch.is_ascii_digit() || ch == '-')));
    assert!(cells.map(str::len).max().unwrap() > 30);
}

#[test]
fn params_jsonl() {
    let text = stdout(&run(&["params", "--m", "3", "--format", "jsonl"]));
    assert_eq!(
        text.lines().next(),
        Some(r#"{"k":"2","b_k":"0","r_k":"0","lambda_k":"0","lambda_prime_k":"0","lambda_k_closed_form":null,"prior_work_lambda":null}"#)
    );
}

#[test]
fn crosscheck_examples() {
    let out = run(&["crosscheck", "--m", "4", "--k", "3..7"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).lines().skip(1).all(|l| l.ends_with(",match")));

    let out = run(&["crosscheck", "--m", "3", "--k", "3..4", "--gdd"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("3,3,lambda_prime,1,1,match"));
    assert!(text.contains("3,4,lambda_prime,4,4,match"));

    let out = run(&["crosscheck", "--m", "4", "--k", "3", "--budget", "10"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["crosscheck", "--m", "3..4", "--table", "x.csv"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn perturbed_table_fails() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("p.csv");
    run(&["params", "--m", "3", "--out", table.to_str().unwrap()]);
    let text = fs::read_to_string(&table).unwrap();
    fs::write(&table, text.replace("\n4,7,4,2,", "\n4,7,4,3,")).unwrap();
    let out = run(&["crosscheck", "--m", "3", "--table", table.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert_eq!(
        stderr.trim(),
        "m,k,quantity,observed,expected,status\n3,4,lambda,2,3,mismatch"
    );
}

#[test]
fn reruns_are_byte_identical() {
    for args in [
        &["enumerate", "--m", "4", "--k", "3..6"][..],
        &["enumerate", "--m", "4", "--k", "4", "--family", "U", "--alpha", "7"],
        &["params", "--m", "6"],
        &["crosscheck", "--m", "3..4"],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}

#[test]
fn bibd_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.jsonl");
    let out = run(&["export", "--m", "4", "--k", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    let from_file = run(&["verify-bibd", "--input", path.to_str().unwrap()]);
    let live = run(&["verify-bibd", "--m", "4", "--k", "5"]);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(from_file.stdout, live.stdout);

    let points: Vec<FieldElement> = BinaryField::new(4).unwrap().nonzero().collect();
    let report = verify_bibd(&points, enumerate_w(4, 5).unwrap().blocks()).unwrap();
    assert_eq!(stdout(&from_file).trim(), serde_json::to_string(&report).unwrap());
}

#[test]
fn gdd_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let blocks = dir.path().join("u.jsonl");
    let groups = dir.path().join("g.jsonl");
    run(&["export", "--m", "3", "--k", "4", "--family", "U", "--alpha", "5", "--out", blocks.to_str().unwrap()]);
    run(&["export", "--m", "3", "--family", "U2", "--alpha", "5", "--out", groups.to_str().unwrap()]);

    let with_groups = run(&["verify-gdd", "--input", blocks.to_str().unwrap(), "--groups", groups.to_str().unwrap()]);
    let implied = run(&["verify-gdd", "--input", blocks.to_str().unwrap()]);
    let live = run(&["verify-gdd", "--m", "3", "--k", "4", "--alpha", "5"]);
    assert_eq!(with_groups.status.code(), Some(0));
    assert_eq!(with_groups.stdout, live.stdout);
    assert_eq!(implied.stdout, live.stdout);

    let alpha = FieldElement::new(5);
    let points: Vec<FieldElement> = BinaryField::new(4).unwrap().nonzero().filter(|&x| x != alpha).collect();
    let report = verify_gdd(
        &points,
        groups_u2(3, alpha).unwrap().blocks(),
        enumerate_u(3, 4, alpha).unwrap().blocks(),
    )
    .unwrap();
    assert_eq!(stdout(&live).trim(), serde_json::to_string(&report).unwrap());
    assert!(stdout(&live).contains(r#""cross_group_lambda":4"#));
}

#[test]
fn verify_rejects_foreign_designs() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.jsonl");
    fs::write(&path, "{\"m\":3,\"k\":3,\"family\":\"W\",\"alpha\":null,\"block\":[1,2,3]}\n").unwrap();
    let out = run(&["verify-bibd", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains(r#""pair":[1,4]"#));

    fs::write(&path, "{\"m\":3,\"k\":3,\"family\":\"W\",\"alpha\":null,\"block\":[1,2,30]}\n").unwrap();
    assert_eq!(run(&["verify-bibd", "--input", path.to_str().unwrap()]).status.code(), Some(1));

    fs::write(&path, "not json\n").unwrap();
    assert_eq!(run(&["verify-bibd", "--input", path.to_str().unwrap()]).status.code(), Some(2));
}
