// Copyright 2026 The spinpoly Authors
// SPDX-License-Identifier: Apache-2.0

use assert_cmd::Command;
use predicates::prelude::*;

fn spinpoly() -> Command {
    let mut cmd = Command::cargo_bin("spinpoly").unwrap();
    cmd.env("SPINPOLY_THREADS", "2");
    cmd
}

#[test]
fn fixtures_pass() {
    spinpoly().arg("fixtures").assert().success().stdout(predicate::str::ends_with("24 fixtures passed\n"));
}

#[test]
fn corrupted_cfn_is_caught_by_the_fixtures() {
    spinpoly()
        .args(["fixtures", "--corrupt-cfn", "4,2"])
        .assert()
        .code(1)
        .stdout(predicate::str::contains("23 of 24 fixtures passed; first failure: E4"));
}

#[test]
fn verify_exit_codes() {
    spinpoly().args(["verify", "--max-two-j", "0"]).assert().success();
    spinpoly()
        .args(["verify", "--max-two-j", "10"])
        .assert()
        .success()
        .stdout(predicate::str::contains("\"failures\": []"));
    spinpoly().args(["verify", "--max-two-j", "3", "--tol-scale", "0"]).assert().code(1);
}

#[test]
fn usage_errors_exit_two() {
    spinpoly().args(["basis", "--j", "1.3"]).assert().code(2);
    spinpoly().args(["basis", "--j", "-1"]).assert().code(2);
    spinpoly().args(["plotdata", "--figure", "cayley-B56"]).assert().code(2);
    spinpoly().args(["coeffs", "exp", "--j", "1", "--k", "3", "--theta", "1"]).assert().code(2);
    spinpoly().arg("no-such-command").assert().code(2);
}

#[test]
fn basis_inverse_for_spin_one() {
    spinpoly()
        .args(["basis", "--j", "1", "--inverse"])
        .assert()
        .success()
        .stdout("0/1,1/1,0/1\n1/4,0/1,-1/4\n1/8,-1/4,1/8\n");
}

#[test]
fn cfn_values() {
    spinpoly().args(["cfn", "--n", "4", "--k", "2", "--format", "csv"]).assert().success().stdout("n,k,t\n4,2,-1/1\n");
}

#[test]
fn cayley_exact_spin_one() {
    let out = spinpoly().args(["coeffs", "cayley", "--j", "1", "--exact", "--format", "csv"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    // 𝔄₁ = 2α/(1 + 4α²)
    assert!(text.lines().any(|l| l == "A,1,0/1 2/1,1/1 0/1 4/1"), "{text}");
}

#[test]
fn bridge_agrees() {
    spinpoly()
        .args(["bridge", "--j", "2", "--k", "1", "--alpha", "0.5", "--format", "csv"])
        .assert()
        .success()
        .stdout(predicate::str::contains(",true"));
}

#[test]
fn csv_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b12.csv");
    spinpoly()
        .args(["plotdata", "--figure", "cayley-B12", "--grid", "1:2:2", "--csv"])
        .arg(&path)
        .assert()
        .success()
        .stdout("");
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("x,series,value\n1,B1/a^1 j=1,0.2\n"), "{text}");
    assert_eq!(text.lines().count(), 1 + 4 * 2);
}

#[test]
fn plotdata_is_deterministic() {
    let run = || {
        let out = spinpoly().args(["plotdata", "--figure", "exp-A", "--grid", "0:4pi:40"]).output().unwrap();
        assert!(out.status.success());
        out.stdout
    };
    let first = run();
    assert!(!first.is_empty());
    assert_eq!(first, run());
}

#[test]
fn shear_reports_inconsistency() {
    spinpoly()
        .args(["shear", "--j", "3/2", "--theta", "1"])
        .assert()
        .success()
        .stdout(predicate::str::contains("inconsistent across |M|: true"));
}

#[test]
fn bench_emits_every_phase() {
    spinpoly()
        .args(["bench", "--two-j", "4", "--samples", "2", "--format", "csv"])
        .assert()
        .success()
        .stdout(predicate::str::contains("b_table_exact").and(predicate::str::contains("exp_eval")));
}
