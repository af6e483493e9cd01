use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn coxrig(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coxrig"))
        .args(args)
        .env_remove("COXRIG_THREADS")
        .output()
        .expect("failed to run coxrig")
}

fn json(args: &[&str]) -> Value {
    let out = coxrig(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn check_e7_is_rigid() {
    let v = json(&["check", "--type", "E7", "--r", "7", "--m", "0"]);
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["command"], "check");
    assert_eq!(v["payload"]["verdict"]["rigid"], true);
    assert_eq!(v["payload"]["verdict"]["n"], 0);
    assert_eq!(v["payload"]["predicate"], true);
}

#[test]
fn check_with_both_oracles_csv() {
    let out = coxrig(&["check", "--type", "A", "--rank", "4", "--r", "2", "--m", "0", "--oracle", "both", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("family,rank,r,m,irr0,dimI0,dimIinf,dimI,n,rigid,method"));
    assert_eq!(lines.next(), Some("A,4,2,0,8,0,8,0,0,true,bruteforce"));
}

#[test]
fn exit_codes() {
    assert_eq!(coxrig(&["check", "--type", "G2", "--r", "4", "--m", "0"]).status.code(), Some(3));
    assert_eq!(coxrig(&["check", "--type", "G2", "--r", "0"]).status.code(), Some(3));
    assert_eq!(coxrig(&["check", "--type", "G2", "--r", "1", "--m", "-2"]).status.code(), Some(3));
    assert_eq!(coxrig(&["check", "--type", "D", "--rank", "2", "--r", "1"]).status.code(), Some(2));
    assert_eq!(coxrig(&["check", "--type", "E7", "--rank", "6", "--r", "1"]).status.code(), Some(2));
    assert_eq!(coxrig(&["check", "--type", "A", "--r", "1"]).status.code(), Some(2));
    assert_eq!(coxrig(&["check", "--bogus"]).status.code(), Some(2));
    assert_eq!(coxrig(&["orbit", "--type", "A", "--rank", "4", "--r", "5"]).status.code(), Some(3));
}

#[test]
fn symplectic_table_rows() {
    let v = json(&["table", "--families", "C", "--rank-max", "3", "--m-max", "0"]);
    let rows = v["payload"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    for row in rows {
        let n = row["rank"].as_u64().unwrap();
        let r = row["r"].as_u64().unwrap();
        let expect = r == 1 || (2 * n + 1) % r == 0 || (2 * n - 1) % r == 0;
        assert_eq!(row["rigid"], expect);
    }
    assert_eq!(v["payload"]["summary"]["mismatches"], serde_json::json!([]));
}

#[test]
fn exceptional_table_rows() {
    let v = json(&["table", "--families", "E,F,G", "--m-max", "0"]);
    let rigid: Vec<(String, u64)> = v["payload"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["rigid"] == true)
        .map(|r| (format!("{}{}", r["family"].as_str().unwrap(), r["rank"]), r["r"].as_u64().unwrap()))
        .collect();
    let names: Vec<(&str, u64)> = rigid.iter().map(|(s, r)| (s.as_str(), *r)).collect();
    assert_eq!(names, vec![("E6", 1), ("E7", 1), ("E7", 7), ("E8", 1), ("F4", 1), ("G2", 1)]);
}

#[test]
fn small_type_a_table_csv() {
    let out = coxrig(&["table", "--families", "A", "--rank-max", "1", "--m-max", "1", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let rigid = text.lines().skip(1).filter(|l| l.contains(",true,")).count();
    assert_eq!(rigid, 2);
}

#[test]
fn output_is_deterministic_and_round_trips() {
    let args = ["table", "--families", "A,B,G", "--rank-max", "4", "--m-max", "2"];
    let a = coxrig(&args).stdout;
    let b = coxrig(&args).stdout;
    assert_eq!(a, b);
    let v: Value = serde_json::from_slice(&a).unwrap();
    let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(again, v);
}

#[test]
fn orbit_e8() {
    let v = json(&["orbit", "--type", "E8", "--r", "17"]);
    assert_eq!(v["payload"]["dimO"], 128);
    assert_eq!(v["payload"]["dimC"], 120);
    let v = json(&["orbit", "--type", "A", "--rank", "4", "--r", "2", "--oracle", "both"]);
    assert_eq!(v["payload"]["jordan"], serde_json::json!([3, 2]));
    assert_eq!(v["payload"]["dimO"], 16);
}

#[test]
fn grading_a2() {
    let v = json(&["grading", "--type", "A", "--rank", "2"]);
    let kmp: Vec<u64> = v["payload"]["rows"].as_array().unwrap().iter().map(|r| r["kmp_dim"].as_u64().unwrap()).collect();
    // Cartan piece, then roots of height 1 with height -2, then height 2 with height -1
    assert_eq!(kmp, vec![2, 3, 3]);
    assert_eq!(kmp.iter().sum::<u64>(), 8);
}

#[test]
fn irregularity_a1() {
    let v = json(&["irregularity", "--type", "A", "--rank", "1", "--r", "1", "--m", "0"]);
    assert_eq!(v["payload"]["irregularity"], "1");
    let out = coxrig(&["irregularity", "--type", "A2", "--r", "1", "--m", "1", "--format", "text"]);
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("A2: irregularity 8"));
}

#[test]
fn strata_from_input_file() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(
        f,
        r#"[{{"degree": -1, "basis": "root", "root_coeffs": [1], "value": "1"}},
            {{"degree": 0, "basis": "root", "root_coeffs": [-1], "value": 1}}]"#
    )
    .unwrap();
    let path = f.path().to_str().unwrap();
    let v = json(&["strata", "--type", "A1", "--input", path]);
    assert_eq!(v["payload"]["depth"], "1/2");
    assert_eq!(v["payload"]["fundamental"], true);
    let v = json(&["strata", "--type", "A1", "--input", path, "--point", "[\"0\"]"]);
    assert_eq!(v["payload"]["depth"], "1");
    assert_eq!(v["payload"]["fundamental"], false);

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    write!(bad, r#"[{{"degree": 0, "basis": "cartan", "cartan_index": 3, "value": "1"}}]"#).unwrap();
    let out = coxrig(&["strata", "--type", "A1", "--input", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn thread_cap() {
    let run = |v: &str| {
        Command::new(env!("CARGO_BIN_EXE_coxrig"))
            .args(["table", "--families", "B", "--rank-max", "3", "--m-max", "0"])
            .env("COXRIG_THREADS", v)
            .output()
            .unwrap()
    };
    assert_eq!(run("0").status.code(), Some(2));
    assert_eq!(run("many").status.code(), Some(2));
    let one = run("1");
    assert!(one.status.success());
    assert_eq!(one.stdout, coxrig(&["table", "--families", "B", "--rank-max", "3", "--m-max", "0"]).stdout);
}
