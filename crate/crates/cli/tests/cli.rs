use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ratmodel::dgmod::DGModule;
use ratmodel::json::{category_to_string, complex_from_str, complex_to_string};
use ratmodel::permgrp::group_from_spec;
use ratmodel::random::{random_extension, random_qc2_complex};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ratmodel")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ratmodel-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn split_json_reports_passing_checks() {
    let o = run(&["split", "C2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["idempotents"].as_array().unwrap().len(), 2);
    assert_eq!(v["status"], "pass");
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn marks_s3_table() {
    let o = run(&["marks", "S3"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<Vec<String>> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.split('\t').skip(1).map(str::to_string).collect())
        .collect();
    let expect = [["6", "0", "0", "0"], ["3", "1", "0", "0"], ["2", "0", "2", "0"], ["1", "1", "1", "1"]];
    assert_eq!(rows, expect.map(|r| r.map(str::to_string).to_vec()).to_vec());
}

#[test]
fn skew_dihedral_verifies() {
    let o = run(&["skew-dihedral", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("iso verified, dim 6"));
}

#[test]
fn malformed_input_names_file_and_position() {
    let p = scratch("bad.json", "{\"group\":\"C2\",\n\"lo\":");
    let o = run(&["homology", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains(p.to_str().unwrap()), "{err}");
    assert!(err.contains("line 2"), "{err}");
    assert_eq!(run(&["marks", "C7x"]).status.code(), Some(2));
    assert_eq!(run(&["homology", "/nonexistent/x.json"]).status.code(), Some(2));
}

#[test]
fn formality_exit_codes() {
    let c2 = Arc::new(group_from_spec("C2").unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let formal = random_extension(&c2, 1, true, &mut rng).unwrap();
    let not_formal = random_extension(&c2, 1, false, &mut rng).unwrap();
    let a = scratch("formal.json", &category_to_string(&formal));
    let b = scratch("not_formal.json", &category_to_string(&not_formal));
    let o = run(&["formality", a.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("formal"));
    let o = run(&["formality", b.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.is_object());
}

#[test]
fn homology_of_regular_complex_file() {
    let s3 = Arc::new(group_from_spec("S3").unwrap());
    let p = scratch("regular.json", &complex_to_string(&DGModule::regular(s3)));
    let o = run(&["homology", p.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(serde_json::from_str::<serde_json::Value>(&stdout(&o)).is_ok());
}

#[test]
fn complex_json_roundtrip() {
    let c2 = Arc::new(group_from_spec("C2").unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let x = random_qc2_complex(&c2, 3, &mut rng).unwrap();
        let s = complex_to_string(&x);
        let y = complex_from_str(&s).unwrap();
        assert_eq!(complex_to_string(&y), s);
    }
}

#[test]
fn action_keys_in_cycle_notation() {
    let text = r#"{"group":"C2","lo":0,"hi":1,"dims":[1,1],"d":{"1":[["1"]]},
        "action":{"(0 1)":{"0":[["-1"]],"1":[["-1"]]}}}"#;
    let by_index = text.replace("\"(0 1)\"", "\"1\"");
    let a = complex_from_str(text).unwrap();
    assert_eq!(complex_to_string(&a), complex_to_string(&complex_from_str(&by_index).unwrap()));
    let p = scratch("cycle_keys.json", text);
    let o = run(&["homology", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1);
    let bad = scratch("not_member.json", &text.replace("(0 1)", "(0 2)"));
    assert_eq!(run(&["homology", bad.to_str().unwrap()]).status.code(), Some(2));
}
