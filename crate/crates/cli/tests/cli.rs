use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/corpus")
}

fn front(name: &str) -> String {
    corpus_dir().join(format!("{name}.front")).display().to_string()
}

fn jetlink(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jetlink")).args(args).output().unwrap()
}

fn results(out: &Output) -> Value {
    let v: Value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    });
    v["results"].clone()
}

#[test]
fn invariants_of_small_fronts() {
    let out = jetlink(&["invariants", &front("unknot")]);
    assert!(out.status.success());
    let r = results(&out);
    assert_eq!((r["tb"].as_i64(), r["r"].as_i64()), (Some(-1), Some(0)));

    let r = results(&jetlink(&["invariants", &front("a4")]));
    assert_eq!((r["tb"].as_i64(), r["r"].as_i64()), (Some(3), Some(0)));
}

#[test]
fn malformed_file_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.front");
    fs::write(&path, "strands 2\ns1 r1\n").unwrap();
    let out = jetlink(&["invariants", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("strand count mismatch"));
}

#[test]
fn ruling_polynomials() {
    let r = results(&jetlink(&["rulings", &front("a2_over_a_minus2"), "-p", "2"]));
    assert_eq!(r["polynomial"], "2 + z^2");
    let r = results(&jetlink(&["rulings", &front("stabilized_unknot"), "-p", "2"]));
    assert_eq!(r["polynomial"], "0");
}

#[test]
fn grading_must_divide_twice_the_rotation() {
    let out = jetlink(&["rulings", &front("stabilized_unknot"), "-p", "3"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn potential_overrides_reach_the_sweep() {
    // A_2 above two A_-1 circles: 0-graded rulings exist for (2, 1, 1)
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("stack.front");
    fs::write(&path, "strands 4\ns1\norient c2=- c3=-\n").unwrap();
    let p = path.to_str().unwrap();
    let r = results(&jetlink(&["rulings", p, "-p", "0", "--potential", "c1=2", "--potential", "c2=1", "--potential", "c3=1"]));
    assert_eq!(r["potentials"], serde_json::json!([2, 1, 1]));
    assert_ne!(r["polynomial"], "0");
    let out = jetlink(&["rulings", p, "-p", "0", "--potential", "c1=1"]);
    assert_eq!(out.status.code(), Some(2), "wrong parity");
}

#[test]
fn inner_product() {
    let r = results(&jetlink(&["inner", "2", "2"]));
    assert_eq!(r["inner"], "2 + z^2");
    assert_eq!(jetlink(&["inner", "1,2", "3"]).status.code(), Some(2));
}

#[test]
fn homfly_report_shape() {
    let r = results(&jetlink(&["homfly", &front("trefoil")]));
    assert_eq!(r["tb"], 1);
    assert_eq!(r["checks"]["mainT"], true);
    assert_eq!(r["checks"]["bound"], true);
    assert!(r["H"].as_array().is_some_and(|h| !h.is_empty()));
    assert!(r["P_hat"].as_str().unwrap().contains("a^-1"));
}

#[test]
fn checks_pass_on_unknot() {
    let r = results(&jetlink(&["check", &front("unknot"), "--which", "mainT"]));
    assert_eq!(r["mainT"]["equal"], true);
    assert!(r.get("bound").is_none());
}

#[test]
fn bundled_corpus_has_no_failures() {
    let dir = corpus_dir();
    let out = jetlink(&["corpus", dir.to_str().unwrap(), "--walks", "1", "--seed", "3"]);
    assert!(out.status.success());
    let r = results(&out);
    assert_eq!(r["failures"], 0);
    assert!(r["diagrams"].as_u64().unwrap() >= 50);
}

#[test]
fn expected_mismatch_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    fs::copy(front("unknot"), dir.path().join("unknot.front")).unwrap();
    fs::write(dir.path().join("unknot.expected"), r#"{"tb": -1, "R2": "z"}"#).unwrap();
    let out = jetlink(&["corpus", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    let r = results(&out);
    assert_eq!(r["failures"], 1);
    let problems = r["results"]["unknot.front"]["problems"].as_array().unwrap();
    assert_eq!(problems.len(), 1, "{problems:?}");
}

#[test]
fn reports_are_deterministic() {
    let args = ["homfly", &front("hopf_plat_mixed")];
    assert_eq!(jetlink(&args).stdout, jetlink(&args).stdout);
    let dir = corpus_dir();
    let args = ["corpus", dir.to_str().unwrap(), "--walks", "1", "--seed", "9"];
    assert_eq!(jetlink(&args).stdout, jetlink(&args).stdout);
}

#[test]
fn pretty_output_is_text() {
    let out = jetlink(&["--pretty", "invariants", &front("unknot")]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.trim_start().starts_with("tb") && l.trim_end().ends_with("-1")));
    assert!(serde_json::from_str::<Value>(&text).is_err());
}
