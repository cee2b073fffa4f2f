//! The `gradedpi` binary end to end.

mod common;

use std::process::{Command, Output};

use common::{corpus_dir, fixture_dir};

fn gradedpi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gradedpi")).args(args).output().expect("binary runs")
}

fn corpus_path(name: &str) -> String {
    corpus_dir().join(name).display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn regev_degree_one() {
    let o = gradedpi(&["regev", "--d", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "x1*y1\n");
}

#[test]
fn regev_degree_three_hits_the_ceiling() {
    let o = gradedpi(&["regev", "--d", "3"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("ceiling"));
}

#[test]
fn unknown_command_and_flag_fail() {
    assert!(!gradedpi(&["frobnicate"]).status.success());
    assert!(!gradedpi(&["codim", &corpus_path("fz2.alg"), "--max-n", "2", "--bogus"]).status.success());
}

#[test]
fn exponent_of_ut2() {
    let o = gradedpi(&["exponent", &corpus_path("ut2.alg")]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["d"], 2);
    assert_eq!(v["witness"]["chain"], serde_json::json!([1, 2]));
    assert_eq!(v["witness"]["product"], "E12");
}

#[test]
fn report_of_fz2() {
    let o = gradedpi(&["report", &corpus_path("fz2.alg"), "--max-n", "6"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["exponent"]["d"], 2);
    let totals: Vec<u64> = v["codim"]["rows"].as_array().unwrap().iter().map(|r| r["total"].as_u64().unwrap()).collect();
    assert_eq!(totals, vec![2, 4, 8, 16, 32, 64]);
    assert!(v["sandwich"].as_array().unwrap().iter().all(|r| r["upper_tight"] == true));
    assert_eq!(v["spec"]["file"], "fz2.alg");
}

#[test]
fn codim_csv() {
    let o = gradedpi(&["codim", &corpus_path("m2_z2.alg"), "--max-n", "2", "--ordinary", "--workers", "2"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("n,composition,c_component,multinomial,contribution,c_n_G,c_n_ordinary,nth_root"));
    assert_eq!(lines.next(), Some("1,1 0,1,1,1,2,1,2.000000"));
}

#[test]
fn gsimple_emit_round_trips() {
    let o = gradedpi(&["gsimple", &corpus_path("z2z2_nondeg.alg"), "--emit"]);
    assert!(o.status.success());
    let path = std::env::temp_dir().join(format!("gradedpi-emit-{}.alg", std::process::id()));
    std::fs::write(&path, stdout(&o)).unwrap();
    let v = gradedpi(&["validate", &path.display().to_string()]);
    std::fs::remove_file(&path).ok();
    assert!(v.status.success(), "{}", String::from_utf8_lossy(&v.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&v)).unwrap();
    assert_eq!(v["algebra"]["dim"], 4);
    assert_eq!(v["wedderburn"]["block_dims"], serde_json::json!([4]));
}

#[test]
fn omega_of_fz2() {
    let o = gradedpi(&["omega", &corpus_path("fz2.alg")]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["blocks"][0]["sets"], serde_json::json!([["1"], ["u"]]));
}

#[test]
fn witness_of_ut2_and_ceiling_on_m2_chain() {
    let o = gradedpi(&["witness", &corpus_path("ut2.alg"), "--chain", "1,2", "--t", "1"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], "E12");
    let tri = fixture_dir().join("m2m2_triangular.alg").display().to_string();
    let o = gradedpi(&["witness", &tri, "--chain", "1,2"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("ceiling"));
}

#[test]
fn invalid_spec_exits_nonzero_with_location() {
    let path = std::env::temp_dir().join(format!("gradedpi-bad-{}.alg", std::process::id()));
    std::fs::write(&path, "[group]\norders = [2]\n\n[[basis]]\nlabel = \"a\"\ndegree = [0]\n\n[[basis]]\nlabel = \"a\"\ndegree = [1]\n").unwrap();
    let o = gradedpi(&["validate", &path.display().to_string()]);
    std::fs::remove_file(&path).ok();
    assert!(!o.status.success());
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains(":9:") && err.contains("duplicate basis label `a`"), "{err}");
}

#[test]
fn broken_decomposition_is_rejected() {
    let text = std::fs::read_to_string(corpus_dir().join("ut2.alg")).unwrap().replace("members = [\"E12\"]", "members = []");
    let path = std::env::temp_dir().join(format!("gradedpi-ut2-{}.alg", std::process::id()));
    std::fs::write(&path, text).unwrap();
    let o = gradedpi(&["validate", &path.display().to_string()]);
    std::fs::remove_file(&path).ok();
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("E12 belongs to no block"));
}
