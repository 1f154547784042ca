use std::io::Write;
use std::process::{Command, Output, Stdio};

fn exkh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_exkh"))
        .args(args)
        .env_remove("EXKH_CUBE_CAP")
        .env("RUST_BACKTRACE", "0")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

const TREFOIL: &str = "X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]";

#[test]
fn info_reports_gradings() {
    let o = exkh(&["info", "-i", TREFOIL]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("jmin            -9"), "{out}");
    assert!(out.contains("jmax            -1"), "{out}");
}

#[test]
fn info_json_for_unknot() {
    let o = exkh(&["info", "--input", "O:1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["jmin"], -1);
    assert_eq!(v["jmax"], 1);
}

#[test]
fn info_exports_lando_graph() {
    let o = exkh(&["info", "-i", "figure_eight", "--export", "lando"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("# vertices:"));
}

#[test]
fn homology_both_ways_match() {
    let o = exkh(&["homology", "-i", TREFOIL, "--grading", "min", "--via", "both"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("[-3] Z"), "{out}");
    assert!(out.contains("MATCH"), "{out}");
}

#[test]
fn homology_at_an_interior_grading_needs_the_oracle() {
    let o = exkh(&["homology", "-i", TREFOIL, "--grading", "-7"]);
    assert_eq!(o.status.code(), Some(2));
    let o = exkh(&["homology", "-i", TREFOIL, "--grading", "-7", "--oracle", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["oracle"]["-2"]["torsion"], serde_json::json!([2]));
}

#[test]
fn homology_writes_to_out_file() {
    let dir = std::env::temp_dir().join(format!("exkh-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("kh.json");
    let o = exkh(&["homology", "-i", "hopf", "--grading", "max", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["grading"], "max");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_exkh"))
        .args(["info", "-i", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(TREFOIL.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("-9"));
}

#[test]
fn malformed_input_exits_2() {
    let o = exkh(&["info", "-i", "X[1,2,3]"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("X[1,2,3]"));
    let o = exkh(&["info", "-i", "X[1,2,3,4]"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn empty_corpus_file_exits_2() {
    let path = std::env::temp_dir().join(format!("exkh-empty-{}.txt", std::process::id()));
    std::fs::write(&path, "# nothing here\n").unwrap();
    let o = exkh(&["verify", "-i", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn oracle_refuses_above_the_cube_cap() {
    let o = exkh(&["homology", "-i", "torus_2_35", "--grading", "min", "--oracle"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("cube cap"));
    let o = exkh(&["homology", "-i", TREFOIL, "--oracle", "--cube-cap", "2"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn cube_cap_comes_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_exkh"))
        .args(["homology", "-i", TREFOIL, "--oracle"])
        .env("EXKH_CUBE_CAP", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn face_limit_is_a_resource_cap() {
    let o = exkh(&["homology", "-i", "random_12", "--face-limit", "1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_bundled_corpus() {
    let o = exkh(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("28/28 diagrams passed"));
}

#[test]
fn verify_json_lists_checks() {
    let o = exkh(&["verify", "-i", "trefoil_right", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("matrix_conjugacy"), "{text}");
    assert!(text.contains("integral cohomology"));
}

#[test]
fn injected_fault_fails_verification() {
    let o = exkh(&["verify", "-i", TREFOIL, "--inject-fault", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("verification failed: inline extreme_min"), "{}", stderr(&o));
}
