//! End-to-end runs of the `sepder` binary.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn sepder(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sepder")).args(args).env_remove("SEPDER_CUTOFF").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn degrees_of_worked_example() {
    let o = sepder(&["degrees", data("ex37.edges").to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "(0,1,1,2)\n");
}

#[test]
fn saito_on_complete_graph() {
    let o = sepder(&["saito", data("k4.edges").to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "basis: true, c = 1\n");
}

#[test]
fn antihole_poset_dot() {
    let o = sepder(&["poset", "--output", "dot", data("antihole6.edges").to_str().unwrap()]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("digraph"));
    assert_eq!(text.matches("style=solid").count(), 12);
}

#[test]
fn generators_json_is_certified() {
    let o = sepder(&["generators", "--output", "json", data("ex37.edges").to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["degree_sequence"], serde_json::json!([0, 1, 1, 2]));
    assert_eq!(v["certified"], "minimal_up_to_P");
}

#[test]
fn bounds_json() {
    let o = sepder(&["bounds", "--output", "json", data("antihole6.edges").to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["holds"], true);
    assert_eq!(v["subsequence_full"], true);
    assert_eq!(v["bounds"]["d"], 3);
}

#[test]
fn verify_antihole() {
    let o = sepder(&["verify", data("antihole6.edges").to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("generates: true"));
}

#[test]
fn error_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let disconnected = dir.path().join("split.edges");
    fs::write(&disconnected, "n 3\n1 2\n").unwrap();
    let o = sepder(&["degrees", disconnected.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));

    let broken = dir.path().join("broken.edges");
    fs::write(&broken, "1 x\n").unwrap();
    assert_eq!(sepder(&["degrees", broken.to_str().unwrap()]).status.code(), Some(1));

    let o = Command::new(env!("CARGO_BIN_EXE_sepder"))
        .args(["degrees", data("ex37.edges").to_str().unwrap()])
        .env("SEPDER_CUTOFF", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn census_over_directory() {
    let dir = tempfile::tempdir().unwrap();
    fs::copy(data("ex37.edges"), dir.path().join("a.edges")).unwrap();
    // C4 and K3
    fs::write(dir.path().join("b.g6"), "Cr\nBw\n").unwrap();
    let o = sepder(&["census", dir.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0]["source"], "a.edges");
    assert_eq!(lines[1]["degree_sequence"], serde_json::json!([0, 1, 2, 2, 2]));
    assert_eq!(lines[2]["degree_sequence"], serde_json::json!([0, 1, 2]));
    assert!(lines.iter().all(|l| l["generates"] == true));
}
