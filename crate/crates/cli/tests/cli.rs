use std::io::Write;
use std::process::{Command, Output};

fn hochlie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hochlie"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn file_with(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn generated(args: &[&str]) -> tempfile::NamedTempFile {
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    let o = hochlie(&full);
    assert!(o.status.success());
    file_with(&stdout(&o))
}

#[test]
fn gen_kronecker_is_six_lines() {
    let o = hochlie(&["gen", "kronecker"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "# Kronecker algebra\nfield Q\nvertices 2\narrow a 0 1\narrow b 0 1\ntruncate 2\n"
    );
}

#[test]
fn gen_nakayama_and_usage_errors() {
    let o = hochlie(&["gen", "nakayama", "2", "3"]);
    let text = stdout(&o);
    assert!(text.contains("arrow a0 0 1\narrow a1 1 0\ntruncate 3\n"));
    assert_eq!(hochlie(&["gen", "trunc-poly", "1"]).status.code(), Some(2));
    assert_eq!(
        hochlie(&["gen", "rad-sq-zero", "0-0"]).status.code(),
        Some(2)
    );
    let o = hochlie(&["gen", "trunc-poly", "3", "--field", "F3"]);
    assert!(stdout(&o).contains("field F 3\n"));
}

#[test]
fn analyze_kronecker_and_witt() {
    let k = generated(&["kronecker"]);
    let o = hochlie(&["analyze", k.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("HH1 dim 3; sl2: yes"));

    let t = generated(&["trunc-poly", "5", "--field", "F5"]);
    let o = hochlie(&["analyze", t.path().to_str().unwrap()]);
    assert!(stdout(&o).contains("HH1 dim 5"));
    assert!(stdout(&o).contains("witt: yes"));

    let o = hochlie(&["analyze", t.path().to_str().unwrap(), "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["hh1"]["dim"], 5);
    assert_eq!(v["hh1"]["witt"], "yes");
}

#[test]
fn field_override_changes_the_algebra() {
    let k = generated(&["kronecker"]);
    let o = hochlie(&[
        "analyze",
        k.path().to_str().unwrap(),
        "--json",
        "--field-override",
        "F2",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["algebra"]["field"], "F2");
    assert_eq!(v["hh1"]["series"]["solvable"], true);
}

#[test]
fn input_errors_exit_two() {
    let bad = file_with("field Q\nvertices two\n");
    let o = hochlie(&["analyze", bad.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert!(o.stdout.is_empty());

    let inadmissible = file_with("field Q\nvertices 1\narrow x 0 0\ntruncate 3\nrel 1 x\n");
    assert_eq!(
        hochlie(&["verify", inadmissible.path().to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        hochlie(&["analyze", "/nonexistent/file.alg"]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_exit_codes() {
    for args in [
        vec!["kronecker"],
        vec!["trunc-poly", "4"],
        vec!["nakayama", "3", "5", "--field", "F5"],
        vec!["rad-sq-zero", "0-1,1-2,2-0"],
    ] {
        let f = generated(&args);
        let o = hochlie(&["verify", f.path().to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
    }
    let n = generated(&["nakayama", "3", "5"]);
    let o = hochlie(&["verify", n.path().to_str().unwrap(), "--inject-fault"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("overall: fail"));
}

#[test]
fn verify_json_is_byte_identical() {
    let n = generated(&["nakayama", "2", "7", "--field", "F5"]);
    let path = n.path().to_str().unwrap();
    let a = hochlie(&["verify", path, "--json", "--seed", "3"]);
    let b = hochlie(&["verify", path, "--json", "--seed", "3"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 3);
}

#[test]
fn selftest_is_deterministic() {
    let a = hochlie(&["selftest", "--json", "--seed", "11"]);
    let b = hochlie(&["selftest", "--json", "--seed", "11"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let o = hochlie(&["selftest"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).lines().filter(|l| l.contains(" pass ")).count(),
        11
    );
}
