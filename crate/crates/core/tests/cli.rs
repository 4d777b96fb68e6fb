use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_piblocks")).args(args).output().unwrap()
}

fn corpus_file(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name).display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn analyze_s3() {
    let o = run(&["analyze", "--group", &corpus_file("006_S3.grp"), "--pi", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("order=6"), "{out}");
    assert!(out.contains("k=3"), "{out}");
}

#[test]
fn analyze_all_primes_is_one_block() {
    let o = run(&["analyze", "--group", &corpus_file("024_S4.grp"), "--pi", "all"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("k=5") && out.contains("defect_order=24"), "{out}");
}

#[test]
fn bad_prime_set_exits_2() {
    let o = run(&["analyze", "--group", &corpus_file("006_S3.grp"), "--pi", "4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn table_dump() {
    let o = run(&["table", "--group", &corpus_file("006_S3.grp")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!o.stdout.is_empty());
}

#[test]
fn gamma_identity() {
    let o = run(&["gamma", "--k", "3", "--alpha", "identity", "--beta", "identity"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("k=1 gamma=1") && out.contains("k=2 gamma=9") && out.contains("monotone=true"), "{out}");
}

#[test]
fn gamma_table_oracle_undefined() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("alpha.txt");
    fs::write(&path, "1 1\n2 2\n").unwrap();
    let o = run(&["gamma", "--k", "3", "--alpha", path.to_str().unwrap(), "--beta", "identity"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn corrupted_group_file_names_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.grp");
    fs::write(&path, "name Broken\ndegree 3\ngen (1 2(3\n").unwrap();
    let o = run(&["analyze", "--group", path.to_str().unwrap(), "--pi", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("broken.grp"));
    let o = run(&["verify", "--corpus", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn empty_corpus_warns() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["verify", "--corpus", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("warning: no group files"));
}

#[test]
fn verify_writes_output_file() {
    let dir = tempfile::tempdir().unwrap();
    fs::copy(corpus_file("006_S3.grp"), dir.path().join("006_S3.grp")).unwrap();
    let report = dir.path().join("report.txt");
    let o = run(&["verify", "--corpus", dir.path().to_str().unwrap(), "--output", report.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(report).unwrap();
    assert!(text.contains("group=S3 order=6 table=pass"), "{text}");
    assert!(text.contains("failures=0"), "{text}");
}
