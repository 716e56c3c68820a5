use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperknot")).args(args).env_remove("HYPERKNOT_DATA_DIR").output().unwrap()
}

fn run_with_data(dir: &PathBuf, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperknot")).args(args).env("HYPERKNOT_DATA_DIR", dir).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data_copy(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::create_dir_all(&dir).unwrap();
    let src = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data");
    for e in std::fs::read_dir(src).unwrap() {
        let e = e.unwrap();
        std::fs::copy(e.path(), dir.join(e.file_name())).unwrap();
    }
    dir
}

#[test]
fn documented_examples() {
    let o = run(&["jd", "--type", "A", "--rank", "1", "--weight", "1", "--knot", "3,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1 + q*t - q*t^2");
    let o = run(&["spectrum", "--germ", "x^2+y^3"]);
    assert_eq!(stdout(&o).trim(), "1/3, 2/3 (mu=2)");
    let o = run(&["verify-golden", "--suite", "all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn json_output() {
    let o = run(&["--format", "json", "jd", "--type", "E6", "--weight", "1", "--knot", "3,2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.is_object());
    let o2 = run(&["jd", "--type", "E6", "--weight", "1", "--knot", "3,2", "--json"]);
    assert_eq!(o.stdout, o2.stdout);
    let o = run(&["verify-golden", "--suite", "jd", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.to_string().contains("\"fail\":0"));
}

#[test]
fn hyper_and_diagrams() {
    let o = run(&["hyper", "--knot", "3,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim().split(" + ").count(), 9);
    let o = run(&["hyper", "--knot", "4,3", "--from-engine", "--convention", "qg"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["emit-diagram", "--knot", "3,2", "--diagram", "dot"]);
    assert!(stdout(&o).starts_with("graph differentials {"));
    let o = run(&["emit-diagram", "--knot", "5,2", "--diagram", "tsv"]);
    assert!(stdout(&o).starts_with("kind\t"));
}

#[test]
fn spectra_and_adjacency() {
    let o = run(&["spectrum", "--germ", "x^3*y + d*x^2*y^5 + a*x*y^10 + y^13", "--basis"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("mu=27"));
    let o = run(&["adjacency", "--pair", "X_{1,0}", "E_{8}"]);
    assert!(stdout(&o).contains("not adjacent"));
    let o = run(&["adjacency"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["describe", "--type", "D", "--rank", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("weyl_order 1920"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["jd", "--type", "B", "--rank", "2", "--knot", "3,2"]).status.code(), Some(2));
    assert_eq!(run(&["jd", "--type", "A", "--rank", "1", "--knot", "2,4"]).status.code(), Some(2));
    assert_eq!(run(&["spectrum", "--germ", "x^2 + z^3"]).status.code(), Some(2));
    assert_eq!(run(&["spectrum", "--germ", "x^2"]).status.code(), Some(1));
    assert_eq!(run(&["verify-golden", "--suite", "jd", "--strict"]).status.code(), Some(1));
    assert_eq!(run(&["verify-golden", "--suite", "spectrum", "--strict"]).status.code(), Some(0));
}

#[test]
fn deterministic_output() {
    for args in [&["verify-golden", "--suite", "all"][..], &["hyper", "--knot", "4,3", "--json"], &["adjacency"]] {
        assert_eq!(run(args).stdout, run(args).stdout);
    }
}

#[test]
fn corrupted_data_fails() {
    let dir = data_copy("corrupt-jd");
    let path = dir.join("jd.json");
    let text = std::fs::read_to_string(&path).unwrap();
    let bad = text.replacen("1+q (t+t^4-t^9-t^{12})", "1+q (t+t^4-t^9-t^{11})", 1);
    assert_ne!(bad, text);
    std::fs::write(&path, bad).unwrap();
    let o = run_with_data(&dir, &["verify-golden", "--suite", "jd"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
    assert_eq!(run_with_data(&dir, &["verify-golden", "--suite", "spectrum"]).status.code(), Some(0));

    let dir = data_copy("corrupt-tree");
    let path = dir.join("z30_spectra.json");
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::write(&path, text.replacen("\"mu\": 27", "\"mu\": 28", 1)).unwrap();
    assert_eq!(run_with_data(&dir, &["verify-golden", "--suite", "spectrum"]).status.code(), Some(1));

    let dir = data_copy("missing");
    std::fs::remove_file(dir.join("hyper.json")).unwrap();
    let o = run_with_data(&dir, &["verify-golden", "--suite", "hyper"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("hyper.json"));
}
