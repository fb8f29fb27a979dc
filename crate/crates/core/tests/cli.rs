use std::process::Command;

fn rpq(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_rpq")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn json(args: &[&str]) -> serde_json::Value {
    let (code, out, err) = rpq(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?}: {e}\n{out}"))
}

#[test]
fn eval_examples() {
    let (code, out, _) = rpq(&["eval", "number", "--preset", "js", "-p", "1", "-q", "1/2", "-n", "3"]);
    assert_eq!((code, out.trim()), (0, "7/4"));
    let (code, out, _) = rpq(&["eval", "number", "-n", "0"]);
    assert_eq!((code, out.trim()), (0, "0"));
    let v = json(&["eval", "binomial", "--preset", "js", "-p", "1", "-q", "1/2", "-m", "4", "-n", "2", "--format", "json"]);
    assert_eq!(v["value"], "35/16");
    let v = json(&["gamma", "-z", "5", "--preset", "js", "-p", "1", "-q", "1/2"]);
    assert_eq!(v["value"], "315/64");
    assert_eq!(v["exact"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(rpq(&["bogus"]).0, 2);
    assert_eq!(rpq(&["eval", "number", "--preset", "nope", "-n", "1"]).0, 2);
    assert_eq!(rpq(&["table", "--verify", "/nonexistent/grid.csv"]).0, 4);
    let (code, _, err) = rpq(&["zeta", "eval", "-p", "5", "-s", "1"]);
    assert_eq!(code, 3);
    assert!(err.contains("pole"), "{err}");
    assert_eq!(rpq(&["eval", "number", "--preset", "bm", "-q", "0", "-n", "2"]).0, 3);
}

#[test]
fn empty_grid_prints_header_only() {
    let (code, out, _) = rpq(&["table", "numbers", "--from", "3", "--to", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "preset,p,q,n,number");
}

#[test]
fn zigzag_and_bernoulli_tables() {
    let (code, out, _) = rpq(&["table", "zigzag", "--to", "7"]);
    assert_eq!(code, 0);
    let last: Vec<String> = out.lines().skip(1).map(|l| l.rsplit(',').next().unwrap().to_string()).collect();
    assert_eq!(last, ["1/1", "1/1", "1/1", "2/1", "5/1", "16/1", "61/1", "272/1"]);
    let v = json(&["table", "family", "--family", "bernoulli", "--from", "0", "--to", "4", "--format", "json"]);
    let values: Vec<String> = v["rows"].as_array().unwrap().iter().map(|r| r["value"].as_str().unwrap().to_string()).collect();
    assert_eq!(values, ["1/1", "-1/2", "1/6", "0/1", "-1/30"]);
}

#[test]
fn padic_commands() {
    let (code, out, _) = rpq(&["pgamma", "-n", "4", "--prime", "5", "--format", "plain"]);
    assert_eq!((code, out.trim()), (0, "6"));
    let v = json(&["zeta", "ghost", "--group", "gsp", "-l", "3"]);
    assert_eq!(v["beta"], "4");
    let v = json(&["spin", "exp", "--generator", "plus", "-t", "5", "--prime", "5"]);
    assert_eq!(v["level"], 1);
}

#[test]
fn tampered_table_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("n.csv");
    let p = path.to_string_lossy().into_owned();
    assert_eq!(rpq(&["table", "numbers", "--preset", "js", "-p", "2", "-q", "1/3", "--to", "6", "--out", &p]).0, 0);
    assert_eq!(rpq(&["table", "--verify", &p]).0, 0);
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let cut = lines[4].rfind(',').unwrap();
    lines[4] = format!("{},999/1", &lines[4][..cut]);
    std::fs::write(&path, lines.join("\n") + "\n").unwrap();
    let (code, out, _) = rpq(&["table", "--verify", &p]);
    assert_ne!(code, 0);
    assert!(out.contains("\"round_trip\": false") || out.contains("mismatch"), "{out}");
}

#[test]
fn single_module_checks_pass() {
    for m in ["deform", "series", "quadrature", "spinzeta"] {
        let v = json(&["check", "--module", m]);
        assert_eq!(v["passed"], true, "{m}");
    }
}
