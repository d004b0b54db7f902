use std::process::{Command, Output};

fn knotproj(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knotproj"))
        .args(args)
        .env_remove("KNOTPROJ_MAX_N")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn analyze_trefoil() {
    let o = knotproj(&["analyze", "1 2 3 1 2 3", "--arnold", "--json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["tr"], 1);
    assert_eq!(v["in_S"], false);
    assert_eq!(v["arnold"], "2");
}

#[test]
fn analyze_unknot() {
    let v = json(&knotproj(&["analyze", "", "--json"]));
    for k in ["n", "x", "tr", "monogons", "strong_bigons"] {
        assert_eq!(v[k], 0, "{k}");
    }
    assert_eq!(v["prime_factors"], serde_json::json!([]));
}

#[test]
fn analyze_errors() {
    let o = knotproj(&["analyze", "1 2 1 2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("not realizable"));
    assert!(stderr(&o).contains("parity fails at chord 1"));
    assert!(o.stdout.is_empty());
    let o = knotproj(&["analyze", "1 2 1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
}

#[test]
fn arnold_guard() {
    let big: Vec<String> = (1..=13).flat_map(|k| [k.to_string(), k.to_string()]).collect();
    let code = big.join(" ");
    let o = knotproj(&["analyze", &code, "--arnold"]);
    assert_eq!(o.status.code(), Some(7));
    assert!(o.stdout.is_empty());
    let o = knotproj(&["analyze", &code, "--arnold", "--force", "--json"]);
    assert!(o.status.success());
    assert_eq!(json(&o)["arnold"], "0");
}

#[test]
fn batch_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("codes.txt");
    std::fs::write(&path, "1 1\n\n1 2 1 2\n1 2 3 1 2 3\n").unwrap();
    let o = knotproj(&["analyze", "--in", path.to_str().unwrap(), "--json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v = json(&o);
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 3);
    assert_eq!(arr[1]["realizable"], false);
    assert!(arr[1].get("face_degrees").is_none());
    assert_eq!(arr[2]["code"], "1 2 3 1 2 3");
}

#[test]
fn reduce_commands() {
    let v = json(&knotproj(&["reduce", "1 1 2 2", "--json"]));
    let steps = v.as_array().unwrap();
    assert_eq!(steps.len(), 2);
    assert_eq!(steps[1]["code"], "");
    assert_eq!(steps[0]["move"], "1b");
    assert_eq!(stdout(&knotproj(&["reduce", "1 2 3 1 2 3"])).trim(), "not in S");
    assert_eq!(json(&knotproj(&["reduce", "", "--json"])), serde_json::json!([]));
}

#[test]
fn enumerate_commands() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.jsonl");
    let o = knotproj(&["enumerate", "2", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "n=1: 1\nn=2: 1\n");
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0], r#"{"schema":1}"#);

    let o = knotproj(&["enumerate", "0"]);
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[1].starts_with(r#"{"code":"","n":0"#));

    let o = knotproj(&["enumerate", "99"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(o.stdout.is_empty());

    let o = knotproj(&["enumerate", "1", "--out", dir.path().join("missing/d.jsonl").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(5));
}

#[test]
fn budget_override() {
    let run = |max: &str| {
        Command::new(env!("CARGO_BIN_EXE_knotproj"))
            .args(["enumerate", "3"])
            .env("KNOTPROJ_MAX_N", max)
            .output()
            .unwrap()
    };
    assert_eq!(run("2").status.code(), Some(4));
    assert!(run("3").status.success());
}

#[test]
fn verify_commands() {
    let o = knotproj(&["verify", "--all", "--max-n", "6"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(stdout(&o).matches("PASS").count(), 6);

    let o = knotproj(&["verify", "--check", "main-theorem", "--max-n", "7", "--json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["passed"], true);
    assert_eq!(v["reports"][0]["check_id"], "main-theorem");
    assert!(v["reports"][0].get("elapsed_ms").is_none());

    let o = knotproj(&["verify", "--check", "nosuch"]);
    assert_eq!(o.status.code(), Some(6));
    assert!(o.stdout.is_empty());

    let o = knotproj(&["verify", "--check", "two-strong-bigons", "--rule", "interleaved", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["passed"], false);
    assert!(!v["reports"][0]["violations"].as_array().unwrap().is_empty());
}

#[test]
fn dot_commands() {
    let o = stdout(&knotproj(&["dot", "1 1"]));
    assert_eq!(o.matches("[label=").count(), 2);
    assert_eq!(o.matches(" -- ").count(), 1);
    let o = stdout(&knotproj(&["dot", "1 2 3 1 2 3"]));
    assert_eq!(o.matches("[label=").count(), 6);
    assert_eq!(o.matches(" -- ").count(), 3);
    // Chord diagrams need not be planar.
    assert!(knotproj(&["dot", "1 2 1 2"]).status.success());
    assert_eq!(knotproj(&["dot", "1 2 1"]).status.code(), Some(2));
}
