use std::process::{Command, Output};

fn intzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_intzeta"))
        .args(args)
        .env_remove("INTZETA_ORDER")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = intzeta(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn pi_plus_json() {
    assert_eq!(
        stdout(&["pi-plus", "(0,3)"]),
        "{\"terms\":[{\"coeff\":\"1\",\"index\":[2]},{\"coeff\":\"-1\",\"index\":[3]}]}\n"
    );
    assert_eq!(
        stdout(&["--pretty", "pi-plus", "(-1,4)"]),
        "1/2·(2) − 1/2·(3)\n"
    );
}

#[test]
fn m_index_and_classify() {
    assert_eq!(
        stdout(&["m-index", "(0,3)"]),
        "{\"classification\":\"admissible\",\"index\":[0,3],\"m\":1}\n"
    );
    assert_eq!(
        stdout(&["--pretty", "m-index", "()"]),
        "m = inf (admissible)\n"
    );
    assert_eq!(stdout(&["classify", "(2,1)"]), "regularizable_only\n");
    assert_eq!(stdout(&["classify", "(1,-1)"]), "non_regularizable\n");
}

#[test]
fn products() {
    assert_eq!(
        stdout(&["--pretty", "shuffle", "(2)", "(3)"]),
        "6·(1,4) + 3·(2,3) + 1·(3,2)\n"
    );
    assert_eq!(
        stdout(&["--pretty", "stuffle", "(2)", "(3)"]),
        "1·(5) + 1·(2,3) + 1·(3,2)\n"
    );
    assert_eq!(
        stdout(&["--pretty", "shuffle", "(0,3)", "()", "--reduce"]),
        "1·(2) − 1·(3)\n"
    );
}

#[test]
fn relation_appends_jsonl() {
    let dir = std::env::temp_dir().join(format!("intzeta-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("rel.jsonl");
    let _ = std::fs::remove_file(&path);
    let p = path.to_str().unwrap();
    let first = stdout(&["relation", "(2)", "(3)", "--out", p]);
    stdout(&["relation", "(2)", "(0,3)", "--out", p]);
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], first.trim_end());
    let rel = intzeta::Relation::from_json(lines[0]).unwrap();
    assert_eq!(rel.difference.pretty(), "−1·(5) + 6·(1,4) + 2·(2,3)");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn eval_matches_known_value() {
    let out = stdout(&["eval", "(2)", "--order", "100000"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let z = v["value"].as_f64().unwrap();
    assert!((z - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-4);
}

#[test]
fn verify_summary_and_cases() {
    let out = stdout(&[
        "verify",
        "--suite",
        "stuffle",
        "--cases",
        "5",
        "--order",
        "10",
        "--verbose",
    ]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 6);
    assert!(lines[0].starts_with("stuffle #0 "));
    assert_eq!(lines[5], "stuffle: 5/5 pass");
}

#[test]
fn order_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_intzeta"))
        .args(["eval", "(2)"])
        .env("INTZETA_ORDER", "10")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["order"], 10);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["pi-plus", "(1,"][..],
        &["relation", "(1)", "(2)"],
        &["eval", "(2,0)"],
        &["verify", "--suite", "nope"],
        &["verify", "--order", "0"],
        &["frobnicate"],
    ] {
        assert_eq!(intzeta(args).status.code(), Some(2), "{args:?}");
    }
}
