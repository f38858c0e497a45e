use std::process::Command;

fn algebra(name: &str) -> String {
    format!("{}/../../algebras/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_tauex")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn inspect_summarizes_a2_and_a3_rad2() {
    let (code, out, _) = run(&["inspect", &algebra("a2.toml")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("dim 3, n 2, 3 indecomposables, certified"), "{out}");
    let (_, out, _) = run(&["inspect", &algebra("a3_rad2.toml")]);
    assert!(out.contains("5 indecomposables"), "{out}");
}

#[test]
fn input_problems_exit_with_two() {
    let (code, _, err) = run(&["inspect", &algebra("loop.toml")]);
    assert_eq!(code, 2);
    assert!(err.contains("infinite-dimensional"), "{err}");
    assert_eq!(run(&["inspect", &algebra("missing.toml")]).0, 2);
    assert_eq!(run(&["tes", &algebra("a2.toml"), "path", "--from", "(S1,S2)", "--to", "(S1)"]).0, 2);
    assert_eq!(run(&["tes", &algebra("a2.toml"), "mutate", "--op", "phi", "--index", "1", "--seq", "(X9,S2)"]).0, 2);
    assert_eq!(run(&["verify", &algebra("a3.toml"), "--dim-bound", "1,1,1"]).0, 2);
}

#[test]
fn mutate_then_inverse_echoes_the_input() {
    let a2 = algebra("a2.toml");
    let (_, out, _) = run(&["tes", &a2, "mutate", "--op", "phi", "--index", "1", "--seq", "(S1,S2)"]);
    let result = out.trim().rsplit(" = ").next().unwrap().to_string();
    let (_, back, _) = run(&["tes", &a2, "mutate", "--op", "psi", "--index", "1", "--seq", &result]);
    assert!(back.trim().ends_with("= (10#1, 01#1)"), "{back}");
}

#[test]
fn enumerate_counts_and_dot_export() {
    let (_, out, _) = run(&["tes", &algebra("a2.toml"), "enumerate"]);
    assert!(out.starts_with("3 sequences"), "{out}");
    let (_, dot, _) = run(&["tes", &algebra("a3.toml"), "graph", "--dot"]);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches(" -> ").count(), 32);
}

#[test]
fn json_reports_are_versioned_and_deterministic() {
    let args = ["--json", "verify", &algebra("a3_f2.json"), "--suite", "all"];
    let (code, first, _) = run(&args);
    let (_, second, _) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(first, second);
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["passed"], true);
    assert_eq!(v["counts"]["complete_sequences"], 12);
}
