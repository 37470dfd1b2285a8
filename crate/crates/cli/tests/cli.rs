use std::process::{Command, Output};

fn lawvere(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lawvere"))
        .args(args)
        .env_remove("LAWVERE_SAMPLES")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn factorize_ab_plus_c() {
    let o = lawvere(&["factorize", "--theory", "ring", "--morphism", "ab+c"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "middle 2\nleft {ab, c}\nright {x+y}\n");
}

#[test]
fn factorize_json_has_the_three_fields() {
    let o = lawvere(&["factorize", "--theory", "ring", "--morphism", "ab+c", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v, serde_json::json!({"middle": 2, "left": ["ab", "c"], "right": ["x+y"]}));
}

#[test]
fn compose_in_the_monoid_theory() {
    let o = lawvere(&["compose", "--theory", "monoid", "--first", "abc, ab^2c^2", "--then", "x^2y"]);
    assert_eq!(stdout(&o).trim(), "{abcabcabbcc}: 3 -> 1");
}

#[test]
fn zero_samples_is_a_vacuous_pass() {
    let o = lawvere(&["check-law", "--law", "ring", "--samples", "0", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["sampleCount"], 0);
    assert_eq!(v["failures"], serde_json::json!([]));
}

#[test]
fn mutant_law_exits_with_one() {
    let o = lawvere(&["check-law", "--law", "ring-mutant", "--samples", "100"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn sample_count_comes_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_lawvere"))
        .args(["check-law", "--law", "ring", "--json"])
        .env("LAWVERE_SAMPLES", "3")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["bounds"]["samples"], 3);
}

#[test]
fn hexagon_report_is_deterministic() {
    let args = ["check-yb", "--series", "ring3", "--samples", "300", "--seed", "7", "--json"];
    let (a, b) = (lawvere(&args), lawvere(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 7);
    assert_eq!(v["schemaVersion"], 1);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(lawvere(&["factorize", "--theory", "nope", "--morphism", "a"]).status.code(), Some(2));
    assert_eq!(lawvere(&["factorize", "--theory", "ring", "--morphism", "a+("]).status.code(), Some(2));
    assert_eq!(lawvere(&["factorize", "--theory", "monoid", "--morphism", "ab"]).status.code(), Some(2));
    assert_eq!(lawvere(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(lawvere(&["check-coend", "--file", "/nonexistent.json"]).status.code(), Some(2));
}

#[test]
fn strict_examples() {
    assert_eq!(lawvere(&["check-fs", "--strict", "chain"]).status.code(), Some(0));
    assert_eq!(lawvere(&["check-fs", "--strict", "iso-pair"]).status.code(), Some(1));
}

#[test]
fn coend_file_and_builtin_monad() {
    assert_eq!(lawvere(&["check-coend", "--file", &data("chains.json")]).status.code(), Some(0));
    assert_eq!(lawvere(&["check-coend", "--monad", "pointed", "--bound", "2"]).status.code(), Some(0));
}

#[test]
fn roundtrip_and_correspond() {
    let o = lawvere(&["roundtrip", "--monad", "pointed", "--bound", "3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["stability"].as_object().unwrap().values().all(|s| s == true));
    assert_eq!(lawvere(&["correspond", "--law", "ring", "--size", "5", "--samples", "100"]).status.code(), Some(0));
}

#[test]
fn enumerate_words() {
    let o = lawvere(&["enumerate", "--theory", "monoid", "--arity", "2", "--size", "3"]);
    assert_eq!(stdout(&o), "a\nb\n1\naa\nab\nba\nbb\n");
}

#[test]
fn fixtures_pass_and_output_is_written() {
    let path = std::env::temp_dir().join(format!("lawvere-fixtures-{}.json", std::process::id()));
    let o = lawvere(&["fixtures", "--json", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let written = std::fs::read(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(written, o.stdout);
}
