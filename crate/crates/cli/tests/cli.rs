use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "fixtures", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn gensim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gensim"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn validate(json: &str) -> serde_json::Value {
    let schema_path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "schema", "report.schema.json"]
        .iter()
        .collect();
    let schema: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(schema_path).unwrap()).unwrap();
    let value: serde_json::Value = serde_json::from_str(json).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator
        .iter_errors(&value)
        .map(|e| e.to_string())
        .collect();
    assert!(errors.is_empty(), "{errors:?}\n{json}");
    value
}

#[test]
fn check_chain_holds() {
    let o = gensim(&[
        "check",
        "--left",
        &fixture("chain.alg"),
        "--a",
        "a",
        "--b",
        "b",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("holds"));
}

#[test]
fn check_collapse_reports_backward_certificate() {
    let o = gensim(&[
        "check",
        "--left",
        &fixture("collapse_source.alg"),
        "--right",
        &fixture("collapse_target.alg"),
        "--a",
        "a",
        "--b",
        "c",
        "--relation",
        "approx",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v = validate(&stdout(&o));
    let cert = &v["result"]["certificate"];
    assert_eq!(cert["direction"], "backward");
    assert_eq!(cert["pair"], serde_json::json!(["B", "A"]));
    assert_eq!(cert["element"], "b");
    assert_eq!(cert["evidence"], "f(z1)");
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.alg");
    std::fs::write(&bad, "algebra X\nelements a\nop f/1\n  a -> q\nend\n").unwrap();
    let o = gensim(&[
        "check",
        "--left",
        bad.to_str().unwrap(),
        "--a",
        "a",
        "--b",
        "a",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
    let o = gensim(&[
        "check",
        "--left",
        "/nonexistent.alg",
        "--a",
        "a",
        "--b",
        "a",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = gensim(&[
        "check",
        "--left",
        &fixture("chain.alg"),
        "--a",
        "zz",
        "--b",
        "a",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = gensim(&["--max-vars", "0", "matrix", "--left", &fixture("chain.alg")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unary_fragment_rejects_binary_signature() {
    let o = gensim(&[
        "--fragment",
        "unary",
        "matrix",
        "--left",
        &fixture("powerset3.alg"),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn linear_notice_for_non_unary() {
    let o = gensim(&[
        "check",
        "--left",
        &fixture("powerset3.alg"),
        "--a",
        "s1",
        "--b",
        "s12",
    ]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("linear-fragment"));
    let o = gensim(&[
        "--fragment",
        "monolinear",
        "check",
        "--left",
        &fixture("powerset3.alg"),
        "--a",
        "s1",
        "--b",
        "s12",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stderr.is_empty());
}

#[test]
fn genlang_dot_is_single_looping_state() {
    let o = gensim(&[
        "genlang",
        "--algebra",
        &fixture("chain.alg"),
        "--element",
        "c",
        "--format",
        "dot",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("q0 -> q0 [label=\"f\"]"));
    assert_eq!(dot.matches("doublecircle").count(), 1);
}

#[test]
fn genlang_text_and_json() {
    let o = gensim(&["genlang", "--algebra", &fixture("chain.alg")]);
    assert_eq!(stdout(&o), "a: ε\nb: f?\nc: f*\nd: f*\ne: f*\n");
    let o = gensim(&[
        "--format",
        "json",
        "genlang",
        "--algebra",
        &fixture("chain.alg"),
        "--element",
        "b",
    ]);
    let v = validate(&stdout(&o));
    assert_eq!(v["result"][0]["regex"], "f?");
    let o = gensim(&[
        "--format",
        "dot",
        "genlang",
        "--algebra",
        &fixture("chain.alg"),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn charset_prints_singleton() {
    let o = gensim(&[
        "charset",
        "--left",
        &fixture("trans_b.alg"),
        "--right",
        &fixture("trans_c.alg"),
        "--a",
        "b",
        "--b",
        "c",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("{ ") && out.trim_end().ends_with(" }"));
    assert!(!out.contains(','));
}

#[test]
fn matrix_json_is_deterministic() {
    let args = [
        "--format",
        "json",
        "matrix",
        "--left",
        &fixture("trans_a.alg"),
        "--right",
        &fixture("trans_c.alg"),
    ];
    let (x, y) = (stdout(&gensim(&args)), stdout(&gensim(&args)));
    assert_eq!(x, y);
    let v = validate(&x);
    assert_eq!(v["result"]["rows"], serde_json::json!(["a", "a'"]));
}

#[test]
fn morphism_checks() {
    let (s, t, m) = (
        fixture("collapse_source.alg"),
        fixture("collapse_target.alg"),
        fixture("collapse.map"),
    );
    let run = |verify: &str| {
        gensim(&[
            "morphism", "--map", &m, "--source", &s, "--target", &t, "--verify", verify,
        ])
    };
    assert_eq!(run("hom").status.code(), Some(0));
    assert_eq!(run("iso").status.code(), Some(1));
    assert_eq!(run("g-functor").status.code(), Some(1));
    assert_eq!(run("iso-lemma").status.code(), Some(2));

    let (s, t, m) = (
        fixture("chain.alg"),
        fixture("chain_renamed.alg"),
        fixture("chain_renaming.map"),
    );
    let o = gensim(&[
        "--format",
        "json",
        "morphism",
        "--map",
        &m,
        "--source",
        &s,
        "--target",
        &t,
        "--verify",
        "iso-lemma",
    ]);
    assert_eq!(o.status.code(), Some(0));
    validate(&stdout(&o));
    let o = gensim(&[
        "morphism",
        "--map",
        &m,
        "--source",
        &s,
        "--target",
        &t,
        "--verify",
        "sit",
        "--map2",
        &m,
        "--source2",
        &s,
        "--target2",
        &t,
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn reflexivity_and_transitivity() {
    let o = gensim(&[
        "--format",
        "json",
        "reflexivity",
        "--left",
        &fixture("successor.alg"),
        "--right",
        &fixture("successor_swapped.alg"),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v = validate(&stdout(&o));
    assert!(v["result"]["violations"]
        .as_array()
        .unwrap()
        .iter()
        .any(|x| x["elements"][0] == "1"));

    let o = gensim(&[
        "--format",
        "json",
        "transitivity",
        "--left",
        &fixture("trans_a.alg"),
        "--middle",
        &fixture("trans_b.alg"),
        "--right",
        &fixture("trans_c.alg"),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v = validate(&stdout(&o));
    assert!(v["result"]["leq_violations"]
        .as_array()
        .unwrap()
        .iter()
        .any(|x| x["elements"] == serde_json::json!(["a", "b", "c"])));

    let o = gensim(&["transitivity", "--left", &fixture("chain.alg")]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn clone_lists_polynomials() {
    let o = gensim(&[
        "--format",
        "json",
        "clone",
        "--algebra",
        &fixture("swap.alg"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = validate(&stdout(&o));
    assert!(!v["result"]["polynomials"].as_array().unwrap().is_empty());
}

#[test]
fn paper_examples_pass() {
    let o = gensim(&["paper-examples", "--seed", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.lines().all(|l| l.starts_with("PASS ")));
    let o = gensim(&["--format", "json", "paper-examples"]);
    validate(&stdout(&o));
}
