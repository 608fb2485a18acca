use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn fixture(name: &str) -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect()
}

fn eokit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eokit")).args(args).output().expect("binary runs")
}

fn eokit_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_eokit"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn lines(out: &Output) -> Vec<String> {
    stdout(out).lines().map(|l| l.split_whitespace().collect::<Vec<_>>().join(" ")).collect()
}

fn path(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

#[test]
fn methods_for_trace_based() {
    let out = eokit(&["methods", "trace-based"]);
    assert!(out.status.success());
    assert_eq!(lines(&out), ["Knowledge-based systems", "Machine learning model: decision trees"]);
}

#[test]
fn counterfactual_questions() {
    let out = eokit(&["questions", "counterfactual"]);
    assert!(out.status.success());
    let l = lines(&out);
    assert_eq!(
        l[..2],
        [
            "What other factors about the patient does the system know of?",
            "What if the major problem was a fasting plasma glucose?",
        ]
    );
    assert_eq!(l.len(), 3);
    assert!(l[2].ends_with("[prototypical]"));
}

#[test]
fn scientific_sufficiency() {
    let out = eokit(&["sufficiency", "scientific"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for term in ["eo:SystemRecommendation", "eo:ScientificKnowledge", "eo:Study", "eo:ScientificMethod", "prov:used"] {
        assert!(text.contains(term), "{term} missing from {text}");
    }
}

#[test]
fn q4_profile_ranks_contrastive_first() {
    let out = eokit(&["recommend", "--profile", &path("q4_profile.toml")]);
    assert!(out.status.success());
    assert_eq!(lines(&out)[0], "1. Contrastive explanation satisfiable");
}

#[test]
fn q5_question_gets_statistical_plan() {
    let out = eokit(&["recommend", "--profile", &path("q5_profile.toml"), "--question", &path("q5_question.toml")]);
    assert!(out.status.success());
    assert_eq!(
        lines(&out),
        [
            "Explanation type: statistical",
            "System: run `Inductive' AI task with `Clustering' method to generate numerical evidence",
        ]
    );
}

#[test]
fn derived_classification() {
    let out = eokit(&["classify", "--derive-only", &path("clinical_case.ttl")]);
    assert!(out.status.success());
    assert_eq!(lines(&out), [":ContrastiveExpInstance : ContrastiveExplanation (derived)"]);

    let out = eokit(&["classify", "--derive-only", "--explain", &path("clinical_case.ttl")]);
    let text = stdout(&out);
    assert!(text.contains(":GuidelineEvidence") && text.contains(":ContextualKnowledgePatient"), "{text}");
}

#[test]
fn scientific_query_returns_restriction() {
    let out = eokit(&["query", &path("scientific_query.rq")]);
    assert!(out.status.success());
    let l = lines(&out);
    assert_eq!(l[0], "?class ?restriction");
    assert!(l[1..].iter().any(|r| r.starts_with("eo:ScientificExplanation ((ep:isBasedOn some")));
}

#[test]
fn check_by_kind_and_expression() {
    let out = eokit(&["check", &path("clinical_case.ttl"), "--node", ":ContrastiveExpInstance", "--kind", "contrastive"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with(":ContrastiveExpInstance: satisfied"));

    let out =
        eokit(&["check", &path("clinical_case.ttl"), "--node", ":ContrastiveExpInstance", "--expr", &path("contextual.mos")]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with(":ContrastiveExpInstance: not satisfied"));
}

#[test]
fn exit_codes() {
    let ok = eokit(&["validate", &path("clinical_case.ttl")]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("0 error(s)"));

    let bad = eokit(&["validate", &path("fact_and_foil.ttl")]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("error[disjointness-violation]"));

    let broken = eokit(&["validate", &path("broken.ttl")]);
    assert_eq!(broken.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&broken.stderr).starts_with("error:"));

    for args in [
        vec!["validate", "/nonexistent/file.ttl"],
        vec!["frobnicate"],
        vec!["methods", "trace-based", "--no-such-flag"],
        vec!["methods", "no-such-type"],
        vec!["check", "x.ttl", "--node", ":a"],
    ] {
        assert_eq!(eokit(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn stdin_input() {
    let text = std::fs::read_to_string(fixture("fact_and_foil.ttl")).unwrap();
    let out = eokit_stdin(&["validate", "-"], &text);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn structured_output_is_stable() {
    let cases: Vec<Vec<String>> = vec![
        vec!["validate".into(), path("clinical_case.ttl")],
        vec!["classify".into(), "--explain".into(), path("clinical_case.ttl")],
        vec!["recommend".into(), "--profile".into(), path("q4_profile.toml")],
        vec!["query".into(), path("scientific_query.rq"), path("clinical_case.ttl")],
        vec!["sufficiency".into(), "contextual".into()],
    ];
    for case in cases {
        let mut args: Vec<&str> = case.iter().map(String::as_str).collect();
        args.extend(["--format", "structured"]);
        let a = eokit(&args);
        let b = eokit(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        let doc: toml::Value = toml::from_str(&stdout(&a)).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        assert!(doc.as_table().is_some_and(|t| !t.is_empty()));
    }
}

#[test]
fn structured_recommendation_fields() {
    let out = eokit(&["recommend", "--profile", &path("q4_profile.toml"), "--format", "structured"]);
    let doc: toml::Value = toml::from_str(&stdout(&out)).unwrap();
    let entries = doc["entry"].as_array().unwrap();
    assert_eq!(entries.len(), 9);
    assert_eq!(entries[0]["type"].as_str(), Some("contrastive"));
    assert_eq!(entries[0]["rank"].as_integer(), Some(1));
}

#[test]
fn seed_overlay_adds_generators() {
    let without = eokit(&["methods", "everyday"]);
    assert!(!stdout(&without).contains("Rule engine"));
    let with = eokit(&["--seed-overlay", &path("overlay.ttl"), "methods", "everyday"]);
    assert!(with.status.success());
    assert!(lines(&with).contains(&"Rule engine".to_string()));
}
