use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::tempdir;

fn spanrel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spanrel")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn lines(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).expect("JSON line")).collect()
}

fn check<'a>(ls: &'a [Value], name: &str) -> &'a Value {
    ls.iter().find(|l| l["check"] == name).unwrap_or_else(|| panic!("no {name} line"))
}

#[test]
fn rel_validates_and_exits_zero() {
    let o = spanrel(&["validate", "--max-size", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let ls = lines(&o);
    assert_eq!(check(&ls, "stable-system")["verdict"], "holds");
    for l in &ls {
        for key in ["check", "instance", "system", "relation", "sampleSpec", "verdict"] {
            assert!(l.get(key).is_some(), "missing {key}: {l}");
        }
        assert!(l.get("elapsed").is_none());
    }
}

#[test]
fn iso_all_fails_with_a_witness_and_exits_one() {
    let o = spanrel(&["check-allegory", "--system", "iso-all"]);
    assert_eq!(o.status.code(), Some(1));
    let ls = lines(&o);
    let rel = check(&ls, "allegorical-relation");
    assert_eq!(rel["verdict"], "fails");
    assert!(rel["witness"].to_string().contains("2>1:0,0"), "{rel}");
}

#[test]
fn validate_iso_all_reports_both_lemma_sides_failing() {
    let o = spanrel(&["validate", "--system", "iso-all", "--max-size", "3", "--format", "text"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(1), "{text}");
    let verdict = |check: &str| {
        let l = text.lines().find(|l| l.split_whitespace().next() == Some(check)).unwrap();
        l.split_whitespace().nth(1).unwrap().to_string()
    };
    assert_eq!(verdict("stable-system"), "holds");
    assert_eq!(verdict("splitepi-lemma.split-epis-in-e"), "fails");
    assert_eq!(verdict("splitepi-lemma.m-in-monos"), "fails");
    assert_eq!(verdict("splitepi-lemma.agreement"), "holds");
}

#[test]
fn unknown_verdicts_exit_two() {
    let o = spanrel(&["check-allegory", "--relation", "approx"]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
}

#[test]
fn bad_input_exits_three() {
    assert_eq!(spanrel(&["validate", "--system", "nope"]).status.code(), Some(3));
    assert_eq!(spanrel(&["validate", "--relation", "bogus"]).status.code(), Some(3));
    assert_eq!(spanrel(&["validate", "--category", "table"]).status.code(), Some(3));
    let dir = tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"dom": 2, "cod": 2, "pairs": [[1,0],[0,0]]}"#).unwrap();
    let o = spanrel(&["quotient", "--file", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn same_seed_gives_identical_reports() {
    let dir = tempdir().unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let o = spanrel(&["ebullet", "--system", "iso-all", "--max-size", "3", "--seed", "7", "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        fs::read(out).unwrap()
    };
    assert_eq!(run("a.jsonl"), run("b.jsonl"));
}

#[test]
fn replay_reproduces_every_failure() {
    let dir = tempdir().unwrap();
    let report = dir.path().join("r.jsonl");
    let o = spanrel(&["check-allegory", "--system", "iso-all", "--out", report.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let o = spanrel(&["replay", "--file", report.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let ls = lines(&o);
    assert!(!ls.is_empty());
    assert!(ls.iter().all(|l| l["check"].as_str().unwrap().starts_with("replay:")));
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn quotient_prints_canonical_forms_of_inputs() {
    let dir = tempdir().unwrap();
    let rel = write(dir.path(), "rel.json", r#"{"dom": 2, "cod": 2, "pairs": [[0,0],[0,1],[1,1]]}"#);
    let o = spanrel(&["quotient", "--file", &rel]);
    assert_eq!(o.status.code(), Some(0));
    let ls = lines(&o);
    assert_eq!(check(&ls, "canonical")["detail"]["left"], "3>2:0,0,1");
    let span = write(dir.path(), "span.json", r#"{"apex": "2", "left": "2>2:0,0", "right": "2>2:1,1"}"#);
    let o = spanrel(&["quotient", "--file", &span]);
    let ls = lines(&o);
    assert_eq!(check(&ls, "canonical")["detail"]["apex"], "1");
}

#[test]
fn table_categories_load_from_json() {
    let dir = tempdir().unwrap();
    let arrow = write(
        dir.path(),
        "arrow.json",
        r#"{"objects": ["a", "b"],
            "morphisms": [{"id": "1a", "dom": "a", "cod": "a"}, {"id": "1b", "dom": "b", "cod": "b"},
                          {"id": "f", "dom": "a", "cod": "b"}],
            "identities": {"a": "1a", "b": "1b"}, "composition": []}"#,
    );
    let o = spanrel(&["check-allegory", "--category", "table", "--file", &arrow, "--system", "iso-all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn fincat_probe_runs() {
    let o = spanrel(&["map-counit", "--category", "fincat", "--system", "surjObj-ffInjObj", "--format", "text"]);
    let text = stdout(&o);
    for check in ["probe.e-within-epis", "probe.m-within-monos", "probe.equalized-pair"] {
        assert!(text.lines().any(|l| l.starts_with(check)), "{text}");
    }
}

#[test]
fn map_counit_on_rel_holds() {
    let o = spanrel(&["map-counit", "--max-size", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}
