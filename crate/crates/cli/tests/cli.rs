//! End-to-end behaviour of the `mzv` binary: exit codes, output formats,
//! the result cache and configuration precedence.

use std::path::Path;
use std::process::{Command, Output};

fn mzv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mzv"))
        .args(args)
        .env_remove("MZV_PREC")
        .env_remove("MZV_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn line<'a>(text: &'a str, label: &str) -> &'a str {
    text.lines().find(|l| l.starts_with(label)).unwrap_or_else(|| panic!("no `{label}` line in:\n{text}"))
}

#[test]
fn eval_prints_a_value_and_exits_zero() {
    let o = mzv(&["eval", "zetastar(2,1)"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(line(&out, "value").contains("2.40411380631918857079947632302"), "{out}");
    assert_eq!(line(&out, "cache").split_whitespace().last(), Some("off"));
}

#[test]
fn polylog_at_one_half() {
    let o = mzv(&["eval", "li(2,1)", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(doc["value"].as_str().unwrap().starts_with("0.0947530042301277057"), "{doc}");
    assert_eq!(doc["method"], "geometric");
}

#[test]
fn divergent_and_malformed_input_exit_two() {
    let o = mzv(&["eval", "zeta(1,2)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("divergent index"), "{}", stderr(&o));
    for args in [
        &["eval", "zeta(2,,1)"][..],
        &["eval", "zeta(0)"],
        &["closed-form", "bogus"],
        &["closed-form", "three-bar", "1"],
        &["verify", "--suite", "nosuch"],
        &["stirling", "--max", "0"],
        &["quad", "nosuch", "1"],
    ] {
        assert_eq!(mzv(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_exit_codes_follow_the_verdicts() {
    assert_eq!(mzv(&["verify", "--suite", "euler"]).status.code(), Some(0));
    let o = mzv(&["--cutoff", "16", "verify", "--suite", "euler", "--format", "text"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL euler/k2"), "{}", stdout(&o));
}

#[test]
fn verify_writes_csv_and_json_reports() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("r.csv");
    let o = mzv(&["verify", "--suite", "thm3_2", "--format", "csv", "--out", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stderr(&o).contains("16 cases: 16 passed, 0 failed"), "{}", stderr(&o));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut rows = text.lines();
    assert!(rows.next().unwrap().starts_with("id,suite,lhs,lhs_err,rhs,rhs_err,diff,pass,ms"));
    assert_eq!(rows.count(), 16);

    let o = mzv(&["verify", "--suite", "cor3_4"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["summary"]["total"], 12);
    assert_eq!(doc["summary"]["failed"], 0);
    assert_eq!(doc["cases"].as_array().unwrap().len(), 12);
    assert_eq!(doc["config"]["precision"], 192);
}

#[test]
fn closed_forms_print_canonical_expressions() {
    let o = mzv(&["closed-form", "star-bar1", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).lines().next(), Some("1/8*z3 + 1/2*z2*ln2 - 1/6*ln2^3"));
    let o = mzv(&["closed-form", "three-bar", "0", "0"]);
    assert_eq!(stdout(&o).lines().next(), Some("-1/4*z3 + 1/2*z2*ln2 - 1/6*ln2^3"));
}

#[test]
fn stirling_and_quad_report_their_checks() {
    let o = mzv(&["stirling", "--max", "12"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.ends_with("exact")).count(), 12);
    let o = mzv(&["quad", "lemma2_1", "2", "2", "-1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(line(&stdout(&o), "quadrature").contains("0.13629436111989061883"), "{}", stdout(&o));
    let o = mzv(&["quad", "--", "lemma2_1", "3", "1", "-1/2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

fn eval_with_cache(cache: &Path) -> String {
    let o = mzv(&["--cache", cache.to_str().unwrap(), "eval", "zeta(-1,2)"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    stdout(&o)
}

#[test]
fn cached_results_are_bit_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    let first = eval_with_cache(&cache);
    let second = eval_with_cache(&cache);
    assert!(line(&first, "cache").ends_with("miss"));
    assert!(line(&second, "cache").ends_with("hit"));
    assert_eq!(line(&first, "value"), line(&second, "value"));
    assert_eq!(line(&first, "err"), line(&second, "err"));
    assert_eq!(line(&first, "method"), line(&second, "method"));
    assert_eq!(line(&second, "terms").split_whitespace().last(), Some("0"));
    // a different precision is a different key
    let o = mzv(&["--cache", cache.to_str().unwrap(), "--prec", "128", "eval", "zeta(-1,2)"]);
    assert!(line(&stdout(&o), "cache").ends_with("miss"));
}

#[test]
fn flags_override_environment_which_overrides_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("mzv.conf");
    std::fs::write(&conf, "# test\nprec = 96\n").unwrap();
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_mzv"));
        c.env_remove("MZV_PREC").env_remove("MZV_CACHE");
        if let Some(v) = env {
            c.env("MZV_PREC", v);
        }
        c.args(["--config", conf.to_str().unwrap()]).args(extra).args(["verify", "--suite", "eq2_8"]);
        let o = c.output().unwrap();
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        doc["config"]["precision"].as_u64().unwrap()
    };
    assert_eq!(run(None, &[]), 96);
    assert_eq!(run(Some("128"), &[]), 128);
    assert_eq!(run(Some("128"), &["--prec", "160"]), 160);
}

#[test]
fn bad_configuration_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("bad.conf");
    std::fs::write(&conf, "precision = 96\n").unwrap();
    assert_eq!(mzv(&["--config", conf.to_str().unwrap(), "eval", "zeta(2)"]).status.code(), Some(2));
    assert_eq!(mzv(&["--cutoff", "4", "eval", "zeta(2)"]).status.code(), Some(2));
    let missing = dir.path().join("missing.conf");
    assert_eq!(mzv(&["--config", missing.to_str().unwrap(), "eval", "zeta(2)"]).status.code(), Some(2));
}
