//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Criteria listed in `KNOWN_RED` are expected to fail; the run succeeds when
//! every other criterion passes and every known-red one still fails for the
//! documented reason.

use std::process::Command;
use std::time::{Duration, Instant};

use cg3_core::suites::{self, SuiteReport};
use serde::{Deserialize, Serialize};

/// The sign-rule comparison: the two sign expressions disagree on many
/// enumerated choices (one of them is always even).
const KNOWN_RED: &[usize] = &[6];

struct Outcome {
    passed: bool,
    summary: String,
}

fn from_report(r: SuiteReport, budget: Duration) -> Outcome {
    let in_time = r.elapsed <= budget;
    let mut summary = r.to_string();
    for n in &r.notes {
        summary.push_str(&format!("; {n}"));
    }
    if let Some(f) = r.failures.first() {
        summary.push_str(&format!("; first failure: {f}"));
    }
    if !in_time {
        summary.push_str(&format!("; over the {budget:?} budget"));
    }
    Outcome { passed: r.passed() && in_time, summary }
}

#[derive(Debug, Serialize, Deserialize)]
struct Coefficient {
    num: String,
    den: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct Term {
    diagram_u: [i64; 6],
    diagram_v: [i64; 6],
    coefficient: Coefficient,
}

#[derive(Debug, Serialize, Deserialize)]
struct Query {
    w1: [i64; 2],
    w2: [i64; 2],
    label: [i64; 5],
    descent: [i64; 3],
    mode: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct CgResult {
    query: Query,
    terms: Vec<Term>,
    verified: bool,
}

fn cg3(args: &[&str]) -> (i32, String, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_cg3")).args(args).output().expect("cg3 runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned(), start.elapsed())
}

fn canonical<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).unwrap();
    s.push('\n');
    s
}

fn cli_contract() -> Outcome {
    let mut problems = Vec::new();

    let (code, out, _) = cg3(&["decompose", "--w1", "1,0", "--w2", "1,0", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap_or_default();
    let weights: Vec<serde_json::Value> = v["labels"].as_array().map(|ls| ls.iter().map(|l| l["weight"].clone()).collect()).unwrap_or_default();
    if code != 0 || weights != vec![serde_json::json!([2, 0, 0]), serde_json::json!([1, 1, 0])] {
        problems.push(format!("decompose: exit {code}, weights {weights:?}"));
    }

    let (code, out, _) = cg3(&["cg", "--w1", "1,0", "--w2", "1,0", "--label", "1,1,0,0,0", "--descent", "0,0,0", "--mode", "both"]);
    match serde_json::from_str::<CgResult>(&out) {
        Ok(r) if code == 0 && r.terms.len() == 2 && r.verified => {
            if canonical(&r) != out {
                problems.push("cg: JSON output is not byte-stable".into());
            }
        }
        Ok(r) => problems.push(format!("cg: exit {code}, {} terms, verified {}", r.terms.len(), r.verified)),
        Err(e) => problems.push(format!("cg: exit {code}, unparsable output: {e}")),
    }

    let (code, _, elapsed) = cg3(&["verify", "--max-weight", "2"]);
    if code != 0 || elapsed > Duration::from_secs(60) {
        problems.push(format!("verify: exit {code} after {elapsed:?}"));
    }

    let dir = std::env::temp_dir().join(format!("cg3-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.json");
    let (code, _, _) = cg3(&["table", "--w1", "2,1", "--w2", "1,0", "--out", path.to_str().unwrap()]);
    let text = std::fs::read_to_string(&path).unwrap_or_default();
    match serde_json::from_str::<Vec<CgResult>>(&text) {
        Ok(rows) if code == 0 && !rows.is_empty() => {
            if canonical(&rows) != text {
                problems.push("table: JSON round trip is not byte-identical".into());
            }
        }
        other => problems.push(format!("table: exit {code}, parse {:?}", other.err())),
    }
    let _ = std::fs::remove_dir_all(&dir);

    let (code, _, _) = cg3(&["cg", "--w1", "1,0", "--w2", "1,0", "--label", "1,9,0,0,0"]);
    if code != 2 {
        problems.push(format!("malformed label: exit {code}, expected 2"));
    }

    Outcome {
        passed: problems.is_empty(),
        summary: if problems.is_empty() { "examples, exit codes and JSON round trip as specified".into() } else { problems.join("; ") },
    }
}

fn main() {
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("Gamma-series suite", Box::new(|| from_report(suites::gamma_suite(4), Duration::from_secs(10)))),
        ("Model suite", Box::new(|| from_report(suites::model_suite(4), Duration::from_secs(60)))),
        ("Highest-vector suite", Box::new(|| from_report(suites::highest_vector_suite(4), Duration::from_secs(120)))),
        ("Relation suite", Box::new(|| from_report(suites::relation_suite(), Duration::from_secs(120)))),
        ("CG equivalence", Box::new(|| from_report(suites::cg_suite(3), Duration::from_secs(600)))),
        ("Sign-rule consistency", Box::new(|| from_report(suites::sign_rule_suite(3), Duration::from_secs(600)))),
        ("CLI contract", Box::new(cli_contract)),
    ];
    let mut unexpected = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let n = i + 1;
        let o = run();
        let tag = if o.passed { "PASS" } else { "FAIL" };
        let known = KNOWN_RED.contains(&n);
        let note = if known { " [known red]" } else { "" };
        println!("criterion {n} {tag}{note}: {name}: {}", o.summary);
        if o.passed == known {
            unexpected.push(n);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
