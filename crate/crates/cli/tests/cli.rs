use std::process::{Command, Output};

fn cg3(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cg3")).args(args).output().expect("cg3 runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn decompose_lists_both_summands() {
    let o = cg3(&["decompose", "--w1", "1,0", "--w2", "1,0"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("2 labels"), "{text}");
    assert!(text.contains("[2, 0, 0]") && text.contains("[1, 1, 0]"), "{text}");
}

#[test]
fn malformed_weights_exit_2() {
    assert_eq!(cg3(&["decompose", "--w1", "0,1", "--w2", "1,0"]).status.code(), Some(2));
    assert_eq!(cg3(&["decompose", "--w1", "a,b", "--w2", "1,0"]).status.code(), Some(2));
    assert_eq!(cg3(&["cg", "--w1", "1,0", "--w2", "1,0", "--label", "1,1,0,0,0", "--descent", "5,0,0"]).status.code(), Some(2));
}

#[test]
fn bad_parallelism_setting_exits_2() {
    let o = Command::new(env!("CARGO_BIN_EXE_cg3"))
        .args(["decompose", "--w1", "1,0", "--w2", "1,0"])
        .env("CG3_MAX_PARALLELISM", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn parallelism_cap_is_accepted() {
    let o = Command::new(env!("CARGO_BIN_EXE_cg3"))
        .args(["cg", "--w1", "2,1", "--w2", "1,1", "--mode", "both"])
        .env("CG3_MAX_PARALLELISM", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.as_array().unwrap().iter().all(|r| r["verified"] == true));
}

#[test]
fn csv_table_has_header_and_rows() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let o = cg3(&["table", "--w1", "1,1", "--w2", "1,0", "--out", path.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("label,descent,diagram_u,diagram_v,num,den"));
    assert!(lines.count() > 0);
}

#[test]
fn table_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for p in [&a, &b] {
        assert_eq!(cg3(&["table", "--w1", "2,1", "--w2", "2,1", "--out", p.to_str().unwrap()]).status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn oracle_mode_is_not_marked_verified() {
    let o = cg3(&["cg", "--w1", "1,0", "--w2", "1,0", "--label", "1,0,0,0,0", "--descent", "1,0,0", "--mode", "oracle"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verified"], false);
    assert_eq!(v["terms"].as_array().unwrap().len(), 2);
}

#[test]
fn sign_suite_reports_counterexamples() {
    let o = cg3(&["verify", "--max-weight", "1", "--suite", "sign"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL sign-rule"));
}

#[test]
fn pretty_format_shows_coefficients() {
    let o = cg3(&["cg", "--w1", "1,0", "--w2", "1,0", "--label", "1,1,0,0,0", "--descent", "0,0,0", "--format", "pretty"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("verified") && text.contains("-1"), "{text}");
}
