use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orthograph")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn single_shot_commands() {
    assert_eq!(
        stdout(&["inner", "--setting", "spherical", "--g", "k5-inner", "--h", "k5-outer"]).trim(),
        "−8(n−1)(n−2)(n−4)/(n⁸(n+2)⁴)"
    );
    assert_eq!(
        stdout(&["orthopoly", "--setting", "boolean", "--edges", "[[1,2],[1,2],[1,2]]"]).trim(),
        "x12³ − (3n − 2) x12"
    );
    assert_eq!(stdout(&["expect", "--setting", "gaussian", "--edges", "[[1,2],[2,3],[3,4],[1,4]]"]).trim(), "n");
    assert_eq!(
        stdout(&["inner", "--g", "fig4-g", "--h", "fig4-h", "--n", "10"]).trim(),
        "8(n−1)/(n⁴(n+2)³)\nn = 10: 1/240000"
    );
}

#[test]
fn graph_files() {
    let dir = std::env::temp_dir().join(format!("orthograph-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c4.json");
    std::fs::write(&path, r#"{"setting": "gaussian", "edges": [[1,2],[2,3],[3,4],[1,4]]}"#).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(stdout(&["expect", "--setting", "gaussian", "--g", p]).trim(), "n");
    let targets = dir.join("targets.json");
    std::fs::write(
        &targets,
        r#"{"setting": "spherical", "n": 10, "targets": [
            {"edges": [[1,2],[2,3],[3,4],[4,5],[1,5]], "value": "1"},
            {"edges": [[1,3],[1,4],[2,4],[2,5],[3,5]], "value": "2/3"}]}"#,
    )
    .unwrap();
    let out = stdout(&["invert", "--targets", targets.to_str().unwrap(), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["exact"], true);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn json_output_is_stable() {
    let args = ["orthopoly", "--setting", "spherical", "--edges", "[[1,2],[2,3],[3,4],[1,4]]", "--format", "json"];
    let a = stdout(&args);
    assert_eq!(a, stdout(&args));
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert!(v["poly"].is_object() || v["poly"].is_array());
    let verify = ["verify", "monte-carlo", "--seed", "11"];
    let strip = |s: String| -> serde_json::Value {
        let mut v: serde_json::Value = serde_json::from_str(&s).unwrap();
        v.as_object_mut().unwrap().remove("seconds");
        v
    };
    assert_eq!(strip(stdout(&verify)), strip(stdout(&verify)));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["expect", "--edges", "[[1,2"]).status.code(), Some(2));
    assert_eq!(run(&["inner", "--g", "no-such-graph", "--h", "k5-outer"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let big = "[[1,2],[2,3],[3,4],[4,5],[5,6],[1,6]]";
    assert_eq!(run(&["orthopoly", "--edges", big, "--budget", "5"]).status.code(), Some(3));
    assert_eq!(run(&["scan", "--budget", "11"]).status.code(), Some(3));
    assert_eq!(run(&["verify", "named-pairs"]).status.code(), Some(0));
}

#[test]
fn scan_reports_summary() {
    let out = stdout(&["scan", "--budget", "6", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["summary"]["planar_negative"], 0);
    assert_eq!(v["summary"]["conjecture_counterexamples"], 0);
    assert!(v["records"].as_array().unwrap().len() > 5);
}

#[test]
fn table_formats() {
    let csv = stdout(&["table", "--setting", "gaussian", "--format", "csv"]);
    assert_eq!(csv.lines().count(), 19);
    assert!(csv.contains("x11^2 - (2n + 4) x11 + n^2 + 2n") || csv.contains("x11^2"), "{csv}");
    let latex = stdout(&["table", "--setting", "spherical", "--budget", "2", "--format", "latex"]);
    assert!(latex.contains("\\begin{tabular}"));
}
