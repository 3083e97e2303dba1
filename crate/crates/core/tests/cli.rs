use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn fibrato(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fibrato"))
        .args(args)
        .current_dir(fixtures())
        .output()
        .unwrap()
}

fn code(args: &[&str]) -> i32 {
    fibrato(args).status.code().unwrap()
}

fn stdout(args: &[&str]) -> String {
    String::from_utf8(fibrato(args).stdout).unwrap()
}

#[test]
fn every_subcommand_succeeds_on_a_fixture() {
    let runs: &[&[&str]] = &[
        &["check", "c3.json"],
        &["check", "d3-nat.fib"],
        &["complete", "c3-rot.json", "--variant", "con-left"],
        &["complete", "squares-swap.json", "--variant", "abs-right"],
        &["transform", "d3-nat.json"],
        &["wreath", "--inner", "D3", "--outer", "Z2"],
        &["hierarchy", "groupoid-hierarchy.json"],
        &["compare-models", "--inner", "C3", "--outer", "Z2"],
        &["aut2", "codiscrete-3.json"],
        &["square", "codiscrete-3.json"],
        &["klein", "s3-h12.json"],
        &["geometry", "d3-geometry.json"],
        &["stats", "c3-rot-functor.json"],
        &["iso", "c3.json", "c3.fib"],
        &["dot", "codiscrete-3.json", "--identities"],
        &["catalog"],
        &["catalog", "s3-h12"],
    ];
    for args in runs {
        let out = fibrato(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn parse_errors_exit_two() {
    for sub in ["check", "transform", "hierarchy", "aut2", "square", "klein", "geometry", "stats", "dot"] {
        assert_eq!(code(&[sub, "bad-syntax.json"]), 2, "{sub}");
        assert_eq!(code(&[sub, "unknown-src.json"]), 2, "{sub}");
    }
    assert_eq!(code(&["complete", "bad-directive.fib", "--variant", "con-left"]), 2);
    assert_eq!(code(&["iso", "c3.json", "bad-syntax.json"]), 2);
    assert_eq!(code(&["wreath", "--inner", "Q3", "--outer", "Z2"]), 2);
    assert_eq!(code(&["check", "no-such-file.json"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["complete", "c3-rot.json", "--variant", "sideways"]), 2);
    // A document of the wrong kind is a schema problem.
    assert_eq!(code(&["klein", "c3.json"]), 2);
}

#[test]
fn law_failures_exit_one() {
    let out = fibrato(&["check", "mutated-assoc.json"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("ValidationError"));
    assert!(text.contains("associativity at (r2, r, r)"));
    for sub in ["aut2", "dot", "square"] {
        assert_eq!(code(&[sub, "mutated-assoc.json"]), 1, "{sub}");
    }
    // Concrete completions need a set-valued action.
    assert_eq!(code(&["complete", "squares-swap.json", "--variant", "con-left"]), 1);
    let out = fibrato(&["aut2", "codiscrete-3.json", "--budget", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("BudgetExceeded"));
}

#[test]
fn reports_match_the_worked_examples() {
    assert!(stdout(&["transform", "c3-rot.json"]).starts_with("3 objects, 9 morphisms, connected\n"));
    assert!(stdout(&["klein", "s3-h12.json"]).contains("iso_probe: false"));
    let wreath = stdout(&["wreath", "--inner", "D3", "--outer", "Z2"]);
    assert!(wreath.starts_with("order 72 on 6 points"));
    let h = stdout(&["hierarchy", "group-hierarchy.json"]);
    assert!(h.starts_with("total: 1 objects, 18 morphisms"));
    assert!(stdout(&["aut2", "codiscrete-3.json"]).starts_with("6 one-cells, 36 two-cells"));
    assert!(stdout(&["square", "codiscrete-3.json"]).starts_with("324 of 324 squares commute"));
}

#[test]
fn json_reports_parse() {
    let runs: &[&[&str]] = &[
        &["klein", "s3-h12.json"],
        &["transform", "c3-rot.json"],
        &["hierarchy", "groupoid-hierarchy.json"],
        &["stats", "codiscrete-3.json"],
        &["check", "mutated-assoc.json"],
    ];
    for args in runs {
        let mut full = vec!["--format", "json"];
        full.extend_from_slice(args);
        let v: serde_json::Value = serde_json::from_str(&stdout(&full)).unwrap();
        assert!(v.is_object(), "{args:?}");
    }
    let v: serde_json::Value = serde_json::from_str(&stdout(&["--format", "json", "klein", "s3-h12.json"])).unwrap();
    assert_eq!(v["iso_probe"], false);
    assert_eq!(v["x_mod_g"], serde_json::json!([3, 18]));
}

#[test]
fn catalog_exports_pass_check() {
    let listing = stdout(&["catalog"]);
    for name in listing.lines().map(|l| l.split_whitespace().next().unwrap()) {
        let doc = stdout(&["catalog", name]);
        let path = std::env::temp_dir().join(format!("fibrato-{}-{name}.json", std::process::id()));
        std::fs::write(&path, &doc).unwrap();
        let out = fibrato(&["check", path.to_str().unwrap()]);
        std::fs::remove_file(&path).unwrap();
        assert_eq!(out.status.code(), Some(0), "{name}");
    }
}
