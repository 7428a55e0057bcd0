//! End-to-end runs of the `cmpairs` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name)
}

fn schema() -> serde_json::Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/schema.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn run(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cmpairs")).env("CMPAIRS_CACHE", cache).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn validate(schema: &serde_json::Value, doc: &serde_json::Value) {
    let validator = jsonschema::validator_for(schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(doc).map(|e| format!("{} at {}", e, e.instance_path())).collect();
    assert!(errors.is_empty(), "{errors:#?}");
}

#[test]
fn cm_pair_verdict_line() {
    let dir = tempfile::tempdir().unwrap();
    let ex18 = corpus("ex18.cm");
    let o = run(dir.path(), &["cm-pair", "-f", ex18.to_str().unwrap(), "--pair", "P"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "No: depth=0, cd=Infinite(period 2)");
    let o = run(dir.path(), &["cm-pair", "-f", ex18.to_str().unwrap(), "--pair", "Q"]);
    assert_eq!(stdout(&o).trim(), "Yes(0): depth=0, cd=0");
    // Cap lists are comma separated and do not swallow the subcommand.
    let o = run(dir.path(), &["--caps", "ext=5,box_pad=3", "cm-pair", "-f", ex18.to_str().unwrap(), "--pair", "P"]);
    assert_eq!(stdout(&o).trim(), "No: depth=0, cd=Infinite(period 2)");
}

#[test]
fn depth_reports_both_routes() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["depth", "-f", corpus("ex18.cm").to_str().unwrap(), "--ideal", "I", "--module", "N"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "depth_I N = 0 (Ext route: 0; Koszul route: 0)");
}

#[test]
fn verify_passes_and_report_matches_schema() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("report.json");
    let md = dir.path().join("report.md");
    let files = [corpus("ex18.cm"), corpus("polynomial.cm")];
    let o = run(
        &dir.path().join("cache"),
        &[
            "verify",
            "--all",
            "-f",
            files[0].to_str().unwrap(),
            files[1].to_str().unwrap(),
            "--json",
            json.to_str().unwrap(),
            "--markdown",
            md.to_str().unwrap(),
        ],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    validate(&schema(), &report);
    assert_eq!(report["summary"]["fail"], 0);
    assert_eq!(report["entries"].as_array().unwrap().len(), 10);
    assert!(std::fs::read_to_string(&md).unwrap().contains("ex18/P"));
}

#[test]
fn pair_report_matches_schema() {
    let dir = tempfile::tempdir().unwrap();
    let mut pair_schema = schema();
    pair_schema["$ref"] = "#/$defs/pairReport".into();
    for key in ["required", "properties", "additionalProperties", "type"] {
        pair_schema.as_object_mut().unwrap().remove(key);
    }
    for (file, pair) in [("ex18.cm", "P"), ("polynomial.cm", "LS"), ("ex18.cm", "B")] {
        let json = dir.path().join(format!("{pair}.json"));
        let o = run(dir.path(), &["cd", "-f", corpus(file).to_str().unwrap(), "--pair", pair, "--json", json.to_str().unwrap()]);
        assert!(o.status.success());
        let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
        validate(&pair_schema, &doc);
        let mut bad = doc.clone();
        bad["depth"]["kind"] = "bogus".into();
        assert!(!jsonschema::validator_for(&pair_schema).unwrap().is_valid(&bad));
    }
}

#[test]
fn failing_expectation_exits_2_with_reproduction() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("wrong.cm");
    let text = std::fs::read_to_string(corpus("ex18.cm")).unwrap() + "expect Q.cd = 3 [derived];\n";
    std::fs::write(&src, text).unwrap();
    let o = run(&dir.path().join("cache"), &["verify", "-f", src.to_str().unwrap(), "--entry", "Q"]);
    assert_eq!(o.status.code(), Some(2));
    let out = stdout(&o);
    assert!(out.contains("expected 3 [derived], computed 0"), "{out}");
    assert!(out.contains("reproduce: cmpairs verify -f"), "{out}");
}

#[test]
fn errors_exit_nonzero_with_positions() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("bad.cm");
    std::fs::write(&src, "ring R = poly(x,y)/(x*y);\nmodule Bad = coker(R, [[x + 1]]);\n").unwrap();
    let o = run(dir.path(), &["ass", "-f", src.to_str().unwrap(), "--module", "Bad"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("2:25"));
    let o = run(dir.path(), &["ass", "-f", corpus("ex18.cm").to_str().unwrap(), "--module", "Missing"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn warm_cache_results_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let src = corpus("polynomial.cm");
    let mut outputs = Vec::new();
    for (k, extra) in [None, None, Some("--no-cache")].into_iter().enumerate() {
        let json = dir.path().join(format!("{k}.json"));
        let mut args = vec!["cd", "-f", src.to_str().unwrap(), "--pair", "KL", "--json", json.to_str().unwrap()];
        args.extend(extra);
        let o = run(&cache, &args);
        assert!(o.status.success());
        outputs.push((stdout(&o), std::fs::read(&json).unwrap()));
    }
    assert!(std::fs::read_dir(&cache).unwrap().count() > 0);
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0], outputs[2]);
}

#[test]
fn gap_search_finds_a_finite_gap() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["search-gap", "-f", corpus("polynomial.cm").to_str().unwrap(), "--ideal", "m"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("(K, L): cd_I N = 1, cd_I(M,N) = 2: finite gap"), "{out}");
    let o = run(dir.path(), &["search-gap", "-f", corpus("polynomial.cm").to_str().unwrap(), "--ideal", "m", "--single-ext"]);
    assert!(stdout(&o).trim_end().ends_with("0 candidates"), "{}", stdout(&o));
}
