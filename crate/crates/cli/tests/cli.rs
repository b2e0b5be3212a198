use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use cycle_census_core::{CensusReport, DensityReport, GroupSpec};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cycle-census")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cycle-census-cli-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

/// `key value` lines of the text report.
fn field(text: &str, key: &str) -> String {
    text.lines()
        .find_map(|l| l.strip_prefix(key).filter(|rest| rest.starts_with(' ')).map(|rest| rest.trim().to_string()))
        .unwrap_or_else(|| panic!("no {key} in\n{text}"))
}

#[test]
fn wreath_census_json() {
    let o = run(&["census", "--family", "wreath", "--inner", "c3", "--outer", "c3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let r: CensusReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.cyclic_transitive_count, 6);
    assert_eq!(r.order, 81);
    assert_eq!(r.n_cycle_count, 36);
    assert_eq!(r.class_count, 4);
    assert!(!r.divides_order);
    let again: CensusReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(again, r);
}

#[test]
fn text_and_json_agree() {
    for args in [
        &["--family", "pgammal", "--d", "2", "--q", "8"][..],
        &["--family", "sharpness", "--k", "1"],
        &["--family", "holomorph", "--n", "9"],
        &["--spec", "m11"],
    ] {
        let text = stdout(&run(&[&["census"], args].concat()));
        let json = run(&[&["census"], args, &["--format", "json"]].concat());
        let r: CensusReport = serde_json::from_str(&stdout(&json)).unwrap();
        assert_eq!(field(&text, "degree"), r.degree.to_string());
        assert_eq!(field(&text, "order"), r.order.to_string());
        assert_eq!(field(&text, "n_cycle_count"), r.n_cycle_count.to_string());
        assert_eq!(field(&text, "class_count"), r.class_count.to_string());
        assert_eq!(field(&text, "cyclic_transitive_count"), r.cyclic_transitive_count.to_string());
        assert_eq!(field(&text, "bound"), r.bound.to_string());
        assert_eq!(field(&text, "equality"), r.equality.to_string());
        assert_eq!(field(&text, "structure_verdict"), r.structure_verdict.to_string());
    }
}

#[test]
fn sharpness_text_report() {
    let o = run(&["census", "--family", "sharpness", "--k", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(field(&text, "equality"), "true");
    assert_eq!(field(&text, "solvable"), "true");
    assert_eq!(field(&text, "structure_verdict"), "pass");
    assert_eq!(field(&text, "tower"), "3 2");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["census", "--family", "cyclic", "--n", "7"]).status.code(), Some(0));
    assert_eq!(run(&["census", "--family", "nonsense"]).status.code(), Some(1));
    assert_eq!(run(&["census", "--family", "cyclic"]).status.code(), Some(1));
    assert_eq!(run(&["census", "--family", "cyclic", "--n", "7", "--q", "3"]).status.code(), Some(1));
    assert_eq!(run(&["census", "--spec", "no-such-group"]).status.code(), Some(1));
    assert_eq!(run(&["census", "--family", "sym", "--n", "9", "--cap", "1000"]).status.code(), Some(1));
    assert_eq!(run(&["census", "--family", "cyclic", "--n", "7", "--cap", "0"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn intransitive_group_is_an_error() {
    let dir = scratch("intransitive");
    let path = dir.join("split.grp");
    fs::write(&path, "# name split\n# expected_order 2\ndegree 4\ngen (1,2)\n").unwrap();
    let o = run(&["census", "--spec", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("transitive"));
}

#[test]
fn export_spec_round_trip() {
    let dir = scratch("export");
    let path = dir.join("pgl32.grp");
    let o = run(&["export-spec", "--family", "pgl", "--d", "3", "--q", "2", "-o", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let spec = GroupSpec::parse(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(spec.degree, 7);
    assert_eq!(spec.expected_order, Some(168));
    assert_eq!(spec.build().unwrap().order(), 168);
    let direct: CensusReport =
        serde_json::from_str(&stdout(&run(&["census", "--family", "pgl", "--d", "3", "--q", "2", "--format", "json"])))
            .unwrap();
    let via_file: CensusReport =
        serde_json::from_str(&stdout(&run(&["census", "--spec", path.to_str().unwrap(), "--format", "json"]))).unwrap();
    assert_eq!(direct, via_file);
}

#[test]
fn data_directory_override() {
    let dir = scratch("data");
    fs::write(dir.join("tiny.grp"), "# name Tiny\n# expected_order 5\ndegree 5\ngen (1,2,3,4,5)\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_cycle-census"))
        .args(["census", "--spec", "tiny", "--format", "json"])
        .env("CYCLE_CENSUS_DATA", &dir)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r: CensusReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((r.order, r.n_cycle_count, r.cyclic_transitive_count), (5, 4, 1));
    let missing = Command::new(env!("CARGO_BIN_EXE_cycle-census"))
        .args(["census", "--spec", "m11"])
        .env("CYCLE_CENSUS_DATA", &dir)
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn wrong_expected_order_is_rejected() {
    let dir = scratch("badorder");
    let path = dir.join("c5.grp");
    fs::write(&path, "# name C5\n# expected_order 10\ndegree 5\ngen (1,2,3,4,5)\n").unwrap();
    assert_eq!(run(&["census", "--spec", path.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn catalog_lists_families() {
    let o = run(&["catalog"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for family in ["cyclic", "holomorph", "sym", "alt", "wreath", "pgl", "pgammal", "duality", "sharpness", "spec"] {
        assert!(text.contains(family), "{family} missing from\n{text}");
    }
    assert!(text.contains("m11"));
}

#[test]
fn density_command() {
    let o = run(&["density", "--poly", "x^2+1", "--bound", "10000", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let r: DensityReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.degree, 2);
    assert_eq!(r.primes_skipped, 1);
    assert_eq!(r.primes_tested + r.primes_skipped, 1229);
    assert!(r.predicted.is_none());
    let o = run(&["density", "--poly", "x^6+x^3+1", "--bound", "10000", "--family", "cyclic", "--n", "6", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let r: DensityReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.predicted.unwrap().to_string(), "1/3");
    assert_eq!(run(&["density", "--poly", "x^6+1", "--family", "cyclic", "--n", "5"]).status.code(), Some(1));
    assert_eq!(run(&["density", "--poly", "7"]).status.code(), Some(1));
    assert_eq!(run(&["density", "--poly", "x^^2"]).status.code(), Some(1));
    assert_eq!(run(&["density", "--poly", "-x^2+2", "--bound", "1000"]).status.code(), Some(0));
    assert_eq!(run(&["density", "--specialize", "1", "--t0", "2", "--bound", "5000"]).status.code(), Some(0));
}

#[test]
fn verify_random_suite() {
    let o = run(&["verify", "--suite", "random", "--samples", "20", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 20);
    assert_eq!(v["violation_count"], 0);
}
