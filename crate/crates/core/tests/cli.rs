use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use setcalc::setops::{left_translate, GSet};
use setcalc::Group;

fn setcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_setcalc")).args(args).env_remove("SETCALC_JOBS").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn config_file(name: &str, body: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("setcalc-cli-{}-{name}.toml", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path
}

const CAMPAIGN: &str = r#"
group = "dihedral:6"
generator = "uniform:1,5"
trials = 40
seed = 11
theorems = ["triangle", "triple", "stronger_middle"]
"#;

#[test]
fn ratio_reports_both_methods() {
    let out = setcalc(&["ratio", "--group", "zn:30", "--a", "{0,1,2}", "--b", "{0,5}", "--method", "both"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["K"], serde_json::json!({"num": 2, "den": 1}));
    assert_eq!(v["agree"], true);
    assert_eq!(v["brute"]["X"], v["flow"]["X"]);
}

#[test]
fn cover_is_valid() {
    let out = setcalc(&["cover", "--group", "zn:12", "--a", "{0,1}", "--b", "{0,3,6}", "--order", "reverse"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["covered"], true);
    assert_eq!(v["disjoint"], true);
    assert_eq!(v["order"], "reverse");
}

#[test]
fn verify_pass_and_failed_check() {
    let out = setcalc(&["verify", "triple", "--group", "sym:3", "--b", "all"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["status"], "pass");

    let g = Group::parse("sym:8").unwrap();
    let h = GSet::parse(&g, "subgroup:(1 2 3 4);(1 2)").unwrap();
    let x = g.parse_element("(1 5)(2 6)(3 7)(4 8)").unwrap();
    let s = h.union(&left_translate(&x, &h).unwrap()).unwrap();
    let literal = format!("{{{}}}", s.to_strings().join(","));
    let out = setcalc(&["verify", "s_chain", "--group", "sym:8", "--a", &literal, "--b", "subgroup:(1 2 3 4);(1 2)"]);
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["status"], "fail");
    assert_eq!(v["actual"], 1152);
}

#[test]
fn input_errors_exit_3() {
    for args in [
        &["verify", "no_such_theorem", "--group", "zn:5"][..],
        &["verify", "triple", "--group", "sym:3", "--b", "{zz}"],
        &["verify", "triple", "--group", "sym:3", "--b", "all", "--alpha", "1/2"],
        &["verify", "plunnecke_h", "--group", "sym:3", "--a", "all", "--b", "all"],
        &["ratio", "--group", "zn:0", "--a", "{0}", "--b", "{0}"],
        &["frobnicate"],
    ] {
        let out = setcalc(args);
        assert_eq!(out.status.code(), Some(3), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stderr.is_empty());
    }
    assert_eq!(setcalc(&["--help"]).status.code(), Some(0));
}

#[test]
fn gallery_formats() {
    let out = setcalc(&["gallery", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v.to_string().contains("gallery_counterexample"));
    let text = setcalc(&["gallery", "--format", "text"]);
    assert!(String::from_utf8_lossy(&text.stdout).contains("pass"));
}

#[test]
fn fuzz_is_deterministic_across_jobs() {
    let path = config_file("det", CAMPAIGN);
    let p = path.to_str().unwrap();
    let one = setcalc(&["fuzz", "--config", p, "--jobs", "1"]);
    let three = setcalc(&["fuzz", "--config", p, "--jobs", "3"]);
    let env = Command::new(env!("CARGO_BIN_EXE_setcalc"))
        .args(["fuzz", "--config", p])
        .env("SETCALC_JOBS", "2")
        .output()
        .unwrap();
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, three.stdout);
    assert_eq!(one.stdout, env.stdout);
    let v = json(&one);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);

    let reseeded = setcalc(&["fuzz", "--config", p, "--seed", "12", "--trials", "5", "--format", "csv"]);
    assert_eq!(reseeded.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&reseeded.stdout).lines().count() > 5);
    std::fs::remove_file(path).unwrap();
}

#[test]
fn fuzz_output_file_and_violations() {
    let path = config_file("mut", &format!("{CAMPAIGN}mutation = true\n"));
    let report = path.with_extension("json");
    let out = setcalc(&["fuzz", "--config", path.to_str().unwrap(), "--output", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert!(!v["violations"].as_array().unwrap().is_empty());
    std::fs::remove_file(path).unwrap();
    std::fs::remove_file(report).unwrap();
}

#[test]
fn fuzz_config_errors_exit_3() {
    let unknown = config_file("unknown", &format!("{CAMPAIGN}colour = \"red\"\n"));
    let abelian = config_file("abelian", "group = \"sym:4\"\ngenerator = \"uniform:2\"\ntrials = 3\nseed = 1\ntheorems = [\"plunnecke_h\"]\n");
    for path in [&unknown, &abelian] {
        let out = setcalc(&["fuzz", "--config", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(setcalc(&["fuzz", "--config", "/nonexistent/setcalc.toml"]).status.code(), Some(3));
    std::fs::remove_file(unknown).unwrap();
    std::fs::remove_file(abelian).unwrap();
}
