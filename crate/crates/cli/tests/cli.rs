use std::process::{Command, Output};

use serde_json::Value;

const Q24: &str = "1,1,1,1,1,1,0,1,0,0,1,1,1,0,0,0,0,0,0,0,0,0,0,0,1";

fn carlitz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_carlitz")).args(args).env_remove("CARLITZ_PRECISION").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn value<'a>(report: &'a Value, name: &str) -> &'a str {
    report["values"].as_array().unwrap().iter().find(|v| v["name"] == name).unwrap()["value"].as_str().unwrap()
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap()
}

#[test]
fn limit_formula_for_t2_t_1() {
    let out = carlitz(&["klf", "--q", "2", "--modulus", "1,1,1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["schema"], "carlitz-report/1");
    assert_eq!(r["summary"]["failed"], 0);
    assert!(r["summary"]["checks"].as_u64().unwrap() >= 3);
    assert_eq!(r["config"]["command"]["name"], "klf");
}

#[test]
fn three_quadratics_have_sinnott_index_two() {
    let out = carlitz(&["sinnott", "--q", "3", "--hm-three-quadratics"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(value(&r, "[Z[G]:U′]"), "2");
    assert_eq!(check(&r, "[Z[G]:U′], three quadratics")["pass"], true);
}

#[test]
fn septic_antidiagonal_profile() {
    let out = carlitz(&["cyclic", "--q", "2", "--p", "7", "--antidiagonal"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(value(&r, "ν"), "0");
    assert_eq!(value(&r, "degree"), "7");
    assert_eq!(check(&r, "p^ν·[L:L̃] = φ")["pass"], true);
}

#[test]
fn lfun_reports_values_and_both_zeta_routes() {
    let r = json(&carlitz(&["lfun", "--modulus", "1,1,0,1"]));
    assert_eq!(r["summary"]["failed"], 0);
    let ls = r["values"].as_array().unwrap().iter().filter(|v| v["name"] == "L(χ, 0)").count();
    assert_eq!(ls, 6);
}

#[test]
fn index_on_the_antidiagonal_field() {
    let out = carlitz(&["index", "--antidiagonal", "1,1,0,1", "1,0,1,1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(check(&r, "index formula, two assemblies")["pass"], true);
}

#[test]
fn reports_are_identical_across_runs_and_thread_counts() {
    let a = carlitz(&["normrel", "--max-degree", "3"]);
    let b = carlitz(&["normrel", "--max-degree", "3", "--jobs", "4"]);
    let c = carlitz(&["normrel", "--max-degree", "3", "--jobs", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.stdout, c.stdout);
    // the configs differ only in the jobs field
    let (mut ra, mut rb) = (json(&a), json(&b));
    ra["config"]["jobs"] = 0.into();
    rb["config"]["jobs"] = 0.into();
    assert_eq!(ra, rb);
}

#[test]
fn precision_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_carlitz"))
        .args(["normrel", "--max-degree", "2"])
        .env("CARLITZ_PRECISION", "60")
        .output()
        .unwrap();
    let r = json(&out);
    assert_eq!(r["config"]["precision"], 60);
    assert_eq!(r["checks"][1]["expected"], "α_n, 60 terms");
}

#[test]
fn csv_rows_and_output_file() {
    let dir = std::env::temp_dir().join(format!("carlitz-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.csv");
    let out = carlitz(&["cyclic", "--p", "7", "--antidiagonal", "--format", "csv", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("kind,name,inputs,expected,computed,pass,runtime_ms"));
    assert_eq!(lines.next(), Some("schema,carlitz-report/1,,,,,"));
    assert!(text.lines().any(|l| l.starts_with("check,") && l.ends_with(",true,")));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn timings_are_opt_in() {
    let plain = json(&carlitz(&["klf", "--modulus", "0,1"]));
    assert!(plain["checks"][0].get("runtime_ms").is_none());
    let timed = json(&carlitz(&["klf", "--modulus", "0,1", "--timings"]));
    assert!(timed["checks"][0]["runtime_ms"].is_number());
}

#[test]
fn empty_search_is_reported_not_failed() {
    let out = carlitz(&["qsearch", "--p", "7", "--antidiagonal"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(value(&r, "m"), "49");
    assert_eq!(value(&r, "d"), "21");
    assert_eq!(value(&r, "Q_m primes"), "none below degree cap 30");
}

#[test]
fn congruence_at_a_known_prime() {
    let out = carlitz(&["congruence", "--p", "3", "--qm-prime", Q24]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(check(&r, "η̂ congruence, some labeling")["computed"], "45 of 45 labelings");
}

#[test]
fn a_ramified_prime_fails_with_status_one() {
    let out = carlitz(&["congruence", "--p", "3", "--qm-prime", "1,1,1"]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    assert!(r["summary"]["failed"].as_u64().unwrap() > 0);
    // every failed check carries both sides
    for c in r["checks"].as_array().unwrap().iter().filter(|c| c["pass"] == false) {
        assert!(c["expected"].is_string() && c["computed"].is_string());
    }
}

#[test]
fn bad_input_exits_with_status_two() {
    for args in [
        &["klf", "--modulus", "1,x"][..],
        &["klf"],
        &["--q", "6", "klf", "--modulus", "1,1"],
        &["klf", "--modulus", "1"],
        &["normrel", "--precision", "0"],
        &["frobnicate"],
    ] {
        assert_eq!(carlitz(args).status.code(), Some(2), "{args:?}");
    }
}
