// Copyright 2026 The sectorkit Developers
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except
// in compliance with the License. You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License
// is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express
// or implied. See the License for the specific language governing permissions and limitations under
// the License.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn repo() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn scenario(name: &str) -> PathBuf {
    repo().join("scenarios").join(format!("{name}.json"))
}

fn run(args: &[&str], config: &Path, out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sectorkit"))
        .args(args)
        .arg("--config")
        .arg(config)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
}

fn schema() -> jsonschema::JSONSchema {
    let text = std::fs::read_to_string(repo().join("schema/report.v1.schema.json")).unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    jsonschema::JSONSchema::compile(&schema).expect("schema compiles")
}

fn report(out: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap()
}

fn assert_valid(v: &Value) {
    let schema = schema();
    if let Err(errors) = schema.validate(v) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("report violates the schema: {msgs:#?}");
    };
}

fn write_config(dir: &Path, text: &str) -> PathBuf {
    let p = dir.join("config.json");
    std::fs::write(&p, text).unwrap();
    p
}

const ARCS: &str = r#"{"schema_version":1,"name":"arcs","seed":1,"family":{"kind":"circle-arcs","n":12,"radii":["1/12","1/6"]}"#;

#[test]
fn bundled_scenarios_match_and_validate() {
    let tmp = tempfile::tempdir().unwrap();
    for name in ["chain-fermion", "arc-circle"] {
        let out = tmp.path().join(name);
        let o = run(&["all"], &scenario(name), &out);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&o.stderr));
        let r = report(&out);
        assert_valid(&r);
        assert_eq!(r["outcome"], "ok");
        assert!(r["expectations"].as_array().unwrap().iter().all(|e| e["matches"] == true));
        let summary = std::fs::read_to_string(out.join("summary.txt")).unwrap();
        assert!(summary.ends_with("outcome: ok\n"), "{summary}");
    }
}

#[test]
fn every_suite_writes_a_valid_report() {
    let tmp = tempfile::tempdir().unwrap();
    for suite in ["poset-check", "net-check", "cocycle-verify", "statistics", "functor-roundtrip"] {
        let out = tmp.path().join(suite);
        let o = run(&[suite], &scenario("chain-fermion"), &out);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", String::from_utf8_lossy(&o.stderr));
        let r = report(&out);
        assert_valid(&r);
        assert_eq!(r["suite"], suite);
    }
}

#[test]
fn grid_poset_check_validates() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run(&["poset-check"], &scenario("grid-boson"), tmp.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(tmp.path());
    assert_valid(&r);
    assert_eq!(r["poset"]["elements"], 75);
    assert_eq!(r["poset"]["axioms"]["K6"]["verdict"], "fails");
}

#[test]
fn jobs_do_not_change_the_report() {
    let tmp = tempfile::tempdir().unwrap();
    let mut bytes = Vec::new();
    for jobs in ["1", "3"] {
        let out = tmp.path().join(jobs);
        let o = run(&["all", "--jobs", jobs], &scenario("chain-fermion"), &out);
        assert_eq!(o.status.code(), Some(0));
        bytes.push(std::fs::read(out.join("report.json")).unwrap());
    }
    assert_eq!(bytes[0], bytes[1]);
}

#[test]
fn mismatch_exits_one() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(tmp.path(), &format!(r#"{ARCS},"expect":{{"axioms":{{"K7":"holds"}},"h1":{{"rank":0}}}}}}"#));
    let out = tmp.path().join("out");
    let o = run(&["poset-check"], &config, &out);
    assert_eq!(o.status.code(), Some(1));
    let r = report(&out);
    assert_valid(&r);
    assert_eq!(r["outcome"], "expectation-mismatch");
    let observed: Vec<(&str, &str)> = r["expectations"].as_array().unwrap().iter().map(|e| (e["check"].as_str().unwrap(), e["observed"].as_str().unwrap())).collect();
    assert_eq!(observed, vec![("poset.K7", "fails"), ("poset.h1", "rank 1, torsion []")]);
}

#[test]
fn conclusive_requirement_passes_on_a_conclusive_sample() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(tmp.path(), &format!(r#"{ARCS},"require_conclusive":true}}"#));
    let o = run(&["poset-check"], &config, &tmp.path().join("out"));
    // every axiom on the arc sample is conclusive
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn config_errors_exit_two() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("out");
    let cases = [
        (ARCS.replace(r#""seed":1,"#, "") + "}", "seed"),
        (format!(r#"{ARCS},"colour":1}}"#), "colour"),
        (format!(r#"{ARCS},"poles":["zz9"]}}"#), "poles[0]"),
        (ARCS.replace("1/12", "-1") + "}", "family"),
        (format!(r#"{ARCS},"net":{{"model":"full"}}}}"#), "net"),
        ("{".to_string(), "EOF"),
    ];
    for (text, needle) in cases {
        let config = write_config(tmp.path(), &text);
        let o = run(&["all"], &config, &out);
        let err = String::from_utf8_lossy(&o.stderr);
        assert_eq!(o.status.code(), Some(2), "{text}: {err}");
        assert!(err.contains(needle), "{needle} missing from {err}");
    }
    assert!(!out.exists());
    let o = run(&["all"], &tmp.path().join("missing.json"), &out);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["all", "--jobs", "0"], &scenario("arc-circle"), &out);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn net_suites_need_a_net() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(tmp.path(), &format!("{ARCS}}}"));
    let o = run(&["net-check"], &config, &tmp.path().join("out"));
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("needs a net"));
}

#[test]
fn bad_arguments_exit_two() {
    let o = Command::new(env!("CARGO_BIN_EXE_sectorkit")).args(["frobnicate", "--config", "x", "--out", "y"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_sectorkit")).arg("--help").output().unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn unwritable_output_exits_three() {
    let tmp = tempfile::tempdir().unwrap();
    let blocker = tmp.path().join("file");
    std::fs::write(&blocker, "").unwrap();
    let o = run(&["poset-check"], &scenario("arc-circle"), &blocker.join("out"));
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("internal invariant violation"));
}

#[test]
fn budget_overrides_are_recorded() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run(&["poset-check", "--budget-homotopy", "7", "--budget-cosets", "5000"], &scenario("arc-circle"), tmp.path());
    assert_eq!(o.status.code(), Some(0));
    let r = report(tmp.path());
    assert_eq!(r["config"]["budgets"]["homotopy_pairs"], 7);
    assert_eq!(r["config"]["budgets"]["coset_rows"], 5000);
    let o = run(&["poset-check", "--budget-cosets", "0"], &scenario("arc-circle"), tmp.path());
    assert_eq!(o.status.code(), Some(2));
}
