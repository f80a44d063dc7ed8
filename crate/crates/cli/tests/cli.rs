use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_simplexvol"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn simplex_file(body: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(body.as_bytes()).unwrap();
    f
}

#[test]
fn sylvester_lists_values_as_strings() {
    let v = json(&["sylvester", "--upto", "6"]);
    let expect: Vec<&str> = vec!["2", "3", "7", "43", "1807", "3263443"];
    assert_eq!(v, serde_json::json!(expect));
}

#[test]
fn zpw_verify_and_enumerate() {
    let v = json(&["zpw", "--dim", "3", "--k", "2", "--verify"]);
    assert_eq!(v["vertices"], serde_json::json!([[0, 0, 0], [2, 0, 0], [0, 3, 0], [0, 0, 18]]));
    let f = simplex_file(&v.to_string());
    let pts = json(&["enumerate", "--simplex", f.path().to_str().unwrap()]);
    assert_eq!(pts.as_array().unwrap().len(), 2);
}

#[test]
fn check_ps_defaults_to_maxmin_point() {
    let f = simplex_file(r#"{"dimension": 3, "vertices": [[0,0,0],[2,0,0],[0,3,0],[0,0,12]]}"#);
    let v = json(&["check-ps", "--simplex", f.path().to_str().unwrap()]);
    assert_eq!(v["point"], serde_json::json!([1, 1, 1]));
    assert_eq!(v["beta"], serde_json::json!(["1/2", "1/3", "1/12", "1/12"]));
    let tight: Vec<bool> = v["product_sum"]["records"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["tight"].as_bool().unwrap())
        .collect();
    assert_eq!(tight, vec![true, true, false]);
}

#[test]
fn improve_segment() {
    let f = simplex_file(r#"{"dimension": 1, "vertices": [[0],[5]]}"#);
    let path = f.path().to_str().unwrap();
    let w = json(&["improve", "--simplex", path, "--point", "1"]);
    assert_eq!(w["m"], "1");
    assert_eq!(w["m_parts"], serde_json::json!(["1"]));
    assert_eq!(w["q"], serde_json::json!([2]));
    assert_eq!((w["old_gamma"].as_str(), w["new_gamma"].as_str()), (Some("1/5"), Some("2/5")));
    let out = run(&["improve", "--simplex", path, "--point", "2"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "already-satisfies");
}

#[test]
fn improve_rejects_exterior_point() {
    let f = simplex_file(r#"{"dimension": 1, "vertices": [[0],[5]]}"#);
    let out = run(&["improve", "--simplex", f.path().to_str().unwrap(), "--point", "-1"]);
    assert!(!out.status.success());
}

#[test]
fn tau_with_grid() {
    let v = json(&["tau", "--dim", "2", "--grid", "18"]);
    assert_eq!(v["lower_bound"], "1/9");
    assert_eq!(v["grid_upper"], "1/9");
    assert_eq!(v["is_exact"], true);
    assert_eq!(v["attaining_beta"], serde_json::json!(["2/3", "1/6", "1/6"]));
    let bad = run(&["tau", "--dim", "2", "--tolerance", "-1/2"]);
    assert!(!bad.status.success());
}

#[test]
fn bounds_json_and_csv() {
    let v = json(&["bounds", "--dim", "2", "--k", "1"]);
    assert_eq!(v["thm12_bound"], "6");
    assert_eq!(v["thm32_bound"], "9/2");
    assert_eq!(v["thm15b_bound"]["exact"], "326163600");
    assert_eq!(v["pikhurko_old_bound"]["exact"], "20503125000");
    assert_eq!(v["literature"]["value"], "9/2");

    let out = run(&["bounds", "--dim", "2", "--k", "1", "--format", "csv"]);
    assert!(out.status.success());
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    let headers = rdr.headers().unwrap().clone();
    let row = rdr.records().next().unwrap().unwrap();
    let get = |name: &str| row.get(headers.iter().position(|h| h == name).unwrap()).unwrap().to_string();
    assert_eq!(get("thm12_bound"), "6");
    assert_eq!(get("ratio_thm12_over_zpw"), "3/2");
}

#[test]
fn output_is_byte_identical_across_runs() {
    let a = run(&["bounds", "--dim", "4", "--k", "3"]).stdout;
    let b = run(&["bounds", "--dim", "4", "--k", "3"]).stdout;
    assert_eq!(a, b);
    let a = run(&["tau", "--dim", "3"]).stdout;
    let b = run(&["tau", "--dim", "3"]).stdout;
    assert_eq!(a, b);
}

#[test]
fn verify_all_small_corpus_exit_codes() {
    let out = run(&["verify-all", "--corpus-size", "10", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "pass");

    let out = run(&["verify-all", "--corpus-size", "10", "--budget", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["incomplete"], true);
}

#[test]
fn malformed_simplex_file() {
    let f = simplex_file(r#"{"dimension": 2, "vertices": [[0,0],[1,1],[2,2]]}"#);
    let out = run(&["enumerate", "--simplex", f.path().to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}
