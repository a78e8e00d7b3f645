use std::process::{Command, Output};

use serde_json::Value;

fn rotor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rotor")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--json", "-"]);
    let o = rotor(&full);
    let v = serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)));
    (o.status.code().unwrap(), v)
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["results"].as_array().unwrap().iter().find(|r| r["check"] == name).unwrap_or_else(|| panic!("no {name}"))
}

fn write_temp(name: &str, text: &str) -> String {
    let path = std::env::temp_dir().join(format!("rotor-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn eval_fixture_values() {
    let o = rotor(&["eval", "--graphs", "theta", "--tensor", "eps"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "theta\t6");
    let o = rotor(&["eval", "--graphs", "theta_rev", "--tensor", "so3"]);
    assert_eq!(stdout(&o).trim(), "theta_rev\t-6");
    let o = rotor(&["eval", "--graphs", "circle", "--tensor", "so3", "--float"]);
    assert!(stdout(&o).starts_with("circle\t3\t3.0"));
}

#[test]
fn eval_reports_schema_and_digests() {
    let (code, r) = json(&["eval", "--graphs", "all", "--tensor", "so3"]);
    assert_eq!(code, 0);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["inputs"].as_array().unwrap().len(), 2);
    assert_eq!(r["inputs"][1]["sha256"].as_str().unwrap().len(), 64);
    let values: Vec<&str> = r["results"].as_array().unwrap().iter().map(|x| x["detail"]["value"].as_str().unwrap()).collect();
    assert_eq!(values, ["3/1", "6/1", "-6/1", "12/1", "6/1"]);
}

#[test]
fn malformed_input_names_the_line() {
    let path = write_temp("bad.txt", "graph bad\nvertex a: 1 2 3\nvertex b: 4 5 6\nedge 1 4\nedge 2 x\nend\n");
    let o = rotor(&["eval", "--graphs", &path, "--tensor", "so3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 5"));
    let o = rotor(&["eval", "--graphs", "theta", "--tensor", "missing-fixture"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let strip = |mut v: Value| {
        v["wall_time_secs"] = Value::Null;
        for r in v["results"].as_array_mut().unwrap() {
            r["detail"]["timing"] = Value::Null;
        }
        v
    };
    let a = strip(json(&["gram", "--tensor", "so3", "--max-vertices", "2", "--k", "2"]).1);
    let b = strip(json(&["gram", "--tensor", "so3", "--max-vertices", "2", "--k", "2"]).1);
    assert_eq!(a, b);
}

#[test]
fn gram_emits_verified_certificate() {
    let (code, r) = json(&["gram", "--tensor", "so3", "--max-vertices", "4", "--k", "1"]);
    assert_eq!(code, 0);
    let d = &check(&r, "gram-psd k=1")["detail"];
    assert_eq!(d["decision"]["type"], "certificate");
    assert_eq!(d["verified"], true);
    assert_eq!(d["graphs"].as_array().unwrap().len(), 20);
}

#[test]
fn join_outputs_a_formal_sum() {
    let (code, r) = json(&["join", "--left", "theta", "--right", "theta", "--k", "0"]);
    assert_eq!(code, 0);
    let sum = r["results"][0]["detail"]["sum"].as_object().unwrap();
    assert_eq!(sum.len(), 1);
    assert_eq!(sum.values().next().unwrap(), "1/1");
}

#[test]
fn brauer_k1_and_caps() {
    let (code, r) = json(&["brauer", "verify", "--k", "1", "--x", "1"]);
    assert_eq!(code, 0);
    let d = &check(&r, "brauer")["detail"];
    assert_eq!(d["eigen"][0]["eigenvalue"], "15/1");
    assert!(d["eigen"][0]["residual"].is_null());
    assert_eq!(rotor(&["brauer", "verify", "--k", "3"]).status.code(), Some(2));
}

#[test]
fn brauer_k2_is_sampled_without_deep() {
    let (code, r) = json(&["brauer", "verify", "--k", "2", "--x", "3,1/2,-5"]);
    assert_eq!(code, 0);
    let d = &check(&r, "brauer")["detail"];
    assert_eq!(d["mode"], "default");
    assert!(d["averaged"].as_array().unwrap().is_empty());
    assert!(d["eigen"].as_array().unwrap().iter().all(|e| e["coordinates"].as_u64().unwrap() >= 100));
}

#[test]
fn deep_mode_respects_the_budget_variable() {
    let o = Command::new(env!("CARGO_BIN_EXE_rotor"))
        .args(["brauer", "verify", "--k", "2", "--deep", "--x", "3"])
        .env("ROTOR_DEEP_BUDGET_SECS", "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("budget"));
}

#[test]
fn weights_reject_non_jacobi_with_witness() {
    let (code, r) = json(&["weights", "check", "--tensor", "nonjacobi"]);
    assert_eq!(code, 1);
    let d = &check(&r, "weights")["detail"];
    assert_eq!(d["antisymmetry_ok"], true);
    assert_eq!(d["ihx_ok"], false);
    assert!(!d["witnesses"].as_array().unwrap().is_empty());
    let (code, _) = json(&["weights", "check", "--tensor", "so3"]);
    assert_eq!(code, 0);
}

#[test]
fn verify_all_symmetric_scalar_model() {
    let path = write_temp("sym1.tensor", "tensor n=1 symmetrize=false\n1 1 1 1\n");
    let (code, r) = json(&["verify-all", "--tensor", &path, "--k-max", "2"]);
    assert_eq!(code, 1);
    assert_eq!(check(&r, "weights")["status"], "fail");
    for k in 0..=2 {
        assert_eq!(check(&r, &format!("gram-psd k={k}"))["status"], "pass");
    }
}

#[test]
fn verify_all_epsilon_checks() {
    let (_, r) = json(&["verify-all"]);
    for name in ["kjoin-lemma", "vee-union k=1", "gradient-gram", "weights", "gram-psd k=0", "gram-psd k=3"] {
        assert_eq!(check(&r, name)["status"], "pass", "{name}");
    }
    assert_eq!(rotor(&["verify-all", "--max-vertices", "6"]).status.code(), Some(2));
}

#[test]
fn theta_identity_probe_refutes_three_halves() {
    let (_, r) = json(&["theta-identity", "--circle", "3/2"]);
    let d = &check(&r, "circle-probe")["detail"];
    assert_eq!(d["decision"]["type"], "refutation");
    assert_eq!(d["verified"], true);
    assert!(d["obstruction"].as_str().unwrap().starts_with('-'));
    let (_, r) = json(&["theta-identity", "--circle", "0"]);
    assert_eq!(check(&r, "circle-probe")["detail"]["obstruction"], "0/1");
}

#[test]
fn enumerate_and_grad_check() {
    let (code, r) = json(&["enumerate", "--max-vertices", "4", "--connected"]);
    assert_eq!(code, 0);
    let all = json(&["enumerate", "--max-vertices", "4"]).1;
    assert!(r["results"][0]["detail"]["count"].as_u64() < all["results"][0]["detail"]["count"].as_u64());
    assert_eq!(all["results"][0]["detail"]["count"], 20);
    let (code, r) = json(&["grad-check"]);
    assert_eq!(code, 0);
    assert_eq!(check(&r, "finite-differences")["status"], "pass");
}
