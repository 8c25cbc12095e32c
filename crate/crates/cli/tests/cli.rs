use std::path::PathBuf;
use std::process::{Command, Output};

use hecke_core::hecke::standard_r_matrix;
use hecke_core::QMatrix;
use serde_json::Value;

fn hecke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hecke")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hecke-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn check_hecke_standard_two() {
    let out = hecke(&["check-hecke", "--standard", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["yb"], true);
    assert_eq!(v["hecke"], true);
    assert_eq!(v["skew"], true);
    assert_eq!(v["nu"]["num"], serde_json::json!([[-4, "1"]]));
}

#[test]
fn exported_matrix_round_trips_through_check_hecke() {
    let p = scratch("r2.json");
    std::fs::write(&p, standard_r_matrix(2).to_json().to_string()).unwrap();
    let back = QMatrix::from_json_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(back, standard_r_matrix(2));
    let from_file = json_of(&hecke(&["check-hecke", "--input", p.to_str().unwrap()]));
    let builtin = json_of(&hecke(&["check-hecke", "--standard", "2"]));
    assert_eq!(from_file, builtin);
}

#[test]
fn non_hecke_matrix_is_a_math_failure() {
    let p = scratch("twice.json");
    let m = QMatrix::scalar(4, &2.into());
    std::fs::write(&p, m.to_json().to_string()).unwrap();
    let out = hecke(&["check-hecke", "--input", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["yb"], true);
    assert_eq!(v["hecke"], false);
    assert!(v["witness"].as_str().unwrap().contains("Hecke"));
}

#[test]
fn malformed_json_is_a_parse_error() {
    let p = scratch("bad.json");
    std::fs::write(&p, "{\"rows\": 4, ").unwrap();
    assert_eq!(hecke(&["check-hecke", "--input", p.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(hecke(&["verify-all", "--symmetry", p.to_str().unwrap()]).status.code(), Some(2));
    let missing = scratch("missing.json");
    assert_eq!(hecke(&["hp-series", "--symmetry", missing.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(hecke(&["verify-all"]).status.code(), Some(2));
    assert_eq!(hecke(&["hp-series", "--standard", "2", "--sample-points", "1,3/2"]).status.code(), Some(2));
    assert_eq!(hecke(&["hp-series", "--standard", "2", "--sample-points", "3/2"]).status.code(), Some(2));
    assert_eq!(hecke(&["rdims", "--standard", "2", "--shape", "1,2"]).status.code(), Some(2));
    assert_eq!(hecke(&["rep-verify", "--standard", "2", "--carrier", "VW"]).status.code(), Some(2));
    assert_eq!(hecke(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(hecke(&["tableaux", "--shape", "2,1", "--eval", "3/2"]).status.code(), Some(0));
    assert_eq!(hecke(&["rdims", "--standard", "2", "--shape", "1", "--eval", "3/2"]).status.code(), Some(2));
}

#[test]
fn hp_series_export() {
    let v = json_of(&hecke(&["hp-series", "--standard", "2"]));
    assert_eq!(v["numerator"], serde_json::json!([1, 2, 1]));
    assert_eq!(v["denominator"], serde_json::json!([1]));
    assert_eq!(v["birank"], serde_json::json!([2, 0]));
}

#[test]
fn idempotents_and_tableaux() {
    let v = json_of(&hecke(&["idempotents", "--standard", "2", "--k", "3"]));
    assert_eq!(v["(3)"], serde_json::json!([1, 4]));
    assert_eq!(v["(2,1)"], serde_json::json!([2, 2]));
    assert_eq!(v["(1,1,1)"], serde_json::json!([1, 0]));
    let t = json_of(&hecke(&["tableaux", "--shape", "3,2,1"]));
    assert_eq!(t.as_array().unwrap().len(), 16);
}

#[test]
fn rdims_and_rea_dims() {
    let zero = json_of(&hecke(&["rdims", "--superflip", "1", "1", "--shape", "2,1"]));
    assert_eq!(zero["num"], serde_json::json!([]));
    let out = hecke(&["rdims", "--standard", "2", "--shape", "1,1", "--eval", "q=2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("at q=2: 1"));
    let v = json_of(&hecke(&["rea-dims", "--standard", "2", "--order", "3"]));
    assert_eq!(v, serde_json::json!({"generic_rank": 20, "classical_rank": 20, "equal": true}));
}

#[test]
fn rep_verify_summary() {
    let out = hecke(&["rep-verify", "--standard", "2", "--carrier", "V,V", "--shape", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["relations_ok"], true);
    assert_eq!(v["equivariant"], true);
    assert_eq!(v["dim"], 3);
    assert!(v["rdim"].is_object());
}

#[test]
fn poisson_commands() {
    let out = hecke(&["poisson-check", "--m", "2", "--pencil", "1,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["jacobi"], true);
    let out = hecke(&["poisson-cocycle", "--m", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["status"], "pass");
}

#[test]
fn verify_all_superflip_one_one_skips_sl_reduction() {
    let out = hecke(&["verify-all", "--superflip", "1", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let skipped: Vec<&Value> = v["checks"].as_array().unwrap().iter().filter(|c| c["status"] == "skip").collect();
    assert!(skipped.iter().any(|c| c["detail"].as_str().unwrap().contains("m=n")));
}

#[test]
fn verify_all_is_byte_stable() {
    let a = scratch("a.json");
    let b = scratch("b.json");
    for p in [&a, &b] {
        let out = hecke(&["verify-all", "--standard", "2", "--json", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}
