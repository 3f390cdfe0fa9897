use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_adams-hopf")).args(args).output().expect("binary runs")
}

fn report(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let code = out.status.code().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, v)
}

fn ranks(v: &Value) -> Vec<(i64, i64, u64)> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|g| (g["adams"].as_i64().unwrap(), g["coh"].as_i64().unwrap(), g["rank"].as_u64().unwrap()))
        .collect()
}

#[test]
fn affine_line_example() {
    let (code, v) = report(&["examples", "run", "affine-line", "--ring", "Q"]);
    assert_eq!(code, 0);
    assert_eq!(ranks(&v["results"]["fundamental_group_homology"]), vec![(-1, 1, 1), (0, 0, 1)]);
    assert!(v["anchor"].is_string());
}

#[test]
fn gm_weight_zero() {
    let (code, v) = report(&["gm-cohomology", "--weight", "0", "--degree-max", "4"]);
    assert_eq!(code, 0);
    assert_eq!(ranks(&v["results"]), vec![(0, 0, 1)]);
    let (code, v) = report(&["gm-cohomology", "--weight", "-2", "--degree-max", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"], Value::Array(vec![]));
}

#[test]
fn malformed_document_points_at_field() {
    let dir = std::env::temp_dir().join(format!("adams-hopf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, r#"{"ring": "Z", "generators": [{"name": "1", "adams": 0, "coh": "zero"}]}"#).unwrap();
    let out = run(&["check-tate", path.to_str().unwrap(), "--window", "adams=-1..0,coh=0..1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("generators[0].coh"), "{err}");
    std::fs::write(&path, r#"{"ring": "Z", "generators": [{"name": "1", "adams": 0, "coh": 0}], "extra": 1}"#).unwrap();
    let out = run(&["check-tate", path.to_str().unwrap(), "--window", "adams=-1..0,coh=0..1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("extra"));
}

#[test]
fn missing_window_is_an_input_error() {
    assert_eq!(run(&["bar-homology", &data("cp2.json"), "--max-column", "3"]).status.code(), Some(2));
}

#[test]
fn failing_certificate_exits_one() {
    // Adams degree 1 carries a cycle: not of Tate type
    let dir = std::env::temp_dir().join(format!("adams-hopf-tate-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("positive.json");
    std::fs::write(
        &path,
        r#"{"ring": "Z", "generators": [{"name": "1", "adams": 0, "coh": 0}, {"name": "p", "adams": 1, "coh": 0}]}"#,
    )
    .unwrap();
    let (code, v) = report(&["check-tate", path.to_str().unwrap(), "--window", "adams=-1..1,coh=0..1"]);
    assert_eq!(code, 1);
    assert_eq!(v["certificates"][0]["result"]["verdict"], "fail");
}

#[test]
fn reports_are_byte_identical() {
    let args = ["tor", &data("cp2.json"), "--module", "unit", "--with", "x-line", "--s", "1", "--imax", "3", "--window", "adams=-4..0,coh=-2..10"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn cech_and_semidirect_certify() {
    let (code, v) = report(&["cech", &data("p1_minus_3pts.json"), "--levels", "3", "--window", "adams=-2..0,coh=0..0"]);
    assert_eq!(code, 0);
    let verdicts: Vec<&str> =
        v["certificates"].as_array().unwrap()[1..].iter().map(|c| c["result"]["verdict"].as_str().unwrap()).collect();
    assert_eq!(verdicts, vec!["strict", "pass_antipode", "strict"]);
    let (code, v) = report(&["semidirect", &data("p1_minus_3pts.json"), "--levels", "2", "--window", "adams=-1..0,coh=0..0"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["level0"][0]["dim"], 1);
}

#[test]
fn tot_reports_validity() {
    let (code, v) = report(&["tot", &data("constant_interval.json"), "--window", "adams=0..0,coh=-1..3"]);
    assert_eq!(code, 0);
    assert_eq!(ranks(&v["results"]["homology"]), vec![(0, 0, 1)]);
    assert_eq!(v["results"]["validity"][0]["guaranteed_through"], 1);
}

#[test]
fn resolve_square_zero() {
    let (code, v) = report(&[
        "--threads", "2", "resolve", &data("square_zero.json"), "--module", "unit", "--s", "1", "--imax", "3", "--window",
        "adams=-4..0,coh=0..0",
    ]);
    assert_eq!(code, 0);
    let stages = v["results"]["stages"].as_array().unwrap();
    for (i, st) in stages.iter().enumerate() {
        let i = i as i64;
        assert_eq!(st["generators"], serde_json::json!([[-i, i]]));
    }
}

#[test]
fn timing_only_on_request() {
    let (_, v) = report(&["gm-cohomology", "--weight", "1", "--degree-max", "2"]);
    assert!(v.get("timing_ms").is_none());
    let (_, v) = report(&["--timing", "gm-cohomology", "--weight", "1", "--degree-max", "2"]);
    assert!(v["timing_ms"].is_u64());
}
