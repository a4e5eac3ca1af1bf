use std::path::PathBuf;
use std::process::{Command, Output};

use adjugate_core::exactalg::parse_poly;
use adjugate_core::io::{counterexample, COUNTEREXAMPLE_ADJOINT};
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("adjugate-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_adjugate")).args(args).output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stderr)))
}

fn path(p: &PathBuf) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verify_counterexample_succeeds() {
    let o = run(&["verify-counterexample"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let v = json(&o);
    assert_eq!(v["verified"], true);
    assert_eq!(v["nodal"], true);
    assert_eq!(v["regularity"]["verdict"], "regular");
    assert_eq!(v["adjoint-matches-published"], true);
    assert_eq!(v["witness"]["product-negative"], true);
    // The printed pair is reported as computed: both values are positive.
    assert_eq!(v["published-pair"]["alpha-q"], "29664152/125");
    assert_eq!(v["published-pair"]["product-negative"], false);
}

#[test]
fn triangle_adjoint_is_one() {
    let o = run(&["adjoint", path(&data("triangle.json"))]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["adjoint"]["text"], "1");
    assert_eq!(v["adjoint"]["degree"], 0);
    assert_eq!(v["adjoint"]["provenance"]["kernel-dim"], 1);
}

#[test]
fn square_adjoint_is_the_line_at_infinity() {
    let o = run(&["adjoint", path(&data("square.json")), "--chart", "projective"]);
    let v = json(&o);
    let a = parse_poly(v["adjoint"]["text"].as_str().unwrap()).unwrap();
    assert!(a.is_proportional(&parse_poly("z").unwrap()));
}

#[test]
fn adjoint_of_the_counterexample_matches() {
    let o = run(&["adjoint", path(&data("counterexample.json"))]);
    let a = parse_poly(json(&o)["adjoint"]["text"].as_str().unwrap()).unwrap();
    assert!(a.is_proportional(&parse_poly(COUNTEREXAMPLE_ADJOINT).unwrap()));
}

#[test]
fn shear_with_fiber_check_succeeds() {
    let o = run(&["deform", path(&data("counterexample.json")), "--gamma", "1/10", "--check-fiber"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let v = json(&o);
    assert_eq!(v["adjoint-unchanged"]["holds"], true);
    for k in ["claim1", "claim2", "claim3", "verified"] {
        assert_eq!(v["preserved"][k], true, "{k}");
    }
}

#[test]
fn deform_by_matrix_file() {
    let t = scratch("t.json");
    std::fs::write(&t, r#"{"matrix": [["1","0","0"],["0","1","1/4"],["0","0","1"]]}"#).unwrap();
    let o = run(&["deform", path(&data("counterexample.json")), "--matrix", path(&t)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["preserved"], Value::Null);
    let both = run(&["deform", path(&data("counterexample.json")), "--matrix", path(&t), "--gamma", "1"]);
    assert_eq!(both.status.code(), Some(2));
}

#[test]
fn contact_and_reduce() {
    let o = run(&["contact", path(&data("counterexample.json")), "--component", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["contact"]["count"], 3);
    assert_eq!(v["contact"]["total"], 6);
    let o = run(&["reduce", path(&data("counterexample.json")), "--component", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["line"]["degree"], 1);
    assert_eq!(run(&["reduce", path(&data("triangle.json")), "--component", "4"]).status.code(), Some(2));
}

#[test]
fn ldr_round_trip_through_files() {
    let out = scratch("ldr-report.json");
    let o = run(&["ldr", path(&data("counterexample.json")), "--json-out", path(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let ldr = scratch("ldr.json");
    std::fs::write(&ldr, serde_json::to_string(&report["ldr"]).unwrap()).unwrap();
    let o = run(&["polycon-from-ldr", path(&ldr), "--chart", "projective"]);
    assert_eq!(o.status.code(), Some(0));
    let j: adjugate_core::io::PolyconJson = serde_json::from_value(json(&o)["polycon"].clone()).unwrap();
    let q = adjugate_core::io::polycon_from_json(&j).unwrap();
    let p = counterexample();
    assert_eq!(q.vertices, p.vertices);
    for k in 0..3 {
        assert!(q.components[k].is_proportional(&p.components[k]));
    }
}

#[test]
fn dixon_from_string_forms() {
    let cubic = scratch("cubic.json");
    std::fs::write(&cubic, serde_json::to_string(COUNTEREXAMPLE_ADJOINT).unwrap()).unwrap();
    let red = run(&["reduce", path(&data("counterexample.json")), "--component", "1", "--chart", "projective"]);
    let conic = scratch("conic.json");
    let mut a = json(&red)["adjoint"].clone();
    a.as_object_mut().unwrap().retain(|k, _| k == "degree" || k == "terms");
    std::fs::write(&conic, serde_json::to_string(&a).unwrap()).unwrap();
    let o = run(&["dixon", path(&cubic), path(&conic)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["corner-is-contact-conic"], true);
    assert_eq!(v["divisor-bookkeeping"]["holds"], true);
}

#[test]
fn malformed_input_names_the_field() {
    let bad = scratch("bad.json");
    std::fs::write(&bad, r#"{"chart":"affine","components":[{"terms":[{"exponents":[1,0],"coeff":"1/0"}]}],"vertices":[]}"#)
        .unwrap();
    let o = run(&["adjoint", path(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("components[0].terms[0].coeff"), "{err}");
    let truncated = scratch("truncated.json");
    std::fs::write(&truncated, "{\n  \"chart\": \"affine\",\n  \"components\": [").unwrap();
    let err = String::from_utf8_lossy(&run(&["adjoint", path(&truncated)]).stderr).to_string();
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn render_writes_svg() {
    let out = scratch("p.svg");
    let o = run(&["render", path(&data("counterexample.json")), "--out", path(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let svg = std::fs::read_to_string(&out).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("id=\"adjoint\""));
    let o = run(&["render", path(&data("counterexample.json")), "--out", path(&out), "--resolution", "4"]);
    assert_eq!(o.status.code(), Some(2));
}
