use std::path::PathBuf;
use std::process::{Command, Output};

fn vfrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vfrep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_path(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("vfrep-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn classify_affine_sl2() {
    let o = vfrep(&["classify", "--matrix", "[[2,-2],[-2,2]]"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("type: AffineA(1)"), "{s}");
    assert!(s.contains("corank: 1"), "{s}");
}

#[test]
fn classify_json_and_rows_input() {
    let o = vfrep(&[
        "classify",
        "--matrix",
        "2 -1 0; -1 2 -1; 0 -1 2",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["kind"], "FiniteA(3)");
    assert_eq!(v["corank"], 0);
    assert_eq!(v["solution_matrices"], 2);
}

#[test]
fn verify_affine_sl2_passes() {
    let o = vfrep(&[
        "verify", "--type", "A1affine", "--diag", "1,1", "--n", "1,1",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("result: PASS"));
}

#[test]
fn represent_sl3_latex() {
    let o = vfrep(&[
        "represent",
        "--type",
        "A2",
        "--sm",
        "0",
        "--n",
        "1,1",
        "--format",
        "latex",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(
        s.contains("H_{1} &\\mapsto 2\\frac{D_{1}}{n_{1}}-\\frac{D_{2}}{n_{2}}"),
        "{s}"
    );
    assert!(s.starts_with("\\begin{align*}"));
}

#[test]
fn json_round_trip_verifies() {
    let path = temp_path("rep.json");
    let p = path.to_str().unwrap();
    let o = vfrep(&[
        "represent",
        "--type",
        "A3affine",
        "--sm",
        "1",
        "--diag",
        "2,-1/3,5,7/2",
        "--n",
        "1,-2,2,-1",
        "--format",
        "json",
        "--out",
        p,
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let o = vfrep(&["verify", "--input", p]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = vfrep(&["loop-check", "--input", p, "--m-range", "-1..1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn tampered_json_fails_verification() {
    let path = temp_path("tampered.json");
    let o = vfrep(&[
        "represent",
        "--type",
        "A2",
        "--n",
        "1,2",
        "--format",
        "json",
    ]);
    let mut v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    v["generators"]["X1"][1] = serde_json::Value::String("z1".into());
    std::fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();
    let o = vfrep(&["verify", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
    assert!(stdout(&o).contains("result: FAIL"));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "represent",
        "--type",
        "A4",
        "--sm",
        "1",
        "--n",
        "2,-1,1,-2",
        "--format",
        "json",
    ];
    assert_eq!(vfrep(&args).stdout, vfrep(&args).stdout);
    let args = ["solutions", "--type", "A3affine", "--format", "json"];
    assert_eq!(vfrep(&args).stdout, vfrep(&args).stdout);
}

#[test]
fn input_errors_exit_one() {
    for args in [
        vec!["represent", "--type", "B2"],
        vec!["verify", "--type", "A2", "--n", "0,1"],
        vec!["verify", "--type", "A2", "--diag", "1"],
        vec!["represent", "--type", "A2", "--sm", "5"],
        vec!["classify", "--type", "Q7"],
        vec!["classify", "--matrix", "[[2,0],[0,2]]"],
        vec!["loop-check", "--type", "A2"],
        vec!["represent", "--type", "A2", "--a", "[[1,-1],[-1,1]]"],
        vec!["verify", "--no-such-flag"],
    ] {
        let o = vfrep(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn explicit_solution_matrix() {
    let o = vfrep(&[
        "verify",
        "--type",
        "A2",
        "--a",
        "[[\"2\",\"-3\"],[0,3]]",
        "--n",
        "1,-1",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn solutions_and_search() {
    let o = vfrep(&["solutions", "--type", "G2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("solution matrices: 0"));
    let o = vfrep(&[
        "search",
        "--max-rank",
        "3",
        "--min-entry",
        "-2",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["enumeration"].as_array().unwrap().len(), 0);
    assert_eq!(v["probe"].as_array().unwrap().len(), 0);
    assert!(v["candidates_probed"].as_u64().unwrap() > 0);
    let o = vfrep(&["search", "--type", "C2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("discrepancies: 0"));
}
