use std::process::{Command, Output};

fn msnring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_msnring"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_pass_exits_zero() {
    let o = msnring(&["verify", "--theorem", "t3_1a", "--spec", "mat2:p=3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("T3_1a on mat2:p=3: PASS"));
}

#[test]
fn verify_commutative_ring_is_hypothesis_not_met() {
    let o = msnring(&["verify", "--theorem", "t2_1", "--spec", "zn:n=6", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "HYPOTHESIS_NOT_MET");
    assert_eq!(v["ring"], "zn:n=6");
    for key in ["theorem", "params", "computed", "predicted"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}

#[test]
fn spectrum_json() {
    let o = msnring(&["spectrum", "--matrix", "msn", "--spec", "nc_p2:p=2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), r#"{"exact":true,"pairs":[[0,3]]}"#);
    let o = msnring(&["spectrum", "--matrix", "cn", "--spec", "prod(ut2:p=2,zn:n=3)", "--json"]);
    assert_eq!(stdout(&o).trim(), r#"{"exact":true,"pairs":[[-4,15],[20,3]]}"#);
}

#[test]
fn graph_build_output_feeds_graph_inputs() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["g.txt", "g.json"] {
        let path = dir.path().join(name);
        let path = path.to_str().unwrap();
        let o = msnring(&["graph-build", "--spec", "ut2:p=3", "--out", path]);
        assert_eq!(o.status.code(), Some(0));
        let from_file = msnring(&["classify", "--graph", path, "--json"]);
        let from_spec = msnring(&["classify", "--spec", "ut2:p=3", "--json"]);
        assert_eq!(from_file.status.code(), Some(0));
        assert_eq!(stdout(&from_file), stdout(&from_spec));
    }
    let text = std::fs::read_to_string(dir.path().join("g.txt")).unwrap();
    assert!(text.starts_with("24 60\n"), "{text}");
}

#[test]
fn usage_errors_exit_two() {
    let o = msnring(&["classify", "--spec", "mat2:p=2", "--frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("--frobnicate") && err.contains("Usage:"), "{err}");
    assert_eq!(msnring(&["classify", "--spec", "mat2:p=4"]).status.code(), Some(2));
    assert_eq!(msnring(&["verify", "--theorem", "t9", "--spec", "mat2:p=2"]).status.code(), Some(2));
    assert_eq!(msnring(&["classify", "--graph", "/nonexistent/graph.txt"]).status.code(), Some(2));
    assert_eq!(msnring(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn sweep_writes_csv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("r.csv");
    let o = msnring(&[
        "sweep", "--theorems", "t4_3,t4_1a", "--p-range", "2", "--q-range", "3", "--out", csv.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = std::fs::read_to_string(&csv).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 3);
    assert!(rows[1].starts_with("T4_1a,,2,3,,UNSUPPORTED"), "{}", rows[1]);
    assert!(rows[2].starts_with("T4_3,\"prod(ut2:p=2,zn:n=3)\",2,3,,PASS,3K6,750,750"), "{}", rows[2]);

    let json = dir.path().join("r.json");
    let again = msnring(&[
        "sweep", "--theorems", "t4_1a,t4_3", "--p-range", "2", "--q-range", "3", "--out", json.to_str().unwrap(),
    ]);
    assert_eq!(stdout(&again), stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
}

#[test]
fn property_suite_reports_counterexamples() {
    let o = msnring(&["property-suite", "--seed", "3", "--trials", "20", "--json"]);
    // K2 components and 2K1 are reported; see the README
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["enumerated"], 271);
    assert_eq!(v["sampled"], 20);
    assert!(v["counterexamples"].as_array().unwrap().iter().any(|c| c["union"] == "2K1"));
}

#[test]
fn ring_info_fields() {
    let o = msnring(&["ring-info", "--spec", "nc_p2:p=2", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["order"], 4);
    assert_eq!(v["center_size"], 1);
    assert_eq!(v["commuting_probability"], "5/8");
    assert_eq!(v["centralizer_count"], 4);
    assert_eq!(v["quotient_type"], serde_json::json!([2, 2]));
}
