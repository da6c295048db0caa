use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn bentkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bentkit"))
        .args(args)
        .env_remove("BENTKIT_CHECKPOINT_DIR")
        .env_remove("BENTKIT_THREADS")
        .output()
        .expect("binary runs")
}

fn json_of(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = bentkit(&full);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn analyze_reports() {
    let v = json_of(&["analyze", "catalog:C1_1"]);
    assert_eq!(v["bent"], true);
    assert_eq!(v["nonlinearity"], 28);
    assert_eq!(v["degree"], 2);

    let v = json_of(&["analyze", "-n", "6", "0"]);
    assert_eq!(v["bent"], false);
    assert_eq!(v["nonlinearity"], 0);

    let ex2 = "x1*x2*x3*x4*x5 + x1*x6 + x2*x7 + x3*x8 + x4*x9 + x5*x10";
    let v = json_of(&["analyze", ex2]);
    assert_eq!(v["bent"], true);
    assert_eq!(v["degree"], 5);
}

#[test]
fn analyze_reads_files_and_records() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("f.json");
    std::fs::write(
        &p,
        r#"{"n": 4, "m": 2, "coords": ["x1*x3 + x2*x4", "x1*x4 + x2*x3 + x2*x4"]}"#,
    )
    .unwrap();
    let v = json_of(&["analyze", p.to_str().unwrap()]);
    assert_eq!(v["m"], 2);
    assert_eq!(v["bent"], true);
    assert_eq!(v["components"].as_array().unwrap().len(), 3);

    let v = json_of(&["--paper-anf", "analyze", "14 + 25 + 36"]);
    assert_eq!(v["bent"], true);
    assert_eq!(v["coords"][0], "14 ⊕ 25 ⊕ 36");
}

#[test]
fn parse_errors_exit_2() {
    let out = bentkit(&["analyze", "x1*+x2"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse"));
    assert_eq!(code(&bentkit(&["frobnicate"])), 2);
    assert_eq!(code(&bentkit(&["analyze", "catalog:C9"])), 2);
}

#[test]
fn design_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("d.txt");
    let v = json_of(&[
        "design",
        "catalog:C1_1",
        "--kind",
        "addition",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(v["parameters"], "2-(64,28,12)");
    assert_eq!(v["valid"], true);

    let v = json_of(&[
        "design",
        "catalog:C2_1",
        "--kind",
        "graph",
        "--format",
        "hex",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(v["parameters"], "(64,4,64,16)");
    assert_eq!(v["valid"], true);
}

#[test]
fn non_bent_addition_design_exits_3() {
    let out = bentkit(&[
        "design",
        "-n",
        "4",
        "x1*x2",
        "--kind",
        "addition",
        "-o",
        "/dev/null",
    ]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("not bent"));
}

#[test]
fn design_output_round_trips_through_isomorphic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.hex");
    let w = dir.path().join("w.json");
    for (p, fmt, f) in [
        (&a, "text", "x1*x2 + x3*x4 + x5*x6"),
        (&b, "hex", "x1*x4 + x2*x5 + x3*x6 + x1 + x6"),
    ] {
        let out = bentkit(&[
            "design",
            "-n",
            "6",
            f,
            "--kind",
            "support",
            "--format",
            fmt,
            "-o",
            p.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let v = json_of(&["isomorphic", a.to_str().unwrap(), a.to_str().unwrap()]);
    assert_eq!(v["isomorphic"], true);
    let v = json_of(&[
        "isomorphic",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
        "--witness",
        w.to_str().unwrap(),
    ]);
    assert_eq!(v["isomorphic"], true);
    let wit: Value = serde_json::from_str(&std::fs::read_to_string(&w).unwrap()).unwrap();
    assert_eq!(wit["point_map"].as_array().unwrap().len(), 64);
}

#[test]
fn equivalence_and_invariants() {
    let v = json_of(&["equivalent", "catalog:C1_1", "x1*x2 + x3*x4 + x5*x6"]);
    assert_eq!(v["equivalent"], true);
    let v = json_of(&["equivalent", "catalog:C1_1", "catalog:C1_2"]);
    assert_eq!(v["equivalent"], false);
    let v = json_of(&["invariants", "catalog:C1_1", "--kind", "support", "--aut"]);
    assert_eq!(v["gf2_rank"], 8);
    assert_eq!(v["parameters"], "2-(64,28,12)");
    assert!(v["aut_order"].as_str().unwrap().parse::<u128>().unwrap() > 0);
}

#[test]
fn verify_suites() {
    let v = json_of(&["verify", "example2"]);
    assert_eq!(v["passed"], true);
    let out = bentkit(&["verify", "no-such-suite"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn enumerate_and_classify_n4() {
    let dir = tempfile::tempdir().unwrap();
    let tables = dir.path().join("t.txt");
    let v = json_of(&["enumerate", "-n", "4", "-o", tables.to_str().unwrap()]);
    assert_eq!(v["affine_free_bent"], 28);
    assert_eq!(v["complete"], true);
    assert_eq!(
        std::fs::read_to_string(&tables).unwrap().lines().count(),
        28
    );

    let out = dir.path().join("cls");
    let v = json_of(&["classify", "-n", "4", "--out-dir", out.to_str().unwrap()]);
    assert_eq!(v["relations_passed"], true);
    assert_eq!(v["layers"][1]["classes"], 1);
    for f in ["classes.jsonl", "hasse.dot", "hasse.json", "report.json"] {
        assert!(Path::new(&out).join(f).exists(), "{f}");
    }
    let dot = std::fs::read_to_string(out.join("hasse.dot")).unwrap();
    assert!(dot.contains("\"C1_1\" -> \"C2_1\""));
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let run = |t: &str| {
        let out_dir = dir.path().join(t);
        let out = bentkit(&[
            "--threads",
            t,
            "--json",
            "classify",
            "-n",
            "4",
            "--out-dir",
            out_dir.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        let mut v: Value = serde_json::from_slice(&out.stdout).unwrap();
        v.as_object_mut().unwrap().remove("out_dir");
        (v, std::fs::read(out_dir.join("classes.jsonl")).unwrap())
    };
    assert_eq!(run("1"), run("2"));
}

#[test]
fn enumerate_checkpoint_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let v = json_of(&[
        "enumerate",
        "-n",
        "6",
        "--checkpoint-dir",
        d,
        "--max-batches",
        "1",
    ]);
    assert_eq!(v["complete"], false);
    let first = v["affine_free_bent"].as_u64().unwrap();
    assert!(first > 0);
    let v = json_of(&[
        "enumerate",
        "-n",
        "6",
        "--checkpoint-dir",
        d,
        "--max-batches",
        "1",
    ]);
    assert!(v["affine_free_bent"].as_u64().unwrap() > first);
    assert_eq!(v["cursor"], 8192);
}

#[test]
fn catalog_listing() {
    let v = json_of(&["catalog"]);
    assert_eq!(v.as_array().unwrap().len(), 26);
    let v = json_of(&["catalog", "C3_13"]);
    assert_eq!(v["m"], 3);
    assert_eq!(v["coords"].as_array().unwrap().len(), 3);
}
