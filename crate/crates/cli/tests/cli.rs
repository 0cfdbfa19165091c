use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn homcx(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_homcx")).args(args).output().expect("binary runs");
    let text = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    (out.status.code().unwrap(), json)
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const CYCLE: &str = "-(1,7,234,2)+(1,6,234,2)-(1,67,34,2)+(1,67,24,2)+(1,7,235,2)-(1,6,235,2)+(1,67,35,2)-(1,67,25,2)";

#[test]
fn build_reports_f_vectors() {
    let dir = tempfile::tempdir().unwrap();
    let k1 = write(dir.path(), "K1.json", r#"{"p": 1, "edges": []}"#);
    let k3 = write(dir.path(), "K3.json", r#"{"p": 3, "edges": [[1,2],[2,3],[1,3]]}"#);
    let (code, r) = homcx(&["build", "--graph", &k1, "-n", "3", "--max-dim", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r["f_vector"], serde_json::json!([3, 3, 1]));
    let (_, r) = homcx(&["build", "--graph", &k3, "-n", "4", "--max-dim", "1"]);
    assert_eq!(r["f_vector"], serde_json::json!([24, 36]));
    let (_, r) = homcx(&["build", "--family", "Star3", "-n", "3", "--max-dim", "3"]);
    assert_eq!(r["f_vector"][3], 3);
    assert_eq!(r["config"]["command"], "build");
}

#[test]
fn homology_examples() {
    for (family, n, betti) in [("C5", "5", [1, 0]), ("K2", "3", [1, 1]), ("K3", "4", [1, 13])] {
        let (code, r) = homcx(&["homology", "--family", family, "-n", n, "--t-max", "1"]);
        assert_eq!(code, 0);
        assert_eq!(r["betti"], serde_json::json!(betti), "{family}");
        assert_eq!(r["torsion"], serde_json::json!([[], []]));
    }
}

#[test]
fn connectivity_verdicts() {
    for (family, n) in [("C5", "5"), ("K1", "3"), ("P3", "5")] {
        let (code, r) = homcx(&["verify-connectivity", "--family", family, "-n", n, "--loops", "3"]);
        assert_eq!(code, 0, "{family}");
        assert_eq!(r["verdict"], "PASS");
        assert!(r["checks"].is_array());
        assert!(r["vgap"].is_i64());
    }
    let (code, r) = homcx(&["verify-connectivity", "--family", "C5", "-n", "5", "--cell-cap", "10"]);
    assert_eq!(code, 1);
    assert_eq!(r["verdict"], "INCOMPLETE");
}

#[test]
fn worked_example_reduction() {
    let dir = tempfile::tempdir().unwrap();
    let chain = write(dir.path(), "c.txt", CYCLE);
    let (code, r) = homcx(&["reduce-cycle", "--family", "C4", "-n", "7", "--chain", &chain, "-i", "2", "--trace"]);
    assert_eq!(code, 0);
    assert_eq!(r["verified"], true);
    assert_eq!(r["reduced_compact"], "(2,6,345,3)-(2,7,345,3)-(2,67,34,3)+(2,67,35,3)-(2,67,45,3)");
    assert_eq!(r["phases"].as_array().unwrap().len(), 4);
    let (code, r) = homcx(&["nullify-cycle", "--family", "C4", "-n", "7", "--chain", &chain]);
    assert_eq!(code, 0);
    assert_eq!(r["verified"], true);
    assert_eq!(r["certificate"]["t"], 2);
}

#[test]
fn empty_chain_gives_empty_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let chain = write(dir.path(), "empty.json", "[]");
    let (code, r) = homcx(&["nullify-cycle", "--family", "C4", "-n", "7", "--chain", &chain]);
    assert_eq!(code, 0);
    assert_eq!(r["certificate"]["additions"], serde_json::json!([]));
}

#[test]
fn seeded_loops_contract_deterministically() {
    let args = ["contract-loop", "--family", "C5", "-n", "5", "--seed", "7", "--steps", "10"];
    let (code, first) = homcx(&args);
    assert_eq!(code, 0);
    assert_eq!(first["verified"], true);
    assert_eq!(first["final_path"].as_array().unwrap().len(), 1);
    let (_, second) = homcx(&args);
    assert_eq!(first, second);

    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "loop.json", "[[[1],[2]],[[1],[3]],[[2],[3]],[[2],[1]],[[3],[1]],[[3],[2]]]");
    let (code, r) = homcx(&["contract-loop", "--family", "K2", "-n", "4", "--path", &path]);
    assert_eq!(code, 0);
    assert_eq!(r["verified"], true);
}

#[test]
fn pi1_ranks() {
    let dir = tempfile::tempdir().unwrap();
    let tree = write(dir.path(), "K1.json", r#"{"p": 1, "edges": []}"#);
    let (_, r) = homcx(&["pi1-rank", "--family", "K3", "-n", "4"]);
    assert_eq!(r["pi1_free_rank"], 13);
    let (_, r) = homcx(&["pi1-rank", "--family", "K2", "-n", "3"]);
    assert_eq!(r["pi1_free_rank"], 1);
    // Hom(K_1, K_2) is a single edge
    let (_, r) = homcx(&["pi1-rank", "--graph", &tree, "-n", "2"]);
    assert_eq!(r["pi1_free_rank"], 0);
}

#[test]
fn errors_exit_nonzero_with_json() {
    let (code, r) = homcx(&["pi1-rank", "--family", "K4", "-n", "4"]);
    assert_eq!(code, 2);
    assert!(r["error"].as_str().unwrap().contains("2"));
    let (code, r) = homcx(&["homology", "--family", "Q3", "-n", "4", "--t-max", "1"]);
    assert_eq!(code, 2);
    assert!(r["error"].as_str().unwrap().contains("Q3"));
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let (code, _) = homcx(&["build", "--family", "K2", "-n", "3", "--max-dim", "1", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let saved: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(saved["f_vector"], serde_json::json!([6, 6]));
}
