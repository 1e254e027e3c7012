//! End-to-end exit-code and format contract tests for the binary.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bihom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bihom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fixture_dir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("bihom-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_fixture(name: &str, contents: &str) -> PathBuf {
    let path = fixture_dir().join(name);
    fs::write(&path, contents).unwrap();
    path
}

const BROKEN_JACOBI: &str = r#"{
    "dimension": 3,
    "parameters": [],
    "mu": [],
    "bracket": [[1,2,3,"1"],[2,1,3,"-1"],[1,3,1,"1"],[3,1,1,"-1"]],
    "alpha": [["1","0","0"],["0","1","0"],["0","0","1"]],
    "beta": [["1","0","0"],["0","1","0"],["0","0","1"]],
    "kind": "poisson"
}"#;

const ORDINARY_POISSON: &str = r#"{
    "dimension": 2,
    "parameters": [],
    "mu": [[1,1,1,"1"],[1,2,2,"1"],[2,1,2,"1"]],
    "bracket": [],
    "alpha": [["1","0"],["0","1"]],
    "beta": [["1","0"],["0","1"]],
    "kind": "poisson"
}"#;

#[test]
fn catalog_verify_alg1_exits_zero_with_seven_passes() {
    let out = bihom(&["catalog", "--verify", "alg1"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        stdout.matches("PASS").count(),
        8,
        "7 checks + overall:\n{stdout}"
    );
    assert!(!stdout.contains("FAIL"), "{stdout}");
}

#[test]
fn catalog_verify_all_reports_confirmed_failures() {
    let out = bihom(&["catalog", "--verify", "all"]);
    assert_eq!(out.status.code(), Some(1), "worked examples fail");
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.matches("== ").count(), 23);
    assert!(stdout.contains("oracle 3/3 points confirm"), "{stdout}");
    assert!(!stdout.contains("DISAGREEMENT"), "{stdout}");
}

#[test]
fn verify_broken_document_exits_one_with_witness() {
    let input = write_fixture("broken.json", BROKEN_JACOBI);
    let out = bihom(&["verify", "--input", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("FAIL bihom_jacobi"), "{stdout}");
    assert!(stdout.contains("(x,y,z)=(e_"), "{stdout}");
    assert!(stdout.contains("residual ["), "{stdout}");
}

#[test]
fn verify_passing_document_exits_zero() {
    let input = write_fixture("ordinary.json", ORDINARY_POISSON);
    let out = bihom(&["verify", "--input", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn unknown_flag_exits_two() {
    let out = bihom(&["verify", "--nosuchflag"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_input_exits_two() {
    let out = bihom(&["verify", "--input", "/nonexistent/file.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!String::from_utf8(out.stderr).unwrap().is_empty());
}

#[test]
fn unknown_catalog_id_exits_two() {
    let out = bihom(&["catalog", "--dump", "alg99"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn checks_filter_runs_named_identity() {
    let input = write_fixture("ordinary2.json", ORDINARY_POISSON);
    let out = bihom(&[
        "verify",
        "--input",
        input.to_str().unwrap(),
        "--checks",
        "bihom_associativity,admissibility",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("PASS bihom_associativity"));
    assert!(stdout.contains("PASS admissibility"));
    assert!(!stdout.contains("bihom_jacobi"));
    // unknown check name is an input error
    let out = bihom(&[
        "verify",
        "--input",
        input.to_str().unwrap(),
        "--checks",
        "nonsense",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_output_is_valid_and_stable() {
    let out1 = bihom(&["catalog", "--verify", "alg4", "--format", "json"]);
    let out2 = bihom(&["catalog", "--verify", "alg4", "--format", "json"]);
    assert_eq!(out1.status.code(), Some(0));
    assert_eq!(out1.stdout, out2.stdout);
    let parsed: serde_json::Value = serde_json::from_slice(&out1.stdout).unwrap();
    assert_eq!(parsed[0]["id"], "alg4");
    assert_eq!(parsed[0]["report"]["overall"], "PASS");
}

#[test]
fn catalog_dump_round_trips_through_verify() {
    let out = bihom(&["catalog", "--dump", "alg6"]);
    assert_eq!(out.status.code(), Some(0));
    let path = write_fixture("alg6.json", &String::from_utf8(out.stdout).unwrap());
    let verify = bihom(&["verify", "--input", path.to_str().unwrap()]);
    assert_eq!(verify.status.code(), Some(0));
}

#[test]
fn twist_by_identity_reproduces_document() {
    let input = write_fixture("twist-in.json", ORDINARY_POISSON);
    let id2 = write_fixture("id2.json", r#"[["1","0"],["0","1"]]"#);
    let output = fixture_dir().join("twist-out.json");
    let out = bihom(&[
        "twist",
        "--input",
        input.to_str().unwrap(),
        "--alpha",
        id2.to_str().unwrap(),
        "--beta",
        id2.to_str().unwrap(),
        "--output",
        output.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let produced: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&output).unwrap()).unwrap();
    let original: serde_json::Value = serde_json::from_str(ORDINARY_POISSON).unwrap();
    assert_eq!(produced["mu"], original["mu"]);
    assert_eq!(produced["alpha"], original["alpha"]);
}

#[test]
fn polarize_then_depolarize_round_trip() {
    let plain = r#"{
        "dimension": 2,
        "parameters": [],
        "mu": [[1,2,1,"1"]],
        "alpha": [["1","0"],["0","1"]],
        "beta": [["1","0"],["0","1"]],
        "kind": "plain"
    }"#;
    let input = write_fixture("plain.json", plain);
    let polarized = fixture_dir().join("polarized.json");
    let out = bihom(&[
        "polarize",
        "--input",
        input.to_str().unwrap(),
        "--output",
        polarized.to_str().unwrap(),
    ]);
    // this product is not admissible, so polarization does not verify
    assert_eq!(out.status.code(), Some(1));
    let produced: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&polarized).unwrap()).unwrap();
    assert_eq!(produced["kind"], "poisson");
    let back = fixture_dir().join("depolarized.json");
    let out = bihom(&[
        "depolarize",
        "--input",
        polarized.to_str().unwrap(),
        "--output",
        back.to_str().unwrap(),
    ]);
    // depolarize reports admissibility, failing for this input
    assert_eq!(out.status.code(), Some(1));
    let recovered: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&back).unwrap()).unwrap();
    let original: serde_json::Value = serde_json::from_str(plain).unwrap();
    assert_eq!(recovered["mu"], original["mu"]);
}

#[test]
fn sum_and_tensor_write_verified_documents() {
    let left = write_fixture("sum-left.json", ORDINARY_POISSON);
    let right = write_fixture("sum-right.json", ORDINARY_POISSON);
    let output = fixture_dir().join("sum-out.json");
    let out = bihom(&[
        "sum",
        "--left",
        left.to_str().unwrap(),
        "--right",
        right.to_str().unwrap(),
        "--output",
        output.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let produced: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(produced["dimension"], 4);

    let unital = r#"{
        "dimension": 1, "parameters": [],
        "mu": [[1,1,1,"1"]],
        "alpha": [["1"]], "beta": [["1"]],
        "kind": "associative"
    }"#;
    let factor = write_fixture("unital.json", unital);
    let tensor_out = fixture_dir().join("tensor-out.json");
    let out = bihom(&[
        "tensor",
        "--left",
        left.to_str().unwrap(),
        "--right",
        factor.to_str().unwrap(),
        "--output",
        tensor_out.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn semidirect_with_zero_representation() {
    let input = write_fixture("sd-in.json", ORDINARY_POISSON);
    let rep = write_fixture(
        "sd-rep.json",
        r#"{
            "module_dim": 1,
            "rho_bracket": [[["0"]], [["0"]]],
            "rho_mu": [[["0"]], [["0"]]],
            "gamma": [["1"]],
            "nu": [["1"]]
        }"#,
    );
    let output = fixture_dir().join("sd-out.json");
    let out = bihom(&[
        "semidirect",
        "--input",
        input.to_str().unwrap(),
        "--rep",
        rep.to_str().unwrap(),
        "--output",
        output.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let produced: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(produced["dimension"], 3);
}

#[test]
fn search_json_is_deterministic_and_jobs_independent() {
    let out1 = bihom(&["search", "--dim", "1", "--grid", "0,1", "--format", "json"]);
    let out2 = bihom(&[
        "search", "--dim", "1", "--grid", "0,1", "--format", "json", "--jobs", "3",
    ]);
    assert_eq!(out1.status.code(), Some(0));
    assert_eq!(out1.stdout, out2.stdout);
    let parsed: serde_json::Value = serde_json::from_slice(&out1.stdout).unwrap();
    assert_eq!(parsed["count_raw"], "16");
}

#[test]
fn search_budget_exceeded_is_input_error() {
    let out = bihom(&[
        "search", "--dim", "2", "--grid", "0,1,-1", "--budget", "1000",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("budget"), "{stderr}");
}

#[test]
fn seed_env_override_is_accepted() {
    let out = Command::new(env!("CARGO_BIN_EXE_bihom"))
        .env("BIHOM_SEED", "12345")
        .args(["catalog", "--verify", "alg1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}
