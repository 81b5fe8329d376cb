use std::path::PathBuf;
use std::process::Command;

use repro_matrix::cli::{run, CliOutput, EXIT_ERROR, EXIT_INCONSISTENT, EXIT_OK};
use repro_matrix::problem::{GeneratorFile, MatrixFile};
use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn cli(args: &[&str]) -> CliOutput {
    run(std::iter::once("repro-matrix").chain(args.iter().copied()))
}

fn json(out: &CliOutput) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}{}", out.stdout, out.stderr))
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

#[test]
fn index_of_nilpotent_block() {
    let out = cli(&["index", &fixture("index_nilpotent.json")]);
    assert_eq!((out.code, out.stdout.as_str()), (EXIT_OK, "2\n"));
}

#[test]
fn inconsistent_cline_reports_defect() {
    let out = cli(&["solve", &fixture("cline_inconsistent.json")]);
    assert_eq!(out.code, EXIT_INCONSISTENT);
    let report = json(&out);
    let clause = &report["consistency"]["clauses"][0];
    assert_eq!(clause["holds"], false);
    // A = 0 leaves defect −C
    assert_eq!(clause["defect"], serde_json::json!([["-1", "0"], ["0", "0"]]));
}

#[test]
fn canonical_x0_is_reproductive() {
    let first = json(&cli(&["solve", &fixture("cline_singular.json")]));
    let particular: Vec<Vec<String>> = serde_json::from_value(first["particular"].clone()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let x0 = MatrixFile {
        field: None,
        matrices: [("X0".to_string(), particular)].into(),
    };
    let path = write_temp(&dir, "x0.json", &serde_json::to_string(&x0).unwrap());
    let out = cli(&["solve", &fixture("cline_singular.json"), "--with-x0", &path]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("\"reproductive\": true"), "{}", out.stdout);
    let report = json(&out);
    assert_eq!(report["x0_is_canonical"], true);
    assert_eq!(report["classification_agrees"], true);
}

#[test]
fn other_x0_is_not_reproductive() {
    let out = cli(&["solve", &fixture("cline_gf2.json"), "--with-x0", &fixture("x0_cline_gf2.json")]);
    assert_eq!(out.code, EXIT_OK);
    let report = json(&out);
    assert_eq!(report["reproductive"], false);
    assert_eq!(report["x0_is_canonical"], false);
    assert_eq!(report["classification_agrees"], true);
}

#[test]
fn x0_must_solve() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(&dir, "x0.json", r#"{"matrices": {"X0": [["0", "0"], ["0", "0"]]}}"#);
    let out = cli(&["solve", &fixture("cline_gf2.json"), "--with-x0", &path]);
    assert_eq!(out.code, EXIT_ERROR);
    assert!(out.stderr.contains("not a solution"), "{}", out.stderr);
}

#[test]
fn printed_generators_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (name, x0) in [
        ("cline_identity.json", None),
        ("cline_singular.json", None),
        ("cline_gf2.json", Some("x0_cline_gf2.json")),
        ("penrose.json", None),
        ("kcomm_nilpotent.json", None),
        ("kcomm_gf3.json", None),
    ] {
        let x0 = x0.map(fixture);
        let mut args = vec!["solve".to_string(), fixture(name)];
        if let Some(x0) = &x0 {
            args.extend(["--with-x0".to_string(), x0.clone()]);
        }
        let out = cli(&args.iter().map(String::as_str).collect::<Vec<_>>());
        assert_eq!(out.code, EXIT_OK, "{name}: {}", out.stderr);
        let report = json(&out);
        let generator = serde_json::to_string(&report["generator"]).unwrap();
        GeneratorFile::from_json(&generator).unwrap();
        let path = write_temp(&dir, "gen.json", &generator);
        let check = cli(&["check-repro", &path]);
        assert_eq!(check.code, EXIT_OK);
        assert_eq!(json(&check)["reproductive"], report["reproductive"], "{name}");
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["solve".to_string(), fixture("penrose.json")],
        vec!["solve".to_string(), fixture("kcomm_gf3.json")],
        vec!["oracle".to_string(), fixture("oracle_sylvester.json")],
        vec!["enumerate".to_string(), fixture("oracle_commutant.json")],
        vec!["sweep".to_string(), "primitives".to_string(), "--seed".to_string(), "9".to_string()],
    ] {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let a = cli(&args);
        let b = cli(&args);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.code, b.code);
    }
}

#[test]
fn parse_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let good = std::fs::read_to_string(fixture("cline_identity.json")).unwrap();
    let zero_den = write_temp(&dir, "zero.json", &good.replacen("\"4\"", "\"1/0\"", 1));
    let out = cli(&["solve", &zero_den]);
    assert_eq!(out.code, EXIT_ERROR);
    assert!(out.stderr.contains("zero denominator"), "{}", out.stderr);

    let mut v: Value = serde_json::from_str(&good).unwrap();
    v["matrices"].as_object_mut().unwrap().remove("C");
    let missing = write_temp(&dir, "missing.json", &v.to_string());
    let out = cli(&["solve", &missing]);
    assert_eq!(out.code, EXIT_ERROR);
    assert!(out.stderr.contains("matrix C"), "{}", out.stderr);

    let broken = write_temp(&dir, "broken.json", "{\n \"field\": \"Q\",\n");
    let out = cli(&["index", &broken]);
    assert_eq!(out.code, EXIT_ERROR);
    assert!(out.stderr.contains("line 3"), "{}", out.stderr);

    assert_eq!(cli(&["solve"]).code, EXIT_ERROR);
    assert_eq!(cli(&["frobnicate"]).code, EXIT_ERROR);
    assert_eq!(cli(&["solve", "/nonexistent.json"]).code, EXIT_ERROR);
    assert_eq!(cli(&["--field", "GF(4)", "solve", &fixture("cline_identity.json")]).code, EXIT_ERROR);
}

#[test]
fn small_power_flag() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_temp(
        &dir,
        "nil.json",
        r#"{"field": "Q", "problem": "cline", "params": {"m": 1, "n": 1},
            "matrices": {"A": [["0", "1"], ["0", "0"]], "B": [["1"]], "C": [["1"], ["0"]]}}"#,
    );
    let strict = cli(&["solve", &file]);
    assert_eq!(strict.code, EXIT_ERROR);
    assert!(strict.stderr.contains("below its index"), "{}", strict.stderr);
    let relaxed = cli(&["solve", &file, "--allow-small-power"]);
    assert_eq!(relaxed.code, EXIT_OK);
    let report = json(&relaxed);
    assert_eq!(report["small_power"], true);
    assert_eq!(report["warnings"].as_array().unwrap().len(), 1);
}

#[test]
fn supplied_one_inverses_are_used_and_checked() {
    let dir = tempfile::tempdir().unwrap();
    let good = write_temp(&dir, "g.json", r#"{"matrices": {"G": [["1", "0"], ["0", "7"]]}}"#);
    let out = cli(&["solve", &fixture("penrose.json"), "--one-inverse", &good]);
    assert_eq!(out.code, EXIT_ERROR, "diag(1,7) is not a {{1}}-inverse of diag(2,0)");
    let good = write_temp(&dir, "g.json", r#"{"matrices": {"G": [["1/2", "0"], ["0", "7"]]}}"#);
    let out = cli(&["solve", &fixture("penrose.json"), "--one-inverse", &good]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let report = json(&out);
    assert_eq!(report["one_inverses"][0]["construction"], "user-supplied");
    assert_eq!(report["reproductive"], true);

    let abar = write_temp(&dir, "abar.json", r#"{"matrices": {"Abar": [["5", "0"], ["1", "3"]]}}"#);
    let out = cli(&["solve", &fixture("kcomm_nilpotent.json"), "--one-inverse", &abar]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert_eq!(json(&out)["abar"]["construction"], "user-supplied");

    let out = cli(&["oneinv", &fixture("oneinv.json"), "--one-inverse", &good]);
    assert_eq!(out.code, EXIT_ERROR);
}

#[test]
fn kcomm_reports() {
    let out = cli(&["solve", &fixture("kcomm_k1_inconsistent.json")]);
    assert_eq!(out.code, EXIT_INCONSISTENT);
    assert_eq!(json(&out)["singular"], true);
    let out = cli(&["solve", &fixture("kcomm_nilpotent.json")]);
    let report = json(&out);
    assert_eq!(report["lemmas"]["all_hold"], true);
    assert_eq!(report["lemmas"]["checks"].as_array().unwrap().len(), 4);
}

#[test]
fn penrose_reports_literal_reading() {
    let report = json(&cli(&["solve", &fixture("penrose.json")]));
    assert_eq!(report["x1_literal"]["differs"], true);
    assert_eq!(report["x1_literal"]["solves"], false);
    assert_eq!(report["consistency"]["clauses"].as_array().unwrap().len(), 3);
}

#[test]
fn oracle_and_enumerate() {
    let out = cli(&["enumerate", &fixture("oracle_commutant.json")]);
    assert_eq!(out.code, EXIT_OK);
    // matrices commuting with a 2x2 Jordan block over GF(3): a·I + b·N
    assert_eq!(json(&out)["count"], 9);
    let out = cli(&["enumerate", &fixture("oracle_commutant.json"), "--cap", "5"]);
    assert_eq!(out.code, EXIT_ERROR);
    // P X − X P = [[x21, x22 − x11], [0, −x21]] = diag(1, 2) over GF(3):
    // x21 = 1, x22 = x11, x12 free
    let out = cli(&["oracle", &fixture("oracle_sylvester.json")]);
    assert_eq!(out.code, EXIT_OK);
    let report = json(&out);
    assert_eq!(report["dimension"], 2);
    assert_eq!(report["particular"][1][0], "1");
    // over GF(2) A has rank 1, so A{1} has dimension 3·2 − 1 = 5
    let out = cli(&["--field", "GF(2)", "enumerate", &fixture("oneinv.json")]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(json(&out)["count"], 32);
    assert_eq!(cli(&["enumerate", &fixture("oneinv.json")]).code, EXIT_ERROR);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_repro-matrix");
    let run = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let out = run(&["index", &fixture("index_nilpotent.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "2\n");
    assert_eq!(run(&["solve", &fixture("cline_inconsistent.json")]).status.code(), Some(2));
    assert_eq!(run(&["solve", "missing-file.json"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
