//! End-to-end tests of the `cosym` binary: commands, output modes, exit
//! codes, and the documented failure paths.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .canonicalize()
        .unwrap()
}

fn cosym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cosym"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn cosym_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cosym"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).to_string()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn cohomology_of_solvmanifold() {
    let file = fixtures().join("solvmanifold-s.lie");
    let out = cosym(&["cohomology", file.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    for (k, b) in [1, 1, 2, 2, 1, 1].iter().enumerate() {
        assert!(
            text.contains(&format!("{k:>6}  {b:>5}")),
            "missing betti line for degree {k} in:\n{text}"
        );
    }
}

#[test]
fn cohomology_structured_schema() {
    let file = fixtures().join("solvmanifold-s.lie");
    let out = cosym(&["--format", "structured", "cohomology", file.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(v["tool"], "cosym");
    assert_eq!(v["command"], "cohomology");
    assert_eq!(v["verdict"], "OK");
    assert!(v["version"].is_string());
    assert!(v["diagnostics"].is_array());
    assert_eq!(v["data"]["betti"], serde_json::json!([1, 1, 2, 2, 1, 1]));
}

#[test]
fn check_cosymplectic_verdicts() {
    let file = fixtures().join("nilpotent-5d-a.lie");
    let out = cosym(&[
        "check-cosymplectic",
        file.to_str().unwrap(),
        "--eta",
        "e1",
        "--F",
        "e2^e5 - e3^e4",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("COSYMPLECTIC"));

    // failing pair is still a verdict, exit 0
    let out = cosym(&[
        "check-cosymplectic",
        file.to_str().unwrap(),
        "--eta",
        "e3",
        "--F",
        "e2^e5 - e3^e4",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("NOT_COSYMPLECTIC"));
}

#[test]
fn find_cosymplectic_both_verdicts() {
    let exists = fixtures().join("nilpotent-5d-b.lie");
    let out = cosym(&["find-cosymplectic", exists.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("EXISTS"));

    let not = fixtures().join("nilpotent-5d-c.lie");
    let out = cosym(&["--format", "structured", "find-cosymplectic", not.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "NOT_EXISTS is a verdict, not an error");
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "NOT_EXISTS");
    assert_eq!(v["data"]["closed_two_cochains"], 6);
}

#[test]
fn split_and_extend_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let solv = fixtures().join("solvmanifold-s.lie");
    let out = cosym(&[
        "split",
        solv.to_str().unwrap(),
        "--eta",
        "e5",
        "--F",
        "e1^e4 + e2^e3",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("SPLIT"));
    assert!(text.contains("lie compact (0,0,0,0)"), "base is abelian:\n{text}");
    assert!(text.contains("omega = e1^e4 + e2^e3"));

    // extend the abelian base back with the printed derivation
    let base = dir.path().join("abelian4.lie");
    std::fs::write(&base, "lie compact (0,0,0,0)\n").unwrap();
    let out = cosym(&[
        "extend",
        base.to_str().unwrap(),
        "--omega",
        "e1^e4 + e2^e3",
        "--d-matrix",
        "[-1 0 0 0; 0 1 0 0; -1 0 -1 0; 0 -1 0 1]",
        "--xi-name",
        "e5",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("EXTENDED"));
    assert!(
        text.contains("lie compact (-15,25,-15 - 35,-25 + 45,0)"),
        "extension must reproduce the structure equations:\n{text}"
    );
}

#[test]
fn mapping_torus_t4_report() {
    let file = fixtures().join("t4-torus.mt");
    let out = cosym(&[
        "mapping-torus",
        file.to_str().unwrap(),
        "--degree",
        "2",
        "--model",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("betti: [1, 1, 4, 4, 1, 1]"), "{text}");
    assert!(text.contains("verdict: NON_FORMAL(p=2)"));
    assert!(text.contains("alpha = e1^e4"), "witness alpha printed:\n{text}");
    assert!(text.contains("dims [4, 6], r = 2"));
    assert!(text.contains("partial minimal model"));
}

#[test]
fn mapping_torus_a_torus_structured() {
    let file = fixtures().join("a-torus.mt");
    let out = cosym(&[
        "--format",
        "structured",
        "mapping-torus",
        file.to_str().unwrap(),
        "--degree",
        "2",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "NON_FORMAL(p=2)");
    assert_eq!(v["data"]["eigen"]["dims"], serde_json::json!([2, 3, 4]));
    assert_eq!(v["data"]["eigen"]["r"], 3);
    assert_eq!(v["data"]["eigen"]["blocks"], serde_json::json!([1, 3]));
    assert_eq!(v["data"]["betti"], serde_json::json!([1, 1, 2, 2, 1, 1]));
}

#[test]
fn massey_triple_and_quadruple() {
    let heis = fixtures().join("heisenberg-m0.lie");
    let out = cosym(&["massey", heis.to_str().unwrap(), "--classes", "e1, e1, e2"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("NONZERO"), "{text}");
    assert!(text.contains("[e1^e3]"));

    let solv = fixtures().join("solvmanifold-s.lie");
    let out = cosym(&[
        "massey",
        solv.to_str().unwrap(),
        "--classes",
        "e1^e2, e5, e5, e5",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("NONZERO"), "{text}");
    assert!(text.contains("1/2*e3^e4^e5"), "{text}");
}

#[test]
fn cohomology_of_cdga_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("fragment.cdga");
    std::fs::write(
        &file,
        "cdga truncation 6\ngen a 1\ngen b1 2\ngen b2 2\ngen b3 2\ngen b4 2\nd b3 = a^b2\nd b4 = a^b3\n",
    )
    .unwrap();
    let out = cosym(&[
        "--format",
        "structured",
        "cohomology",
        file.to_str().unwrap(),
        "--max-degree",
        "3",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["data"]["betti"], serde_json::json!([1, 1, 2, 2]));
    assert_eq!(v["diagnostics"], serde_json::json!([]));
}

#[test]
fn catalog_list_and_run() {
    let out = cosym(&["catalog", "list"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("solvmanifold-s"));

    let out = cosym(&["catalog", "run", "solvmanifold-s"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("quadruple-massey"));
    assert!(text.contains("0 failed"));

    // shell-style star patterns select by the inner substring
    let out = cosym(&["catalog", "run", "nilpotent-5d-*"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert_eq!(stdout(&out).matches("existence").count(), 3);

    let out = cosym(&["catalog", "run", "no-such-entry"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn exit_code_2_on_parse_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.lie");
    std::fs::write(&bad, "lie compact (0,0,12\n").unwrap();
    let out = cosym(&["cohomology", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(!stderr(&out).is_empty());

    // missing file
    let out = cosym_in(dir.path(), &["cohomology", "nope.lie"]);
    assert_eq!(code(&out), 2);

    // bad expression
    let good = fixtures().join("heisenberg-m0.lie");
    let out = cosym(&[
        "check-cosymplectic",
        good.to_str().unwrap(),
        "--eta",
        "0.5*e1",
        "--F",
        "e2^e3",
    ]);
    assert_eq!(code(&out), 2, "decimals are rejected");

    // wrong class count
    let out = cosym(&["massey", good.to_str().unwrap(), "--classes", "e1, e2"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn exit_code_3_on_mathematical_invalidity() {
    let dir = tempfile::tempdir().unwrap();
    // (0,12,23) violates the Jacobi identity
    let bad = dir.path().join("nonjacobi.lie");
    std::fs::write(&bad, "lie compact (0,12,23)\n").unwrap();
    let out = cosym(&["cohomology", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("Jacobi"), "{}", stderr(&out));

    // mapping-torus spec with a broken orientation
    let bad_mt = dir.path().join("bad.mt");
    std::fs::write(
        &bad_mt,
        "mapping-torus\nfiber exterior dim 2 basis e1 e2\nphi 1 = [1 0; 0 1]\nphi 2 = [-1]\nderive-exterior-powers = true\n",
    )
    .unwrap();
    let out = cosym(&["mapping-torus", bad_mt.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("orientation"), "{}", stderr(&out));

    // phi[0] must be the identity
    let bad_phi0 = dir.path().join("badphi0.mt");
    std::fs::write(
        &bad_phi0,
        "mapping-torus\nfiber exterior dim 2 basis e1 e2\nphi 0 = [-1]\nphi 1 = [1 0; 0 1]\nderive-exterior-powers = true\n",
    )
    .unwrap();
    let out = cosym(&["mapping-torus", bad_phi0.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("identity on H^0"), "{}", stderr(&out));
}

#[test]
fn structured_error_has_schema() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.lie");
    std::fs::write(&bad, "lie compact (0,0,99)\n").unwrap();
    let out = cosym(&["--format", "structured", "cohomology", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "ERROR");
    assert!(!v["diagnostics"].as_array().unwrap().is_empty());
}

#[test]
fn explicit_lie_grammar_and_rational_coefficients() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("explicit.lie");
    std::fs::write(
        &file,
        "lie dim 5 basis a1..a5\nd a1 = -1*a1^a5\nd a2 = a2^a5\nd a3 = -1*a1^a5 - a3^a5\nd a4 = -1*a2^a5 + a4^a5\n",
    )
    .unwrap();
    let out = cosym(&["cohomology", file.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("     2      2"), "betti 2 in degree 2:\n{text}");

    // fractional structure constants
    let half = dir.path().join("half.lie");
    std::fs::write(&half, "lie compact (0,0,1/2*12)\n").unwrap();
    let out = cosym(&["cohomology", half.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
}

#[test]
fn sigma_fixture_runs_end_to_end() {
    let file = fixtures().join("sigma2-torus.mt");
    let out = cosym(&["mapping-torus", file.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("betti: [1, 4, 4, 1]"));
    assert!(text.contains("verdict: NON_FORMAL(p=1)"));
    assert!(text.contains("beta  = x1"));
}
