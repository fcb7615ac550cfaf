//! End-to-end tests of the `gsa` binary: exit codes, golden outputs, and
//! byte determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn gsa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gsa"))
        .args(args)
        .env_remove("GSA_SEED")
        .output()
        .expect("binary runs")
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

#[test]
fn validate_exit_codes() {
    let ok = gsa(&["validate", &fixture("dvb_super.gsa")]);
    assert_eq!(ok.status.code(), Some(0), "{}", String::from_utf8_lossy(&ok.stdout));

    let bad = gsa(&["validate", &fixture("broken_homogeneity.gsa")]);
    assert_eq!(bad.status.code(), Some(2));
    let report = String::from_utf8_lossy(&bad.stdout);
    assert!(report.contains("FAIL"));
    assert!(report.contains("homogeneity"));
}

#[test]
fn parse_error_exit_code_and_location() {
    let dir = std::env::temp_dir().join("gsa-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken_syntax.gsa");
    std::fs::write(&path, "kind nweighted degree 2;\nchart U { x @(0) even }\n").unwrap();
    let out = gsa(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("2:"), "no line info in: {err}");
}

#[test]
fn usage_errors() {
    let out = gsa(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
    let out = gsa(&["validate", "/nonexistent/gone.gsa"]);
    assert_eq!(out.status.code(), Some(1));
    let out = gsa(&["flip", &fixture("dvb_super.gsa")]);
    assert_eq!(out.status.code(), Some(1), "flip without --perm is a usage error");
}

#[test]
fn reverse_parity_matches_golden() {
    let out = gsa(&["reverse-parity", &fixture("dvb_super.gsa")]);
    assert_eq!(out.status.code(), Some(0));
    let golden = std::fs::read_to_string(fixture("dvb_super_reversed.gsa")).unwrap();
    assert_eq!(String::from_utf8_lossy(&out.stdout), golden);
}

#[test]
fn desuperize_matches_golden() {
    let out = gsa(&["desuperize", &fixture("nmanifold2.gsa")]);
    assert_eq!(out.status.code(), Some(0));
    let golden = std::fs::read_to_string(fixture("nmanifold2_desuper.gsa")).unwrap();
    assert_eq!(String::from_utf8_lossy(&out.stdout), golden);
    // the desuperized document validates (as an atlas plus skew action)
    let dir = std::env::temp_dir().join("gsa-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("desuper_out.gsa");
    std::fs::write(&path, &*String::from_utf8_lossy(&out.stdout)).unwrap();
    let check = gsa(&["validate", path.to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(0), "{}", String::from_utf8_lossy(&check.stdout));
}

#[test]
fn pipeline_outputs_reparse_and_validate() {
    for cmd in ["tangent", "polarize"] {
        let out = gsa(&[cmd, &fixture("nmanifold2.gsa")]);
        assert_eq!(out.status.code(), Some(0), "{cmd} failed");
        let text = String::from_utf8_lossy(&out.stdout);
        let doc = gsa::dsl::parse_document(&text).expect("output reparses");
        assert!(doc.atlas.validate().is_valid(), "{cmd} output invalid");
    }
}

#[test]
fn flip_command_emits_validated_action() {
    let out = gsa(&["flip", &fixture("nmanifold2.gsa"), "--perm", "2 1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    let doc = gsa::dsl::parse_document(&text).expect("output reparses");
    assert!(doc.action.is_some());
    assert!(text.contains("action sigma (2 1)"));
}

#[test]
fn check_laws_is_deterministic() {
    let a = gsa(&["check-laws", "--suite", "superalg", "--seed", "7", "--count", "60"]);
    let b = gsa(&["check-laws", "--suite", "superalg", "--seed", "7", "--count", "60"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8_lossy(&a.stdout);
    assert!(text.contains("seed 7"));
    let unknown = gsa(&["check-laws", "--suite", "nosuch"]);
    assert_eq!(unknown.status.code(), Some(1));
}

#[test]
fn seed_env_variable_is_honored() {
    let with_env = Command::new(env!("CARGO_BIN_EXE_gsa"))
        .args(["check-laws", "--suite", "koszul"])
        .env("GSA_SEED", "99")
        .output()
        .expect("binary runs");
    assert!(String::from_utf8_lossy(&with_env.stdout).contains("seed 99"));
}

#[test]
fn json_output_is_valid_json() {
    let out = gsa(&["tangent", &fixture("nmanifold2.gsa"), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).expect("valid json");
    assert_eq!(v["schema"], "gsa/1");
}

#[test]
fn nice_coords_json_carries_the_change_maps() {
    let src = r#"
kind nvector 2;
chart U {
  x @(0,0) even;
  y @(1,0) odd;
  Y @(0,1) odd;
  z @(1,1) even;
}
flavor symmetric;
action sigma (2 1) {
  y -> Y;
  Y -> y;
  z -> z + x*y*Y;
}
"#;
    let dir = std::env::temp_dir().join("gsa-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("nice_input.gsa");
    std::fs::write(&path, src).unwrap();
    let out = gsa(&["nice-coords", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).expect("valid json");
    assert!(v["change_of_coordinates"].is_array());
    assert!(v["change_inverse"].is_array());

    // and the DSL form produces a nice atlas whose action is the pure
    // permutation
    let out = gsa(&["nice-coords", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("z@(1,1)"));
}

#[test]
fn diagonalize_inverts_polarize() {
    // polarize a weighted fixture through the CLI, then diagonalize the
    // result and check the weighted kind comes back
    let out = gsa(&["polarize", &fixture("nmanifold2.gsa")]);
    assert_eq!(out.status.code(), Some(0));
    let dir = std::env::temp_dir().join("gsa-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("polarized.gsa");
    std::fs::write(&path, &*String::from_utf8_lossy(&out.stdout)).unwrap();
    let out = gsa(&["diagonalize", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("kind nweighted degree 2;"));
    let doc = gsa::dsl::parse_document(&text).expect("output reparses");
    assert!(doc.atlas.validate().is_valid());
}
