//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. All checks are exact (rational arithmetic) and seeded, hence
//! fully reproducible.

use gsa::laws::{self, SuiteOptions};

fn report(criterion: &str, outcome: &laws::SuiteOutcome) {
    println!(
        "criterion {criterion}: {}",
        if outcome.passed() { "PASS" } else { "FAIL" }
    );
    if !outcome.passed() {
        println!("{outcome}");
    }
    assert!(outcome.passed(), "criterion {criterion} failed:\n{outcome}");
}

#[test]
fn criterion_01_worked_example_fidelity() {
    // the double-vector-bundle example reproduces the signed reversion
    // bit-exactly, against a reviewed golden file
    let outcome = laws::suite_worked_example();
    report("01 (worked-example fidelity)", &outcome);

    let src = include_str!("golden/dvb_super.gsa");
    let golden = include_str!("golden/dvb_super_reversed.gsa");
    let doc = gsa::dsl::parse_document(src).expect("fixture parses");
    let reversed = gsa::parity::total_reversion(&doc.atlas).expect("reversion runs");
    let emitted = gsa::dsl::emit_dsl(&gsa::dsl::AtlasDocument::new(reversed, None));
    assert_eq!(emitted, golden, "golden reversion output drifted");
    println!("criterion 01 (golden file byte-exact): PASS");
}

#[test]
fn criterion_02_koszul_sign_laws() {
    // identity normalization and multiplicativity over all
    // 2^4 * (4!)^2 = 9216 triples at four slots, exhaustively
    let outcome = laws::suite_koszul(4);
    report("02 (Koszul sign laws, 9216 triples)", &outcome);
}

#[test]
fn criterion_03_phi_calculus() {
    let outcome = laws::suite_phi(0x0603, 100);
    report("03 (reversion-order isomorphisms on 100 atlases)", &outcome);
}

#[test]
fn criterion_04_flip_action() {
    let outcome = laws::suite_flips(0x0604, 3);
    report("04 (flip action on third prolongations)", &outcome);
}

#[test]
fn criterion_05_nice_coordinates() {
    let outcome = laws::suite_nice(0x0605, 50);
    report("05 (nice coordinates on 50 symmetric fixtures)", &outcome);
}

#[test]
fn criterion_06_xi_equivalence() {
    let outcome = laws::suite_xi(0x0606, 20);
    report("06 (symmetric-to-skew equivalence)", &outcome);
}

#[test]
fn criterion_07_polarization_roundtrip() {
    let outcome = laws::suite_polar(0x0607, 50, 3);
    report("07 (polarization round trip on 50 atlases)", &outcome);
}

#[test]
fn criterion_08_desuperization() {
    let outcome = laws::suite_desuper(0x0608, 20, 3);
    report("08 (desuperization of 20 graded atlases)", &outcome);
}

#[test]
fn criterion_09_tangent_calculus() {
    let outcome = laws::suite_tangent(0x0609, 100);
    report("09 (tangent lifts and Schwarz symmetry)", &outcome);
}

#[test]
fn criterion_10_algebra_core() {
    let outcome = laws::suite_superalg(0x0610, 1000);
    report("10 (algebra core on 1000 polynomials)", &outcome);
}

#[test]
fn all_suites_accessible_by_name() {
    let opts = SuiteOptions {
        seed: 1,
        count: Some(2),
        n_max: Some(2),
        degree_max: Some(2),
    };
    for name in laws::suite_names() {
        let outcome = laws::run_suite(name, &opts).expect("registered suite");
        assert!(outcome.passed(), "suite {name} failed at reduced scale");
    }
    assert!(laws::run_suite("nonexistent", &opts).is_none());
}
