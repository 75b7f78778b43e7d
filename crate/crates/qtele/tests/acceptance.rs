//! Acceptance suite: every release criterion as one test, each printing a
//! pass/fail line. Run with `cargo test --test acceptance -- --nocapture`
//! to see the lines; the exit status is the gate either way.

use qtele::verify::{
    bell_decomposition, bell_orthonormality, codec_mutation_rejection, codec_roundtrip,
    entanglement_criterion, fidelity_definition_report, fidelity_extrema_suite,
    generator_algebra, key_necessity, limit_coherence, product_invariance_and_conservation,
    q_unentanglement_agreement, recovery_roundtrip, sign_blindness,
    stats_closed_form_vs_simulation, CheckOutcome, DEFAULT_TOL,
};
use std::time::{Duration, Instant};

const SEED: u64 = 20250810;

fn gate(criterion: &str, outcomes: &[CheckOutcome], budget: Option<Duration>, elapsed: Duration) {
    let passed = outcomes.iter().all(|o| o.passed);
    let within_budget = budget.is_none_or(|b| elapsed <= b);
    println!(
        "criterion {criterion}: {} ({:.2?})",
        if passed && within_budget { "PASS" } else { "FAIL" },
        elapsed
    );
    for outcome in outcomes {
        println!("  [{}] {} - {}", if outcome.passed { "ok" } else { "FAIL" }, outcome.name, outcome.detail);
    }
    assert!(passed, "criterion {criterion} failed");
    if let Some(b) = budget {
        assert!(elapsed <= b, "criterion {criterion} took {elapsed:.2?}, budget {b:.2?}");
    }
}

#[test]
fn criterion_1_generator_algebra() {
    let start = Instant::now();
    let outcome = generator_algebra(DEFAULT_TOL);
    gate("1 generator-algebra", &[outcome], Some(Duration::from_secs(1)), start.elapsed());
}

#[test]
fn criterion_2_q_to_1_coherence() {
    let start = Instant::now();
    let outcome = limit_coherence(SEED, 100);
    gate("2 q-to-1-coherence", &[outcome], Some(Duration::from_secs(5)), start.elapsed());
}

#[test]
fn criterion_3_entanglement_criterion() {
    let start = Instant::now();
    let outcomes = [
        entanglement_criterion(SEED, 1000, DEFAULT_TOL),
        q_unentanglement_agreement(SEED, 1000),
    ];
    gate("3 entanglement-criterion", &outcomes, None, start.elapsed());
}

#[test]
fn criterion_4_teleportation_statistics() {
    let start = Instant::now();
    let outcomes = [
        stats_closed_form_vs_simulation(SEED, 200, DEFAULT_TOL),
        product_invariance_and_conservation(SEED, 200, DEFAULT_TOL),
    ];
    gate("4 teleportation-statistics", &outcomes, Some(Duration::from_secs(5)), start.elapsed());
}

#[test]
fn criterion_5_fidelity_extrema() {
    let start = Instant::now();
    let outcome = fidelity_extrema_suite(SEED, 50, DEFAULT_TOL);
    gate("5 fidelity-extrema", &[outcome], None, start.elapsed());
}

#[test]
fn criterion_6_bell_decomposition() {
    let start = Instant::now();
    let outcomes = [
        bell_orthonormality(DEFAULT_TOL),
        bell_decomposition(SEED, 100, DEFAULT_TOL),
    ];
    gate("6 bell-decomposition", &outcomes, None, start.elapsed());
}

#[test]
fn criterion_7_recovery_round_trip() {
    let start = Instant::now();
    let outcomes = [
        recovery_roundtrip(SEED, 500),
        key_necessity(SEED, 100),
        sign_blindness(SEED, 100),
    ];
    gate("7 recovery-round-trip", &outcomes, None, start.elapsed());
}

#[test]
fn criterion_8_codec() {
    let start = Instant::now();
    let outcomes = [
        codec_roundtrip(SEED, 1000),
        codec_mutation_rejection(SEED),
    ];
    gate("8 codec", &outcomes, None, start.elapsed());
}

#[test]
fn criterion_9_fidelity_definition_report() {
    let start = Instant::now();
    let report = fidelity_definition_report();
    // The report must show both quantities side by side; the mismatch is
    // documented output, and the closed form's extremal properties hold
    // regardless (criterion 5 asserts them; re-run here at a small count).
    assert!(report.detail.contains("closed-form F"));
    assert!(report.detail.contains("literal 3-qubit overlap"));
    assert!(report.detail.contains("not stationary"));
    let extrema = fidelity_extrema_suite(SEED, 10, DEFAULT_TOL);
    gate(
        "9 fidelity-definition-report",
        &[report, extrema],
        None,
        start.elapsed(),
    );
}
