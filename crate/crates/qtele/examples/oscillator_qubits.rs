//! Qubits as excitations of two independent oscillators, and how the
//! deformed creation operator's scalar prefactor is absorbed by the
//! normalization factor gamma.
//!
//! ```bash
//! cargo run -p qtele --example oscillator_qubits
//! ```

use qtele::algebra::js_qubit;
use qtele::deformation::{gamma_for_info, DeformationProfile};
use qtele::qnum::{qnumber, DeformationParam};

fn main() {
    let p = DeformationParam::new(1.0).unwrap();
    let identity = DeformationProfile::identity();

    println!("=== two-oscillator qubits ===\n");
    println!("one excitation in oscillator 1 is |0>, in oscillator 2 is |1>:");
    println!("  n1 = 1 -> {:?}", js_qubit(1, false, &identity, p).unwrap().amps());
    println!("  n1 = 0 -> {:?}", js_qubit(0, false, &identity, p).unwrap().amps());

    println!("\nwith a deformed creation operator the state picks up sqrt(f(q)):");
    let profile = DeformationProfile::power(2.0).unwrap();
    let deformed = js_qubit(1, true, &profile, p).unwrap();
    println!(
        "  f(q) = q^2 at s = 1: |0>_q = {:?} (norm^2 = {:.6})",
        deformed.amps(),
        deformed.norm_sqr()
    );
    println!("  a single dressed qubit is not normalized by itself;");

    println!("\n=== gamma restores the norm for an information qubit ===\n");
    let (alpha0, alpha1) = (0.6, 0.8);
    let gamma = gamma_for_info(alpha0, alpha1, p).unwrap();
    let d0 = qnumber(alpha0, p).unwrap();
    let d1 = qnumber(alpha1, p).unwrap();
    println!("  deformed amplitudes: [{alpha0}] = {d0:.6}, [{alpha1}] = {d1:.6}");
    println!("  gamma = 1/([alpha0]^2 + [alpha1]^2) = {gamma:.6}");
    let norm2 = gamma * (d0 * d0 + d1 * d1);
    println!("  gamma * ([alpha0]^2 + [alpha1]^2) = {norm2:.15}");
    assert!((norm2 - 1.0).abs() < 1e-12);
    println!("\n  sqrt(gamma) ([alpha0]|0> + [alpha1]|1>) is exactly the deformed");
    println!("  information qubit the case-2 protocol teleports.");
}
