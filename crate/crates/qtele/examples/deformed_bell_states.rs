//! Deformed Bell-like states: orthonormality and the decomposition of a
//! diagonal entangled state in that basis.
//!
//! ```bash
//! cargo run -p qtele --example deformed_bell_states
//! ```

use qtele::algebra::{bell_q_decompose, bell_q_state, PureState};
use qtele::deformation::product_for_bell_basis;
use qtele::qnum::{qnumber, DeformationParam};

fn main() {
    let p = DeformationParam::new(1.0).unwrap();

    println!("=== deformed Bell-like basis at s = 1 ===\n");
    for i in 0..4 {
        let state = bell_q_state(i, p).unwrap();
        println!("  |phi_{i}>_q = {:?}", state.amps());
    }

    println!("\northonormality check:");
    let mut worst: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            let inner = bell_q_state(i, p)
                .unwrap()
                .inner(&bell_q_state(j, p).unwrap())
                .unwrap();
            let expect = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((inner - expect).abs());
        }
    }
    println!("  max deviation from delta_ij: {worst:.3e}");
    assert!(worst < 1e-12);

    println!("\n=== decomposing a diagonal entangled state ===\n");
    let (a00, a11) = (0.6, 0.8);
    let d00 = qnumber(a00, p).unwrap();
    let d11 = qnumber(a11, p).unwrap();
    let scale = product_for_bell_basis(p).sqrt();
    let mu = PureState::from_amplitudes(2, vec![scale * d00, 0.0, 0.0, scale * d11]).unwrap();
    println!("input: sqrt(psi beta) ([{a00}]|00> + [{a11}]|11>) = {:?}", mu.amps());

    let coeffs = bell_q_decompose(&mu, p).unwrap();
    println!("\ncoefficients in the deformed Bell basis:");
    for (i, b) in coeffs.iter().enumerate() {
        println!("  b_{i} = {b:+.10}");
    }
    println!("\nclosed forms: b0 = ([a00]+[a11]) / (2 [1/sqrt(2)]),");
    println!("              b3 = ([a00]-[a11]) / (2 [1/sqrt(2)]), b1 = b2 = 0");

    // Rebuild and compare.
    let mut rebuilt = vec![0.0; 4];
    for (i, &b) in coeffs.iter().enumerate() {
        for (slot, amp) in rebuilt.iter_mut().zip(bell_q_state(i, p).unwrap().amps()) {
            *slot += b * amp;
        }
    }
    let rebuilt = PureState::from_amplitudes(2, rebuilt).unwrap();
    println!("\nreconstruction error: {:.3e}", rebuilt.max_abs_diff(&mu));
    assert!(rebuilt.max_abs_diff(&mu) < 1e-12);
}
