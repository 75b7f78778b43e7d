//! q-numbers and deformation profiles: the numeric bedrock.
//!
//! A q-number [x] = (q^x - q^{-x})/(q - q^{-1}) with q = e^s deforms a real
//! amplitude; profile functions scale * q^kappa carry the leftover freedom.
//!
//! ```bash
//! cargo run -p qtele --example q_numbers
//! ```

use qtele::deformation::{product_for_bell_basis, split_product, DeformationProfile};
use qtele::qnum::{qnumber, qnumber_inverse, DeformationParam};

fn main() {
    println!("=== q-numbers ===\n");

    let undeformed = DeformationParam::undeformed();
    let strong = DeformationParam::new(1.0).unwrap();

    println!("s = 0 (q = 1): q-numbers are ordinary numbers");
    for x in [0.25, 0.5, 1.0, 2.0] {
        println!("  [{x}] = {}", qnumber(x, undeformed).unwrap());
    }

    println!("\ns = 1 (q = e = {:.5}): the deformation is strongest", strong.q());
    for x in [0.25, 0.5, 1.0, 2.0] {
        println!("  [{x}] = {:.10}", qnumber(x, strong).unwrap());
    }
    println!("  note [0] = 0 and [1] = 1 at every s; in between, [x] < x");

    println!("\nThe map x -> [x] is strictly monotone on [0, 1], so it inverts:");
    let t = qnumber(0.6, strong).unwrap();
    let back = qnumber_inverse(t, strong).unwrap();
    println!("  [0.6] = {t:.10}, inverse({t:.10}) = {back:.10}");
    assert!((back - 0.6).abs() < 1e-12);

    println!("\n=== profiles ===\n");
    let profile = DeformationProfile::power(2.0).unwrap();
    println!("f(q) = q^2:  f(1) = {}   f(e) = {:.5}", profile.eval(undeformed), profile.eval(strong));

    // Normalization fixes only the *product* of two profiles; the split
    // exponent is free and acts as a shared secret.
    let product = product_for_bell_basis(strong);
    println!("\nBell-basis normalization product at s = 1: {product:.10}");
    for kappa in [0.0, 0.3, -1.5] {
        let (f, g) = split_product(product, kappa).unwrap();
        println!(
            "  split with kappa = {kappa:>4}: f(q) = {:.6}, g(q) = {:.6}, f*g = {:.10}",
            f.eval(strong),
            g.eval(strong),
            f.eval(strong) * g.eval(strong)
        );
    }
    println!("  every split multiplies back to the same product - the exponent");
    println!("  never shows up in an observable, which is what makes it a key.");
}
