//! The two deformed protocols: a deformed channel (case 1) and additionally
//! a deformed information qubit (case 2), checked against the plain run in
//! the q -> 1 limit.
//!
//! ```bash
//! cargo run -p qtele --example teleport_deformed
//! ```

use qtele::circuit::{bob_stats, fidelity_closed, teleport, AliceBasis, ChannelSpec, InfoQubit, Protocol};
use qtele::deformation::ProfileSet;
use qtele::qnum::DeformationParam;

fn main() {
    let info = InfoQubit::from_alpha0(0.6).unwrap();

    println!("information qubit 0.6|0> + 0.8|1>, channel amplitudes (0.6, 0.8)\n");

    for (label, protocol) in [("case1", Protocol::Case1), ("case2", Protocol::Case2)] {
        println!("=== {label} at s = 1 ===");
        let p = DeformationParam::new(1.0).unwrap();
        let channel = ChannelSpec::diagonal(0.6, true, p).unwrap();
        // The product constraints are bound with a secret split exponent.
        let profiles = match protocol {
            Protocol::Case1 => ProfileSet::plain().bind_channel(0.6, 0.8, p, 0.3).unwrap(),
            _ => ProfileSet::plain()
                .bind_channel(0.6, 0.8, p, 0.3)
                .unwrap()
                .bind_info(info.alpha0(), info.alpha1(), p, -0.7)
                .unwrap(),
        };
        let record = teleport(&info, &channel, Some(&profiles), protocol).unwrap();
        println!(
            "  omega*delta = {:.6}{}",
            record.omega_delta.unwrap(),
            record
                .gamma
                .map(|g| format!(", gamma = {g:.6}"))
                .unwrap_or_default()
        );
        let (m0, m1) = bob_stats(&record, AliceBasis::B00);
        println!("  outcome 00: M0 = {m0:.6}, M1 = {m1:.6}, M0*M1 = {:.8}", m0 * m1);
        let total: f64 = record.branches.iter().map(|b| b.m0 + b.m1).sum();
        println!("  total probability {total:.15}");
        let f = fidelity_closed(&info, &channel, Some(&profiles), protocol).unwrap();
        println!("  closed-form fidelity {f:.6}\n");
    }

    println!("=== the q -> 1 limit recovers the plain protocol ===\n");
    let plain_channel = ChannelSpec::diagonal(0.6, false, DeformationParam::undeformed()).unwrap();
    let plain = teleport(&info, &plain_channel, None, Protocol::Plain).unwrap();
    let (pm0, pm1) = bob_stats(&plain, AliceBasis::B00);
    println!("  plain:            M0 = {pm0:.10}, M1 = {pm1:.10}");
    for (label, protocol) in [("case1", Protocol::Case1), ("case2", Protocol::Case2)] {
        let p = DeformationParam::new(1e-8).unwrap();
        let channel = ChannelSpec::diagonal(0.6, true, p).unwrap();
        let record = teleport(&info, &channel, None, protocol).unwrap();
        let (m0, m1) = bob_stats(&record, AliceBasis::B00);
        println!("  {label} at s=1e-8: M0 = {m0:.10}, M1 = {m1:.10}");
        assert!((m0 - pm0).abs() < 1e-6 && (m1 - pm1).abs() < 1e-6);
    }
    println!("\n  deformed statistics converge to the plain ones as s -> 0.");
}
