//! Run the full verification report from library code, the same suites the
//! `qtele verify` command prints.
//!
//! ```bash
//! cargo run -p qtele --example verification_report
//! ```

use qtele::verify::{run_all, VerifyConfig};

fn main() {
    let cfg = VerifyConfig {
        seed: 42,
        draws: Some(100),
        ..VerifyConfig::default()
    };
    let report = run_all(&cfg);
    print!("{}", report.render());
    std::process::exit(if report.all_passed() { 0 } else { 1 });
}
