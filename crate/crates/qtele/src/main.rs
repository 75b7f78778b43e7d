//! Thin command-line front end over the library: verification suites,
//! parameter sweeps, single teleportation runs and payload decoding.

use clap::{Parser, Subcommand};
use qtele::circuit::{bob_stats, teleport, AliceBasis, ChannelSpec, InfoQubit, Protocol};
use qtele::channel::{decode, encode, recover_amplitudes, ClassicalPayload};
use qtele::deformation::ProfileSet;
use qtele::qnum::DeformationParam;
use qtele::sweep::{write_csv, SweepSpec, SweepVariable};
use qtele::verify::{run_all, VerifyConfig, DEFAULT_TOL};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "qtele", version, about = "Teleportation over q-deformed entangled channels")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every verification suite and print one line per check.
    Verify {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Override the per-suite draw counts (must be >= 1).
        #[arg(long)]
        draws: Option<usize>,
    },
    /// Sweep one variable and write a CSV report.
    Sweep {
        #[arg(long)]
        var: SweepVariable,
        #[arg(long)]
        lo: f64,
        #[arg(long)]
        hi: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        protocol: Protocol,
        #[arg(long, default_value_t = 0.6)]
        alpha0: f64,
        #[arg(long, default_value_t = 0.6)]
        a00: f64,
        #[arg(long, default_value_t = 0.0)]
        s: f64,
        #[arg(long, default_value_t = 0.0)]
        kappa: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run one teleportation, write the classical payload, self-decrypt.
    Teleport {
        #[arg(long)]
        protocol: Protocol,
        #[arg(long)]
        alpha0: f64,
        #[arg(long)]
        a00: f64,
        #[arg(long, default_value_t = 0.0)]
        s: f64,
        #[arg(long, default_value_t = 0.0)]
        kappa: f64,
        #[arg(long, default_value = "00")]
        basis: AliceBasis,
        /// Where the payload bytes go.
        #[arg(long)]
        out: PathBuf,
    },
    /// Decode a payload file and print it as JSON.
    Decode {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Serialize)]
struct TeleportReport<'a> {
    report_version: u32,
    record: &'a qtele::TeleportRecord,
    payload_file: String,
    m0: f64,
    m1: f64,
    recovered: &'a qtele::RecoveryResult,
}

fn tolerance_from_env() -> Result<f64, String> {
    match std::env::var("QTELE_TOLERANCE") {
        Ok(raw) => {
            let tol: f64 = raw
                .parse()
                .map_err(|_| format!("QTELE_TOLERANCE={raw:?} is not a number"))?;
            if !(tol.is_finite() && tol > 0.0 && tol < 1.0) {
                return Err(format!("QTELE_TOLERANCE={raw:?} must lie in (0, 1)"));
            }
            Ok(tol)
        }
        Err(_) => Ok(DEFAULT_TOL),
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Verify { seed, draws } => {
            if draws == Some(0) {
                return Err("--draws must be at least 1".into());
            }
            let cfg = VerifyConfig { seed, tol: tolerance_from_env()?, draws };
            let report = run_all(&cfg);
            print!("{}", report.render());
            Ok(if report.all_passed() { 0 } else { 1 })
        }
        Command::Sweep { var, lo, hi, steps, protocol, alpha0, a00, s, kappa, out } => {
            let spec = SweepSpec {
                variable: var,
                lo,
                hi,
                steps,
                protocol,
                alpha0,
                a00,
                s,
                kappa,
            };
            let rows = spec.run().map_err(|e| e.to_string())?;
            let file = std::fs::File::create(&out)
                .map_err(|e| format!("cannot write {}: {e}", out.display()))?;
            write_csv(&spec, &rows, std::io::BufWriter::new(file)).map_err(|e| e.to_string())?;
            eprintln!("wrote {} rows to {}", rows.len(), out.display());
            Ok(0)
        }
        Command::Teleport { protocol, alpha0, a00, s, kappa, basis, out } => {
            let p = DeformationParam::new(s).map_err(|e| e.to_string())?;
            if protocol == Protocol::Plain && p.is_deformed() {
                return Err("plain protocol runs at s = 0".into());
            }
            let info = InfoQubit::from_alpha0(alpha0).map_err(|e| e.to_string())?;
            let channel = ChannelSpec::diagonal(a00, protocol.is_deformed(), p)
                .map_err(|e| e.to_string())?;
            let profiles = match protocol {
                Protocol::Plain => ProfileSet::plain(),
                Protocol::Case1 => ProfileSet::plain()
                    .bind_channel(channel.a(), channel.b(), p, kappa)
                    .map_err(|e| e.to_string())?,
                Protocol::Case2 => ProfileSet::plain()
                    .bind_channel(channel.a(), channel.b(), p, kappa)
                    .map_err(|e| e.to_string())?
                    .bind_info(info.alpha0(), info.alpha1(), p, kappa)
                    .map_err(|e| e.to_string())?,
            };
            let record =
                teleport(&info, &channel, Some(&profiles), protocol).map_err(|e| e.to_string())?;
            let (m0, m1) = bob_stats(&record, basis);
            let payload =
                ClassicalPayload::from_parts(protocol, basis, &channel, &profiles, Some((m0, m1)))
                    .map_err(|e| e.to_string())?;
            let bytes = encode(&payload).map_err(|e| e.to_string())?;
            std::fs::write(&out, &bytes)
                .map_err(|e| format!("cannot write {}: {e}", out.display()))?;

            // Self-decrypt: read back what was shipped and invert.
            let shipped = decode(&std::fs::read(&out).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let recovered = recover_amplitudes(m0, m1, &shipped).map_err(|e| e.to_string())?;

            let report = TeleportReport {
                report_version: 1,
                record: &record,
                payload_file: out.display().to_string(),
                m0,
                m1,
                recovered: &recovered,
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?
            );
            Ok(0)
        }
        Command::Decode { input } => {
            let bytes = std::fs::read(&input)
                .map_err(|e| format!("cannot read {}: {e}", input.display()))?;
            let payload = decode(&bytes).map_err(|e| e.to_string())?;
            println!(
                "{}",
                serde_json::to_string_pretty(&payload).map_err(|e| e.to_string())?
            );
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
