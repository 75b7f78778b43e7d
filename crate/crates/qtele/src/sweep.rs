//! Deterministic parameter sweeps over the protocol quantities, rendered as
//! CSV with fixed 17-significant-digit reals so reports diff cleanly.

use crate::circuit::{bob_stats, fidelity_closed, teleport, AliceBasis, ChannelSpec, InfoQubit, Protocol};
use crate::deformation::ProfileSet;
use crate::error::{Error, Result};
use crate::qnum::DeformationParam;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepVariable {
    S,
    A00,
    Alpha0,
}

impl SweepVariable {
    pub fn name(&self) -> &'static str {
        match self {
            SweepVariable::S => "s",
            SweepVariable::A00 => "a00",
            SweepVariable::Alpha0 => "alpha0",
        }
    }
}

impl fmt::Display for SweepVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepVariable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "s" => Ok(SweepVariable::S),
            "a00" => Ok(SweepVariable::A00),
            "alpha0" => Ok(SweepVariable::Alpha0),
            other => Err(Error::Config(format!(
                "sweep variable must be s, a00 or alpha0; got {other:?}"
            ))),
        }
    }
}

/// One sweep: a variable, its inclusive grid, and the fixed parameters.
#[derive(Clone, Copy, Debug)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
    pub protocol: Protocol,
    pub alpha0: f64,
    pub a00: f64,
    pub s: f64,
    pub kappa: f64,
}

/// One grid point: the closed-form fidelity and the outcome-00 statistics.
#[derive(Clone, Copy, Debug)]
pub struct SweepRow {
    pub value: f64,
    pub fidelity: f64,
    pub m0: f64,
    pub m1: f64,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.lo.is_finite() && self.hi.is_finite() && self.lo < self.hi) {
            return Err(Error::Config(format!(
                "sweep range must satisfy lo < hi, got [{}, {}]",
                self.lo, self.hi
            )));
        }
        if self.steps < 2 {
            return Err(Error::Config("a sweep needs at least 2 steps".into()));
        }
        let (domain_lo, domain_hi) = match self.variable {
            SweepVariable::S => (0.0, 1.0),
            // Both channel amplitudes must stay nonzero.
            SweepVariable::A00 => (f64::MIN_POSITIVE, 1.0 - 1e-12),
            SweepVariable::Alpha0 => (-1.0, 1.0),
        };
        if self.lo < domain_lo || self.hi > domain_hi {
            return Err(Error::Config(format!(
                "sweep range [{}, {}] leaves the domain of {}",
                self.lo, self.hi, self.variable
            )));
        }
        if self.variable == SweepVariable::S && !self.protocol.is_deformed() {
            return Err(Error::Config("sweeping s needs a deformed protocol".into()));
        }
        Ok(())
    }

    fn row(&self, value: f64) -> Result<SweepRow> {
        let (alpha0, a00, s) = match self.variable {
            SweepVariable::S => (self.alpha0, self.a00, value),
            SweepVariable::A00 => (self.alpha0, value, self.s),
            SweepVariable::Alpha0 => (value, self.a00, self.s),
        };
        let deformed = self.protocol.is_deformed();
        let p = DeformationParam::new(if deformed { s } else { 0.0 })?;
        let info = InfoQubit::from_alpha0(alpha0)?;
        let channel = ChannelSpec::diagonal(a00, deformed, p)?;
        let profiles = match self.protocol {
            Protocol::Plain => None,
            Protocol::Case1 => Some(
                ProfileSet::plain().bind_channel(channel.a(), channel.b(), p, self.kappa)?,
            ),
            Protocol::Case2 => Some(
                ProfileSet::plain()
                    .bind_channel(channel.a(), channel.b(), p, self.kappa)?
                    .bind_info(info.alpha0(), info.alpha1(), p, self.kappa)?,
            ),
        };
        let record = teleport(&info, &channel, profiles.as_ref(), self.protocol)?;
        let (m0, m1) = bob_stats(&record, AliceBasis::B00);
        let fidelity = fidelity_closed(&info, &channel, profiles.as_ref(), self.protocol)?;
        Ok(SweepRow { value, fidelity, m0, m1 })
    }

    /// Evaluates the grid `lo + i (hi - lo) / (steps - 1)`.
    pub fn run(&self) -> Result<Vec<SweepRow>> {
        self.validate()?;
        let mut rows = Vec::with_capacity(self.steps);
        for i in 0..self.steps {
            let t = i as f64 / (self.steps - 1) as f64;
            let value = self.lo + t * (self.hi - self.lo);
            rows.push(self.row(value)?);
        }
        Ok(rows)
    }
}

/// 17 significant digits, enough to round-trip any f64.
fn sig17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes the header plus one line per row.
pub fn write_csv<W: Write>(spec: &SweepSpec, rows: &[SweepRow], mut out: W) -> Result<()> {
    writeln!(out, "{},F,M0,M1,M0M1", spec.variable)?;
    for row in rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            sig17(row.value),
            sig17(row.fidelity),
            sig17(row.m0),
            sig17(row.m1),
            sig17(row.m0 * row.m1)
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base_spec() -> SweepSpec {
        SweepSpec {
            variable: SweepVariable::A00,
            lo: 0.1,
            hi: 0.99,
            steps: 90,
            protocol: Protocol::Plain,
            alpha0: 0.6,
            a00: 0.6,
            s: 0.0,
            kappa: 0.0,
        }
    }

    #[test]
    fn a00_sweep_attains_unit_fidelity_at_matched_channel() {
        let rows = base_spec().run().unwrap();
        assert_eq!(rows.len(), 90);
        // Grid step is 0.01, so a00 = 0.6 is on the grid and F = 1 there.
        let best = rows
            .iter()
            .max_by(|a, b| a.fidelity.total_cmp(&b.fidelity))
            .unwrap();
        assert!((best.value - 0.6).abs() <= 1e-9);
        assert!((best.fidelity - 1.0).abs() <= 1e-12);
        // At the swapped point a00 = 0.8 the fidelity is 4 |det A|^2.
        let swapped = rows
            .iter()
            .find(|r| (r.value - 0.8).abs() <= 1e-9)
            .unwrap();
        assert!((swapped.fidelity - 0.9216).abs() <= 1e-12);
    }

    #[test]
    fn s_sweep_starts_at_the_plain_value() {
        let spec = SweepSpec {
            variable: SweepVariable::S,
            lo: 0.0,
            hi: 1.0,
            steps: 11,
            protocol: Protocol::Case1,
            alpha0: 0.6,
            a00: 0.6,
            s: 0.0,
            kappa: 0.3,
        };
        let rows = spec.run().unwrap();
        let plain = base_spec();
        let plain_f = plain.row(0.6).unwrap().fidelity;
        assert!((rows[0].fidelity - plain_f).abs() <= 1e-12);
    }

    #[test]
    fn csv_output_is_deterministic() {
        let spec = base_spec();
        let rows = spec.run().unwrap();
        let mut a = Vec::new();
        write_csv(&spec, &rows, &mut a).unwrap();
        let mut b = Vec::new();
        write_csv(&spec, &rows, &mut b).unwrap();
        assert_eq!(a, b);
        let text = String::from_utf8(a).unwrap();
        assert!(text.starts_with("a00,F,M0,M1,M0M1\n"));
        assert_eq!(text.lines().count(), 91);
    }

    #[test]
    fn invalid_specs_are_rejected() {
        let mut spec = base_spec();
        spec.steps = 1;
        assert!(spec.run().is_err());

        let mut spec = base_spec();
        spec.hi = 1.5;
        assert!(spec.run().is_err());

        let mut spec = base_spec();
        spec.variable = SweepVariable::S;
        spec.lo = 0.0;
        spec.hi = 1.0;
        assert!(spec.run().is_err()); // plain protocol cannot sweep s
    }
}
