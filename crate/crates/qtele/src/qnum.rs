//! q-number arithmetic and the deformation parameter.
//!
//! A q-number is the deformation
//!
//! ```text
//! [x] = (q^x - q^{-x}) / (q - q^{-1}),    q = e^s,  0 <= s <= 1,
//! ```
//!
//! of a real number `x`. For `q = e^s` this is identically
//! `sinh(s*x)/sinh(s)`, which is the form evaluated internally: it avoids the
//! 0/0 cancellation of the raw quotient as `s -> 0`. At `s = 0` the analytic
//! limit `[x] = x` is returned exactly. `[0] = 0` and `[1] = 1` for every
//! admissible `s`.

use crate::error::{Error, Result};

/// The pair `(s, q = e^s)` that governs all deformation in this crate.
///
/// `q` is always derived from `s` and never stored, so the two cannot drift
/// apart. `s` is restricted to `[0, 1]`; `s = 0` is the undeformed limit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DeformationParam {
    s: f64,
}

impl DeformationParam {
    /// Largest admissible deformation exponent.
    pub const MAX_S: f64 = 1.0;

    /// Builds a parameter from `s`, rejecting values outside `[0, 1]`.
    pub fn new(s: f64) -> Result<Self> {
        if !s.is_finite() || !(0.0..=Self::MAX_S).contains(&s) {
            return Err(Error::Range(format!("s must lie in [0, 1], got {s}")));
        }
        Ok(Self { s })
    }

    /// The undeformed point `s = 0`, `q = 1`.
    pub fn undeformed() -> Self {
        Self { s: 0.0 }
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    /// `q = e^s`, always `>= 1`.
    pub fn q(&self) -> f64 {
        self.s.exp()
    }

    pub fn is_deformed(&self) -> bool {
        self.s > 0.0
    }
}

/// The q-number `[x]`.
///
/// Returns `x` exactly at `s = 0` and `sinh(s*x)/sinh(s)` otherwise.
pub fn qnumber(x: f64, p: DeformationParam) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain(format!(
            "q-number argument must be finite, got {x}"
        )));
    }
    if !p.is_deformed() {
        return Ok(x);
    }
    Ok((p.s() * x).sinh() / p.s().sinh())
}

/// Absolute bisection tolerance used by [`qnumber_inverse`].
pub const QNUMBER_INVERSE_TOL: f64 = 1e-14;

/// Inverts `t = [x]` for `x` in `[0, 1]`.
///
/// On that interval the map `x -> [x]` is strictly increasing from 0 to 1,
/// so the root is unique and plain bisection converges unconditionally.
/// Targets outside `[0, 1]` (beyond a small floating-point slack) are
/// rejected: they cannot come from an amplitude in `[0, 1]`.
pub fn qnumber_inverse(target: f64, p: DeformationParam) -> Result<f64> {
    const SLACK: f64 = 1e-9;
    if !target.is_finite() || !(-SLACK..=1.0 + SLACK).contains(&target) {
        return Err(Error::Domain(format!(
            "q-number inverse target must lie in [0, 1], got {target}"
        )));
    }
    let t = target.clamp(0.0, 1.0);
    if !p.is_deformed() {
        return Ok(t);
    }
    let f = |x: f64| (p.s() * x).sinh() / p.s().sinh() - t;
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    while hi - lo > QNUMBER_INVERSE_TOL {
        let mid = 0.5 * (lo + hi);
        if f(mid) <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: the raw quotient of powers of q.
    /// Valid away from small s, where no cancellation occurs.
    fn qnumber_raw(x: f64, s: f64) -> f64 {
        let q = s.exp();
        (q.powf(x) - q.powf(-x)) / (q - 1.0 / q)
    }

    #[test]
    fn undeformed_is_identity() {
        let p = DeformationParam::undeformed();
        for &x in &[-10.0, -2.5, -1.0, 0.0, 0.3, 1.0, 7.25] {
            assert_eq!(qnumber(x, p).unwrap(), x);
        }
    }

    #[test]
    fn zero_and_one_are_fixed_points() {
        for &s in &[0.0, 1e-8, 0.3, 0.7, 1.0] {
            let p = DeformationParam::new(s).unwrap();
            assert_eq!(qnumber(0.0, p).unwrap(), 0.0);
            assert!((qnumber(1.0, p).unwrap() - 1.0).abs() <= 1e-15);
        }
    }

    #[test]
    fn frozen_value_two_at_s_one() {
        // sinh(2)/sinh(1), computed independently at 30 digits.
        let p = DeformationParam::new(1.0).unwrap();
        let got = qnumber(2.0, p).unwrap();
        assert!((got - 3.0861612696304876).abs() <= 1e-12, "got {got}");
    }

    #[test]
    fn matches_raw_quotient_oracle() {
        for &s in &[0.1, 0.3, 0.7, 1.0] {
            let p = DeformationParam::new(s).unwrap();
            for i in -40..=40 {
                let x = i as f64 * 0.25;
                let a = qnumber(x, p).unwrap();
                let b = qnumber_raw(x, s);
                assert!(
                    (a - b).abs() <= 1e-12 * a.abs().max(1.0),
                    "s={s} x={x}: {a} vs {b}"
                );
            }
        }
    }

    #[test]
    fn odd_function() {
        let p = DeformationParam::new(0.8).unwrap();
        for i in 1..=50 {
            let x = i as f64 * 0.2;
            let plus = qnumber(x, p).unwrap();
            let minus = qnumber(-x, p).unwrap();
            assert!((plus + minus).abs() <= 1e-12 * plus.abs().max(1.0));
        }
    }

    #[test]
    fn continuous_at_s_zero() {
        let p = DeformationParam::new(1e-8).unwrap();
        for i in -40..=40 {
            let x = i as f64 * 0.25;
            assert!((qnumber(x, p).unwrap() - x).abs() <= 1e-6);
        }
    }

    #[test]
    fn monotone_in_x() {
        let p = DeformationParam::new(1.0).unwrap();
        let mut prev = qnumber(-10.0, p).unwrap();
        for i in 1..=200 {
            let x = -10.0 + i as f64 * 0.1;
            let cur = qnumber(x, p).unwrap();
            assert!(cur > prev, "not increasing at x={x}");
            prev = cur;
        }
    }

    #[test]
    fn param_range_is_enforced() {
        assert!(DeformationParam::new(0.0).is_ok());
        assert!(DeformationParam::new(1.0).is_ok());
        assert!(matches!(
            DeformationParam::new(1.5),
            Err(Error::Range(_))
        ));
        assert!(matches!(
            DeformationParam::new(-0.1),
            Err(Error::Range(_))
        ));
        assert!(DeformationParam::new(f64::NAN).is_err());
    }

    #[test]
    fn param_q_is_exp_s() {
        let p = DeformationParam::new(1.0).unwrap();
        assert!((p.q() - std::f64::consts::E).abs() <= 1e-15);
        assert_eq!(DeformationParam::undeformed().q(), 1.0);
    }

    #[test]
    fn non_finite_argument_is_rejected() {
        let p = DeformationParam::new(0.5).unwrap();
        assert!(matches!(qnumber(f64::NAN, p), Err(Error::Domain(_))));
        assert!(matches!(qnumber(f64::INFINITY, p), Err(Error::Domain(_))));
    }

    #[test]
    fn inverse_round_trips() {
        for &s in &[0.0, 0.2, 0.6, 1.0] {
            let p = DeformationParam::new(s).unwrap();
            for i in 0..=20 {
                let x = i as f64 / 20.0;
                let t = qnumber(x, p).unwrap();
                let back = qnumber_inverse(t, p).unwrap();
                assert!((back - x).abs() <= 1e-12, "s={s} x={x} back={back}");
            }
        }
    }

    #[test]
    fn inverse_rejects_out_of_range_targets() {
        let p = DeformationParam::new(0.5).unwrap();
        assert!(qnumber_inverse(1.5, p).is_err());
        assert!(qnumber_inverse(-0.5, p).is_err());
    }
}
