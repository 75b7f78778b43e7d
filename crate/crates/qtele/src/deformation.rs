//! Deformation profiles: the free positive functions of q that multiply
//! deformed states, and the product constraints that normalization imposes
//! on them.
//!
//! Physics constrains only certain *products* of these functions (they must
//! equal `1 / sum of squared deformed amplitudes` for the state they dress).
//! How a product is split between its two factors is completely free, so the
//! split exponent acts as shared-secret key material: it is carried in the
//! classical payload and a receiver cannot check statistics against the
//! wrong split.

use crate::algebra::AmplitudeMatrix;
use crate::error::{Error, Result};
use crate::qnum::{qnumber, DeformationParam};
use serde::{Deserialize, Serialize};

/// A scaled power-family profile `f(q) = scale * q^kappa`.
///
/// The unscaled family `q^kappa` satisfies `f(1) = 1` and `f(q) > 0` for all
/// `q >= 1`, which is everything the algebra needs; the scale is what binds a
/// profile (or a product of profiles) to a normalization constraint.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeformationProfile {
    kappa: f64,
    scale: f64,
}

impl DeformationProfile {
    /// The constant-1 profile.
    pub fn identity() -> Self {
        Self { kappa: 0.0, scale: 1.0 }
    }

    /// Unscaled power profile `q^kappa`.
    pub fn power(kappa: f64) -> Result<Self> {
        Self::with_scale(kappa, 1.0)
    }

    pub fn with_scale(kappa: f64, scale: f64) -> Result<Self> {
        if !kappa.is_finite() {
            return Err(Error::Domain(format!("profile exponent must be finite, got {kappa}")));
        }
        if !scale.is_finite() || scale <= 0.0 {
            return Err(Error::Domain(format!("profile scale must be positive, got {scale}")));
        }
        Ok(Self { kappa, scale })
    }

    /// Profile that evaluates to exactly `value` at the bound parameter `p`,
    /// with a free exponent: `scale = value * q^{-kappa}`.
    pub fn pinned(value: f64, kappa: f64, p: DeformationParam) -> Result<Self> {
        if !value.is_finite() || value <= 0.0 {
            return Err(Error::Domain(format!("pinned profile value must be positive, got {value}")));
        }
        Self::with_scale(kappa, value * p.q().powf(-kappa))
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// `scale * q^kappa` at the given parameter.
    pub fn eval(&self, p: DeformationParam) -> f64 {
        self.scale * p.q().powf(self.kappa)
    }
}

/// Normalization product forced on the profile pair dressing a general
/// deformed bipartite state: `1 / sum_ij [a_ij]^2`.
pub fn product_for_state(amps: &AmplitudeMatrix, p: DeformationParam) -> Result<f64> {
    let mut sum = 0.0;
    for a in amps.entries() {
        let d = qnumber(a, p)?;
        sum += d * d;
    }
    // Cannot occur for normalized amplitudes with s <= 1; guard anyway.
    if sum <= f64::MIN_POSITIVE {
        return Err(Error::Degenerate(
            "all deformed amplitudes vanish; no normalizing product exists".into(),
        ));
    }
    Ok(1.0 / sum)
}

/// Normalization product for the deformed Bell-like basis:
/// `1 / (2 [1/sqrt(2)]^2)`. Identical for all four basis states.
pub fn product_for_bell_basis(p: DeformationParam) -> f64 {
    let d = qnumber(std::f64::consts::FRAC_1_SQRT_2, p).expect("finite argument");
    1.0 / (2.0 * d * d)
}

/// Normalization factor for a deformed single qubit:
/// `gamma = 1 / ([alpha0]^2 + [alpha1]^2)`.
pub fn gamma_for_info(alpha0: f64, alpha1: f64, p: DeformationParam) -> Result<f64> {
    let d0 = qnumber(alpha0, p)?;
    let d1 = qnumber(alpha1, p)?;
    let sum = d0 * d0 + d1 * d1;
    if sum <= f64::MIN_POSITIVE {
        return Err(Error::Degenerate(
            "deformed qubit amplitudes both vanish".into(),
        ));
    }
    Ok(1.0 / sum)
}

/// Splits a constrained product `P` into the pair
/// `(sqrt(P) * q^kappa, sqrt(P) * q^{-kappa})`.
///
/// The product of the two evaluations is `P` at every parameter, so the
/// exponent never shows up in any observable; it is pure key material.
pub fn split_product(product: f64, kappa: f64) -> Result<(DeformationProfile, DeformationProfile)> {
    if !product.is_finite() || product <= 0.0 {
        return Err(Error::Domain(format!("product must be positive, got {product}")));
    }
    let root = product.sqrt();
    Ok((
        DeformationProfile::with_scale(kappa, root)?,
        DeformationProfile::with_scale(-kappa, root)?,
    ))
}

/// The full set of profile functions a protocol run can involve.
///
/// `psi`/`beta` dress the two qubits of a general deformed bipartite state,
/// `omega`/`delta` the non-maximal channel pair, and `gamma` the deformed
/// information qubit. Unbound members default to the identity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProfileSet {
    pub psi: DeformationProfile,
    pub beta: DeformationProfile,
    pub omega: DeformationProfile,
    pub delta: DeformationProfile,
    pub gamma: DeformationProfile,
}

impl Default for ProfileSet {
    fn default() -> Self {
        Self {
            psi: DeformationProfile::identity(),
            beta: DeformationProfile::identity(),
            omega: DeformationProfile::identity(),
            delta: DeformationProfile::identity(),
            gamma: DeformationProfile::identity(),
        }
    }
}

impl ProfileSet {
    /// All-identity set, suitable for undeformed runs.
    pub fn plain() -> Self {
        Self::default()
    }

    /// Binds `psi * beta` to the normalization product of a general bipartite
    /// state, splitting with the given exponent.
    pub fn bind_bipartite(
        mut self,
        amps: &AmplitudeMatrix,
        p: DeformationParam,
        kappa: f64,
    ) -> Result<Self> {
        let (psi, beta) = split_product(product_for_state(amps, p)?, kappa)?;
        self.psi = psi;
        self.beta = beta;
        Ok(self)
    }

    /// Binds `omega * delta` to the channel-pair normalization
    /// `1 / ([a]^2 + [b]^2)`.
    pub fn bind_channel(
        mut self,
        a: f64,
        b: f64,
        p: DeformationParam,
        kappa: f64,
    ) -> Result<Self> {
        let da = qnumber(a, p)?;
        let db = qnumber(b, p)?;
        let sum = da * da + db * db;
        if sum <= f64::MIN_POSITIVE {
            return Err(Error::Degenerate("deformed channel amplitudes vanish".into()));
        }
        let (omega, delta) = split_product(1.0 / sum, kappa)?;
        self.omega = omega;
        self.delta = delta;
        Ok(self)
    }

    /// Binds `gamma` to the deformed-information-qubit normalization.
    pub fn bind_info(
        mut self,
        alpha0: f64,
        alpha1: f64,
        p: DeformationParam,
        kappa: f64,
    ) -> Result<Self> {
        self.gamma = DeformationProfile::pinned(gamma_for_info(alpha0, alpha1, p)?, kappa, p)?;
        Ok(self)
    }

    pub fn omega_delta(&self, p: DeformationParam) -> f64 {
        self.omega.eval(p) * self.delta.eval(p)
    }

    pub fn psi_beta(&self, p: DeformationParam) -> f64 {
        self.psi.eval(p) * self.beta.eval(p)
    }

    pub fn gamma(&self, p: DeformationParam) -> f64 {
        self.gamma.eval(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AmplitudeMatrix;

    const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn unscaled_profile_is_one_at_q_one() {
        let p0 = DeformationParam::undeformed();
        for &k in &[-3.0, -1.0, 0.0, 2.0, 5.5] {
            assert_eq!(DeformationProfile::power(k).unwrap().eval(p0), 1.0);
        }
    }

    #[test]
    fn eval_examples() {
        let p1 = DeformationParam::new(1.0).unwrap();
        let e = std::f64::consts::E;
        assert!((DeformationProfile::power(1.0).unwrap().eval(p1) - e).abs() <= 1e-15);
        assert!((DeformationProfile::power(-1.0).unwrap().eval(p1) - 1.0 / e).abs() <= 1e-15);
    }

    #[test]
    fn product_is_one_when_undeformed() {
        let p0 = DeformationParam::undeformed();
        let amps = AmplitudeMatrix::new(0.5, 0.5, 0.5, 0.5).unwrap();
        assert!((product_for_state(&amps, p0).unwrap() - 1.0).abs() <= 1e-15);
        assert!((product_for_bell_basis(p0) - 1.0).abs() <= 1e-15);
        assert!((gamma_for_info(0.6, 0.8, p0).unwrap() - 1.0).abs() <= 1e-15);
    }

    #[test]
    fn frozen_bell_product_at_s_one() {
        // 1 / (2 * (sinh(2^-1/2)/sinh(1))^2), computed independently.
        let p1 = DeformationParam::new(1.0).unwrap();
        let got = product_for_bell_basis(p1);
        assert!((got - 1.172226380002568).abs() <= 1e-12, "got {got}");
    }

    #[test]
    fn bell_product_equals_state_product_on_bell_amplitudes() {
        let p1 = DeformationParam::new(1.0).unwrap();
        let patterns = [
            (FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2),
            (0.0, FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0),
            (0.0, FRAC_1_SQRT_2, -FRAC_1_SQRT_2, 0.0),
            (FRAC_1_SQRT_2, 0.0, 0.0, -FRAC_1_SQRT_2),
        ];
        for &(a, b, c, d) in &patterns {
            let amps = AmplitudeMatrix::new(a, b, c, d).unwrap();
            let via_state = product_for_state(&amps, p1).unwrap();
            assert!((via_state - product_for_bell_basis(p1)).abs() <= 1e-12);
        }
    }

    #[test]
    fn frozen_diagonal_product_at_s_one() {
        // 1 / ([0.6]^2 + [0.8]^2) at s = 1.
        let p1 = DeformationParam::new(1.0).unwrap();
        let amps = AmplitudeMatrix::new(0.6, 0.0, 0.0, 0.8).unwrap();
        let got = product_for_state(&amps, p1).unwrap();
        assert!((got - 1.1566402218191323).abs() <= 1e-12, "got {got}");
        let gamma = gamma_for_info(0.6, 0.8, p1).unwrap();
        assert!((gamma - got).abs() <= 1e-15);
    }

    #[test]
    fn gamma_trivial_cases() {
        let p1 = DeformationParam::new(1.0).unwrap();
        assert!((gamma_for_info(1.0, 0.0, p1).unwrap() - 1.0).abs() <= 1e-15);
    }

    #[test]
    fn split_product_recombines() {
        let p1 = DeformationParam::new(1.0).unwrap();
        let (f, g) = split_product(1.0, 0.0).unwrap();
        assert_eq!(f.eval(p1), 1.0);
        assert_eq!(g.eval(p1), 1.0);

        for &(prod, kappa) in &[(1.172226380002568, 0.3), (0.37, -2.0), (5.0, 7.5)] {
            let (f, g) = split_product(prod, kappa).unwrap();
            for &s in &[0.0, 0.25, 1.0] {
                let p = DeformationParam::new(s).unwrap();
                assert!((f.eval(p) * g.eval(p) - prod).abs() <= 1e-12 * prod);
            }
        }
    }

    #[test]
    fn frozen_split_values() {
        // sqrt(1.172226380002568) * e^{+-0.3} at s = 1.
        let p1 = DeformationParam::new(1.0).unwrap();
        let (f, g) = split_product(1.172226380002568, 0.3).unwrap();
        assert!((f.eval(p1) - 1.4614840831553343).abs() <= 1e-12);
        assert!((g.eval(p1) - 0.8020794708018572).abs() <= 1e-12);
    }

    #[test]
    fn split_rejects_nonpositive_product() {
        assert!(matches!(split_product(0.0, 0.3), Err(Error::Domain(_))));
        assert!(matches!(split_product(-1.0, 0.3), Err(Error::Domain(_))));
    }

    #[test]
    fn products_limit_to_one_as_s_vanishes() {
        let p = DeformationParam::new(1e-8).unwrap();
        let amps = AmplitudeMatrix::new(0.3, -0.5, 0.4, (1.0f64 - 0.5).sqrt()).unwrap();
        assert!((product_for_state(&amps, p).unwrap() - 1.0).abs() <= 1e-6);
        assert!((product_for_bell_basis(p) - 1.0).abs() <= 1e-6);
        assert!((gamma_for_info(0.28, (1.0f64 - 0.28 * 0.28).sqrt(), p).unwrap() - 1.0).abs() <= 1e-6);
    }

    #[test]
    fn pinned_profile_hits_value_at_bound_parameter() {
        let p = DeformationParam::new(0.7).unwrap();
        let profile = DeformationProfile::pinned(1.234, -0.8, p).unwrap();
        assert!((profile.eval(p) - 1.234).abs() <= 1e-12);
        // At a different parameter the pinned value no longer holds.
        let other = DeformationParam::new(0.2).unwrap();
        assert!((profile.eval(other) - 1.234).abs() > 1e-3);
    }

    #[test]
    fn bound_channel_set_normalizes() {
        let p = DeformationParam::new(1.0).unwrap();
        let set = ProfileSet::plain().bind_channel(0.6, 0.8, p, 0.45).unwrap();
        let da = qnumber(0.6, p).unwrap();
        let db = qnumber(0.8, p).unwrap();
        let norm2 = set.omega_delta(p) * (da * da + db * db);
        assert!((norm2 - 1.0).abs() <= 1e-12);
    }
}
