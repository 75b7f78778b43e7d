//! Bipartite amplitude matrices and their deformed counterparts, the
//! determinant entanglement criterion, deformed Bell-like states with their
//! generator algebra, and the two-oscillator (Jordan-Schwinger) qubit
//! construction.
//!
//! Amplitudes are real throughout: every normalization in this crate is a sum
//! of squares, not of squared moduli. Complex scalars appear only in
//! [`GeneratorMatrix`], where one Bell generator is `i * sigma_2` and the
//! su(2) recovery multiplies by `e^{-i pi/2}`.

use crate::deformation::{product_for_bell_basis, product_for_state, DeformationProfile};
use crate::error::{Error, Result};
use crate::qnum::{qnumber, DeformationParam};
use num_complex::Complex64;
use serde::Serialize;

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Tolerance below which a determinant counts as zero.
pub const DET_TOL: f64 = 1e-12;

/// Tolerance for normalization checks on construction.
pub const NORM_TOL: f64 = 1e-12;

/// The 2x2 matrix of real probability amplitudes of a bipartite state,
/// normalized so the squares sum to 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AmplitudeMatrix {
    a00: f64,
    a01: f64,
    a10: f64,
    a11: f64,
}

impl AmplitudeMatrix {
    pub fn new(a00: f64, a01: f64, a10: f64, a11: f64) -> Result<Self> {
        for a in [a00, a01, a10, a11] {
            if !a.is_finite() {
                return Err(Error::Domain(format!("amplitude must be finite, got {a}")));
            }
        }
        let norm2 = a00 * a00 + a01 * a01 + a10 * a10 + a11 * a11;
        if (norm2 - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(format!(
                "squared amplitudes sum to {norm2}, expected 1"
            )));
        }
        Ok(Self { a00, a01, a10, a11 })
    }

    /// Diagonal matrix `diag(a00, sqrt(1 - a00^2))`.
    pub fn diagonal(a00: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&a00) {
            return Err(Error::Range(format!("a00 must lie in [-1, 1], got {a00}")));
        }
        Self::new(a00, 0.0, 0.0, (1.0 - a00 * a00).sqrt())
    }

    /// Entries in row-major order `[a00, a01, a10, a11]`.
    pub fn entries(&self) -> [f64; 4] {
        [self.a00, self.a01, self.a10, self.a11]
    }

    pub fn a00(&self) -> f64 {
        self.a00
    }
    pub fn a01(&self) -> f64 {
        self.a01
    }
    pub fn a10(&self) -> f64 {
        self.a10
    }
    pub fn a11(&self) -> f64 {
        self.a11
    }

    pub fn det(&self) -> f64 {
        self.a00 * self.a11 - self.a01 * self.a10
    }
}

/// `true` iff the bipartite state with these amplitudes is entangled,
/// i.e. its determinant is nonzero.
pub fn is_entangled(amps: &AmplitudeMatrix) -> bool {
    amps.det().abs() > DET_TOL
}

/// The deformed amplitude matrix: entries `[a_ij]` with the global
/// normalizing prefactor `sqrt(psi * beta)` stored separately.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QAmplitudeMatrix {
    scale: f64,
    entries: [f64; 4],
}

impl QAmplitudeMatrix {
    pub fn from_amplitudes(amps: &AmplitudeMatrix, p: DeformationParam) -> Result<Self> {
        let product = product_for_state(amps, p)?;
        let
            e = amps.entries();
        let mut entries = [0.0; 4];
        for (slot, a) in entries.iter_mut().zip(e) {
            *slot = qnumber(a, p)?;
        }
        Ok(Self { scale: product.sqrt(), entries })
    }

    /// The prefactor `sqrt(psi * beta)`.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// The bare deformed entries `[a_ij]`, without the prefactor.
    pub fn entries(&self) -> [f64; 4] {
        self.entries
    }

    /// Determinant of the full scaled matrix:
    /// `psi*beta * ([a00][a11] - [a01][a10])`.
    pub fn det(&self) -> f64 {
        let [e00, e01, e10, e11] = self.entries;
        self.scale * self.scale * (e00 * e11 - e01 * e10)
    }

    /// Squared norm of the deformed state this matrix describes.
    pub fn norm_sqr(&self) -> f64 {
        self.scale * self.scale * self.entries.iter().map(|e| e * e).sum::<f64>()
    }
}

/// Tests the deformed unentanglement condition by direct evaluation of the
/// raw powers of q on both sides:
/// `(q^a00 - q^-a00)(q^a11 - q^-a11) = (q^a01 - q^-a01)(q^a10 - q^-a10)`.
///
/// At `s = 0` both sides vanish identically and the condition degenerates to
/// the undeformed one, `a00 a11 = a01 a10`, which is what is checked there.
pub fn q_unentangled_check(amps: &AmplitudeMatrix, p: DeformationParam) -> bool {
    if !p.is_deformed() {
        return amps.det().abs() <= DET_TOL;
    }
    let q = p.q();
    let side = |x: f64, y: f64| (q.powf(x) - q.powf(-x)) * (q.powf(y) - q.powf(-y));
    let lhs = side(amps.a00, amps.a11);
    let rhs = side(amps.a01, amps.a10);
    (lhs - rhs).abs() <= DET_TOL * lhs.abs().max(rhs.abs()).max(1.0)
}

/// A 2x2 complex matrix; the Bell-state generators and their rescalings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeneratorMatrix {
    entries: [[Complex64; 2]; 2],
}

impl GeneratorMatrix {
    pub fn new(entries: [[Complex64; 2]; 2]) -> Self {
        Self { entries }
    }

    pub fn from_real(entries: [[f64; 2]; 2]) -> Self {
        Self {
            entries: entries.map(|row| row.map(|x| Complex64::new(x, 0.0))),
        }
    }

    pub fn zero() -> Self {
        Self::from_real([[0.0, 0.0], [0.0, 0.0]])
    }

    pub fn identity() -> Self {
        Self::from_real([[1.0, 0.0], [0.0, 1.0]])
    }

    pub fn entries(&self) -> [[Complex64; 2]; 2] {
        self.entries
    }

    pub fn det(&self) -> Complex64 {
        self.entries[0][0] * self.entries[1][1] - self.entries[0][1] * self.entries[1][0]
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            entries: self.entries.map(|row| row.map(|x| c * x)),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for r in 0..2 {
            for c in 0..2 {
                out.entries[r][c] = self.entries[r][c] + other.entries[r][c];
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scaled(Complex64::new(-1.0, 0.0)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for r in 0..2 {
            for c in 0..2 {
                for k in 0..2 {
                    out.entries[r][c] += self.entries[r][k] * other.entries[k][c];
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        self.mul(other).add(&other.mul(self))
    }

    /// Largest entrywise absolute difference from `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0_f64;
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((self.entries[r][c] - other.entries[r][c]).norm());
            }
        }
        worst
    }

    /// Largest imaginary part over all entries.
    pub fn max_imag(&self) -> f64 {
        let mut worst = 0.0_f64;
        for row in &self.entries {
            for x in row {
                worst = worst.max(x.im.abs());
            }
        }
        worst
    }
}

/// The generator matrix of Bell state `i`:
/// `A_0 = I/sqrt(2)`, `A_1 = sigma_1/sqrt(2)`,
/// `A_2 = i sigma_2/sqrt(2)` (real), `A_3 = sigma_3/sqrt(2)`.
pub fn bell_matrix(index: usize) -> Result<GeneratorMatrix> {
    let c = FRAC_1_SQRT_2;
    let entries = match index {
        0 => [[c, 0.0], [0.0, c]],
        1 => [[0.0, c], [c, 0.0]],
        2 => [[0.0, c], [-c, 0.0]],
        3 => [[c, 0.0], [0.0, -c]],
        _ => return Err(Error::Index(format!("Bell index must be 0..=3, got {index}"))),
    };
    Ok(GeneratorMatrix::from_real(entries))
}

/// The deformed generator matrix of Bell state `i`:
/// `sqrt(psi*beta) * [1/sqrt(2)]` times the same sigma pattern.
pub fn bell_q_matrix(index: usize, p: DeformationParam) -> Result<GeneratorMatrix> {
    let c = bell_q_amplitude(p);
    let entries = match index {
        0 => [[c, 0.0], [0.0, c]],
        1 => [[0.0, c], [c, 0.0]],
        2 => [[0.0, c], [-c, 0.0]],
        3 => [[c, 0.0], [0.0, -c]],
        _ => return Err(Error::Index(format!("Bell index must be 0..=3, got {index}"))),
    };
    Ok(GeneratorMatrix::from_real(entries))
}

/// `sqrt(psi*beta) * [1/sqrt(2)]` with the Bell-basis product bound. The
/// binding makes this exactly `1/sqrt(2)` for every `s`: the normalizing
/// prefactor cancels the deformation of the Bell amplitude.
fn bell_q_amplitude(p: DeformationParam) -> f64 {
    let d = qnumber(FRAC_1_SQRT_2, p).expect("finite argument");
    product_for_bell_basis(p).sqrt() * d
}

/// An n-qubit state vector with real amplitudes over the computational
/// basis, `n <= 3`. Qubit 0 is the leftmost tensor factor (most significant
/// index bit). Not forced to unit norm: protocol intermediates are stored
/// unnormalized exactly as the closed-form final states are written.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PureState {
    qubits: usize,
    amps: Vec<f64>,
}

impl PureState {
    pub fn from_amplitudes(qubits: usize, amps: Vec<f64>) -> Result<Self> {
        if qubits == 0 || qubits > 3 {
            return Err(Error::Index(format!("qubit count must be 1..=3, got {qubits}")));
        }
        if amps.len() != 1 << qubits {
            return Err(Error::Index(format!(
                "expected {} amplitudes for {qubits} qubits, got {}",
                1 << qubits,
                amps.len()
            )));
        }
        if amps.iter().any(|a| !a.is_finite()) {
            return Err(Error::Domain("amplitudes must be finite".into()));
        }
        Ok(Self { qubits, amps })
    }

    /// Computational basis state `|index>`.
    pub fn basis(qubits: usize, index: usize) -> Result<Self> {
        if index >= 1 << qubits {
            return Err(Error::Index(format!("basis index {index} out of range")));
        }
        let mut amps = vec![0.0; 1 << qubits];
        amps[index] = 1.0;
        Self::from_amplitudes(qubits, amps)
    }

    /// Single-qubit state `alpha0 |0> + alpha1 |1>`.
    pub fn qubit(alpha0: f64, alpha1: f64) -> Result<Self> {
        Self::from_amplitudes(1, vec![alpha0, alpha1])
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn amps(&self) -> &[f64] {
        &self.amps
    }

    pub fn amp(&self, index: usize) -> f64 {
        self.amps[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a * a).sum()
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            qubits: self.qubits,
            amps: self.amps.iter().map(|a| c * a).collect(),
        }
    }

    /// Tensor product `self (x) other`.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        let qubits = self.qubits + other.qubits;
        if qubits > 3 {
            return Err(Error::Index(format!(
                "tensor product would have {qubits} qubits, limit is 3"
            )));
        }
        let mut amps = Vec::with_capacity(1 << qubits);
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Self::from_amplitudes(qubits, amps)
    }

    /// Real inner product `<self|other>`.
    pub fn inner(&self, other: &Self) -> Result<f64> {
        if self.qubits != other.qubits {
            return Err(Error::Index("inner product of mismatched qubit counts".into()));
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a * b).sum())
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// The deformed bipartite state
/// `sqrt(psi*beta) * ([a00]|00> + [a01]|01> + [a10]|10> + [a11]|11>)`
/// over the usual (undeformed) basis, with the product bound so the result
/// has unit norm.
pub fn deformed_bipartite_state(amps: &AmplitudeMatrix, p: DeformationParam) -> Result<PureState> {
    let scale = product_for_state(amps, p)?.sqrt();
    let mut v = Vec::with_capacity(4);
    for a in amps.entries() {
        v.push(scale * qnumber(a, p)?);
    }
    PureState::from_amplitudes(2, v)
}

/// The deformed Bell-like state `i` over the undeformed basis. Unit norm by
/// the Bell-basis orthonormality constraint.
pub fn bell_q_state(index: usize, p: DeformationParam) -> Result<PureState> {
    let c = bell_q_amplitude(p);
    let amps = match index {
        0 => vec![c, 0.0, 0.0, c],
        1 => vec![0.0, c, c, 0.0],
        2 => vec![0.0, c, -c, 0.0],
        3 => vec![c, 0.0, 0.0, -c],
        _ => return Err(Error::Index(format!("Bell index must be 0..=3, got {index}"))),
    };
    PureState::from_amplitudes(2, amps)
}

/// Decomposes a state of the form `c00|00> + c11|11>` in the deformed
/// Bell-like basis, returning the four coefficients.
///
/// For an input built as `sqrt(psi*beta) * ([a00]|00> + [a11]|11>)` with the
/// Bell-basis product, the coefficients come out as
/// `b0 = ([a00]+[a11]) / (2 [1/sqrt(2)])`, `b1 = b2 = 0`,
/// `b3 = ([a00]-[a11]) / (2 [1/sqrt(2)])`.
pub fn bell_q_decompose(mu_q: &PureState, p: DeformationParam) -> Result<[f64; 4]> {
    if mu_q.qubits() != 2 {
        return Err(Error::UnsupportedForm("decomposition needs a 2-qubit state".into()));
    }
    if mu_q.amp(1).abs() > NORM_TOL || mu_q.amp(2).abs() > NORM_TOL {
        return Err(Error::UnsupportedForm(
            "state has support on |01> or |10>; only diagonal states decompose this way".into(),
        ));
    }
    let mut coeffs = [0.0; 4];
    for (i, slot) in coeffs.iter_mut().enumerate() {
        let basis = bell_q_state(i, p)?;
        *slot = basis.inner(mu_q)? / basis.norm_sqr();
    }
    Ok(coeffs)
}

/// A qubit as excitations of two independent oscillators: one excitation in
/// oscillator 1 is `|0>`, one in oscillator 2 is `|1>`.
///
/// With `deformed` set, the creation operator acting on the shared vacuum
/// contributes the scalar prefactor `sqrt(f(q))` of the bound profile; the
/// profile is ignored otherwise.
pub fn js_qubit(
    n1: u8,
    deformed: bool,
    profile: &DeformationProfile,
    p: DeformationParam,
) -> Result<PureState> {
    let state = match n1 {
        1 => PureState::basis(1, 0)?,
        0 => PureState::basis(1, 1)?,
        _ => return Err(Error::Index(format!("occupation n1 must be 0 or 1, got {n1}"))),
    };
    if deformed {
        Ok(state.scaled(profile.eval(p).sqrt()))
    } else {
        Ok(state)
    }
}

/// Result of one generator-algebra identity check.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub max_abs_error: f64,
    pub passed: bool,
}

/// Entrywise verification report for the generator algebra.
#[derive(Clone, Debug, Serialize)]
pub struct GeneratorAlgebraReport {
    pub tol: f64,
    pub s: Option<f64>,
    pub checks: Vec<IdentityCheck>,
}

impl GeneratorAlgebraReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn max_error(&self) -> f64 {
        self.checks.iter().map(|c| c.max_abs_error).fold(0.0, f64::max)
    }
}

fn epsilon(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1.0,
        (3, 2, 1) | (2, 1, 3) | (1, 3, 2) => -1.0,
        _ => 0.0,
    }
}

/// Diagonal anticommutator sign `(-1)^{((i^3+j^3)-(i+j))/4}` at `i = j`,
/// where the exponent is the integer `(i^3 - i)/2`.
fn anticommutator_sign(i: usize) -> f64 {
    if ((i * i * i - i) / 2).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Numerically checks the commutation and anticommutation relations of the
/// Bell generator matrices, their rescaling to the su(2) algebra, and (when
/// a parameter is supplied) the deformed analogues of both.
///
/// Every identity is checked entrywise against `tol`; one report line per
/// identity family.
#[allow(clippy::needless_range_loop)] // i, j, k are tensor indices
pub fn verify_generator_algebra(p: Option<DeformationParam>, tol: f64) -> Result<GeneratorAlgebraReport> {
    let mut checks = Vec::new();
    let minus_i = Complex64::new(0.0, -1.0); // e^{-i pi/2}
    let two_i = Complex64::new(0.0, 2.0);

    let a: Vec<GeneratorMatrix> = (0..4).map(|i| bell_matrix(i).unwrap()).collect();

    // [A_i, A_j] = sqrt(2) (-1)^{i+j} eps_ijk A_k
    let mut worst = 0.0_f64;
    for i in 1..=3 {
        for j in 1..=3 {
            let lhs = a[i].commutator(&a[j]);
            let mut rhs = GeneratorMatrix::zero();
            for k in 1..=3 {
                let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
                let coef = 2.0_f64.sqrt() * sign * epsilon(i, j, k);
                rhs = rhs.add(&a[k].scaled(Complex64::new(coef, 0.0)));
            }
            worst = worst.max(lhs.max_abs_diff(&rhs));
        }
    }
    checks.push(IdentityCheck {
        name: "bell-generator-commutators".into(),
        max_abs_error: worst,
        passed: worst <= tol,
    });

    // {A_i, A_j} = sign(i) delta_ij I
    let mut worst = 0.0_f64;
    for i in 1..=3 {
        for j in 1..=3 {
            let lhs = a[i].anticommutator(&a[j]);
            let rhs = if i == j {
                GeneratorMatrix::identity().scaled(Complex64::new(anticommutator_sign(i), 0.0))
            } else {
                GeneratorMatrix::zero()
            };
            worst = worst.max(lhs.max_abs_diff(&rhs));
        }
    }
    checks.push(IdentityCheck {
        name: "bell-generator-anticommutators".into(),
        max_abs_error: worst,
        passed: worst <= tol,
    });

    // A'_1 = sqrt(2) A_1, A'_2 = sqrt(2) e^{-i pi/2} A_2, A'_3 = sqrt(2) A_3
    // recover the su(2) algebra: [A'_i, A'_j] = 2i eps_ijk A'_k, {A'_i, A'_j} = 2 delta_ij I.
    let root2 = Complex64::new(2.0_f64.sqrt(), 0.0);
    let rescaled = |m: &[GeneratorMatrix]| {
        vec![
            GeneratorMatrix::zero(), // unused slot 0 keeps indices aligned
            m[1].scaled(root2),
            m[2].scaled(root2 * minus_i),
            m[3].scaled(root2),
        ]
    };
    let ap = rescaled(&a);
    let (comm_err, anti_err) = su2_errors(&ap, two_i);
    checks.push(IdentityCheck {
        name: "su2-rescaled-commutators".into(),
        max_abs_error: comm_err,
        passed: comm_err <= tol,
    });
    checks.push(IdentityCheck {
        name: "su2-rescaled-anticommutators".into(),
        max_abs_error: anti_err,
        passed: anti_err <= tol,
    });

    if let Some(p) = p {
        let aq: Vec<GeneratorMatrix> = (0..4).map(|i| bell_q_matrix(i, p).unwrap()).collect();
        let product = product_for_bell_basis(p);
        let amp = qnumber(FRAC_1_SQRT_2, p)?;

        // [A_iq, A_jq] = (-1)^{i+j} sqrt(psi*beta) [1/sqrt(2)] 2 eps_ijk A_kq
        let mut worst = 0.0_f64;
        for i in 1..=3 {
            for j in 1..=3 {
                let lhs = aq[i].commutator(&aq[j]);
                let mut rhs = GeneratorMatrix::zero();
                for k in 1..=3 {
                    let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
                    let coef = sign * product.sqrt() * amp * 2.0 * epsilon(i, j, k);
                    rhs = rhs.add(&aq[k].scaled(Complex64::new(coef, 0.0)));
                }
                worst = worst.max(lhs.max_abs_diff(&rhs));
            }
        }
        checks.push(IdentityCheck {
            name: "deformed-generator-commutators".into(),
            max_abs_error: worst,
            passed: worst <= tol,
        });

        // {A_iq, A_jq} = sign(i) psi*beta [1/sqrt(2)]^2 2 delta_ij I.
        // The prefactor carries the squared deformed amplitude: the product
        // of two scaled generators is quadratic in the scale, and only this
        // form reduces to the undeformed relation as q -> 1.
        let mut worst = 0.0_f64;
        for i in 1..=3 {
            for j in 1..=3 {
                let lhs = aq[i].anticommutator(&aq[j]);
                let rhs = if i == j {
                    let coef = anticommutator_sign(i) * product * amp * amp * 2.0;
                    GeneratorMatrix::identity().scaled(Complex64::new(coef, 0.0))
                } else {
                    GeneratorMatrix::zero()
                };
                worst = worst.max(lhs.max_abs_diff(&rhs));
            }
        }
        checks.push(IdentityCheck {
            name: "deformed-generator-anticommutators".into(),
            max_abs_error: worst,
            passed: worst <= tol,
        });

        // A'_iq = A_iq / ([1/sqrt(2)] sqrt(psi*beta)), with e^{-i pi/2} on
        // the second, recover the usual su(2) algebra again.
        let inv = Complex64::new(1.0 / (amp * product.sqrt()), 0.0);
        let apq = vec![
            GeneratorMatrix::zero(),
            aq[1].scaled(inv),
            aq[2].scaled(inv * minus_i),
            aq[3].scaled(inv),
        ];
        let (comm_err, anti_err) = su2_errors(&apq, two_i);
        checks.push(IdentityCheck {
            name: "deformed-su2-recovery-commutators".into(),
            max_abs_error: comm_err,
            passed: comm_err <= tol,
        });
        checks.push(IdentityCheck {
            name: "deformed-su2-recovery-anticommutators".into(),
            max_abs_error: anti_err,
            passed: anti_err <= tol,
        });
    }

    Ok(GeneratorAlgebraReport {
        tol,
        s: p.map(|p| p.s()),
        checks,
    })
}

/// Worst entrywise errors of `[M_i, M_j] = 2i eps_ijk M_k` and
/// `{M_i, M_j} = 2 delta_ij I` over i, j in 1..=3.
#[allow(clippy::needless_range_loop)] // i, j, k are tensor indices
fn su2_errors(m: &[GeneratorMatrix], two_i: Complex64) -> (f64, f64) {
    let mut comm = 0.0_f64;
    let mut anti = 0.0_f64;
    for i in 1..=3 {
        for j in 1..=3 {
            let lhs = m[i].commutator(&m[j]);
            let mut rhs = GeneratorMatrix::zero();
            for k in 1..=3 {
                rhs = rhs.add(&m[k].scaled(two_i.scale(epsilon(i, j, k))));
            }
            comm = comm.max(lhs.max_abs_diff(&rhs));

            let lhs = m[i].anticommutator(&m[j]);
            let rhs = if i == j {
                GeneratorMatrix::identity().scaled(Complex64::new(2.0, 0.0))
            } else {
                GeneratorMatrix::zero()
            };
            anti = anti.max(lhs.max_abs_diff(&rhs));
        }
    }
    (comm, anti)
}
