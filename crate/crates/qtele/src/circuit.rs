//! Gate application and the teleportation protocols.
//!
//! The circuit is the same for all three protocols: the information qubit on
//! wire 0 and the entangled channel pair on wires 1-2, a CNOT from wire 0 to
//! wire 1, a Hadamard on wire 0, then a projective measurement of wires 0-1
//! by the sender. What changes is the input state:
//!
//! * `plain`   - undeformed qubit, undeformed non-maximal channel;
//! * `case1`   - undeformed qubit, deformed channel `sqrt(omega*delta) ([a]|00> + [b]|11>)`;
//! * `case2`   - deformed qubit `sqrt(gamma) ([alpha0]|0> + [alpha1]|1>)` over the
//!   same deformed channel.
//!
//! The receiver never applies a correction gate: the protocol recovers the
//! information amplitudes arithmetically from the conditional statistics and
//! the classical payload (see the `channel` module).
//!
//! Bob-side residual vectors are stored unnormalized, global `1/sqrt(2)`
//! included, so `M0` and `M1` are squared amplitudes of the full final state.

use crate::algebra::PureState;
use crate::deformation::{gamma_for_info, ProfileSet};
use crate::error::{Error, Result};
use crate::qnum::{qnumber, DeformationParam};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Tolerance for profile-constraint validation at configuration time.
pub const CONFIG_TOL: f64 = 1e-12;

/// Which input-state preparation the run uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Protocol {
    Plain,
    Case1,
    Case2,
}

impl Protocol {
    pub const ALL: [Protocol; 3] = [Protocol::Plain, Protocol::Case1, Protocol::Case2];

    pub fn is_deformed(&self) -> bool {
        !matches!(self, Protocol::Plain)
    }
}

impl fmt::Display for Protocol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Protocol::Plain => "plain",
            Protocol::Case1 => "case1",
            Protocol::Case2 => "case2",
        };
        f.write_str(name)
    }
}

impl FromStr for Protocol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(Protocol::Plain),
            "case1" => Ok(Protocol::Case1),
            "case2" => Ok(Protocol::Case2),
            other => Err(Error::Config(format!(
                "unknown protocol {other:?}; expected plain, case1 or case2"
            ))),
        }
    }
}

/// The information qubit `alpha0 |0> + alpha1 |1>`, real and normalized.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct InfoQubit {
    alpha0: f64,
    alpha1: f64,
}

impl InfoQubit {
    pub fn new(alpha0: f64, alpha1: f64) -> Result<Self> {
        if !alpha0.is_finite() || !alpha1.is_finite() {
            return Err(Error::Domain("information amplitudes must be finite".into()));
        }
        let norm2 = alpha0 * alpha0 + alpha1 * alpha1;
        if (norm2 - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized(format!(
                "alpha0^2 + alpha1^2 = {norm2}, expected 1"
            )));
        }
        Ok(Self { alpha0, alpha1 })
    }

    /// Completes `alpha1 = sqrt(1 - alpha0^2)`.
    pub fn from_alpha0(alpha0: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&alpha0) {
            return Err(Error::Range(format!("alpha0 must lie in [-1, 1], got {alpha0}")));
        }
        Self::new(alpha0, (1.0 - alpha0 * alpha0).sqrt())
    }

    pub fn alpha0(&self) -> f64 {
        self.alpha0
    }

    pub fn alpha1(&self) -> f64 {
        self.alpha1
    }
}

/// Which two basis states carry the channel's nonzero amplitudes, and with
/// which relative sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ChannelShape {
    /// `a|00> + b|11>`
    #[serde(rename = "nu")]
    Nu,
    /// `a|01> + b|10>`
    #[serde(rename = "nu_prime")]
    NuPrime,
    /// `a|01> - b|10>`
    #[serde(rename = "nu_dprime")]
    NuDPrime,
    /// `a|00> - b|11>`
    #[serde(rename = "nu_tprime")]
    NuTPrime,
}

impl ChannelShape {
    pub const ALL: [ChannelShape; 4] = [
        ChannelShape::Nu,
        ChannelShape::NuPrime,
        ChannelShape::NuDPrime,
        ChannelShape::NuTPrime,
    ];

    /// Nonzero amplitudes on |00>/|11> rather than |01>/|10>.
    pub fn is_diagonal(&self) -> bool {
        matches!(self, ChannelShape::Nu | ChannelShape::NuTPrime)
    }

    /// Sign applied to the second amplitude.
    pub fn second_sign(&self) -> f64 {
        match self {
            ChannelShape::Nu | ChannelShape::NuPrime => 1.0,
            ChannelShape::NuDPrime | ChannelShape::NuTPrime => -1.0,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ChannelShape::Nu => "nu",
            ChannelShape::NuPrime => "nu_prime",
            ChannelShape::NuDPrime => "nu_dprime",
            ChannelShape::NuTPrime => "nu_tprime",
        }
    }
}

impl fmt::Display for ChannelShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ChannelShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nu" => Ok(ChannelShape::Nu),
            "nu_prime" => Ok(ChannelShape::NuPrime),
            "nu_dprime" => Ok(ChannelShape::NuDPrime),
            "nu_tprime" => Ok(ChannelShape::NuTPrime),
            other => Err(Error::Config(format!("unknown channel shape {other:?}"))),
        }
    }
}

/// The entangled channel resource: two nonzero amplitudes `a`, `b` with
/// `a^2 + b^2 = 1`, a shape, and whether the pair is deformed.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChannelSpec {
    shape: ChannelShape,
    a: f64,
    b: f64,
    deformed: bool,
    s: f64,
}

impl ChannelSpec {
    pub fn new(
        shape: ChannelShape,
        a: f64,
        b: f64,
        deformed: bool,
        p: DeformationParam,
    ) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::Domain("channel amplitudes must be finite".into()));
        }
        let norm2 = a * a + b * b;
        if (norm2 - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized(format!(
                "a^2 + b^2 = {norm2}, expected 1"
            )));
        }
        if a == 0.0 || b == 0.0 {
            return Err(Error::Degenerate(
                "both channel amplitudes must be nonzero (the pair must be entangled)".into(),
            ));
        }
        if !deformed && p.is_deformed() {
            return Err(Error::Config(
                "an undeformed channel cannot carry s > 0".into(),
            ));
        }
        Ok(Self { shape, a, b, deformed, s: p.s() })
    }

    /// Diagonal-shape channel from the first amplitude alone.
    pub fn diagonal(a: f64, deformed: bool, p: DeformationParam) -> Result<Self> {
        if !(-1.0..=1.0).contains(&a) {
            return Err(Error::Range(format!("a must lie in [-1, 1], got {a}")));
        }
        Self::new(ChannelShape::Nu, a, (1.0 - a * a).sqrt(), deformed, p)
    }

    pub fn shape(&self) -> ChannelShape {
        self.shape
    }
    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn deformed(&self) -> bool {
        self.deformed
    }

    pub fn param(&self) -> DeformationParam {
        DeformationParam::new(self.s).expect("validated on construction")
    }

    /// |a * b|: the undeformed entanglement determinant magnitude.
    pub fn det_abs(&self) -> f64 {
        (self.a * self.b).abs()
    }

    pub fn is_maximal(&self, tol: f64) -> bool {
        (self.a.abs() - FRAC_1_SQRT_2).abs() <= tol
    }

    /// The channel pair's two amplitudes after optional deformation, the
    /// second one shape-signed, scaled by `channel_scale`.
    fn placed_amplitudes(&self, channel_scale: f64) -> Result<(f64, f64)> {
        let (ea, eb) = if self.deformed {
            let p = self.param();
            (qnumber(self.a, p)?, qnumber(self.b, p)?)
        } else {
            (self.a, self.b)
        };
        Ok((
            channel_scale * ea,
            channel_scale * self.shape.second_sign() * eb,
        ))
    }

    /// The 2-qubit channel state with the given global scale.
    fn state_vector(&self, channel_scale: f64) -> Result<PureState> {
        let (ea, eb) = self.placed_amplitudes(channel_scale)?;
        let amps = if self.shape.is_diagonal() {
            vec![ea, 0.0, 0.0, eb]
        } else {
            vec![0.0, ea, eb, 0.0]
        };
        PureState::from_amplitudes(2, amps)
    }
}

/// One of the four measurement outcomes on the sender's two wires.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AliceBasis {
    #[serde(rename = "00")]
    B00,
    #[serde(rename = "01")]
    B01,
    #[serde(rename = "10")]
    B10,
    #[serde(rename = "11")]
    B11,
}

impl AliceBasis {
    pub const ALL: [AliceBasis; 4] = [
        AliceBasis::B00,
        AliceBasis::B01,
        AliceBasis::B10,
        AliceBasis::B11,
    ];

    pub fn index(&self) -> usize {
        match self {
            AliceBasis::B00 => 0,
            AliceBasis::B01 => 1,
            AliceBasis::B10 => 2,
            AliceBasis::B11 => 3,
        }
    }

    /// Outcome bit on the channel wire the sender measures (wire 1).
    pub fn channel_bit(&self) -> usize {
        self.index() & 1
    }

    pub fn name(&self) -> &'static str {
        match self {
            AliceBasis::B00 => "00",
            AliceBasis::B01 => "01",
            AliceBasis::B10 => "10",
            AliceBasis::B11 => "11",
        }
    }
}

impl fmt::Display for AliceBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AliceBasis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "00" => Ok(AliceBasis::B00),
            "01" => Ok(AliceBasis::B01),
            "10" => Ok(AliceBasis::B10),
            "11" => Ok(AliceBasis::B11),
            other => Err(Error::Config(format!(
                "basis must be one of 00, 01, 10, 11; got {other:?}"
            ))),
        }
    }
}

/// One conditional branch of the final state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TeleportBranch {
    pub basis: AliceBasis,
    /// Probability of this sender outcome.
    pub probability: f64,
    /// Receiver's unnormalized conditional vector, global 1/sqrt(2) included.
    pub residual: [f64; 2],
    /// Squared |0> amplitude of the residual.
    pub m0: f64,
    /// Squared |1> amplitude of the residual.
    pub m1: f64,
}

/// Everything one protocol run produces.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TeleportRecord {
    pub protocol: Protocol,
    pub info: InfoQubit,
    pub channel: ChannelSpec,
    /// Bound channel product, present for deformed protocols.
    pub omega_delta: Option<f64>,
    /// Bound information-qubit factor, present for case2.
    pub gamma: Option<f64>,
    pub branches: [TeleportBranch; 4],
    pub final_state: PureState,
}

impl TeleportRecord {
    pub fn branch(&self, basis: AliceBasis) -> &TeleportBranch {
        &self.branches[basis.index()]
    }
}

/// Hadamard on one wire. Wire 0 is the most significant index bit.
pub fn apply_hadamard(state: &PureState, target: usize) -> Result<PureState> {
    let n = state.qubits();
    if target >= n {
        return Err(Error::Index(format!("target {target} out of range for {n} qubits")));
    }
    let mask = 1usize << (n - 1 - target);
    let mut amps = state.amps().to_vec();
    for i in 0..amps.len() {
        if i & mask == 0 {
            let j = i | mask;
            let (x, y) = (amps[i], amps[j]);
            amps[i] = FRAC_1_SQRT_2 * (x + y);
            amps[j] = FRAC_1_SQRT_2 * (x - y);
        }
    }
    PureState::from_amplitudes(n, amps)
}

/// Controlled-NOT between two wires.
pub fn apply_cnot(state: &PureState, control: usize, target: usize) -> Result<PureState> {
    let n = state.qubits();
    if control >= n || target >= n {
        return Err(Error::Index(format!(
            "control {control} / target {target} out of range for {n} qubits"
        )));
    }
    if control == target {
        return Err(Error::Index("control and target must differ".into()));
    }
    let cmask = 1usize << (n - 1 - control);
    let tmask = 1usize << (n - 1 - target);
    let mut amps = state.amps().to_vec();
    for i in 0..amps.len() {
        if i & cmask != 0 && i & tmask == 0 {
            amps.swap(i, i | tmask);
        }
    }
    PureState::from_amplitudes(n, amps)
}

/// Resolved scale factors for a run: the channel product and, for case2, the
/// information-qubit factor.
fn resolve_products(
    info: &InfoQubit,
    channel: &ChannelSpec,
    profiles: Option<&ProfileSet>,
    protocol: Protocol,
) -> Result<(Option<f64>, Option<f64>)> {
    let p = channel.param();
    match protocol {
        Protocol::Plain => {
            if channel.deformed() {
                return Err(Error::Config("plain protocol requires an undeformed channel".into()));
            }
            Ok((None, None))
        }
        Protocol::Case1 | Protocol::Case2 => {
            if !channel.deformed() {
                return Err(Error::Config(format!(
                    "{protocol} requires a deformed channel"
                )));
            }
            let da = qnumber(channel.a(), p)?;
            let db = qnumber(channel.b(), p)?;
            let required_wd = 1.0 / (da * da + db * db);
            let wd = match profiles {
                Some(set) => {
                    let wd = set.omega_delta(p);
                    if (wd / required_wd - 1.0).abs() > CONFIG_TOL.max(1e-14) {
                        return Err(Error::Config(format!(
                            "omega*delta = {wd} violates the channel normalization (needs {required_wd})"
                        )));
                    }
                    wd
                }
                None => required_wd,
            };
            if protocol == Protocol::Case1 {
                return Ok((Some(wd), None));
            }
            let required_gamma = gamma_for_info(info.alpha0(), info.alpha1(), p)?;
            let gamma = match profiles {
                Some(set) => {
                    let g = set.gamma(p);
                    if (g / required_gamma - 1.0).abs() > CONFIG_TOL.max(1e-14) {
                        return Err(Error::Config(format!(
                            "gamma = {g} violates the information-qubit normalization (needs {required_gamma})"
                        )));
                    }
                    g
                }
                None => required_gamma,
            };
            Ok((Some(wd), Some(gamma)))
        }
    }
}

/// Builds the 3-qubit input and runs the CNOT + Hadamard chain.
fn build_circuit(
    info: &InfoQubit,
    channel: &ChannelSpec,
    profiles: Option<&ProfileSet>,
    protocol: Protocol,
) -> Result<(PureState, PureState, Option<f64>, Option<f64>)> {
    let p = channel.param();
    let (omega_delta, gamma) = resolve_products(info, channel, profiles, protocol)?;

    let info_vec = match protocol {
        Protocol::Plain | Protocol::Case1 => PureState::qubit(info.alpha0(), info.alpha1())?,
        Protocol::Case2 => {
            let g = gamma.expect("resolved above").sqrt();
            PureState::qubit(
                g * qnumber(info.alpha0(), p)?,
                g * qnumber(info.alpha1(), p)?,
            )?
        }
    };
    let channel_scale = omega_delta.map_or(1.0, f64::sqrt);
    let channel_vec = channel.state_vector(channel_scale)?;

    let input = info_vec.kron(&channel_vec)?;
    let after_cnot = apply_cnot(&input, 0, 1)?;
    let final_state = apply_hadamard(&after_cnot, 0)?;
    Ok((input, final_state, omega_delta, gamma))
}

/// Runs one protocol instance and collects the conditional statistics of all
/// four sender outcomes.
pub fn teleport(
    info: &InfoQubit,
    channel: &ChannelSpec,
    profiles: Option<&ProfileSet>,
    protocol: Protocol,
) -> Result<TeleportRecord> {
    let (_, final_state, omega_delta, gamma) = build_circuit(info, channel, profiles, protocol)?;

    let branches = AliceBasis::ALL.map(|basis| {
        let base = basis.index() << 1;
        let r0 = final_state.amp(base);
        let r1 = final_state.amp(base + 1);
        TeleportBranch {
            basis,
            probability: r0 * r0 + r1 * r1,
            residual: [r0, r1],
            m0: r0 * r0,
            m1: r1 * r1,
        }
    });

    Ok(TeleportRecord {
        protocol,
        info: *info,
        channel: *channel,
        omega_delta,
        gamma,
        branches,
        final_state,
    })
}

/// The receiver's conditional measurement statistics for a sender outcome.
pub fn bob_stats(record: &TeleportRecord, basis: AliceBasis) -> (f64, f64) {
    let branch = record.branch(basis);
    (branch.m0, branch.m1)
}

/// Closed-form `(M0, M1)` for the given outcome, computed from the protocol
/// formulas rather than from the circuit. Serves as the algebraic route the
/// state-vector simulation is checked against.
pub fn closed_form_stats(
    info: &InfoQubit,
    channel: &ChannelSpec,
    profiles: Option<&ProfileSet>,
    protocol: Protocol,
    basis: AliceBasis,
) -> Result<(f64, f64)> {
    let p = channel.param();
    let (omega_delta, gamma) = resolve_products(info, channel, profiles, protocol)?;
    let scale = omega_delta.unwrap_or(1.0) * gamma.unwrap_or(1.0);

    let (i0, i1) = match protocol {
        Protocol::Plain | Protocol::Case1 => {
            (info.alpha0() * info.alpha0(), info.alpha1() * info.alpha1())
        }
        Protocol::Case2 => {
            let d0 = qnumber(info.alpha0(), p)?;
            let d1 = qnumber(info.alpha1(), p)?;
            (d0 * d0, d1 * d1)
        }
    };
    let (c0, c1) = if channel.deformed() {
        let da = qnumber(channel.a(), p)?;
        let db = qnumber(channel.b(), p)?;
        (da * da, db * db)
    } else {
        (channel.a() * channel.a(), channel.b() * channel.b())
    };

    // Which information mass multiplies which channel mass depends on the
    // outcome's channel bit and on whether the channel is diagonal.
    let swap_info = basis.channel_bit() == 1;
    let (m0, m1) = match (channel.shape().is_diagonal(), swap_info) {
        (true, false) => (i0 * c0, i1 * c1),
        (true, true) => (i1 * c0, i0 * c1),
        (false, false) => (i1 * c1, i0 * c0),
        (false, true) => (i0 * c1, i1 * c0),
    };
    Ok((scale * m0 / 2.0, scale * m1 / 2.0))
}

/// The protocol's closed-form fidelity.
///
/// For the diagonal shape this is
/// `scale * (c_00 alpha_0 + c_11 alpha_1)^2` with the deformations and scale
/// factors of the protocol; the off-diagonal shapes use their signed
/// amplitude pair in the same two slots.
pub fn fidelity_closed(
    info: &InfoQubit,
    channel: &ChannelSpec,
    profiles: Option<&ProfileSet>,
    protocol: Protocol,
) -> Result<f64> {
    let p = channel.param();
    let (omega_delta, gamma) = resolve_products(info, channel, profiles, protocol)?;
    let scale = omega_delta.unwrap_or(1.0) * gamma.unwrap_or(1.0);

    let (ia, ib) = match protocol {
        Protocol::Plain | Protocol::Case1 => (info.alpha0(), info.alpha1()),
        Protocol::Case2 => (qnumber(info.alpha0(), p)?, qnumber(info.alpha1(), p)?),
    };
    let (ca, cb) = if channel.deformed() {
        (qnumber(channel.a(), p)?, qnumber(channel.b(), p)?)
    } else {
        (channel.a(), channel.b())
    };
    let overlap = ca * ia + channel.shape().second_sign() * cb * ib;
    Ok(scale * overlap * overlap)
}

/// The literal overlap `|<input|final>|^2` of the 3-qubit states before and
/// after the gate chain.
///
/// This is an independent oracle, not the crate's fidelity definition: the
/// two quantities disagree (for the plain protocol the literal overlap is
/// `(alpha0^2 + alpha0 alpha1)^2 / 2`, with no channel dependence at all).
/// The verification report prints both.
pub fn fidelity_overlap(
    info: &InfoQubit,
    channel: &ChannelSpec,
    profiles: Option<&ProfileSet>,
    protocol: Protocol,
) -> Result<f64> {
    let (input, final_state, _, _) = build_circuit(info, channel, profiles, protocol)?;
    let overlap = input.inner(&final_state)?;
    Ok(overlap * overlap)
}

/// Data about one claimed fidelity-critical configuration.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CriticalPoint {
    /// Channel amplitude pair of the configuration.
    pub a00: f64,
    pub a11: f64,
    /// Closed-form fidelity there.
    pub fidelity: f64,
    /// Whether the classification calls this a maximum.
    pub is_maximum: bool,
    /// The classifying second-derivative expression:
    /// `-2/alpha1^2` at the maxima, `2 (2 alpha0^2 - 1)^2 / alpha0^2` at the
    /// claimed minima.
    pub classifying_second_derivative: f64,
    /// Central finite difference of dF/da00 along the branch through the
    /// configuration, h = 1e-5.
    pub fd_gradient: f64,
    /// Central finite difference of the second derivative.
    pub fd_second_derivative: f64,
}

impl CriticalPoint {
    /// Whether the finite-difference gradient actually vanishes here.
    pub fn gradient_vanishes(&self) -> bool {
        self.fd_gradient.abs() < 1e-6
    }
}

/// Fidelity extrema of the plain protocol as a function of the channel
/// amplitude `a00`, for a fixed information qubit.
#[derive(Clone, Debug, Serialize)]
pub struct FidelityExtrema {
    pub alpha0: f64,
    pub alpha1: f64,
    pub f_max: f64,
    /// `4 |det A|^2` evaluated at the swapped configurations `a00 = +-alpha1`.
    pub f_min: f64,
    pub points: Vec<CriticalPoint>,
}

/// Central-difference step for the extrema cross-checks.
const FD_STEP: f64 = 1e-5;

/// Locates and classifies the extremal configurations `a00 = +-alpha0`
/// (fidelity 1) and `a00 = +-alpha1` (fidelity `4 alpha0^2 alpha1^2`), and
/// cross-checks each with central finite differences of the closed form.
///
/// The finite-difference gradient genuinely vanishes only at `a00 =
/// +-alpha0`; at `a00 = +-alpha1` the stated extremal value holds but the
/// derivative along the branch does not vanish. Both numbers are returned so
/// callers can surface the discrepancy instead of hiding it.
pub fn fidelity_extrema(alpha0: f64) -> Result<FidelityExtrema> {
    if !alpha0.is_finite() || alpha0 <= 0.0 || alpha0 >= 1.0 {
        return Err(Error::Degenerate(format!(
            "alpha0 must lie strictly between 0 and 1, got {alpha0}"
        )));
    }
    let alpha1 = (1.0 - alpha0 * alpha0).sqrt();

    // F along the branch with a11 = sign * sqrt(1 - a00^2).
    let f_branch = |a00: f64, sign: f64| {
        let a11 = sign * (1.0 - a00 * a00).sqrt();
        let overlap = a00 * alpha0 + a11 * alpha1;
        overlap * overlap
    };

    let mut points = Vec::with_capacity(4);
    for (a00, a11, fidelity, is_maximum, classifier_dd) in [
        (alpha0, alpha1, 1.0, true, -2.0 / (alpha1 * alpha1)),
        (-alpha0, -alpha1, 1.0, true, -2.0 / (alpha1 * alpha1)),
        (
            alpha1,
            alpha0,
            4.0 * alpha0 * alpha0 * alpha1 * alpha1,
            false,
            2.0 * (2.0 * alpha0 * alpha0 - 1.0).powi(2) / (alpha0 * alpha0),
        ),
        (
            -alpha1,
            -alpha0,
            4.0 * alpha0 * alpha0 * alpha1 * alpha1,
            false,
            2.0 * (2.0 * alpha0 * alpha0 - 1.0).powi(2) / (alpha0 * alpha0),
        ),
    ] {
        let sign = a11.signum();
        let h = FD_STEP;
        let f_minus = f_branch(a00 - h, sign);
        let f_center = f_branch(a00, sign);
        let f_plus = f_branch(a00 + h, sign);
        points.push(CriticalPoint {
            a00,
            a11,
            fidelity,
            is_maximum,
            classifying_second_derivative: classifier_dd,
            fd_gradient: (f_plus - f_minus) / (2.0 * h),
            fd_second_derivative: (f_plus - 2.0 * f_center + f_minus) / (h * h),
        });
    }

    Ok(FidelityExtrema {
        alpha0,
        alpha1,
        f_max: 1.0,
        f_min: 4.0 * alpha0 * alpha0 * alpha1 * alpha1,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qnum::DeformationParam;

    fn p(s: f64) -> DeformationParam {
        DeformationParam::new(s).unwrap()
    }

    fn plain_channel(a: f64) -> ChannelSpec {
        ChannelSpec::diagonal(a, false, p(0.0)).unwrap()
    }

    #[test]
    fn hadamard_basics() {
        let zero = PureState::basis(1, 0).unwrap();
        let one = PureState::basis(1, 1).unwrap();
        let h0 = apply_hadamard(&zero, 0).unwrap();
        assert!((h0.amp(0) - FRAC_1_SQRT_2).abs() <= 1e-15);
        assert!((h0.amp(1) - FRAC_1_SQRT_2).abs() <= 1e-15);
        let h1 = apply_hadamard(&one, 0).unwrap();
        assert!((h1.amp(0) - FRAC_1_SQRT_2).abs() <= 1e-15);
        assert!((h1.amp(1) + FRAC_1_SQRT_2).abs() <= 1e-15);

        let state = PureState::from_amplitudes(2, vec![0.1, 0.7, -0.3, 0.6324555320336759]).unwrap();
        let twice = apply_hadamard(&apply_hadamard(&state, 1).unwrap(), 1).unwrap();
        assert!(twice.max_abs_diff(&state) <= 1e-15);
    }

    #[test]
    fn cnot_basics() {
        let s10 = PureState::basis(2, 0b10).unwrap();
        assert_eq!(apply_cnot(&s10, 0, 1).unwrap().amps(), PureState::basis(2, 0b11).unwrap().amps());
        let s00 = PureState::basis(2, 0b00).unwrap();
        assert_eq!(apply_cnot(&s00, 0, 1).unwrap().amps(), s00.amps());

        let state = PureState::from_amplitudes(2, vec![0.5, -0.5, 0.5, 0.5]).unwrap();
        let twice = apply_cnot(&apply_cnot(&state, 0, 1).unwrap(), 0, 1).unwrap();
        assert!(twice.max_abs_diff(&state) <= 1e-15);
        assert!(apply_cnot(&state, 0, 0).is_err());
        assert!(apply_cnot(&state, 0, 2).is_err());
    }

    #[test]
    fn plain_symmetric_branch_statistics() {
        let info = InfoQubit::from_alpha0(FRAC_1_SQRT_2).unwrap();
        let channel = plain_channel(FRAC_1_SQRT_2);
        let record = teleport(&info, &channel, None, Protocol::Plain).unwrap();
        let (m0, m1) = bob_stats(&record, AliceBasis::B00);
        assert!((m0 - 0.125).abs() <= 1e-12);
        assert!((m1 - 0.125).abs() <= 1e-12);
    }

    #[test]
    fn plain_branch_00_closed_form() {
        let info = InfoQubit::from_alpha0(0.6).unwrap();
        let channel = plain_channel(0.6);
        let record = teleport(&info, &channel, None, Protocol::Plain).unwrap();
        let (m0, _) = bob_stats(&record, AliceBasis::B00);
        assert!((m0 - 0.0648).abs() <= 1e-12);
    }

    #[test]
    fn maximal_channel_reproduces_standard_teleportation() {
        // With a maximal channel each residual is an (alpha0, alpha1)
        // pattern scaled by 1/2: the standard protocol up to normalization.
        let info = InfoQubit::from_alpha0(0.6).unwrap();
        let channel = plain_channel(FRAC_1_SQRT_2);
        let record = teleport(&info, &channel, None, Protocol::Plain).unwrap();
        let expect = [[0.3, 0.4], [0.4, 0.3], [0.3, -0.4], [-0.4, 0.3]];
        for (branch, want) in record.branches.iter().zip(expect) {
            assert!((branch.residual[0] - want[0]).abs() <= 1e-12, "{branch:?}");
            assert!((branch.residual[1] - want[1]).abs() <= 1e-12, "{branch:?}");
        }
    }

    #[test]
    fn case1_frozen_statistics() {
        // alpha = (0.6, 0.8), channel (0.6, 0.8), s = 1, outcome 00.
        let info = InfoQubit::from_alpha0(0.6).unwrap();
        let channel = ChannelSpec::diagonal(0.6, true, p(1.0)).unwrap();
        let record = teleport(&info, &channel, None, Protocol::Case1).unwrap();
        let (m0, m1) = bob_stats(&record, AliceBasis::B00);
        assert!((m0 - 0.06110161958561475).abs() <= 1e-12, "m0 = {m0}");
        assert!((m1 - 0.21137489851446267).abs() <= 1e-12, "m1 = {m1}");
    }

    #[test]
    fn case2_frozen_statistics() {
        let info = InfoQubit::from_alpha0(0.6).unwrap();
        let channel = ChannelSpec::diagonal(0.6, true, p(1.0)).unwrap();
        let record = teleport(&info, &channel, None, Protocol::Case2).unwrap();
        let (m0, m1) = bob_stats(&record, AliceBasis::B00);
        assert!((m0 - 0.05761431969112932).abs() <= 1e-12, "m0 = {m0}");
        assert!((m1 - 0.21816087754882515).abs() <= 1e-12, "m1 = {m1}");
    }

    #[test]
    fn closed_form_matches_simulation_across_shapes_and_bases() {
        let info = InfoQubit::from_alpha0(0.37).unwrap();
        for shape in ChannelShape::ALL {
            for protocol in Protocol::ALL {
                let (deformed, param) = match protocol {
                    Protocol::Plain => (false, p(0.0)),
                    _ => (true, p(0.8)),
                };
                let b = (1.0f64 - 0.81 * 0.81).sqrt();
                let channel = ChannelSpec::new(shape, 0.81, b, deformed, param).unwrap();
                let record = teleport(&info, &channel, None, protocol).unwrap();
                for basis in AliceBasis::ALL {
                    let (m0, m1) = bob_stats(&record, basis);
                    let (c0, c1) =
                        closed_form_stats(&info, &channel, None, protocol, basis).unwrap();
                    assert!((m0 - c0).abs() <= 1e-12, "{shape} {protocol} {basis}");
                    assert!((m1 - c1).abs() <= 1e-12, "{shape} {protocol} {basis}");
                }
            }
        }
    }

    #[test]
    fn statistics_conserve_probability_and_product() {
        let info = InfoQubit::from_alpha0(0.42).unwrap();
        for protocol in Protocol::ALL {
            let (deformed, param) = match protocol {
                Protocol::Plain => (false, p(0.0)),
                _ => (true, p(0.65)),
            };
            let channel = ChannelSpec::diagonal(0.73, deformed, param).unwrap();
            let record = teleport(&info, &channel, None, protocol).unwrap();
            let total: f64 = record.branches.iter().map(|b| b.m0 + b.m1).sum();
            assert!((total - 1.0).abs() <= 1e-12, "{protocol}: total = {total}");

            let products: Vec<f64> = record.branches.iter().map(|b| b.m0 * b.m1).collect();
            for w in products.windows(2) {
                assert!((w[0] - w[1]).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn product_formula_plain() {
        // M0 M1 = alpha0^2 alpha1^2 |det A|^2 / 4 for every outcome.
        let info = InfoQubit::from_alpha0(0.6).unwrap();
        let channel = plain_channel(0.9);
        let record = teleport(&info, &channel, None, Protocol::Plain).unwrap();
        let det = channel.det_abs();
        let expect = 0.36 * 0.64 * det * det / 4.0;
        for basis in AliceBasis::ALL {
            let (m0, m1) = bob_stats(&record, basis);
            assert!((m0 * m1 - expect).abs() <= 1e-13);
        }
    }

    #[test]
    fn product_formula_case2() {
        // M0 M1 = gamma^2 (omega delta)^2 [alpha0]^2 [alpha1]^2 ([a00][a11])^2 / 4.
        let param = p(1.0);
        let info = InfoQubit::from_alpha0(0.6).unwrap();
        let channel = ChannelSpec::diagonal(0.6, true, param).unwrap();
        let record = teleport(&info, &channel, None, Protocol::Case2).unwrap();
        let wd = record.omega_delta.unwrap();
        let gamma = record.gamma.unwrap();
        let d = |x: f64| qnumber(x, param).unwrap();
        let det_q = d(0.6) * d(0.8);
        let expect =
            gamma * gamma * wd * wd * d(0.6).powi(2) * d(0.8).powi(2) * det_q * det_q / 4.0;
        for basis in AliceBasis::ALL {
            let (m0, m1) = bob_stats(&record, basis);
            assert!((m0 * m1 - expect).abs() <= 1e-14, "{basis}");
        }
    }

    #[test]
    fn deformed_protocols_reduce_to_plain() {
        let info = InfoQubit::from_alpha0(0.55).unwrap();
        let plain = teleport(&info, &plain_channel(0.7), None, Protocol::Plain).unwrap();
        for protocol in [Protocol::Case1, Protocol::Case2] {
            let channel = ChannelSpec::diagonal(0.7, true, p(1e-8)).unwrap();
            let record = teleport(&info, &channel, None, protocol).unwrap();
            assert!(record.final_state.max_abs_diff(&plain.final_state) <= 1e-6);
            for (b_deformed, b_plain) in record.branches.iter().zip(&plain.branches) {
                assert!((b_deformed.m0 - b_plain.m0).abs() <= 1e-6);
                assert!((b_deformed.m1 - b_plain.m1).abs() <= 1e-6);
            }
        }
    }

    #[test]
    fn records_are_bit_identical() {
        let info = InfoQubit::from_alpha0(0.31).unwrap();
        let channel = ChannelSpec::diagonal(0.62, true, p(0.44)).unwrap();
        let a = teleport(&info, &channel, None, Protocol::Case2).unwrap();
        let b = teleport(&info, &channel, None, Protocol::Case2).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn protocol_channel_mismatches_are_rejected() {
        let info = InfoQubit::from_alpha0(0.6).unwrap();
        let deformed = ChannelSpec::diagonal(0.6, true, p(0.5)).unwrap();
        assert!(matches!(
            teleport(&info, &deformed, None, Protocol::Plain),
            Err(Error::Config(_))
        ));
        let undeformed = plain_channel(0.6);
        assert!(matches!(
            teleport(&info, &undeformed, None, Protocol::Case1),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn violating_profile_set_is_rejected() {
        use crate::deformation::ProfileSet;
        let info = InfoQubit::from_alpha0(0.6).unwrap();
        let channel = ChannelSpec::diagonal(0.6, true, p(1.0)).unwrap();
        // Bound to the wrong channel amplitudes.
        let bad = ProfileSet::plain().bind_channel(0.3, (1.0f64 - 0.09).sqrt(), p(1.0), 0.2).unwrap();
        assert!(matches!(
            teleport(&info, &channel, Some(&bad), Protocol::Case1),
            Err(Error::Config(_))
        ));
        let good = ProfileSet::plain().bind_channel(0.6, 0.8, p(1.0), 0.2).unwrap();
        assert!(teleport(&info, &channel, Some(&good), Protocol::Case1).is_ok());
    }

    #[test]
    fn fidelity_closed_examples() {
        let info = InfoQubit::from_alpha0(0.6).unwrap();
        // Matched channel: fidelity 1.
        let f = fidelity_closed(&info, &plain_channel(0.6), None, Protocol::Plain).unwrap();
        assert!((f - 1.0).abs() <= 1e-12);
        // Swapped channel: 4 |det A|^2 = 0.9216.
        let f = fidelity_closed(&info, &plain_channel(0.8), None, Protocol::Plain).unwrap();
        assert!((f - 0.9216).abs() <= 1e-12);
        let det = plain_channel(0.8).det_abs();
        assert!((f - 4.0 * det * det).abs() <= 1e-12);
    }

    #[test]
    fn deformed_fidelity_reduces_to_plain() {
        let info = InfoQubit::from_alpha0(0.6).unwrap();
        let f_plain = fidelity_closed(&info, &plain_channel(0.85), None, Protocol::Plain).unwrap();
        for protocol in [Protocol::Case1, Protocol::Case2] {
            let channel = ChannelSpec::diagonal(0.85, true, p(1e-8)).unwrap();
            let f = fidelity_closed(&info, &channel, None, protocol).unwrap();
            assert!((f - f_plain).abs() <= 1e-6);
        }
    }

    #[test]
    fn literal_overlap_differs_from_closed_form() {
        // The plain literal overlap is (alpha0^2 + alpha0 alpha1)^2 / 2,
        // independent of the channel.
        let info = InfoQubit::from_alpha0(0.6).unwrap();
        for &a in &[0.3, 0.6, 0.8] {
            let channel = plain_channel(a);
            let lit = fidelity_overlap(&info, &channel, None, Protocol::Plain).unwrap();
            assert!((lit - 0.3528).abs() <= 1e-12, "a={a}: {lit}");
        }
    }

    #[test]
    fn extrema_structure() {
        let e = fidelity_extrema(0.6).unwrap();
        assert!((e.f_max - 1.0).abs() <= 1e-15);
        assert!((e.f_min - 0.9216).abs() <= 1e-12);
        for point in &e.points {
            // Closed form at the configuration agrees with the claimed value.
            let overlap = point.a00 * 0.6 + point.a11 * 0.8;
            assert!((overlap * overlap - point.fidelity).abs() <= 1e-12);
            if point.is_maximum {
                assert!(point.gradient_vanishes(), "gradient at {}", point.a00);
                assert!(point.fd_second_derivative < 0.0);
                let expect = -2.0 / 0.64;
                assert!(
                    (point.fd_second_derivative - expect).abs() <= 1e-4 * expect.abs(),
                    "fd dd = {}",
                    point.fd_second_derivative
                );
            } else {
                assert!(point.classifying_second_derivative > 0.0);
                // The claimed minimum is not a stationary point of the branch.
                assert!(!point.gradient_vanishes());
            }
        }
    }

    #[test]
    fn extrema_finite_difference_gradient_at_maximum() {
        let e = fidelity_extrema(0.6).unwrap();
        let max_point = &e.points[0];
        assert!(max_point.fd_gradient.abs() <= 1e-6);
    }

    #[test]
    fn extrema_coincide_for_balanced_qubit() {
        let e = fidelity_extrema(FRAC_1_SQRT_2).unwrap();
        assert!((e.f_min - 1.0).abs() <= 1e-12);
        assert!((e.f_max - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn extrema_reject_degenerate_inputs() {
        assert!(matches!(fidelity_extrema(0.0), Err(Error::Degenerate(_))));
        assert!(matches!(fidelity_extrema(1.0), Err(Error::Degenerate(_))));
    }

    #[test]
    fn channel_spec_validation() {
        assert!(ChannelSpec::diagonal(1.0, false, p(0.0)).is_err()); // b = 0
        assert!(ChannelSpec::new(ChannelShape::Nu, 0.9, 0.1, false, p(0.0)).is_err()); // not normalized
        assert!(ChannelSpec::diagonal(0.6, false, p(0.5)).is_err()); // s > 0 but undeformed
        let c = ChannelSpec::diagonal(FRAC_1_SQRT_2, false, p(0.0)).unwrap();
        assert!(c.is_maximal(1e-12));
        assert!((c.det_abs() - 0.5).abs() <= 1e-15);
    }
}
