//! The classical side channel: canonical serialization of the key material
//! the sender must share, and the receiver's recovery of the information
//! amplitudes from his measurement statistics plus that key.
//!
//! # Wire format
//!
//! One `key=value` record per line, UTF-8, keys sorted lexicographically,
//! every line newline-terminated, reals rendered as the shortest decimal
//! that round-trips. Decoding re-encodes and compares bytes, so any input
//! that is not in canonical form is rejected with the offset of the first
//! offending byte. Version 1 is the only version.
//!
//! # What the key buys
//!
//! The statistics `(M0, M1)` plus the payload determine the information
//! amplitudes through the protocol's closed-form system. The receiver
//! evaluates the profile functions exactly as communicated; a payload with
//! any field perturbed makes that system inconsistent, which
//! [`recover_amplitudes`] reports and [`validate_key`] maps to `false`.
//! Magnitudes only: the statistics are squares, so the overall sign of
//! `(alpha0, alpha1)` is invisible by construction.

use crate::circuit::{AliceBasis, ChannelShape, ChannelSpec, Protocol};
use crate::deformation::{DeformationProfile, ProfileSet};
use crate::error::{Error, Result};
use crate::qnum::{qnumber, qnumber_inverse, DeformationParam};
use serde::Serialize;

/// Residual above which a candidate root is inconsistent with the key.
pub const RECOVERY_RESIDUAL_TOL: f64 = 1e-9;

/// Payload wire-format version.
pub const PAYLOAD_VERSION: u32 = 1;

/// Descriptor of one communicated profile function: `scale * q^kappa`.
///
/// Both numbers travel in the payload. The exponent alone would cancel out
/// of every product the receiver forms; carrying the pair makes each entry
/// individually load-bearing in the consistency check.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProfileDescriptor {
    pub kappa: f64,
    pub scale: f64,
}

impl ProfileDescriptor {
    pub fn from_profile(profile: &DeformationProfile) -> Self {
        Self {
            kappa: profile.kappa(),
            scale: profile.scale(),
        }
    }

    pub fn eval(&self, p: DeformationParam) -> f64 {
        self.scale * p.q().powf(self.kappa)
    }
}

/// The serialized key material the sender ships over the classical channel.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassicalPayload {
    pub version: u32,
    pub protocol: Protocol,
    pub alice_basis: AliceBasis,
    pub channel_shape: ChannelShape,
    /// Undeformed determinant magnitude `|a * b|` of the channel pair.
    pub det_abs: f64,
    pub s: f64,
    pub omega: Option<ProfileDescriptor>,
    pub delta: Option<ProfileDescriptor>,
    pub gamma: Option<ProfileDescriptor>,
    /// The sender may attach the conditional statistics she predicts.
    pub measured: Option<(f64, f64)>,
}

impl ClassicalPayload {
    /// Assembles the payload for a run. The profile set must be the one the
    /// run was bound with.
    pub fn from_parts(
        protocol: Protocol,
        alice_basis: AliceBasis,
        channel: &ChannelSpec,
        profiles: &ProfileSet,
        measured: Option<(f64, f64)>,
    ) -> Result<Self> {
        let (omega, delta, gamma) = match protocol {
            Protocol::Plain => (None, None, None),
            Protocol::Case1 => (
                Some(ProfileDescriptor::from_profile(&profiles.omega)),
                Some(ProfileDescriptor::from_profile(&profiles.delta)),
                None,
            ),
            Protocol::Case2 => (
                Some(ProfileDescriptor::from_profile(&profiles.omega)),
                Some(ProfileDescriptor::from_profile(&profiles.delta)),
                Some(ProfileDescriptor::from_profile(&profiles.gamma)),
            ),
        };
        let payload = Self {
            version: PAYLOAD_VERSION,
            protocol,
            alice_basis,
            channel_shape: channel.shape(),
            det_abs: channel.det_abs(),
            s: channel.param().s(),
            omega,
            delta,
            gamma,
            measured,
        };
        payload.validate()?;
        Ok(payload)
    }

    /// Field-level invariants.
    pub fn validate(&self) -> Result<()> {
        if self.version != PAYLOAD_VERSION {
            return Err(Error::Validation(format!(
                "unsupported payload version {}",
                self.version
            )));
        }
        if !self.s.is_finite() || !(0.0..=1.0).contains(&self.s) {
            return Err(Error::Validation(format!("s = {} outside [0, 1]", self.s)));
        }
        if self.protocol == Protocol::Plain && self.s != 0.0 {
            return Err(Error::Validation("plain protocol requires s = 0".into()));
        }
        if !self.det_abs.is_finite() || self.det_abs < 0.0 {
            return Err(Error::Validation(format!(
                "det_abs = {} must be nonnegative",
                self.det_abs
            )));
        }
        // 1/2 is the exact maximum of |a b| over normalized pairs; allow one
        // rounding step so a maximal channel computed in f64 still encodes.
        if self.det_abs > 0.5 + 1e-12 {
            return Err(Error::Validation(format!(
                "det_abs = {} exceeds 1/2, impossible for a normalized pair",
                self.det_abs
            )));
        }
        let expect_channel_profiles = self.protocol.is_deformed();
        if self.omega.is_some() != expect_channel_profiles
            || self.delta.is_some() != expect_channel_profiles
        {
            return Err(Error::Validation(format!(
                "{} payload must carry omega/delta descriptors iff deformed",
                self.protocol
            )));
        }
        if self.gamma.is_some() != (self.protocol == Protocol::Case2) {
            return Err(Error::Validation(
                "gamma descriptor present iff protocol is case2".into(),
            ));
        }
        for descriptor in [self.omega, self.delta, self.gamma].into_iter().flatten() {
            if !descriptor.kappa.is_finite() {
                return Err(Error::Validation("profile exponent must be finite".into()));
            }
            if !descriptor.scale.is_finite() || descriptor.scale <= 0.0 {
                return Err(Error::Validation("profile scale must be positive".into()));
            }
        }
        if let Some((m0, m1)) = self.measured {
            for m in [m0, m1] {
                if !m.is_finite() || !(0.0..=1.0).contains(&m) {
                    return Err(Error::Validation(format!(
                        "measured statistic {m} outside [0, 1]"
                    )));
                }
            }
        }
        Ok(())
    }

    /// `omega * delta` as the receiver evaluates it from the descriptors.
    fn omega_delta(&self, p: DeformationParam) -> Option<f64> {
        Some(self.omega?.eval(p) * self.delta?.eval(p))
    }
}

fn fmt_f64(x: f64) -> String {
    format!("{x}")
}

/// Canonical byte encoding of a payload.
pub fn encode(payload: &ClassicalPayload) -> Result<Vec<u8>> {
    payload
        .validate()
        .map_err(|e| Error::Encode(e.to_string()))?;

    // Fields in lexicographic key order.
    let mut records: Vec<(String, String)> = vec![
        ("alice_basis".into(), payload.alice_basis.name().into()),
        ("channel_shape".into(), payload.channel_shape.name().into()),
        ("det_abs".into(), fmt_f64(payload.det_abs)),
        ("protocol".into(), payload.protocol.to_string()),
        ("s".into(), fmt_f64(payload.s)),
        ("version".into(), payload.version.to_string()),
    ];
    if let Some(d) = payload.delta {
        records.push(("delta_kappa".into(), fmt_f64(d.kappa)));
        records.push(("delta_scale".into(), fmt_f64(d.scale)));
    }
    if let Some(d) = payload.gamma {
        records.push(("gamma_kappa".into(), fmt_f64(d.kappa)));
        records.push(("gamma_scale".into(), fmt_f64(d.scale)));
    }
    if let Some((m0, m1)) = payload.measured {
        records.push(("m0".into(), fmt_f64(m0)));
        records.push(("m1".into(), fmt_f64(m1)));
    }
    if let Some(d) = payload.omega {
        records.push(("omega_kappa".into(), fmt_f64(d.kappa)));
        records.push(("omega_scale".into(), fmt_f64(d.scale)));
    }
    records.sort();

    let mut out = String::new();
    for (key, value) in records {
        out.push_str(&key);
        out.push('=');
        out.push_str(&value);
        out.push('\n');
    }
    Ok(out.into_bytes())
}

struct RawField<'a> {
    value: &'a str,
    offset: usize,
    consumed: bool,
}

struct FieldMap<'a> {
    fields: Vec<(&'a str, RawField<'a>)>,
    total_len: usize,
}

impl<'a> FieldMap<'a> {
    fn take(&mut self, key: &str) -> Option<(&'a str, usize)> {
        self.fields.iter_mut().find(|(k, _)| *k == key).map(|(_, f)| {
            f.consumed = true;
            (f.value, f.offset)
        })
    }

    fn require(&mut self, key: &str) -> Result<(&'a str, usize)> {
        self.take(key).ok_or_else(|| Error::Parse {
            offset: self.total_len,
            msg: format!("missing required field {key:?}"),
        })
    }
}

fn parse_fields(text: &str) -> Result<FieldMap<'_>> {
    let mut fields: Vec<(&str, RawField)> = Vec::new();
    let mut offset = 0;
    for chunk in text.split_inclusive('\n') {
        let line_start = offset;
        offset += chunk.len();
        let Some(line) = chunk.strip_suffix('\n') else {
            return Err(Error::Parse {
                offset: text.len(),
                msg: "final record is not newline-terminated".into(),
            });
        };
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::Parse {
                offset: line_start,
                msg: format!("record {line:?} is not of the form key=value"),
            });
        };
        if fields.iter().any(|(k, _)| *k == key) {
            return Err(Error::Parse {
                offset: line_start,
                msg: format!("duplicate field {key:?}"),
            });
        }
        fields.push((
            key,
            RawField {
                value,
                offset: line_start + key.len() + 1,
                consumed: false,
            },
        ));
    }
    Ok(FieldMap {
        fields,
        total_len: text.len(),
    })
}

fn parse_f64(raw: (&str, usize)) -> Result<f64> {
    let (value, offset) = raw;
    value.parse::<f64>().map_err(|_| Error::Parse {
        offset,
        msg: format!("{value:?} is not a decimal real"),
    })
}

fn parse_profile(map: &mut FieldMap<'_>, name: &str) -> Result<Option<ProfileDescriptor>> {
    let kappa = map.take(&format!("{name}_kappa"));
    let scale = map.take(&format!("{name}_scale"));
    match (kappa, scale) {
        (None, None) => Ok(None),
        (Some(k), Some(sc)) => Ok(Some(ProfileDescriptor {
            kappa: parse_f64(k)?,
            scale: parse_f64(sc)?,
        })),
        (Some((_, offset)), None) | (None, Some((_, offset))) => Err(Error::Parse {
            offset,
            msg: format!("{name}_kappa and {name}_scale must appear together"),
        }),
    }
}

/// Decodes and validates a canonical payload.
///
/// Rejects unknown fields, duplicate keys, out-of-range values and any
/// deviation from the canonical byte form.
pub fn decode(bytes: &[u8]) -> Result<ClassicalPayload> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::Parse {
        offset: e.valid_up_to(),
        msg: "payload is not valid UTF-8".into(),
    })?;

    let mut map = parse_fields(text)?;

    let (version_str, version_offset) = map.require("version")?;
    let version: u32 = version_str.parse().map_err(|_| Error::Parse {
        offset: version_offset,
        msg: format!("{version_str:?} is not a version number"),
    })?;

    let (protocol_str, protocol_offset) = map.require("protocol")?;
    let protocol: Protocol = protocol_str.parse().map_err(|_| Error::Parse {
        offset: protocol_offset,
        msg: format!("unknown protocol {protocol_str:?}"),
    })?;

    let (basis_str, basis_offset) = map.require("alice_basis")?;
    let alice_basis: AliceBasis = basis_str.parse().map_err(|_| Error::Parse {
        offset: basis_offset,
        msg: format!("unknown basis {basis_str:?}"),
    })?;

    let (shape_str, shape_offset) = map.require("channel_shape")?;
    let channel_shape: ChannelShape = shape_str.parse().map_err(|_| Error::Parse {
        offset: shape_offset,
        msg: format!("unknown channel shape {shape_str:?}"),
    })?;

    let det_abs = parse_f64(map.require("det_abs")?)?;
    let s = parse_f64(map.require("s")?)?;

    let omega = parse_profile(&mut map, "omega")?;
    let delta = parse_profile(&mut map, "delta")?;
    let gamma = parse_profile(&mut map, "gamma")?;

    let measured = match (map.take("m0"), map.take("m1")) {
        (None, None) => None,
        (Some(m0), Some(m1)) => Some((parse_f64(m0)?, parse_f64(m1)?)),
        (Some((_, offset)), None) | (None, Some((_, offset))) => {
            return Err(Error::Parse {
                offset,
                msg: "m0 and m1 must appear together".into(),
            })
        }
    };

    if let Some((key, field)) = map.fields.iter().find(|(_, f)| !f.consumed) {
        return Err(Error::Parse {
            offset: field.offset,
            msg: format!("unknown field {key:?}"),
        });
    }

    let payload = ClassicalPayload {
        version,
        protocol,
        alice_basis,
        channel_shape,
        det_abs,
        s,
        omega,
        delta,
        gamma,
        measured,
    };
    payload.validate()?;

    // Canonical-form enforcement: the bytes must be exactly what this
    // payload encodes to.
    let canonical = encode(&payload)?;
    if canonical != bytes {
        let offset = canonical
            .iter()
            .zip(bytes)
            .position(|(a, b)| a != b)
            .unwrap_or_else(|| canonical.len().min(bytes.len()));
        return Err(Error::Parse {
            offset,
            msg: "payload is not in canonical form".into(),
        });
    }

    Ok(payload)
}

/// What the receiver learns from inverting his statistics under a key.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RecoveryResult {
    pub abs_alpha0: f64,
    pub abs_alpha1: f64,
    /// Both determinant roots were consistent; `alternate` holds the other
    /// reading. Happens exactly when the information and channel amplitudes
    /// align symmetrically.
    pub ambiguous: bool,
    /// Normalization defect |alpha0^2 + alpha1^2 - 1| of the returned pair.
    pub residual: f64,
    pub alternate: Option<(f64, f64)>,
}

struct RootCandidate {
    abs_alpha0: f64,
    abs_alpha1: f64,
    residual: f64,
}

/// Tries one determinant root `v` (the undeformed squared first channel
/// amplitude) against the statistics.
fn try_root(
    m0: f64,
    m1: f64,
    v: f64,
    payload: &ClassicalPayload,
    p: DeformationParam,
) -> Result<RootCandidate> {
    const MASS_SLACK: f64 = 1e-6;
    if !(0.0..=1.0).contains(&v) || v <= f64::EPSILON || 1.0 - v <= f64::EPSILON {
        return Err(Error::InconsistentStatistics("determinant root degenerate".into()));
    }

    // Channel masses for this root, deformed when the protocol is.
    let (c0, c1, scale) = if payload.protocol.is_deformed() {
        let da = qnumber(v.sqrt(), p)?;
        let db = qnumber((1.0 - v).sqrt(), p)?;
        let product = payload
            .omega_delta(p)
            .ok_or_else(|| Error::Validation("missing channel profile descriptors".into()))?;
        (da * da, db * db, product)
    } else {
        (v, 1.0 - v, 1.0)
    };

    // Which information mass each statistic carries (see the circuit module):
    // the outcome's channel bit and an off-diagonal channel both swap roles.
    let swap_info =
        (payload.alice_basis.channel_bit() == 1) == payload.channel_shape.is_diagonal();
    let (w0, w1) = if payload.channel_shape.is_diagonal() {
        (scale * c0, scale * c1)
    } else {
        (scale * c1, scale * c0)
    };
    let (mass_for_alpha0, mass_for_alpha1) = if swap_info {
        (2.0 * m1 / w1, 2.0 * m0 / w0)
    } else {
        (2.0 * m0 / w0, 2.0 * m1 / w1)
    };

    for mass in [mass_for_alpha0, mass_for_alpha1] {
        if !mass.is_finite() || !(-MASS_SLACK..=1.0 + MASS_SLACK).contains(&mass) {
            return Err(Error::InconsistentStatistics(format!(
                "information mass {mass} outside [0, 1]"
            )));
        }
    }

    let (abs_alpha0, abs_alpha1) = match payload.protocol {
        Protocol::Plain | Protocol::Case1 => (
            mass_for_alpha0.max(0.0).sqrt(),
            mass_for_alpha1.max(0.0).sqrt(),
        ),
        Protocol::Case2 => {
            let gamma = payload
                .gamma
                .ok_or_else(|| Error::Validation("missing gamma descriptor".into()))?
                .eval(p);
            if !gamma.is_finite() || gamma <= 0.0 {
                return Err(Error::InconsistentStatistics(format!(
                    "gamma evaluates to {gamma}"
                )));
            }
            // mass = gamma [alpha]^2; undo the deformation by monotone
            // inversion of the q-number map.
            let d0 = (mass_for_alpha0.max(0.0) / gamma).sqrt();
            let d1 = (mass_for_alpha1.max(0.0) / gamma).sqrt();
            (qnumber_inverse(d0, p)?, qnumber_inverse(d1, p)?)
        }
    };

    let residual = (abs_alpha0 * abs_alpha0 + abs_alpha1 * abs_alpha1 - 1.0).abs();
    Ok(RootCandidate {
        abs_alpha0: abs_alpha0.clamp(0.0, 1.0),
        abs_alpha1: abs_alpha1.clamp(0.0, 1.0),
        residual,
    })
}

/// Recovers `(|alpha0|, |alpha1|)` from the receiver's statistics and the
/// payload key.
///
/// The determinant pins the two candidate channel masses
/// `v = (1 +- sqrt(1 - 4 det^2)) / 2`; each candidate is propagated through
/// the protocol's closed-form system and kept only if the recovered pair is
/// normalized to within [`RECOVERY_RESIDUAL_TOL`]. No surviving root means
/// the statistics do not belong to this key.
pub fn recover_amplitudes(
    m0: f64,
    m1: f64,
    payload: &ClassicalPayload,
) -> Result<RecoveryResult> {
    payload.validate()?;
    if !m0.is_finite() || !m1.is_finite() || m0 < 0.0 || m1 < 0.0 {
        return Err(Error::Domain(format!(
            "statistics must be nonnegative reals, got ({m0}, {m1})"
        )));
    }
    let det = payload.det_abs;
    if det <= 1e-12 {
        return Err(Error::Degenerate(
            "det_abs = 0: an unentangled channel carries no information".into(),
        ));
    }
    let p = DeformationParam::new(payload.s)?;

    let disc = (1.0 - 4.0 * det * det).max(0.0).sqrt();
    let roots = if disc <= 1e-12 {
        vec![0.5]
    } else {
        vec![(1.0 + disc) / 2.0, (1.0 - disc) / 2.0]
    };

    let mut consistent: Vec<RootCandidate> = Vec::new();
    let mut best_rejected = f64::INFINITY;
    for v in roots {
        match try_root(m0, m1, v, payload, p) {
            Ok(candidate) if candidate.residual <= RECOVERY_RESIDUAL_TOL => {
                consistent.push(candidate)
            }
            Ok(candidate) => best_rejected = best_rejected.min(candidate.residual),
            Err(_) => {}
        }
    }

    consistent.sort_by(|a, b| a.residual.total_cmp(&b.residual));
    match consistent.len() {
        0 => Err(Error::InconsistentStatistics(format!(
            "no determinant root reproduces the statistics (best residual {best_rejected:.3e})"
        ))),
        1 => {
            let c = &consistent[0];
            Ok(RecoveryResult {
                abs_alpha0: c.abs_alpha0,
                abs_alpha1: c.abs_alpha1,
                ambiguous: false,
                residual: c.residual,
                alternate: None,
            })
        }
        _ => {
            let (first, second) = (&consistent[0], &consistent[1]);
            // Two roots describing the same magnitudes are one answer.
            let same = (first.abs_alpha0 - second.abs_alpha0).abs() <= 1e-9
                && (first.abs_alpha1 - second.abs_alpha1).abs() <= 1e-9;
            Ok(RecoveryResult {
                abs_alpha0: first.abs_alpha0,
                abs_alpha1: first.abs_alpha1,
                ambiguous: !same,
                residual: first.residual,
                alternate: if same {
                    None
                } else {
                    Some((second.abs_alpha0, second.abs_alpha1))
                },
            })
        }
    }
}

/// `true` iff the statistics are consistent with the payload key.
pub fn validate_key(m0: f64, m1: f64, payload: &ClassicalPayload) -> bool {
    recover_amplitudes(m0, m1, payload).is_ok()
}
