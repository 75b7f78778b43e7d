//! Exact simulation of teleportation over q-deformed non-maximally
//! entangled channels.
//!
//! A q-deformed oscillator pair realizes qubit states whose amplitudes are
//! q-numbers `[x] = sinh(s x)/sinh(s)` dressed by free positive functions of
//! `q = e^s`. This crate builds those states, verifies their algebra (the
//! determinant entanglement criterion, deformed Bell-like bases and their
//! su(2) structure), and runs three teleportation protocols over them by
//! exact state-vector simulation, with no sampling noise anywhere.
//!
//! The deformed protocols carry extra key material: the deformation exponent
//! `s` and the free profile functions. The `channel` module serializes that
//! key into a canonical byte payload and implements the receiver's side,
//! recovering the information amplitudes from his conditional statistics and
//! rejecting statistics that do not match the key.
//!
//! Module map:
//!
//! * [`qnum`] - q-numbers and the deformation parameter.
//! * [`deformation`] - profile functions and their normalization products.
//! * [`algebra`] - amplitude matrices, entanglement tests, Bell-like states,
//!   generator algebra, oscillator qubits.
//! * [`circuit`] - gates, the three protocols, statistics, fidelity.
//! * [`channel`] - classical payload codec and amplitude recovery.
//! * [`verify`] - named property suites over everything above.
//! * [`sweep`] - CSV parameter sweeps.
//!
//! Every public entry point is deterministic: identical inputs produce
//! bit-identical outputs, and the randomized verification suites take an
//! explicit seed. See the `examples/` directory for one runnable walkthrough
//! per capability.

pub mod algebra;
pub mod channel;
pub mod circuit;
pub mod deformation;
pub mod error;
pub mod qnum;
pub mod sweep;
pub mod verify;

pub use algebra::{
    bell_matrix, bell_q_decompose, bell_q_matrix, bell_q_state, deformed_bipartite_state,
    is_entangled, js_qubit, q_unentangled_check, verify_generator_algebra, AmplitudeMatrix,
    GeneratorMatrix, PureState, QAmplitudeMatrix,
};
pub use channel::{
    decode, encode, recover_amplitudes, validate_key, ClassicalPayload, ProfileDescriptor,
    RecoveryResult,
};
pub use circuit::{
    apply_cnot, apply_hadamard, bob_stats, closed_form_stats, fidelity_closed, fidelity_extrema,
    fidelity_overlap, teleport, AliceBasis, ChannelShape, ChannelSpec, FidelityExtrema, InfoQubit,
    Protocol, TeleportRecord,
};
pub use deformation::{
    gamma_for_info, product_for_bell_basis, product_for_state, split_product, DeformationProfile,
    ProfileSet,
};
pub use error::{Error, Result};
pub use qnum::{qnumber, qnumber_inverse, DeformationParam};
pub use sweep::{SweepSpec, SweepVariable};
pub use verify::{VerifyConfig, VerifyReport};
