//! Property-based invariants over the numeric core and the codec.

use proptest::prelude::*;
use qtele::algebra::{deformed_bipartite_state, AmplitudeMatrix, PureState};
use qtele::channel::{decode, encode, ClassicalPayload, ProfileDescriptor};
use qtele::circuit::{apply_cnot, apply_hadamard, AliceBasis, ChannelShape, Protocol};
use qtele::deformation::split_product;
use qtele::qnum::{qnumber, qnumber_inverse, DeformationParam};

fn normalized4() -> impl Strategy<Value = AmplitudeMatrix> {
    prop::array::uniform4(-1.0f64..1.0)
        .prop_filter("away from the origin", |v| {
            v.iter().map(|x| x * x).sum::<f64>() > 0.09
        })
        .prop_map(|v| {
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            AmplitudeMatrix::new(v[0] / n, v[1] / n, v[2] / n, v[3] / n).unwrap()
        })
}

fn state3() -> impl Strategy<Value = PureState> {
    prop::collection::vec(-1.0f64..1.0, 8)
        .prop_filter("nonzero", |v| v.iter().map(|x| x * x).sum::<f64>() > 0.09)
        .prop_map(|v| {
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            PureState::from_amplitudes(3, v.into_iter().map(|x| x / n).collect()).unwrap()
        })
}

fn payload_strategy() -> impl Strategy<Value = ClassicalPayload> {
    let descriptor = (-3.0f64..3.0, 0.05f64..5.0)
        .prop_map(|(kappa, scale)| ProfileDescriptor { kappa, scale });
    (
        0usize..3,
        0usize..4,
        0usize..4,
        1e-6f64..=0.5,
        0.0f64..=1.0,
        descriptor.clone(),
        descriptor.clone(),
        descriptor,
        prop::option::of((0.0f64..0.5, 0.0f64..0.5)),
    )
        .prop_map(
            |(proto, basis, shape, det_abs, s, omega, delta, gamma, measured)| {
                let protocol = Protocol::ALL[proto];
                let (omega, delta, gamma, s) = match protocol {
                    Protocol::Plain => (None, None, None, 0.0),
                    Protocol::Case1 => (Some(omega), Some(delta), None, s),
                    Protocol::Case2 => (Some(omega), Some(delta), Some(gamma), s),
                };
                ClassicalPayload {
                    version: 1,
                    protocol,
                    alice_basis: AliceBasis::ALL[basis],
                    channel_shape: ChannelShape::ALL[shape],
                    det_abs,
                    s,
                    omega,
                    delta,
                    gamma,
                    measured,
                }
            },
        )
}

proptest! {
    #[test]
    fn qnumber_is_odd(x in -10.0f64..10.0, s in 0.0f64..=1.0) {
        let p = DeformationParam::new(s).unwrap();
        let plus = qnumber(x, p).unwrap();
        let minus = qnumber(-x, p).unwrap();
        prop_assert!((plus + minus).abs() <= 1e-12 * plus.abs().max(1.0));
    }

    #[test]
    fn qnumber_matches_raw_quotient(x in -10.0f64..10.0, s in 0.05f64..=1.0) {
        let p = DeformationParam::new(s).unwrap();
        let value = qnumber(x, p).unwrap();
        let q = s.exp();
        let raw = (q.powf(x) - q.powf(-x)) / (q - 1.0 / q);
        prop_assert!((value - raw).abs() <= 1e-12 * value.abs().max(1.0));
    }

    #[test]
    fn qnumber_inverse_round_trips(x in 0.0f64..=1.0, s in 0.0f64..=1.0) {
        let p = DeformationParam::new(s).unwrap();
        let t = qnumber(x, p).unwrap();
        prop_assert!((qnumber_inverse(t, p).unwrap() - x).abs() <= 1e-12);
    }

    #[test]
    fn hadamard_is_an_involution(state in state3(), target in 0usize..3) {
        let twice = apply_hadamard(&apply_hadamard(&state, target).unwrap(), target).unwrap();
        prop_assert!(twice.max_abs_diff(&state) <= 1e-14);
    }

    #[test]
    fn cnot_is_an_involution(state in state3(), control in 0usize..3, target in 0usize..3) {
        prop_assume!(control != target);
        let twice = apply_cnot(&apply_cnot(&state, control, target).unwrap(), control, target).unwrap();
        prop_assert!(twice.max_abs_diff(&state) <= 1e-15);
    }

    #[test]
    fn gates_preserve_norm(state in state3(), target in 0usize..3) {
        let after = apply_hadamard(&state, target).unwrap();
        prop_assert!((after.norm_sqr() - state.norm_sqr()).abs() <= 1e-12);
    }

    #[test]
    fn split_product_is_invisible_in_the_product(
        product in 0.05f64..10.0,
        kappa in -3.0f64..3.0,
        s in 0.0f64..=1.0,
    ) {
        let p = DeformationParam::new(s).unwrap();
        let (f, g) = split_product(product, kappa).unwrap();
        prop_assert!((f.eval(p) * g.eval(p) - product).abs() <= 1e-12 * product);
    }

    #[test]
    fn deformed_states_are_normalized(amps in normalized4(), s in 0.0f64..=1.0) {
        let p = DeformationParam::new(s).unwrap();
        let state = deformed_bipartite_state(&amps, p).unwrap();
        prop_assert!((state.norm_sqr() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn payload_codec_round_trips(payload in payload_strategy()) {
        let bytes = encode(&payload).unwrap();
        let back = decode(&bytes).unwrap();
        prop_assert_eq!(&back, &payload);
        prop_assert_eq!(encode(&back).unwrap(), bytes);
    }
}
