//! Property tests for the structural invariants: the deck action is a free
//! Z² action preserving the curve, decomposition inverts it, the kernel is
//! conjugation-symmetric, and the wire format round-trips bitwise.

use dilog_core::cover::distance_to_cuts;
use dilog_core::io::{fmt_cover_point, parse_cover_point};
use dilog_core::{
    deck_act, deck_decompose, li2, lift_principal, BasePoint, Complex, CoverPoint, DeckElement,
    Li2Config, TateValue,
};
use proptest::prelude::*;

fn base_z() -> impl Strategy<Value = Complex> {
    (-1.8f64..1.8, -1.8f64..1.8)
        .prop_map(|(re, im)| Complex::new(re, im))
        .prop_filter("off the cuts", |z| distance_to_cuts(*z) >= 0.05)
}

fn deck() -> impl Strategy<Value = DeckElement> {
    (-5i64..=5, -5i64..=5).prop_map(|(n1, n2)| DeckElement::new(n1, n2))
}

fn lift(z: Complex) -> CoverPoint {
    lift_principal(&BasePoint::new(z).unwrap()).unwrap()
}

proptest! {
    #[test]
    fn deck_action_is_a_free_group_action(z in base_z(), m in deck(), n in deck()) {
        let p = lift(z);
        let a = deck_act(m + n, &p);
        let b = deck_act(m, &deck_act(n, &p));
        // The group law is exact on the deck integers; coordinates can
        // differ by roundings of 2πk at the intermediate magnitude, so
        // compare at ulp level of the largest value visited.
        let tau = std::f64::consts::TAU;
        let scale1 = 1.0 + a.u1().norm() + tau * (m.n1.abs() + n.n1.abs()) as f64;
        let scale2 = 1.0 + a.u2().norm() + tau * (m.n2.abs() + n.n2.abs()) as f64;
        prop_assert!((a.u1() - b.u1()).norm() <= 4.0 * f64::EPSILON * scale1);
        prop_assert!((a.u2() - b.u2()).norm() <= 4.0 * f64::EPSILON * scale2);
        // Curve preservation under the action.
        prop_assert!(CoverPoint::curve_defect(a.u1(), a.u2()) <= 1e-12);
        // Freeness: a nontrivial element moves every point.
        if !m.is_identity() {
            prop_assert!(deck_act(m, &p) != p);
        }
    }

    #[test]
    fn decompose_inverts_the_action(z in base_z(), n in deck()) {
        let p0 = lift(z);
        let p = deck_act(n, &p0);
        let (m, q) = deck_decompose(&p).unwrap();
        prop_assert_eq!(m, n);
        prop_assert!((q.u1() - p0.u1()).norm() < 1e-14);
        prop_assert!((q.u2() - p0.u2()).norm() < 1e-14);
        let back = deck_act(m, &q);
        prop_assert_eq!(back.u1(), p.u1());
        prop_assert_eq!(back.u2(), p.u2());
    }

    #[test]
    fn li2_commutes_with_conjugation(re in -3.0f64..0.85, im in -3.0f64..3.0) {
        let z = Complex::new(re, im);
        let cfg = Li2Config::default();
        let a = li2(z.conj(), &cfg).unwrap();
        let b = li2(z, &cfg).unwrap().conj();
        prop_assert!((a - b).norm() < 1e-14);
    }

    #[test]
    fn tate_defect_ignores_the_lattice(re in -50.0f64..50.0, im in -5.0f64..5.0, k in -4i32..=4) {
        let v = TateValue::new(Complex::new(re, im));
        let w = TateValue::new(Complex::new(
            re + k as f64 * dilog_core::tate::Z2_LATTICE,
            im,
        ));
        prop_assert!(v.defect(&w) < 1e-10);
        prop_assert!((v.defect(&w) - w.defect(&v)).abs() < 1e-12);
    }

    #[test]
    fn cover_point_json_round_trips_bitwise(z in base_z(), n in deck()) {
        let p = deck_act(n, &lift(z));
        let back = parse_cover_point(&fmt_cover_point(&p)).unwrap();
        prop_assert_eq!(back.u1().re.to_bits(), p.u1().re.to_bits());
        prop_assert_eq!(back.u1().im.to_bits(), p.u1().im.to_bits());
        prop_assert_eq!(back.u2().re.to_bits(), p.u2().re.to_bits());
        prop_assert_eq!(back.u2().im.to_bits(), p.u2().im.to_bits());
    }
}
