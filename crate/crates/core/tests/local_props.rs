mod common;

use biquad::f2::Basis;
use biquad::local::{
    conic_oracle, hilbert_symbol, quaternion_class, relevant_places, BrauerClass, Place,
};
use common::*;
use proptest::prelude::*;

fn squarefree(bound: i64) -> impl Strategy<Value = i64> {
    (-bound..=bound).prop_filter("square-free", |n| is_squarefree(*n))
}

fn places_for(a: &biquad::arith::SquareClass, b: &biquad::arith::SquareClass) -> Vec<Place> {
    let mut v = relevant_places([a, b]);
    v.extend([
        Place::Infinity,
        Place::Two,
        Place::prime(3),
        Place::prime(5),
        Place::prime(101),
    ]);
    v.into_iter().collect()
}

proptest! {
    #[test]
    fn symmetric_and_trivial_on_norms(a in squarefree(10_000), b in squarefree(10_000)) {
        let (ca, cb) = (sc(a as i128), sc(b as i128));
        let neg = sc(-(a as i128));
        for v in places_for(&ca, &cb) {
            prop_assert_eq!(hilbert_symbol(&ca, &cb, v), hilbert_symbol(&cb, &ca, v));
            prop_assert_eq!(hilbert_symbol(&ca, &neg, v), 1, "(a,-a) at {}", v);
            if a != 1 {
                let c = sc(1 - a as i128);
                prop_assert_eq!(hilbert_symbol(&ca, &c, v), 1, "(a,1-a) at {}", v);
            }
        }
    }

    #[test]
    fn reciprocity_and_bimultiplicativity(a in squarefree(10_000), a2 in squarefree(10_000), b in squarefree(10_000)) {
        let (ca, ca2, cb) = (sc(a as i128), sc(a2 as i128), sc(b as i128));
        let class = quaternion_class(&ca, &cb).unwrap();
        prop_assert_eq!(class.ramified().len() % 2, 0);
        let prod = &ca * &ca2;
        let mut vs = places_for(&ca, &cb);
        vs.extend(relevant_places([&ca2]));
        for v in vs {
            prop_assert_eq!(class.local_symbol(v), hilbert_symbol(&ca, &cb, v));
            prop_assert_eq!(
                hilbert_symbol(&prod, &cb, v),
                hilbert_symbol(&ca, &cb, v) * hilbert_symbol(&ca2, &cb, v)
            );
        }
        let sum = quaternion_class(&ca, &cb).unwrap() + quaternion_class(&ca2, &cb).unwrap();
        prop_assert_eq!(sum, quaternion_class(&prod, &cb).unwrap());
    }

    #[test]
    fn oracle_agreement(a in -300i64..300, b in -300i64..300, i in 0usize..10) {
        prop_assume!(a != 0 && b != 0);
        let p = small_primes(30)[i];
        let formula = hilbert_symbol(&sc(a as i128), &sc(b as i128), Place::prime(p));
        prop_assert_eq!(conic_oracle(a, b, p).unwrap(), formula);
    }

    #[test]
    fn vector_round_trip(a in squarefree(2_000), b in squarefree(2_000)) {
        let class = quaternion_class(&sc(a as i128), &sc(b as i128)).unwrap();
        let mut labels = relevant_places([&sc(a as i128), &sc(b as i128)]);
        labels.insert(Place::Infinity);
        let basis = Basis::new(labels).unwrap();
        let v = class.to_vector(&basis).unwrap();
        prop_assert_eq!(v.weight(), class.ramified().len());
        prop_assert_eq!(BrauerClass::from_vector(&v).unwrap(), class);
    }
}

#[test]
fn odd_ramification_is_rejected() {
    assert!(BrauerClass::from_places([Place::Two]).is_err());
    assert!(BrauerClass::from_places([Place::Two, Place::prime(3)]).is_ok());
    assert!(conic_oracle(0, 3, 5).is_err());
    assert!(conic_oracle(3, 5, 9).is_err());
}

#[test]
fn places_order_and_display() {
    assert!(Place::Infinity < Place::Two && Place::Two < Place::prime(3));
    assert_eq!(Place::prime(2), Place::Two);
    assert_eq!(Place::Two.prime_value(), Some(2));
    assert_eq!(Place::Infinity.prime_value(), None);
}
