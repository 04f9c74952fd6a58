//! Tower arithmetic checked against a complex floating-point embedding.

mod common;

use biquad::tower::{BiquadField, Rational, Subfield, TowerElement};
use common::*;
use num_traits::Zero;
use proptest::prelude::*;

#[derive(Clone, Copy, Debug)]
struct C(f64, f64);

impl C {
    fn mul(self, o: C) -> C {
        C(self.0 * o.0 - self.1 * o.1, self.0 * o.1 + self.1 * o.0)
    }
    fn add(self, o: C) -> C {
        C(self.0 + o.0, self.1 + o.1)
    }
    fn scale(self, s: f64) -> C {
        C(self.0 * s, self.1 * s)
    }
    fn sqrt_of(d: i128) -> C {
        let r = (d.unsigned_abs() as f64).sqrt();
        if d < 0 {
            C(0.0, r)
        } else {
            C(r, 0.0)
        }
    }
    fn close(self, o: C) -> bool {
        let scale = 1.0 + self.0.abs().max(self.1.abs()).max(o.0.abs()).max(o.1.abs());
        (self.0 - o.0).abs() <= 1e-9 * scale && (self.1 - o.1).abs() <= 1e-9 * scale
    }
}

fn f(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// The embedding sending `√a₁ ↦ s₁·√a₁`, `√a₂ ↦ s₂·√a₂`.
fn embed(k: &BiquadField, e: &TowerElement, s1: f64, s2: f64) -> C {
    let (r1, r2) = k.representatives();
    let (q1, q2) = (C::sqrt_of(r1).scale(s1), C::sqrt_of(r2).scale(s2));
    C(f(e.x), 0.0)
        .add(q1.scale(f(e.y)))
        .add(q2.scale(f(e.z)))
        .add(q1.mul(q2).scale(f(e.w)))
}

const SIGNS: [(f64, f64); 4] = [(1.0, 1.0), (-1.0, 1.0), (1.0, -1.0), (-1.0, -1.0)];

fn field() -> impl Strategy<Value = BiquadField> {
    any::<u64>().prop_map(|seed| random_field(&mut rng(seed), 50))
}

fn element() -> impl Strategy<Value = TowerElement> {
    let coord = (-12i128..=12, 1i128..=5).prop_map(|(n, d)| Rational::new(n, d));
    (coord.clone(), coord.clone(), coord.clone(), coord)
        .prop_map(|(x, y, z, w)| TowerElement::new(x, y, z, w))
        .prop_filter("nonzero", |e| !e.is_zero())
}

proptest! {
    #[test]
    fn multiplication_matches_embedding(k in field(), a in element(), b in element()) {
        let p = k.mul(&a, &b).unwrap();
        for (s1, s2) in SIGNS {
            prop_assert!(embed(&k, &p, s1, s2).close(embed(&k, &a, s1, s2).mul(embed(&k, &b, s1, s2))));
        }
        prop_assert_eq!(k.mul(&k.div(&p, &b).unwrap(), &b).unwrap(), p.clone());
        prop_assert_eq!(k.mul(&a, &k.inverse(&a).unwrap()).unwrap(), TowerElement::one());
    }

    #[test]
    fn norms_match_conjugates(k in field(), a in element(), b in element()) {
        let n = k.norm_to_base(&a).unwrap();
        let prod = SIGNS.iter().fold(C(1.0, 0.0), |acc, &(s1, s2)| acc.mul(embed(&k, &a, s1, s2)));
        prop_assert!(prod.close(C(f(n), 0.0)), "{:?} vs {}", prod, n);
        let nb = k.norm_to_base(&b).unwrap();
        prop_assert_eq!(k.norm_to_base(&k.mul(&a, &b).unwrap()).unwrap(), n * nb);
        for sub in Subfield::ALL {
            let q = k.partial_norm(&a, sub).unwrap();
            prop_assert_eq!(k.subfield(sub).norm(&q).unwrap(), n);
            // the partial norm is fixed by the automorphism fixing the subfield
            let emb = k.embed(sub, &q);
            let fixing = match sub { Subfield::K1 => (1.0, -1.0), Subfield::K2 => (-1.0, 1.0), Subfield::K3 => (-1.0, -1.0) };
            prop_assert!(embed(&k, &emb, 1.0, 1.0).close(embed(&k, &emb, fixing.0, fixing.1)));
        }
    }

    #[test]
    fn square_roots(k in field(), a in element(), b in element()) {
        let sq = k.square(&a).unwrap();
        let r = k.sqrt_in_tower(&sq).unwrap().expect("a square has a root");
        prop_assert!(r == a || r == a.neg());
        if let Some(r) = k.sqrt_in_tower(&b).unwrap() {
            prop_assert_eq!(k.square(&r).unwrap(), b.clone());
        }
        let n = k.norm_to_base(&b).unwrap();
        if k.sqrt_in_tower(&b).unwrap().is_some() {
            prop_assert!(biquad::tower::rational_sqrt(&n).is_some(), "square with non-square norm {}", n);
        }
    }

    #[test]
    fn rational_classes_in_jk(k in field(), a in 1i128..400, b in 1i128..400, sa in any::<bool>(), sb in any::<bool>()) {
        let (a, b) = (if sa { -a } else { a }, if sb { -b } else { b });
        let ratio = sc(a * b);
        let want = ratio.is_one() || &ratio == k.a1() || &ratio == k.a2() || &ratio == k.a3();
        prop_assert_eq!(k.same_class_in_jk(&Rational::from_integer(a), &Rational::from_integer(b)).unwrap(), want);
        let emb = TowerElement::new(Rational::new(a, b), Rational::zero(), Rational::zero(), Rational::zero());
        prop_assert_eq!(k.sqrt_in_tower(&emb).unwrap().is_some(), want);
    }

    #[test]
    fn serde_round_trip(a in element()) {
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<TowerElement>(&json).unwrap(), a);
    }
}

#[test]
fn degenerate_fields_are_rejected() {
    assert!(BiquadField::from_ints(5, 5).is_err());
    assert!(BiquadField::from_ints(5, 20).is_err());
    assert!(BiquadField::from_ints(1, 3).is_err());
    assert!(BiquadField::from_ints(2, 3).is_ok());
    let k = BiquadField::from_ints(7, -5).unwrap();
    assert!(k
        .inverse(&TowerElement::new(
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
            Rational::zero()
        ))
        .is_err());
    assert_eq!(
        k.format(&TowerElement::from_ints(1, 1, 1, 0)),
        "1 + √7 + √-5"
    );
}
