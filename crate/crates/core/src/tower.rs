//! Exact arithmetic in `K = Q(√a₁, √a₂)` and its three quadratic subfields.
//!
//! Elements are `x + y√a₁ + z√a₂ + w√a₁√a₂` with rational coordinates, where
//! `a₁`, `a₂` are the square-free representatives of the generating classes.
//! Every operation is checked; 128-bit overflow is an error.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{ArithError, SquareClass, DEFAULT_FACTOR_BOUND};
use crate::local::{relevant_places, Place};

pub type Rational = Ratio<i128>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TowerError {
    #[error("zero has no multiplicative class")]
    ZeroElement,
    #[error("128-bit overflow in exact arithmetic")]
    Overflow,
    #[error("not a biquadratic extension: {0}")]
    NotBiquadratic(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(&'static str),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

type TResult<T> = Result<T, TowerError>;

fn q(n: i128) -> Rational {
    Rational::from_integer(n)
}

fn add(a: &Rational, b: &Rational) -> TResult<Rational> {
    a.checked_add(b).ok_or(TowerError::Overflow)
}

fn sub(a: &Rational, b: &Rational) -> TResult<Rational> {
    a.checked_sub(b).ok_or(TowerError::Overflow)
}

fn mul(a: &Rational, b: &Rational) -> TResult<Rational> {
    a.checked_mul(b).ok_or(TowerError::Overflow)
}

fn div(a: &Rational, b: &Rational) -> TResult<Rational> {
    if b.is_zero() {
        return Err(TowerError::ZeroElement);
    }
    a.checked_div(b).ok_or(TowerError::Overflow)
}

/// Square root in `Q`, if the argument is the square of a rational.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = exact_isqrt(*r.numer())?;
    let d = exact_isqrt(*r.denom())?;
    Some(Rational::new(n, d))
}

fn exact_isqrt(n: i128) -> Option<i128> {
    let s = (n as u128).isqrt() as i128;
    (s * s == n).then_some(s)
}

/// Square class of a nonzero rational.
pub fn rational_class(r: &Rational, bound: u64) -> TResult<SquareClass> {
    if r.is_zero() {
        return Err(TowerError::ZeroElement);
    }
    Ok(SquareClass::from_ratio(*r.numer(), *r.denom(), bound)?)
}

/// `u + v√d` in a quadratic field `Q(√d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quad {
    pub u: Rational,
    pub v: Rational,
}

impl Quad {
    pub fn new(u: Rational, v: Rational) -> Self {
        Quad { u, v }
    }

    pub fn rational(u: Rational) -> Self {
        Quad {
            u,
            v: Rational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }
}

/// Arithmetic in `Q(√d)` for a non-square integer `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadField {
    d: i128,
}

impl QuadField {
    pub fn new(d: i128) -> Self {
        QuadField { d }
    }

    pub fn d(&self) -> i128 {
        self.d
    }

    pub fn add(&self, a: &Quad, b: &Quad) -> TResult<Quad> {
        Ok(Quad::new(add(&a.u, &b.u)?, add(&a.v, &b.v)?))
    }

    pub fn sub(&self, a: &Quad, b: &Quad) -> TResult<Quad> {
        Ok(Quad::new(sub(&a.u, &b.u)?, sub(&a.v, &b.v)?))
    }

    pub fn neg(&self, a: &Quad) -> Quad {
        Quad::new(-a.u, -a.v)
    }

    pub fn scale(&self, a: &Quad, c: &Rational) -> TResult<Quad> {
        Ok(Quad::new(mul(&a.u, c)?, mul(&a.v, c)?))
    }

    pub fn mul(&self, a: &Quad, b: &Quad) -> TResult<Quad> {
        let d = q(self.d);
        let u = add(&mul(&a.u, &b.u)?, &mul(&d, &mul(&a.v, &b.v)?)?)?;
        let v = add(&mul(&a.u, &b.v)?, &mul(&a.v, &b.u)?)?;
        Ok(Quad::new(u, v))
    }

    pub fn conj(&self, a: &Quad) -> Quad {
        Quad::new(a.u, -a.v)
    }

    /// `u² − d v²`.
    pub fn norm(&self, a: &Quad) -> TResult<Rational> {
        sub(&mul(&a.u, &a.u)?, &mul(&q(self.d), &mul(&a.v, &a.v)?)?)
    }

    pub fn inv(&self, a: &Quad) -> TResult<Quad> {
        let n = self.norm(a)?;
        let c = self.conj(a);
        Ok(Quad::new(div(&c.u, &n)?, div(&c.v, &n)?))
    }

    pub fn div(&self, a: &Quad, b: &Quad) -> TResult<Quad> {
        self.mul(a, &self.inv(b)?)
    }

    /// A square root in `Q(√d)`, or `None`.
    ///
    /// For `v ≠ 0`, `(x + y√d)² = u + v√d` forces `x² = (u ± √(u² − d v²))/2`
    /// and `y = v/(2x)`; both signs are tried.
    pub fn sqrt(&self, a: &Quad) -> TResult<Option<Quad>> {
        if a.v.is_zero() {
            if let Some(s) = rational_sqrt(&a.u) {
                return Ok(Some(Quad::rational(s)));
            }
            if let Some(t) = rational_sqrt(&div(&a.u, &q(self.d))?) {
                return Ok(Some(Quad::new(Rational::zero(), t)));
            }
            return Ok(None);
        }
        let Some(s) = rational_sqrt(&self.norm(a)?) else {
            return Ok(None);
        };
        let two = q(2);
        for s in [s, -s] {
            let half = div(&add(&a.u, &s)?, &two)?;
            let Some(x) = rational_sqrt(&half) else {
                continue;
            };
            if x.is_zero() {
                continue;
            }
            let y = div(&a.v, &mul(&two, &x)?)?;
            let r = Quad::new(x, y);
            if self.mul(&r, &r)? == *a {
                return Ok(Some(r));
            }
        }
        Ok(None)
    }
}

/// One of the three quadratic subfields `K₁ = Q(√a₁)`, `K₂ = Q(√a₂)`,
/// `K₃ = Q(√a₁a₂)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Subfield {
    K1,
    K2,
    K3,
}

impl Subfield {
    pub const ALL: [Subfield; 3] = [Subfield::K1, Subfield::K2, Subfield::K3];

    pub fn from_index(i: u8) -> Option<Self> {
        match i {
            1 => Some(Subfield::K1),
            2 => Some(Subfield::K2),
            3 => Some(Subfield::K3),
            _ => None,
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Subfield::K1 => 1,
            Subfield::K2 => 2,
            Subfield::K3 => 3,
        }
    }
}

/// `x + y√a₁ + z√a₂ + w√a₁√a₂`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "[String; 4]", try_from = "[String; 4]")]
pub struct TowerElement {
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
    pub w: Rational,
}

impl TowerElement {
    pub fn new(x: Rational, y: Rational, z: Rational, w: Rational) -> Self {
        TowerElement { x, y, z, w }
    }

    pub fn from_ints(x: i128, y: i128, z: i128, w: i128) -> Self {
        Self::new(q(x), q(y), q(z), q(w))
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.coords().iter().all(|c| c.is_zero())
    }

    pub fn coords(&self) -> [Rational; 4] {
        [self.x, self.y, self.z, self.w]
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.x, -self.y, -self.z, -self.w)
    }
}

impl From<TowerElement> for [String; 4] {
    fn from(e: TowerElement) -> Self {
        e.coords().map(|c| c.to_string())
    }
}

impl TryFrom<[String; 4]> for TowerElement {
    type Error = String;
    fn try_from(s: [String; 4]) -> Result<Self, String> {
        let parse = |t: &String| {
            t.parse::<Rational>()
                .map_err(|e| format!("bad coordinate {t:?}: {e}"))
        };
        Ok(TowerElement::new(
            parse(&s[0])?,
            parse(&s[1])?,
            parse(&s[2])?,
            parse(&s[3])?,
        ))
    }
}

impl fmt::Display for TowerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coords().map(|c| c.to_string());
        write!(f, "({}, {}, {}, {})", c[0], c[1], c[2], c[3])
    }
}

/// `K = Q(√a₁, √a₂)` with Galois group the Klein four-group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiquadField {
    a1: SquareClass,
    a2: SquareClass,
    a3: SquareClass,
    r1: i128,
    r2: i128,
    r3: i128,
}

impl BiquadField {
    pub fn new(a1: SquareClass, a2: SquareClass) -> TResult<Self> {
        if a1.is_one() || a2.is_one() {
            return Err(TowerError::NotBiquadratic("a generator is a square".into()));
        }
        if a1 == a2 {
            return Err(TowerError::NotBiquadratic(
                "the generators have the same square class".into(),
            ));
        }
        let a3 = &a1 * &a2;
        let r1 = a1.representative().ok_or(TowerError::Overflow)?;
        let r2 = a2.representative().ok_or(TowerError::Overflow)?;
        let r3 = r1.checked_mul(r2).ok_or(TowerError::Overflow)?;
        Ok(BiquadField {
            a1,
            a2,
            a3,
            r1,
            r2,
            r3,
        })
    }

    pub fn from_ints(a1: i128, a2: i128) -> TResult<Self> {
        Self::from_ints_with_bound(a1, a2, DEFAULT_FACTOR_BOUND)
    }

    pub fn from_ints_with_bound(a1: i128, a2: i128, bound: u64) -> TResult<Self> {
        Self::new(
            SquareClass::from_int_with_bound(a1, bound)?,
            SquareClass::from_int_with_bound(a2, bound)?,
        )
    }

    pub fn a1(&self) -> &SquareClass {
        &self.a1
    }

    pub fn a2(&self) -> &SquareClass {
        &self.a2
    }

    /// The class of `a₁a₂`.
    pub fn a3(&self) -> &SquareClass {
        &self.a3
    }

    pub fn class_of(&self, k: Subfield) -> &SquareClass {
        match k {
            Subfield::K1 => &self.a1,
            Subfield::K2 => &self.a2,
            Subfield::K3 => &self.a3,
        }
    }

    /// Square-free representatives `(a₁, a₂)` used for the element basis.
    pub fn representatives(&self) -> (i128, i128) {
        (self.r1, self.r2)
    }

    pub fn relevant_primes(&self) -> BTreeSet<u64> {
        self.a1
            .primes()
            .iter()
            .chain(self.a2.primes())
            .copied()
            .collect()
    }

    pub fn relevant_places(&self) -> BTreeSet<Place> {
        relevant_places([&self.a1, &self.a2])
    }

    /// `K_i` as a quadratic field. `K₃` uses `√a₁√a₂`, whose square is `a₁a₂`.
    pub fn subfield(&self, k: Subfield) -> QuadField {
        QuadField::new(match k {
            Subfield::K1 => self.r1,
            Subfield::K2 => self.r2,
            Subfield::K3 => self.r3,
        })
    }

    /// `u + v√d_i` as an element of `K`.
    pub fn embed(&self, k: Subfield, a: &Quad) -> TowerElement {
        let zero = Rational::zero();
        match k {
            Subfield::K1 => TowerElement::new(a.u, a.v, zero, zero),
            Subfield::K2 => TowerElement::new(a.u, zero, a.v, zero),
            Subfield::K3 => TowerElement::new(a.u, zero, zero, a.v),
        }
    }

    /// `e = α + β√a₂` with `α, β ∈ K₁`.
    fn split(&self, e: &TowerElement) -> (Quad, Quad) {
        (Quad::new(e.x, e.y), Quad::new(e.z, e.w))
    }

    fn join(&self, a: &Quad, b: &Quad) -> TowerElement {
        TowerElement::new(a.u, a.v, b.u, b.v)
    }

    pub fn mul(&self, e: &TowerElement, f: &TowerElement) -> TResult<TowerElement> {
        let k1 = self.subfield(Subfield::K1);
        let (a1, b1) = self.split(e);
        let (a2, b2) = self.split(f);
        let bb = k1.scale(&k1.mul(&b1, &b2)?, &q(self.r2))?;
        let a = k1.add(&k1.mul(&a1, &a2)?, &bb)?;
        let b = k1.add(&k1.mul(&a1, &b2)?, &k1.mul(&b1, &a2)?)?;
        Ok(self.join(&a, &b))
    }

    pub fn square(&self, e: &TowerElement) -> TResult<TowerElement> {
        self.mul(e, e)
    }

    pub fn inverse(&self, e: &TowerElement) -> TResult<TowerElement> {
        if e.is_zero() {
            return Err(TowerError::ZeroElement);
        }
        let k1 = self.subfield(Subfield::K1);
        let (a, b) = self.split(e);
        // 1/(α + β√a₂) = (α − β√a₂) / (α² − a₂β²)
        let n = k1.sub(&k1.mul(&a, &a)?, &k1.scale(&k1.mul(&b, &b)?, &q(self.r2))?)?;
        let ninv = k1.inv(&n)?;
        Ok(self.join(&k1.mul(&a, &ninv)?, &k1.neg(&k1.mul(&b, &ninv)?)))
    }

    pub fn div(&self, e: &TowerElement, f: &TowerElement) -> TResult<TowerElement> {
        self.mul(e, &self.inverse(f)?)
    }

    /// `N_{K/K_i}(e) = e·σ(e)` for the automorphism `σ` fixing `K_i`.
    pub fn partial_norm(&self, e: &TowerElement, k: Subfield) -> TResult<Quad> {
        if e.is_zero() {
            return Err(TowerError::ZeroElement);
        }
        // Write e = α + β√c over K_k and return α² − cβ².
        let (alpha, beta, c) = match k {
            Subfield::K1 => (Quad::new(e.x, e.y), Quad::new(e.z, e.w), self.r2),
            Subfield::K2 => (Quad::new(e.x, e.z), Quad::new(e.y, e.w), self.r1),
            // z√a₂ = (z/a₁)·√a₁√a₂·√a₁
            Subfield::K3 => (
                Quad::new(e.x, e.w),
                Quad::new(e.y, div(&e.z, &q(self.r1))?),
                self.r1,
            ),
        };
        let f = self.subfield(k);
        f.sub(
            &f.mul(&alpha, &alpha)?,
            &f.scale(&f.mul(&beta, &beta)?, &q(c))?,
        )
    }

    /// `N_{K/Q}(e)`, computed through `K₁` and cross-checked through `K₂` and `K₃`.
    pub fn norm_to_base(&self, e: &TowerElement) -> TResult<Rational> {
        let route =
            |k: Subfield| -> TResult<Rational> { self.subfield(k).norm(&self.partial_norm(e, k)?) };
        let n = route(Subfield::K1)?;
        if route(Subfield::K2)? != n || route(Subfield::K3)? != n {
            return Err(TowerError::Inconsistent(
                "norm depends on the intermediate field",
            ));
        }
        Ok(n)
    }

    /// A square root of `θ` in `K`, or `None` when `θ` is not a square.
    ///
    /// Writes `θ = α + β√a₂` over `K₁` and descends: for `β ≠ 0`, a root
    /// `x + y√a₂` needs `x² = (α ± √(α² − a₂β²))/2` in `K₁` and `y = β/(2x)`.
    pub fn sqrt_in_tower(&self, theta: &TowerElement) -> TResult<Option<TowerElement>> {
        if theta.is_zero() {
            return Err(TowerError::ZeroElement);
        }
        let k1 = self.subfield(Subfield::K1);
        let (a, b) = self.split(theta);
        let zero = Quad::rational(Rational::zero());
        if b.is_zero() {
            if let Some(s) = k1.sqrt(&a)? {
                return Ok(Some(self.join(&s, &zero)));
            }
            let t2 = k1.scale(&a, &Rational::new(1, self.r2))?;
            if let Some(t) = k1.sqrt(&t2)? {
                return Ok(Some(self.join(&zero, &t)));
            }
            return Ok(None);
        }
        let disc = k1.sub(&k1.mul(&a, &a)?, &k1.scale(&k1.mul(&b, &b)?, &q(self.r2))?)?;
        let Some(s) = k1.sqrt(&disc)? else {
            return Ok(None);
        };
        let half = Rational::new(1, 2);
        for s in [s.clone(), k1.neg(&s)] {
            let x2 = k1.scale(&k1.add(&a, &s)?, &half)?;
            let Some(x) = k1.sqrt(&x2)? else { continue };
            if x.is_zero() {
                continue;
            }
            let y = k1.div(&b, &k1.scale(&x, &q(2))?)?;
            let r = self.join(&x, &y);
            if self.square(&r)? == *theta {
                return Ok(Some(r));
            }
        }
        Ok(None)
    }

    /// Whether `α` and `β` define the same class in `J(K)`, i.e. whether the
    /// square class of `αβ` is one of `1, a₁, a₂, a₁a₂`.
    pub fn same_class_in_jk(&self, alpha: &Rational, beta: &Rational) -> TResult<bool> {
        self.same_class_in_jk_with_bound(alpha, beta, DEFAULT_FACTOR_BOUND)
    }

    pub fn same_class_in_jk_with_bound(
        &self,
        alpha: &Rational,
        beta: &Rational,
        bound: u64,
    ) -> TResult<bool> {
        let c = &rational_class(alpha, bound)? * &rational_class(beta, bound)?;
        Ok(self.is_kummer_class(&c))
    }

    /// `c ∈ {1, a₁, a₂, a₁a₂}`: the rational classes that become squares in `K`.
    pub fn is_kummer_class(&self, c: &SquareClass) -> bool {
        c.is_one() || *c == self.a1 || *c == self.a2 || *c == self.a3
    }

    /// Whether `n ∈ K_k` lies in `Q^×·K^×²`.
    ///
    /// This holds iff `N_{K_k/Q}(n)` is a rational square `m²`, in which case
    /// `2(u ± m)·n` is a square in `K_k`; that witness is verified explicitly.
    pub fn in_base_classes(&self, k: Subfield, n: &Quad) -> TResult<bool> {
        if n.is_zero() {
            return Err(TowerError::ZeroElement);
        }
        if n.v.is_zero() {
            return Ok(true);
        }
        let f = self.subfield(k);
        let Some(m) = rational_sqrt(&f.norm(n)?) else {
            return Ok(false);
        };
        let c = if add(&n.u, &m)?.is_zero() {
            sub(&n.u, &m)?
        } else {
            add(&n.u, &m)?
        };
        let scaled = f.scale(n, &mul(&q(2), &c)?)?;
        if self.sqrt_in_tower(&self.embed(k, &scaled))?.is_none() {
            return Err(TowerError::Inconsistent(
                "square-norm element without a rational multiple that is a square",
            ));
        }
        Ok(true)
    }

    /// Human-readable form `x + y√a₁ + z√a₂ + w√(a₁a₂)`.
    pub fn format(&self, e: &TowerElement) -> String {
        let names = [
            "1".to_string(),
            format!("√{}", self.r1),
            format!("√{}", self.r2),
            format!("√{}√{}", self.r1, self.r2),
        ];
        let mut out = String::new();
        for (c, name) in e.coords().iter().zip(&names) {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            let body = match (mag.is_one(), name.as_str()) {
                (_, "1") => mag.to_string(),
                (true, _) => name.clone(),
                (false, _) => format!("{mag}{name}"),
            };
            if out.is_empty() {
                out = if neg { format!("-{body}") } else { body };
            } else {
                out.push_str(if neg { " - " } else { " + " });
                out.push_str(&body);
            }
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }
}

/// Integer `gcd`-free check that a rational is an integer.
pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one() || r.numer().is_multiple_of(r.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(a: i128, b: i128) -> BiquadField {
        BiquadField::from_ints(a, b).unwrap()
    }

    fn el(x: i128, y: i128, z: i128, w: i128) -> TowerElement {
        TowerElement::from_ints(x, y, z, w)
    }

    #[test]
    fn norm_of_worked_example() {
        let k = field(7, -5);
        assert_eq!(k.norm_to_base(&el(1, 1, 1, 0)), Ok(q(141)));
        assert_eq!(k.norm_to_base(&el(0, 1, 0, 0)), Ok(q(49)));
        assert_eq!(k.norm_to_base(&el(3, 0, 0, 0)), Ok(q(81)));
        assert_eq!(
            k.norm_to_base(&el(0, 0, 0, 0)),
            Err(TowerError::ZeroElement)
        );
    }

    #[test]
    fn partial_norms() {
        let k = field(7, -5);
        let n1 = k.partial_norm(&el(1, 1, 1, 0), Subfield::K1).unwrap();
        assert_eq!(n1, Quad::new(q(13), q(2)));
        assert_eq!(k.subfield(Subfield::K1).norm(&n1), Ok(q(141)));
        assert_eq!(
            k.partial_norm(&el(4, 0, 0, 0), Subfield::K3),
            Ok(Quad::rational(q(16)))
        );
        assert_eq!(
            k.partial_norm(&el(0, 0, 1, 0), Subfield::K2),
            Ok(Quad::rational(q(-5)))
        );
    }

    #[test]
    fn square_roots() {
        let k = field(7, -5);
        assert_eq!(k.sqrt_in_tower(&el(4, 0, 0, 0)), Ok(Some(el(2, 0, 0, 0))));
        assert_eq!(k.sqrt_in_tower(&el(0, 1, 0, 0)), Ok(None));
        let e = el(8, 2, 0, 0);
        let r = k.sqrt_in_tower(&k.square(&e).unwrap()).unwrap().unwrap();
        assert!(r == e || r == e.neg());
        // 7 and -5 become squares in K, -35 as well
        assert!(k.sqrt_in_tower(&el(7, 0, 0, 0)).unwrap().is_some());
        assert!(k.sqrt_in_tower(&el(-35, 0, 0, 0)).unwrap().is_some());
        assert!(k.sqrt_in_tower(&el(2, 0, 0, 0)).unwrap().is_none());
    }

    #[test]
    fn inverse_and_division() {
        let k = field(33, 35);
        let e = el(1, -2, 3, 1);
        let inv = k.inverse(&e).unwrap();
        assert_eq!(k.mul(&e, &inv), Ok(TowerElement::one()));
        assert_eq!(k.div(&e, &e), Ok(TowerElement::one()));
    }

    #[test]
    fn jk_classes() {
        let k = field(7, -5);
        assert_eq!(k.same_class_in_jk(&q(3), &q(21)), Ok(true));
        assert_eq!(k.same_class_in_jk(&q(3), &q(3)), Ok(true));
        assert_eq!(k.same_class_in_jk(&q(3), &q(5)), Ok(false));
        assert_eq!(k.same_class_in_jk(&q(-12), &Rational::new(35, 3)), Ok(true));
        assert!(k.same_class_in_jk(&q(0), &q(1)).is_err());
    }

    #[test]
    fn rejects_degenerate_fields() {
        assert!(matches!(
            BiquadField::from_ints(4, 9),
            Err(TowerError::NotBiquadratic(_))
        ));
        assert!(matches!(
            BiquadField::from_ints(2, 8),
            Err(TowerError::NotBiquadratic(_))
        ));
        assert!(matches!(
            BiquadField::from_ints(0, 3),
            Err(TowerError::Arith(ArithError::ZeroInput))
        ));
    }

    #[test]
    fn base_class_detection() {
        let k = field(7, -5);
        assert_eq!(
            k.in_base_classes(Subfield::K1, &Quad::rational(q(5))),
            Ok(true)
        );
        // (1 + √7)² / 2 has norm 36/4 = 9: in Q^×·K₁^×²
        let n = Quad::new(q(4), q(1));
        assert_eq!(k.in_base_classes(Subfield::K1, &n), Ok(true));
        // 13 + 2√7 has norm 141, not a square
        assert_eq!(
            k.in_base_classes(Subfield::K1, &Quad::new(q(13), q(2))),
            Ok(false)
        );
    }

    #[test]
    fn formatting() {
        let k = field(7, -5);
        assert_eq!(k.format(&el(1, 1, 1, 0)), "1 + √7 + √-5");
        assert_eq!(k.format(&el(0, -2, 0, 3)), "-2√7 + 3√7√-5");
    }
}
