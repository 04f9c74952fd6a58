//! Bounded searches over elements of `K`: norm witnesses for membership in
//! `A = [N_{K/Q}(K^×)]`, and witness pairs certifying `ε = 0`.

use serde::{Deserialize, Serialize};

use super::DResult;
use crate::arith::SquareClass;
use crate::exec::Strategy;
use crate::local::{quaternion_class, BrauerClass};
use crate::tower::{BiquadField, Subfield, TowerElement};

/// Sort key for one coordinate: `0 < 1 < -1 < 2 < -2 < …`.
fn coord_key(c: i64) -> u64 {
    2 * c.unsigned_abs() - u64::from(c > 0)
}

/// Nonzero elements with integer coordinates in `[-bound, bound]`, ordered by
/// height `max |coordinate|`, then lexicographically on `(w, z, y, x)` with
/// the coordinate order `0 < 1 < -1 < 2 < -2 < …`.
pub fn box_elements(bound: u32) -> Vec<TowerElement> {
    let b = bound as i64;
    let range: Vec<i64> = (-b..=b).collect();
    let mut out: Vec<[i64; 4]> = Vec::with_capacity(range.len().pow(4));
    for &x in &range {
        for &y in &range {
            for &z in &range {
                for &w in &range {
                    if (x, y, z, w) != (0, 0, 0, 0) {
                        out.push([x, y, z, w]);
                    }
                }
            }
        }
    }
    out.sort_by_key(|c| {
        let h = c.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0);
        (
            h,
            coord_key(c[3]),
            coord_key(c[2]),
            coord_key(c[1]),
            coord_key(c[0]),
        )
    });
    out.into_iter()
        .map(|[x, y, z, w]| TowerElement::from_ints(x as i128, y as i128, z as i128, w as i128))
        .collect()
}

/// An element of `K` whose norm lies in a given class of `J(K)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormWitness {
    pub class: SquareClass,
    pub element: TowerElement,
    pub norm: i128,
}

/// A Brauer class `(a_i, f·m) ≠ 0` ruling out the coset representative `f·m`
/// as a local norm.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalObstruction {
    pub multiplier: SquareClass,
    pub subfield: Subfield,
    pub class: BrauerClass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AMembership {
    Member(NormWitness),
    /// One obstruction for each representative `f·m`, `m ∈ {1, a₁, a₂, a₁a₂}`.
    NonMember(Vec<LocalObstruction>),
    Undetermined,
}

pub fn certify_a(field: &BiquadField, f: &SquareClass, bound: u32) -> DResult<AMembership> {
    certify_a_with(field, f, bound, Strategy::default())
}

/// Decides `[f] ∈ A` where possible.
///
/// `NonMember` when no representative of `[f]` in `J(K)` is a local norm
/// everywhere, i.e. each has `(a₁, ·) ≠ 0` or `(a₂, ·) ≠ 0`. `Member` when an
/// element of the box has norm equivalent to `f` in `J(K)`; the first such
/// element in box order is returned. `Undetermined` otherwise.
pub fn certify_a_with(
    field: &BiquadField,
    f: &SquareClass,
    bound: u32,
    strategy: Strategy,
) -> DResult<AMembership> {
    let multipliers = [
        SquareClass::one(),
        field.a1().clone(),
        field.a2().clone(),
        field.a3().clone(),
    ];
    let mut obstructions = Vec::new();
    for m in &multipliers {
        let fm = f * m;
        let blocking = [Subfield::K1, Subfield::K2]
            .into_iter()
            .map(|k| Ok((k, quaternion_class(field.class_of(k), &fm)?)))
            .collect::<DResult<Vec<_>>>()?
            .into_iter()
            .find(|(_, c)| !c.is_trivial());
        match blocking {
            Some((subfield, class)) => obstructions.push(LocalObstruction {
                multiplier: m.clone(),
                subfield,
                class,
            }),
            None => break,
        }
    }
    if obstructions.len() == multipliers.len() {
        return Ok(AMembership::NonMember(obstructions));
    }

    let mut primes: Vec<u64> = f.primes().to_vec();
    primes.extend(field.relevant_primes());
    primes.sort_unstable();
    primes.dedup();
    let elements = box_elements(bound);
    let hit = strategy.find_map_first(&elements, |e| {
        let norm = *field.norm_to_base(e).ok()?.numer();
        let class = SquareClass::from_int_over(norm, &primes).ok()??;
        field.is_kummer_class(&(&class * f)).then(|| NormWitness {
            class,
            element: e.clone(),
            norm,
        })
    });
    Ok(match hit {
        Some(w) => AMembership::Member(w),
        None => AMembership::Undetermined,
    })
}

/// Elements `k₁, k₂` whose partial norms `n₁ = N_{K/K₁}(k₁)` and
/// `n₂ = N_{K/K₂}(k₂)` agree in `J(K)` while `[n₁] ∉ [Q^×]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpsilonWitness {
    pub k1: TowerElement,
    pub k2: TowerElement,
    pub n1: TowerElement,
    pub n2: TowerElement,
    /// A square root of `n₁n₂` in `K`.
    pub root: TowerElement,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EpsilonCertificate {
    CertifiedZero(Box<EpsilonWitness>),
    Undetermined,
}

pub fn epsilon_certificate(field: &BiquadField, bound: u32) -> DResult<EpsilonCertificate> {
    epsilon_certificate_with(field, bound, Strategy::default())
}

struct Candidate {
    k: TowerElement,
    n: TowerElement,
}

/// Partial norms `N_{K/K_i}(k)` for box elements that could represent a
/// class outside `[Q^×]` fixed by the Galois group: `N_{K/Q}(k)` must lie in
/// `{1, a₁, a₂, a₁a₂}` modulo squares, and the partial norm must not lie in
/// `Q^×·K_i^×²`.
fn candidates(
    field: &BiquadField,
    k: Subfield,
    elements: &[TowerElement],
    strategy: Strategy,
) -> Vec<Candidate> {
    let primes: Vec<u64> = field.relevant_primes().into_iter().collect();
    strategy.filter_map(elements, |e| {
        let norm = *field.norm_to_base(e).ok()?.numer();
        let class = SquareClass::from_int_over(norm, &primes).ok()??;
        if !field.is_kummer_class(&class) {
            return None;
        }
        let n = field.partial_norm(e, k).ok()?;
        if field.in_base_classes(k, &n).ok()? {
            return None;
        }
        Some(Candidate {
            k: e.clone(),
            n: field.embed(k, &n),
        })
    })
}

/// Searches the box for a witness of `ε = 0`. Failure never claims `ε = 1`.
///
/// Candidates are paired in box order (first by `k₁`, then by `k₂`), so the
/// result does not depend on the strategy.
pub fn epsilon_certificate_with(
    field: &BiquadField,
    bound: u32,
    strategy: Strategy,
) -> DResult<EpsilonCertificate> {
    let elements = box_elements(bound);
    let first = candidates(field, Subfield::K1, &elements, strategy);
    let second = candidates(field, Subfield::K2, &elements, strategy);
    let hit = strategy.find_map_first(&first, |c1| {
        second.iter().find_map(|c2| {
            let prod = field.mul(&c1.n, &c2.n).ok()?;
            let root = field.sqrt_in_tower(&prod).ok()??;
            Some(EpsilonWitness {
                k1: c1.k.clone(),
                k2: c2.k.clone(),
                n1: c1.n.clone(),
                n2: c2.n.clone(),
                root,
            })
        })
    });
    Ok(match hit {
        Some(w) => EpsilonCertificate::CertifiedZero(Box::new(w)),
        None => EpsilonCertificate::Undetermined,
    })
}

/// Checks a proposed witness pair from scratch; returns the square root of
/// `n₁n₂` when the pair certifies `ε = 0`.
pub fn verify_epsilon_witness(
    field: &BiquadField,
    k1: &TowerElement,
    k2: &TowerElement,
) -> DResult<Option<TowerElement>> {
    let n1 = field.partial_norm(k1, Subfield::K1)?;
    let n2 = field.partial_norm(k2, Subfield::K2)?;
    if field.in_base_classes(Subfield::K1, &n1)? {
        return Ok(None);
    }
    let prod = field.mul(
        &field.embed(Subfield::K1, &n1),
        &field.embed(Subfield::K2, &n2),
    )?;
    Ok(field.sqrt_in_tower(&prod)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_order() {
        let b = box_elements(1);
        assert_eq!(b.len(), 80);
        assert_eq!(b[0], TowerElement::from_ints(1, 0, 0, 0));
        assert_eq!(b[1], TowerElement::from_ints(-1, 0, 0, 0));
        assert_eq!(b[2], TowerElement::from_ints(0, 1, 0, 0));
        assert!(box_elements(0).is_empty());
        assert_eq!(box_elements(2).len(), 624);
    }
}
