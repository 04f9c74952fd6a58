//! The support-relative slice of `[Q^×]` and the subspace lattice
//! `A ⊆ V ⊆ W_B ⊆ B`, `V ⊆ W_C ⊆ C`, `V ⊆ W_D ⊆ D`.
//!
//! Subspaces are stored as subspaces of the generator space that contain
//! `⟨[a₁], [a₂]⟩`; dimensions in the quotient are two less.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::brauer::SSpace;
use super::norms::{box_elements, NormWitness};
use super::{DResult, DecompError};
use crate::arith::{is_prime, ArithError, SquareClass};
use crate::exec::Strategy;
use crate::f2::{Basis, F2Error, F2Map, F2Subspace, F2Vector};
use crate::local::{quaternion_class, relevant_places, Place};
use crate::tower::{BiquadField, Subfield};

/// A generator of the free `F_2`-space of square classes: `-1` or a prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Generator {
    MinusOne,
    Prime(u64),
}

impl Generator {
    pub fn class(self) -> SquareClass {
        match self {
            Generator::MinusOne => SquareClass::minus_one(),
            Generator::Prime(p) => SquareClass::prime(p),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::MinusOne => f.write_str("-1"),
            Generator::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// `-1` and every prime of the given classes.
pub(crate) fn generators_of<'a, I: IntoIterator<Item = &'a SquareClass>>(
    classes: I,
) -> BTreeSet<Generator> {
    let mut out: BTreeSet<Generator> = [Generator::MinusOne].into();
    for c in classes {
        out.extend(c.primes().iter().map(|&p| Generator::Prime(p)));
    }
    out
}

pub(crate) fn generator_vector(
    basis: &Basis<Generator>,
    c: &SquareClass,
) -> Result<F2Vector<Generator>, F2Error> {
    let mut labels: Vec<Generator> = c.primes().iter().map(|&p| Generator::Prime(p)).collect();
    if c.is_negative() {
        labels.push(Generator::MinusOne);
    }
    F2Vector::from_labels(basis, labels.iter())
}

fn vector_class(v: &F2Vector<Generator>) -> SquareClass {
    let mut negative = false;
    let mut primes = Vec::new();
    for g in v.support() {
        match g {
            Generator::MinusOne => negative = true,
            Generator::Prime(p) => primes.push(p),
        }
    }
    SquareClass::from_parts(negative, primes).expect("labels are primes")
}

/// The classes generated by `-1`, the support `P` and the primes of `a₁a₂`,
/// with the maps `f ↦ (a_i, f)` into place-indexed Brauer vectors.
#[derive(Clone, Debug)]
pub struct SupportSpace {
    field: BiquadField,
    support: BTreeSet<u64>,
    labels: Basis<Generator>,
    kummer: F2Subspace<Generator>,
    s: SSpace,
    phi: [F2Map<Generator, Place>; 3],
}

impl SupportSpace {
    pub fn new<I: IntoIterator<Item = u64>>(field: &BiquadField, support: I) -> DResult<Self> {
        let support: BTreeSet<u64> = support.into_iter().collect();
        if let Some(&p) = support.iter().find(|&&p| !is_prime(p)) {
            return Err(ArithError::NotPrime(p).into());
        }
        let support_classes: Vec<SquareClass> =
            support.iter().map(|&p| SquareClass::prime(p)).collect();
        let labels = Basis::new(generators_of(
            support_classes.iter().chain([field.a1(), field.a2()]),
        ))?;
        let places = relevant_places(support_classes.iter().chain([field.a1(), field.a2()]));
        let s = SSpace::over(field, places)?;
        let kummer = F2Subspace::span(
            &labels,
            [
                generator_vector(&labels, field.a1())?,
                generator_vector(&labels, field.a2())?,
            ]
            .iter(),
        )?;
        if kummer.dim() != 2 {
            return Err(DecompError::Inconsistent("a1 and a2 are dependent"));
        }
        let phi_for = |k: Subfield| -> DResult<F2Map<Generator, Place>> {
            let images = labels
                .labels()
                .iter()
                .map(
                    |g| Ok(quaternion_class(field.class_of(k), &g.class())?.to_vector(s.places())?),
                )
                .collect::<DResult<Vec<_>>>()?;
            Ok(F2Map::new(&labels, s.places(), &images)?)
        };
        let phi = [
            phi_for(Subfield::K1)?,
            phi_for(Subfield::K2)?,
            phi_for(Subfield::K3)?,
        ];
        Ok(SupportSpace {
            field: field.clone(),
            support,
            labels,
            kummer,
            s,
            phi,
        })
    }

    pub fn field(&self) -> &BiquadField {
        &self.field
    }

    pub fn support(&self) -> &BTreeSet<u64> {
        &self.support
    }

    pub fn labels(&self) -> &Basis<Generator> {
        &self.labels
    }

    /// Every prime among the labels.
    pub fn primes(&self) -> Vec<u64> {
        self.labels
            .labels()
            .iter()
            .filter_map(|g| match g {
                Generator::Prime(p) => Some(*p),
                Generator::MinusOne => None,
            })
            .collect()
    }

    pub fn s(&self) -> &SSpace {
        &self.s
    }

    /// `⟨[a₁], [a₂]⟩`.
    pub fn kummer(&self) -> &F2Subspace<Generator> {
        &self.kummer
    }

    /// Dimension of the quotient by `⟨[a₁], [a₂]⟩`.
    pub fn ambient_dim(&self) -> usize {
        self.labels.len() - 2
    }

    pub fn full(&self) -> F2Subspace<Generator> {
        F2Subspace::full(&self.labels)
    }

    /// The raw map `f ↦ (a_i, f)`, not reduced modulo `𝒮`.
    pub fn phi_raw(&self, k: Subfield) -> &F2Map<Generator, Place> {
        &self.phi[k.index() as usize - 1]
    }

    pub fn vector(&self, c: &SquareClass) -> DResult<F2Vector<Generator>> {
        Ok(generator_vector(&self.labels, c)?)
    }

    pub fn class(&self, v: &F2Vector<Generator>) -> SquareClass {
        vector_class(v)
    }

    pub fn contains_class(&self, c: &SquareClass) -> bool {
        c.primes()
            .iter()
            .all(|&p| self.labels.index_of(&Generator::Prime(p)).is_ok())
    }

    /// Dimension of `sub + ⟨[a₁],[a₂]⟩` modulo `⟨[a₁],[a₂]⟩`.
    pub fn quotient_dim(&self, sub: &F2Subspace<Generator>) -> DResult<usize> {
        Ok(sub.sum(&self.kummer)?.dim() - 2)
    }

    /// Representative of `v + modulo` with the smallest square-free
    /// representative (by absolute value, then sign).
    pub fn canonical_class(
        &self,
        v: &F2Vector<Generator>,
        modulo: &F2Subspace<Generator>,
    ) -> DResult<SquareClass> {
        const ENUMERATION_LIMIT: usize = 16;
        if modulo.dim() > ENUMERATION_LIMIT {
            return Ok(vector_class(&modulo.reduce(v)?));
        }
        let rows = modulo.vectors();
        let mut cur = v.clone();
        let mut best = vector_class(&cur);
        // Gray-code walk over the coset
        for step in 1u32..(1u32 << rows.len()) {
            cur = cur.add(&rows[step.trailing_zeros() as usize])?;
            let c = vector_class(&cur);
            if c.size_key() < best.size_key() {
                best = c;
            }
        }
        Ok(best)
    }

    /// Classes completing a basis of `inner` to one of `outer`, each the
    /// smallest representative of its coset modulo `inner`.
    pub fn complement_classes(
        &self,
        inner: &F2Subspace<Generator>,
        outer: &F2Subspace<Generator>,
    ) -> DResult<Vec<SquareClass>> {
        inner
            .complement_in(outer)?
            .iter()
            .map(|v| self.canonical_class(v, inner))
            .collect()
    }
}

/// The support-relative subspace lattice together with the certified part of `A`.
#[derive(Clone, Debug)]
pub struct SubspaceProfile {
    pub space: SupportSpace,
    pub b: F2Subspace<Generator>,
    pub c: F2Subspace<Generator>,
    pub d: F2Subspace<Generator>,
    pub v: F2Subspace<Generator>,
    pub w_b: F2Subspace<Generator>,
    pub w_c: F2Subspace<Generator>,
    pub w_d: F2Subspace<Generator>,
    /// Classes that are local norms from `K` everywhere, an upper bound for `A`.
    pub local_norms: F2Subspace<Generator>,
    /// Span of the norm classes found by the bounded search, a lower bound for `A`.
    pub a_certified: F2Subspace<Generator>,
    /// One norm witness per new dimension of `a_certified`, in search order.
    pub a_members: Vec<NormWitness>,
    /// Local-norm classes outside the certified span: neither proved nor refuted.
    pub a_undetermined: Vec<SquareClass>,
}

impl SubspaceProfile {
    /// The lattice identities that must hold; returns the violated ones.
    pub fn lattice_violations(&self) -> DResult<Vec<&'static str>> {
        let q = self.space.kummer();
        let checks: [(&'static str, &F2Subspace<Generator>, &F2Subspace<Generator>); 12] = [
            ("<a1,a2> in A_cert", q, &self.a_certified),
            (
                "A_cert in local norms",
                &self.a_certified,
                &self.local_norms,
            ),
            ("local norms in V", &self.local_norms, &self.v),
            ("V in W_B", &self.v, &self.w_b),
            ("W_B in B", &self.w_b, &self.b),
            ("V in W_C", &self.v, &self.w_c),
            ("W_C in C", &self.w_c, &self.c),
            ("V in W_D", &self.v, &self.w_d),
            ("W_D in D", &self.w_d, &self.d),
            ("V in B", &self.v, &self.b),
            ("V in C", &self.v, &self.c),
            ("V in D", &self.v, &self.d),
        ];
        let mut out = Vec::new();
        for (name, inner, outer) in checks {
            if !inner.is_subspace_of(outer)? {
                out.push(name);
            }
        }
        if self.b.intersect(&self.d)? != self.v {
            out.push("B meet D equals V");
        }
        if self.c.intersect(&self.d)? != self.v {
            out.push("C meet D equals V");
        }
        if self.v.codim_within(&self.w_b).ok() != self.v.codim_within(&self.w_c).ok() {
            out.push("codim(V in W_B) equals codim(V in W_C)");
        }
        Ok(out)
    }
}

/// Builds the lattice for `field` and the support `P`, certifying `A` with
/// norms of elements whose coordinates lie in `[-norm_bound, norm_bound]`.
pub fn build_profile<I: IntoIterator<Item = u64>>(
    field: &BiquadField,
    support: I,
    norm_bound: u32,
    strategy: Strategy,
) -> DResult<SubspaceProfile> {
    let space = SupportSpace::new(field, support)?;
    let s = space.s().span();
    let [phi1, phi2, phi3] = [Subfield::K1, Subfield::K2, Subfield::K3].map(|k| space.phi_raw(k));

    let b = phi1.preimage(s)?;
    let c = phi2.preimage(s)?;
    let d = phi3.preimage(s)?;
    let v = b.intersect(&c)?;
    let w_b = b.intersect(&phi2.preimage(&phi1.image_of(&c)?.sum(s)?)?)?;
    let w_c = c.intersect(&phi1.preimage(&phi2.image_of(&b)?.sum(s)?)?)?;
    let w_d = matched_products(&space, &b, &c)?;

    let split = phi1.kernel().intersect(&phi2.kernel())?;
    let local_norms = split.sum(space.kummer())?;

    let (a_certified, a_members) = certified_norms(&space, norm_bound, strategy)?;
    if !a_certified.is_subspace_of(&local_norms)? {
        return Err(DecompError::Inconsistent(
            "a global norm fails to be a local norm",
        ));
    }
    let a_undetermined = space.complement_classes(&a_certified, &local_norms)?;
    Ok(SubspaceProfile {
        space,
        b,
        c,
        d,
        v,
        w_b,
        w_c,
        w_d,
        local_norms,
        a_certified,
        a_members,
        a_undetermined,
    })
}

/// `W_D = {fg : f ∈ B, g ∈ C, (a₂,f) + (a₁,g) ∈ 𝒮}`, as the image of the
/// kernel of `(f, g) ↦ (a₂,f) + (a₁,g) mod 𝒮` under `(f, g) ↦ fg`.
fn matched_products(
    space: &SupportSpace,
    b: &F2Subspace<Generator>,
    c: &F2Subspace<Generator>,
) -> DResult<F2Subspace<Generator>> {
    let s = space.s().span();
    let bs = b.vectors();
    let cs = c.vectors();
    let pairs = Basis::new(0..bs.len() + cs.len())?;
    let mut images = Vec::with_capacity(pairs.len());
    for f in &bs {
        images.push(s.reduce(&space.phi_raw(Subfield::K2).apply(f)?)?);
    }
    for g in &cs {
        images.push(s.reduce(&space.phi_raw(Subfield::K1).apply(g)?)?);
    }
    let matched = F2Map::new(&pairs, s.basis(), &images)?.kernel();
    let mut out = F2Subspace::zero(space.labels());
    for k in matched.vectors() {
        let mut prod = F2Vector::zero(space.labels());
        for i in k.support() {
            let term = if i < bs.len() {
                &bs[i]
            } else {
                &cs[i - bs.len()]
            };
            prod = prod.add(term)?;
        }
        out.insert(&prod)?;
    }
    Ok(out)
}

/// Span of `⟨[a₁],[a₂]⟩` and the norm classes of the box elements that fall
/// inside the support, with a witness for each new dimension.
fn certified_norms(
    space: &SupportSpace,
    bound: u32,
    strategy: Strategy,
) -> DResult<(F2Subspace<Generator>, Vec<NormWitness>)> {
    let primes = space.primes();
    let field = space.field();
    let elements = box_elements(bound);
    let found: Vec<NormWitness> = strategy.filter_map(&elements, |e| {
        let norm = field.norm_to_base(e).ok()?;
        let class = SquareClass::from_int_over(*norm.numer(), &primes).ok()??;
        Some(NormWitness {
            class,
            element: e.clone(),
            norm: *norm.numer(),
        })
    });
    let mut span = space.kummer().clone();
    let mut members = Vec::new();
    for w in found {
        if span.insert(&space.vector(&w.class)?)? {
            members.push(w);
        }
    }
    Ok((span, members))
}
