//! The subspace `𝒮 = ⟨(a₁,a₁), (a₁,a₂), (a₂,a₂)⟩` and the decisions that
//! only need Brauer classes: diagram and embedding solvability, the image of
//! `T`, and the type of the exceptional summand.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::support::{generator_vector, generators_of};
use super::{DResult, DecompError};
use crate::arith::SquareClass;
use crate::f2::{Basis, F2Subspace, F2Vector};
use crate::local::{quaternion_class, BrauerClass, Place};
use crate::tower::{BiquadField, Subfield};

pub const S_GENERATOR_NAMES: [&str; 3] = ["(a1,a1)", "(a1,a2)", "(a2,a2)"];

/// `𝒮` as a subspace of place-indexed vectors.
#[derive(Clone, Debug)]
pub struct SSpace {
    places: Basis<Place>,
    generators: [BrauerClass; 3],
    independent: [bool; 3],
    span: F2Subspace<Place>,
}

impl SSpace {
    /// `𝒮` over the given places, which are extended by the relevant places of the field.
    pub fn over<I: IntoIterator<Item = Place>>(field: &BiquadField, places: I) -> DResult<Self> {
        let mut all: BTreeSet<Place> = places.into_iter().collect();
        all.extend(field.relevant_places());
        let places = Basis::new(all)?;
        let (a1, a2) = (field.a1(), field.a2());
        let generators = [
            quaternion_class(a1, a1)?,
            quaternion_class(a1, a2)?,
            quaternion_class(a2, a2)?,
        ];
        let mut span = F2Subspace::zero(&places);
        let mut independent = [false; 3];
        for (flag, g) in independent.iter_mut().zip(&generators) {
            *flag = span.insert(&g.to_vector(&places)?)?;
        }
        Ok(SSpace {
            places,
            generators,
            independent,
            span,
        })
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    /// `(a₁,a₁), (a₁,a₂), (a₂,a₂)` in that order.
    pub fn generators(&self) -> &[BrauerClass; 3] {
        &self.generators
    }

    /// Whether each generator is independent of the ones before it.
    pub fn independent(&self) -> [bool; 3] {
        self.independent
    }

    pub fn places(&self) -> &Basis<Place> {
        &self.places
    }

    pub fn span(&self) -> &F2Subspace<Place> {
        &self.span
    }

    /// Canonical representative of `c + 𝒮`. Ramified places outside the
    /// basis are untouched, since every element of `𝒮` is split there.
    pub fn reduce(&self, c: &BrauerClass) -> DResult<BrauerClass> {
        let (inside, outside): (Vec<Place>, Vec<Place>) = c
            .ramified()
            .iter()
            .partition(|v| self.places.index_of(v).is_ok());
        let v = F2Vector::from_labels(&self.places, inside.iter())?;
        let r = self.span.reduce(&v)?;
        let mut out: BTreeSet<Place> = r.support().into_iter().collect();
        out.extend(outside);
        Ok(BrauerClass::from_places(out)?)
    }

    pub fn contains(&self, c: &BrauerClass) -> DResult<bool> {
        Ok(self.reduce(c)?.is_trivial())
    }
}

pub fn compute_s(field: &BiquadField) -> DResult<SSpace> {
    SSpace::over(field, [])
}

/// `(a_i, f)` modulo `𝒮`, as the canonical representative of its coset.
pub fn phi(field: &BiquadField, i: Subfield, f: &SquareClass) -> DResult<BrauerClass> {
    let s = compute_s(field)?;
    s.reduce(&quaternion_class(field.class_of(i), f)?)
}

/// Solvability of the diagram attached to `[f], [g] ∈ [Q^×]`: whether
/// `(a₁,f) + (a₂,g) ∈ 𝒮`.
pub fn diagram_solvable(field: &BiquadField, f: &SquareClass, g: &SquareClass) -> DResult<bool> {
    let c = quaternion_class(field.a1(), f)? + quaternion_class(field.a2(), g)?;
    compute_s(field)?.contains(&c)
}

/// Upper-triangular coefficients `c_ij`, `i ≤ j`, stored row by row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientMatrix {
    n: usize,
    bits: Vec<bool>,
}

impl CoefficientMatrix {
    /// `bits` lists `c_11, c_12, …, c_1n, c_22, …, c_nn`.
    pub fn new(n: usize, bits: Vec<bool>) -> DResult<Self> {
        let want = n * (n + 1) / 2;
        if bits.len() != want {
            return Err(DecompError::BadInput(format!(
                "{n} generators need {want} upper-triangular coefficients, got {}",
                bits.len()
            )));
        }
        Ok(CoefficientMatrix { n, bits })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn index(&self, i: usize, j: usize) -> usize {
        // rows 0..i contribute n + (n-1) + … + (n-i+1) entries
        i * self.n - i * (i.saturating_sub(1)) / 2 + (j - i)
    }

    /// `c_ij` for `i ≤ j` (0-based).
    pub fn get(&self, i: usize, j: usize) -> bool {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        self.bits[self.index(i, j)]
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|b| !b)
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingOutcome {
    pub solvable: bool,
    pub obstruction: BrauerClass,
}

pub const MAX_EMBEDDING_GENERATORS: usize = 8;

/// Solvability of the central embedding problem for
/// `Q(√a₁, …, √a_n)/Q` given by `c`: the obstruction is
/// `Σ_{i≤j} c_ij (a_i, a_j)`.
pub fn embedding_solvable(
    gens: &[SquareClass],
    c: &CoefficientMatrix,
) -> DResult<EmbeddingOutcome> {
    let n = gens.len();
    if n == 0 || n > MAX_EMBEDDING_GENERATORS {
        return Err(DecompError::BadInput(format!(
            "between 1 and {MAX_EMBEDDING_GENERATORS} generators required, got {n}"
        )));
    }
    if c.n() != n {
        return Err(DecompError::BadInput(format!(
            "coefficient matrix is for {} generators, got {n}",
            c.n()
        )));
    }
    let labels = Basis::new(generators_of(gens.iter()))?;
    let mut span = F2Subspace::zero(&labels);
    for g in gens {
        if !span.insert(&generator_vector(&labels, g)?)? {
            return Err(DecompError::DependentGenerators);
        }
    }
    if c.is_zero() {
        return Err(DecompError::SplitExtension);
    }
    let mut obstruction = BrauerClass::trivial();
    for i in 0..n {
        for j in i..n {
            if c.get(i, j) {
                obstruction += &quaternion_class(&gens[i], &gens[j])?;
            }
        }
    }
    Ok(EmbeddingOutcome {
        solvable: obstruction.is_trivial(),
        obstruction,
    })
}

/// A triple in `⊕ (K_i^× ∩ K^×²)/K_i^×²`; `true` marks the nontrivial value
/// (`a₂` in `K₁`, `a₁` in `K₂` and in `K₃`).
pub type Triple = [bool; 3];

/// Name of a triple in the form `(a2,1,a1)`.
pub fn triple_label(t: &Triple) -> String {
    let names = ["a2", "a1", "a1"];
    let parts: Vec<&str> = t
        .iter()
        .zip(names)
        .map(|(&b, n)| if b { n } else { "1" })
        .collect();
    format!("({})", parts.join(","))
}

/// `im(T)`, a subgroup of the eight triples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TImage {
    elements: Vec<Triple>,
}

impl TImage {
    pub fn elements(&self) -> &[Triple] {
        &self.elements
    }

    pub fn contains(&self, t: &Triple) -> bool {
        self.elements.contains(t)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `log₂ |im(T)|`, assuming a subgroup.
    pub fn dim(&self) -> usize {
        self.elements.len().trailing_zeros() as usize
    }

    /// Contains the identity and is closed under the componentwise product.
    pub fn is_subgroup(&self) -> bool {
        self.contains(&[false; 3])
            && self.elements.iter().all(|x| {
                self.elements
                    .iter()
                    .all(|y| self.contains(&[x[0] ^ y[0], x[1] ^ y[1], x[2] ^ y[2]]))
            })
    }

    /// For a 4-element image on which one coordinate is identically trivial,
    /// the subfield of that coordinate.
    pub fn coordinate_plane(&self) -> Option<Subfield> {
        if self.elements.len() != 4 {
            return None;
        }
        Subfield::ALL
            .into_iter()
            .enumerate()
            .find(|&(i, _)| self.elements.iter().all(|t| !t[i]))
            .map(|(_, k)| k)
    }

    pub fn labels(&self) -> Vec<String> {
        self.elements.iter().map(triple_label).collect()
    }
}

impl fmt::Display for TImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels().join(", "))
    }
}

/// `im(T)` as the kernel of
/// `(e₁,e₂,e₃) ↦ e₁[(a₁,a₂)+(a₂,a₂)] + e₂[(a₁,a₁)+(a₁,a₂)] + e₃(a₁,a₂)`.
pub fn t_image(field: &BiquadField) -> DResult<TImage> {
    let s = compute_s(field)?;
    let [g11, g12, g22] = s.generators();
    let images = [g12 + g22, g11 + g12, g12.clone()];
    let mut elements = Vec::new();
    for bits in 0u8..8 {
        let t: Triple = [bits & 1 != 0, bits & 2 != 0, bits & 4 != 0];
        let mut c = BrauerClass::trivial();
        for (on, x) in t.iter().zip(&images) {
            if *on {
                c += x;
            }
        }
        if c.is_trivial() {
            elements.push(t);
        }
    }
    Ok(TImage { elements })
}

/// The exceptional-summand input `ε`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Epsilon {
    Zero,
    One,
    #[default]
    Unknown,
}

impl Epsilon {
    pub fn value(self) -> Option<usize> {
        match self {
            Epsilon::Zero => Some(0),
            Epsilon::One => Some(1),
            Epsilon::Unknown => None,
        }
    }
}

/// Isomorphism type of the exceptional summand `X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum XType {
    Zero,
    F2,
    F2PlusF2,
    OmegaMinus1,
    OmegaMinus2,
    OmegaMinus1Squared,
    /// `dim 𝒮 = 0` with `ε` unknown: `Ω⁻²` if `ε = 0`, `Ω⁻¹ ⊕ Ω⁻¹` if `ε = 1`.
    ConditionalOnEpsilon,
}

impl fmt::Display for XType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            XType::Zero => "0",
            XType::F2 => "F2",
            XType::F2PlusF2 => "F2 + F2",
            XType::OmegaMinus1 => "Ω^-1",
            XType::OmegaMinus2 => "Ω^-2",
            XType::OmegaMinus1Squared => "Ω^-1 + Ω^-1",
            XType::ConditionalOnEpsilon => "Ω^-2 if ε = 0, Ω^-1 + Ω^-1 if ε = 1",
        };
        f.write_str(s)
    }
}

/// The three vanishing conditions singling out the `Ω⁻¹` case when
/// `dim 𝒮 = 1`: `(a₁,a₂) = (a₂,a₂) = 0`; `(a₁,a₁) = (a₁,a₂) = 0`;
/// `(a₁,a₁)+(a₁,a₂) = (a₁,a₂)+(a₂,a₂) = 0`.
pub fn vanishing_conditions(field: &BiquadField) -> DResult<[bool; 3]> {
    let s = compute_s(field)?;
    let [g11, g12, g22] = s.generators();
    Ok([
        g12.is_trivial() && g22.is_trivial(),
        g11.is_trivial() && g12.is_trivial(),
        (g11 + g12).is_trivial() && (g12 + g22).is_trivial(),
    ])
}

/// Type of `X` from `dim 𝒮`, using the vanishing conditions when
/// `dim 𝒮 = 1` and checking them against the shape of `im(T)`.
pub fn classify_x(field: &BiquadField, eps: Epsilon) -> DResult<XType> {
    let s = compute_s(field)?;
    let image = t_image(field)?;
    if image.dim() != 3 - s.dim() {
        return Err(DecompError::Inconsistent(
            "dim im(T) differs from 3 - dim S",
        ));
    }
    Ok(match s.dim() {
        3 => XType::Zero,
        2 => XType::F2,
        1 => {
            let by_conditions = vanishing_conditions(field)?.iter().any(|&c| c);
            if by_conditions != image.coordinate_plane().is_some() {
                return Err(DecompError::Inconsistent(
                    "vanishing conditions disagree with the shape of im(T)",
                ));
            }
            if by_conditions {
                XType::OmegaMinus1
            } else {
                XType::F2PlusF2
            }
        }
        _ => match eps {
            Epsilon::Zero => XType::OmegaMinus2,
            Epsilon::One => XType::OmegaMinus1Squared,
            Epsilon::Unknown => XType::ConditionalOnEpsilon,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficient_indexing() {
        let c = CoefficientMatrix::new(3, vec![false, true, false, false, false, true]).unwrap();
        assert!(c.get(0, 1) && c.get(1, 0) && c.get(2, 2));
        assert!(!c.get(0, 0) && !c.get(0, 2) && !c.get(1, 1) && !c.get(1, 2));
        assert!(CoefficientMatrix::new(2, vec![true]).is_err());
    }

    #[test]
    fn triple_names() {
        assert_eq!(triple_label(&[true, false, true]), "(a2,1,a1)");
        assert_eq!(triple_label(&[false; 3]), "(1,1,1)");
    }
}
