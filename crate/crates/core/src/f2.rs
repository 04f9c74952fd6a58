//! Linear algebra over `F_2` with labelled coordinates.
//!
//! Vectors carry the basis they are expressed in; combining vectors or
//! subspaces over different label lists is an error. Rows are bit-packed into
//! `u64` words and elimination is dense.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum F2Error {
    #[error("operands are expressed over different label lists")]
    LabelMismatch,
    #[error("label {0} is not part of the basis")]
    UnknownLabel(String),
    #[error("duplicate label {0}")]
    DuplicateLabel(String),
    #[error("inner space is not contained in the outer space")]
    NotASubspace,
    #[error("expected {expected} images, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

type Words = Vec<u64>;

fn word_count(n: usize) -> usize {
    n.div_ceil(64)
}

#[inline]
fn bit(w: &[u64], i: usize) -> bool {
    w[i / 64] >> (i % 64) & 1 == 1
}

#[inline]
fn flip(w: &mut [u64], i: usize) {
    w[i / 64] ^= 1 << (i % 64);
}

#[inline]
fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

fn first_set(w: &[u64]) -> Option<usize> {
    w.iter()
        .enumerate()
        .find(|(_, &x)| x != 0)
        .map(|(i, x)| i * 64 + x.trailing_zeros() as usize)
}

fn is_zero(w: &[u64]) -> bool {
    w.iter().all(|&x| x == 0)
}

/// An ordered list of distinct labels naming the coordinates of a space.
#[derive(Clone, Debug)]
pub struct Basis<L> {
    labels: Arc<[L]>,
    index: Arc<BTreeMap<L, usize>>,
}

impl<L: Ord + Clone + Debug> Basis<L> {
    pub fn new<I: IntoIterator<Item = L>>(labels: I) -> Result<Self, F2Error> {
        let labels: Vec<L> = labels.into_iter().collect();
        let mut index = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(F2Error::DuplicateLabel(format!("{l:?}")));
            }
        }
        Ok(Basis {
            labels: labels.into(),
            index: Arc::new(index),
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn index_of(&self, label: &L) -> Result<usize, F2Error> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| F2Error::UnknownLabel(format!("{label:?}")))
    }

    fn check(&self, other: &Basis<L>) -> Result<(), F2Error> {
        if self == other {
            Ok(())
        } else {
            Err(F2Error::LabelMismatch)
        }
    }

    fn words(&self) -> usize {
        word_count(self.len())
    }
}

impl<L: PartialEq> PartialEq for Basis<L> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.labels, &other.labels) || self.labels == other.labels
    }
}

impl<L: Eq> Eq for Basis<L> {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Vector<L> {
    basis: Basis<L>,
    words: Words,
}

impl<L: Ord + Clone + Debug> F2Vector<L> {
    pub fn zero(basis: &Basis<L>) -> Self {
        F2Vector {
            basis: basis.clone(),
            words: vec![0; basis.words()],
        }
    }

    pub fn unit(basis: &Basis<L>, label: &L) -> Result<Self, F2Error> {
        Self::from_labels(basis, [label])
    }

    /// The vector whose set coordinates are `labels`; repeated labels cancel.
    pub fn from_labels<'a, I>(basis: &Basis<L>, labels: I) -> Result<Self, F2Error>
    where
        I: IntoIterator<Item = &'a L>,
        L: 'a,
    {
        let mut v = Self::zero(basis);
        for l in labels {
            flip(&mut v.words, basis.index_of(l)?);
        }
        Ok(v)
    }

    fn from_words(basis: &Basis<L>, words: Words) -> Self {
        F2Vector {
            basis: basis.clone(),
            words,
        }
    }

    pub fn basis(&self) -> &Basis<L> {
        &self.basis
    }

    pub fn get(&self, label: &L) -> Result<bool, F2Error> {
        Ok(bit(&self.words, self.basis.index_of(label)?))
    }

    pub fn is_zero(&self) -> bool {
        is_zero(&self.words)
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Labels of the set coordinates, in basis order.
    pub fn support(&self) -> Vec<L> {
        (0..self.basis.len())
            .filter(|&i| bit(&self.words, i))
            .map(|i| self.basis.labels[i].clone())
            .collect()
    }

    pub fn add(&self, other: &Self) -> Result<Self, F2Error> {
        self.basis.check(&other.basis)?;
        let mut words = self.words.clone();
        xor_into(&mut words, &other.words);
        Ok(Self::from_words(&self.basis, words))
    }
}

/// Fully reduced row echelon form: pivots strictly increasing, and each pivot
/// column has a single set bit among the rows.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Echelon {
    rows: Vec<Words>,
    pivots: Vec<usize>,
}

impl Echelon {
    fn reduce(&self, v: &mut [u64]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if bit(v, p) {
                xor_into(v, row);
            }
        }
    }

    fn insert(&mut self, mut v: Words) -> bool {
        self.reduce(&mut v);
        let Some(p) = first_set(&v) else {
            return false;
        };
        for row in &mut self.rows {
            if bit(row, p) {
                xor_into(row, &v);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }
}

/// Kernel of the linear map sending the `j`-th unit vector to `images[j]`,
/// returned as coordinate vectors over a domain of `images.len()` bits.
fn kernel_words(images: &[Words]) -> Vec<Words> {
    let n = images.len();
    let mut table: BTreeMap<usize, (Words, Words)> = BTreeMap::new();
    let mut kernel = Vec::new();
    for (j, img) in images.iter().enumerate() {
        let mut img = img.clone();
        let mut tag = vec![0u64; word_count(n)];
        flip(&mut tag, j);
        while let Some(lead) = first_set(&img) {
            match table.get(&lead) {
                Some((r, t)) => {
                    xor_into(&mut img, r);
                    xor_into(&mut tag, t);
                }
                None => break,
            }
        }
        match first_set(&img) {
            Some(lead) => {
                table.insert(lead, (img, tag));
            }
            None => kernel.push(tag),
        }
    }
    kernel
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Subspace<L> {
    basis: Basis<L>,
    echelon: Echelon,
}

impl<L: Ord + Clone + Debug> F2Subspace<L> {
    pub fn zero(basis: &Basis<L>) -> Self {
        F2Subspace {
            basis: basis.clone(),
            echelon: Echelon::default(),
        }
    }

    pub fn full(basis: &Basis<L>) -> Self {
        let mut s = Self::zero(basis);
        for i in 0..basis.len() {
            let mut w = vec![0; basis.words()];
            flip(&mut w, i);
            s.echelon.insert(w);
        }
        s
    }

    pub fn span<'a, I>(basis: &Basis<L>, vectors: I) -> Result<Self, F2Error>
    where
        I: IntoIterator<Item = &'a F2Vector<L>>,
        L: 'a,
    {
        let mut s = Self::zero(basis);
        for v in vectors {
            s.insert(v)?;
        }
        Ok(s)
    }

    /// Adds `v` to the spanning set; returns whether the dimension grew.
    pub fn insert(&mut self, v: &F2Vector<L>) -> Result<bool, F2Error> {
        self.basis.check(&v.basis)?;
        Ok(self.echelon.insert(v.words.clone()))
    }

    pub fn basis(&self) -> &Basis<L> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.echelon.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.len()
    }

    /// The reduced echelon rows, a canonical basis of the subspace.
    pub fn vectors(&self) -> Vec<F2Vector<L>> {
        self.echelon
            .rows
            .iter()
            .map(|w| F2Vector::from_words(&self.basis, w.clone()))
            .collect()
    }

    pub fn pivot_labels(&self) -> Vec<L> {
        self.echelon
            .pivots
            .iter()
            .map(|&p| self.basis.labels[p].clone())
            .collect()
    }

    /// Canonical representative of the coset `v + self`.
    pub fn reduce(&self, v: &F2Vector<L>) -> Result<F2Vector<L>, F2Error> {
        self.basis.check(&v.basis)?;
        let mut w = v.words.clone();
        self.echelon.reduce(&mut w);
        Ok(F2Vector::from_words(&self.basis, w))
    }

    pub fn contains(&self, v: &F2Vector<L>) -> Result<bool, F2Error> {
        Ok(self.reduce(v)?.is_zero())
    }

    pub fn sum(&self, other: &Self) -> Result<Self, F2Error> {
        self.basis.check(&other.basis)?;
        let mut out = self.clone();
        for row in &other.echelon.rows {
            out.echelon.insert(row.clone());
        }
        Ok(out)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self, F2Error> {
        self.basis.check(&other.basis)?;
        let rows = &self.echelon.rows;
        let images: Vec<Words> = rows
            .iter()
            .map(|r| {
                let mut w = r.clone();
                other.echelon.reduce(&mut w);
                w
            })
            .collect();
        let mut out = Self::zero(&self.basis);
        for coeffs in kernel_words(&images) {
            let mut w = vec![0; self.basis.words()];
            for (i, r) in rows.iter().enumerate() {
                if bit(&coeffs, i) {
                    xor_into(&mut w, r);
                }
            }
            out.echelon.insert(w);
        }
        Ok(out)
    }

    pub fn is_subspace_of(&self, outer: &Self) -> Result<bool, F2Error> {
        self.basis.check(&outer.basis)?;
        Ok(self.echelon.rows.iter().all(|r| {
            let mut w = r.clone();
            outer.echelon.reduce(&mut w);
            is_zero(&w)
        }))
    }

    /// `dim(outer) - dim(self)`, requiring `self ⊆ outer`.
    pub fn codim_within(&self, outer: &Self) -> Result<usize, F2Error> {
        if !self.is_subspace_of(outer)? {
            return Err(F2Error::NotASubspace);
        }
        Ok(outer.dim() - self.dim())
    }

    /// Vectors of `outer` completing a basis of `self` to one of `outer`,
    /// taken greedily from the canonical basis of `outer`.
    pub fn complement_in(&self, outer: &Self) -> Result<Vec<F2Vector<L>>, F2Error> {
        if !self.is_subspace_of(outer)? {
            return Err(F2Error::NotASubspace);
        }
        let mut acc = self.echelon.clone();
        let mut out = Vec::new();
        for row in &outer.echelon.rows {
            if acc.insert(row.clone()) {
                out.push(F2Vector::from_words(&self.basis, row.clone()));
            }
        }
        Ok(out)
    }
}

/// A linear map given by the images of the domain's unit vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Map<L, M> {
    domain: Basis<L>,
    codomain: Basis<M>,
    columns: Vec<Words>,
}

impl<L: Ord + Clone + Debug, M: Ord + Clone + Debug> F2Map<L, M> {
    pub fn new(
        domain: &Basis<L>,
        codomain: &Basis<M>,
        images: &[F2Vector<M>],
    ) -> Result<Self, F2Error> {
        if images.len() != domain.len() {
            return Err(F2Error::DimensionMismatch {
                expected: domain.len(),
                got: images.len(),
            });
        }
        let mut columns = Vec::with_capacity(images.len());
        for v in images {
            codomain.check(&v.basis)?;
            columns.push(v.words.clone());
        }
        Ok(F2Map {
            domain: domain.clone(),
            codomain: codomain.clone(),
            columns,
        })
    }

    pub fn zero(domain: &Basis<L>, codomain: &Basis<M>) -> Self {
        F2Map {
            domain: domain.clone(),
            codomain: codomain.clone(),
            columns: vec![vec![0; codomain.words()]; domain.len()],
        }
    }

    pub fn domain(&self) -> &Basis<L> {
        &self.domain
    }

    pub fn codomain(&self) -> &Basis<M> {
        &self.codomain
    }

    fn apply_words(&self, v: &[u64]) -> Words {
        let mut out = vec![0; self.codomain.words()];
        for (j, col) in self.columns.iter().enumerate() {
            if bit(v, j) {
                xor_into(&mut out, col);
            }
        }
        out
    }

    pub fn apply(&self, v: &F2Vector<L>) -> Result<F2Vector<M>, F2Error> {
        self.domain.check(&v.basis)?;
        Ok(F2Vector::from_words(
            &self.codomain,
            self.apply_words(&v.words),
        ))
    }

    pub fn kernel(&self) -> F2Subspace<L> {
        let mut out = F2Subspace::zero(&self.domain);
        for w in kernel_words(&self.columns) {
            out.echelon.insert(w);
        }
        out
    }

    pub fn image(&self) -> F2Subspace<M> {
        let mut out = F2Subspace::zero(&self.codomain);
        for c in &self.columns {
            out.echelon.insert(c.clone());
        }
        out
    }

    pub fn image_of(&self, s: &F2Subspace<L>) -> Result<F2Subspace<M>, F2Error> {
        self.domain.check(&s.basis)?;
        let mut out = F2Subspace::zero(&self.codomain);
        for r in &s.echelon.rows {
            out.echelon.insert(self.apply_words(r));
        }
        Ok(out)
    }

    /// `{v : self(v) ∈ target}`, as the kernel of the map followed by reduction
    /// modulo `target`.
    pub fn preimage(&self, target: &F2Subspace<M>) -> Result<F2Subspace<L>, F2Error> {
        self.codomain.check(&target.basis)?;
        let reduced: Vec<Words> = self
            .columns
            .iter()
            .map(|c| {
                let mut w = c.clone();
                target.echelon.reduce(&mut w);
                w
            })
            .collect();
        let mut out = F2Subspace::zero(&self.domain);
        for w in kernel_words(&reduced) {
            out.echelon.insert(w);
        }
        Ok(out)
    }
}
