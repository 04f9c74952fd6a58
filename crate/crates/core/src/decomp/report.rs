//! Ranks of the unexceptional summands and the combined report.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::brauer::{classify_x, t_image, Epsilon, TImage, XType, S_GENERATOR_NAMES};
use super::norms::{epsilon_certificate_with, EpsilonCertificate, EpsilonWitness, NormWitness};
use super::support::{build_profile, SubspaceProfile};
use super::{DResult, DecompError};
use crate::arith::SquareClass;
use crate::exec::Strategy;
use crate::local::BrauerClass;
use crate::tower::BiquadField;

/// A rank computed inside the support.
///
/// `upper` is `None` when no upper bound is known. `exact_within_support`
/// means `lower == upper` for the truncated lattice. `global_lower_bound`
/// means `lower` is also a lower bound for the untruncated rank and can only
/// grow when the support grows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rank {
    pub lower: usize,
    pub upper: Option<usize>,
    pub exact_within_support: bool,
    pub global_lower_bound: bool,
}

impl Rank {
    fn exact(value: usize, global_lower_bound: bool) -> Self {
        Rank {
            lower: value,
            upper: Some(value),
            exact_within_support: true,
            global_lower_bound,
        }
    }

    fn interval(lower: usize, upper: usize, global_lower_bound: bool) -> Self {
        Rank {
            lower,
            upper: Some(upper),
            exact_within_support: lower == upper,
            global_lower_bound,
        }
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.upper {
            Some(u) if u == self.lower => write!(f, "{}", self.lower)?,
            Some(u) => write!(f, "{}..{}", self.lower, u)?,
            None => write!(f, ">= {}", self.lower)?,
        }
        if self.global_lower_bound {
            f.write_str(" (global >=)")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ranks {
    pub y0: Rank,
    pub y1: Rank,
    pub y2: Rank,
    pub y3: Rank,
    pub y4: Rank,
    pub z1: Rank,
    pub z2: Rank,
}

impl Ranks {
    pub fn named(&self) -> [(&'static str, Rank); 7] {
        [
            ("Y0", self.y0),
            ("Y1", self.y1),
            ("Y2", self.y2),
            ("Y3", self.y3),
            ("Y4", self.y4),
            ("Z1", self.z1),
            ("Z2", self.z2),
        ]
    }
}

/// Dimensions modulo `⟨[a₁],[a₂]⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceDims {
    pub ambient: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
    pub v: usize,
    pub w_b: usize,
    pub w_c: usize,
    pub w_d: usize,
    pub b_plus_c_plus_d: usize,
    pub local_norms: usize,
    pub a_certified: usize,
}

/// Classes spanning each positive rank, each the smallest representative of
/// its coset.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witnesses {
    pub y0: Vec<NormWitness>,
    pub y1: Vec<SquareClass>,
    pub y2: Vec<SquareClass>,
    pub y3: Vec<SquareClass>,
    pub y4: Vec<SquareClass>,
    pub z1: Vec<SquareClass>,
    pub z2: Vec<SquareClass>,
    pub a_undetermined: Vec<SquareClass>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SGeneratorReport {
    pub name: String,
    pub class: BrauerClass,
    pub independent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EpsilonStatus {
    Zero,
    One,
    Unknown,
    CertifiedZero(Box<EpsilonWitness>),
}

impl EpsilonStatus {
    pub fn value(&self) -> Option<usize> {
        match self {
            EpsilonStatus::Zero | EpsilonStatus::CertifiedZero(_) => Some(0),
            EpsilonStatus::One => Some(1),
            EpsilonStatus::Unknown => None,
        }
    }

    fn as_input(&self) -> Epsilon {
        match self.value() {
            Some(0) => Epsilon::Zero,
            Some(_) => Epsilon::One,
            None => Epsilon::Unknown,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub a1: SquareClass,
    pub a2: SquareClass,
    pub support: Vec<u64>,
    pub dim_s: usize,
    pub s_basis: Vec<SGeneratorReport>,
    pub t_image: TImage,
    pub x_type: XType,
    pub epsilon: EpsilonStatus,
    pub dims: SubspaceDims,
    pub ranks: Ranks,
    pub witnesses: Witnesses,
    pub warnings: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnalyzeOptions {
    /// Coordinate bound for the norm search certifying `A`.
    pub norm_bound: u32,
    /// Coordinate bound for the `ε = 0` search; `None` skips it.
    pub epsilon_bound: Option<u32>,
    pub strategy: Strategy,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            norm_bound: 2,
            epsilon_bound: None,
            strategy: Strategy::default(),
        }
    }
}

/// Support-relative ranks of `Y₀…Y₄, Z₁, Z₂` together with `𝒮`, `im(T)` and
/// the type of `X`.
pub fn ranks_theorem1<I: IntoIterator<Item = u64>>(
    field: &BiquadField,
    support: I,
    eps: Epsilon,
    opts: &AnalyzeOptions,
) -> DResult<DecompositionReport> {
    let profile = build_profile(field, support, opts.norm_bound, opts.strategy)?;
    let violations = profile.lattice_violations()?;
    if !violations.is_empty() {
        return Err(DecompError::Inconsistent(violations[0]));
    }
    let mut warnings = vec![format!(
        "ranks are computed within the classes generated by -1 and the primes {:?}; \
         only ranks marked global are lower bounds for the untruncated ranks",
        profile.space.primes()
    )];

    let certificate = match opts.epsilon_bound {
        Some(b) => epsilon_certificate_with(field, b, opts.strategy)?,
        None => EpsilonCertificate::Undetermined,
    };
    let epsilon = match (certificate, eps) {
        (EpsilonCertificate::CertifiedZero(_), Epsilon::One) => {
            return Err(DecompError::BadInput(
                "epsilon = 1 contradicts a witness certifying epsilon = 0".into(),
            ));
        }
        (EpsilonCertificate::CertifiedZero(w), _) => EpsilonStatus::CertifiedZero(w),
        (EpsilonCertificate::Undetermined, Epsilon::Zero) => EpsilonStatus::Zero,
        (EpsilonCertificate::Undetermined, Epsilon::One) => EpsilonStatus::One,
        (EpsilonCertificate::Undetermined, Epsilon::Unknown) => EpsilonStatus::Unknown,
    };

    let s = profile.space.s();
    let dims = dims_of(&profile)?;
    let ranks = ranks_of(&dims, epsilon.value(), &mut warnings);
    if !profile.a_undetermined.is_empty() {
        warnings.push(format!(
            "{} local-norm class(es) have no norm witness within the search box; Y0 and Z1 are intervals",
            profile.a_undetermined.len()
        ));
    }
    let witnesses = witnesses_of(&profile)?;

    Ok(DecompositionReport {
        a1: field.a1().clone(),
        a2: field.a2().clone(),
        support: profile.space.support().iter().copied().collect(),
        dim_s: s.dim(),
        s_basis: s
            .generators()
            .iter()
            .zip(s.independent())
            .zip(S_GENERATOR_NAMES)
            .map(|((c, independent), name)| SGeneratorReport {
                name: name.into(),
                class: c.clone(),
                independent,
            })
            .collect(),
        t_image: t_image(field)?,
        x_type: classify_x(field, epsilon.as_input())?,
        epsilon,
        dims,
        ranks,
        witnesses,
        warnings,
    })
}

fn dims_of(p: &SubspaceProfile) -> DResult<SubspaceDims> {
    let q = |s| p.space.quotient_dim(s);
    Ok(SubspaceDims {
        ambient: p.space.ambient_dim(),
        b: q(&p.b)?,
        c: q(&p.c)?,
        d: q(&p.d)?,
        v: q(&p.v)?,
        w_b: q(&p.w_b)?,
        w_c: q(&p.w_c)?,
        w_d: q(&p.w_d)?,
        b_plus_c_plus_d: q(&p.b.sum(&p.c)?.sum(&p.d)?)?,
        local_norms: q(&p.local_norms)?,
        a_certified: q(&p.a_certified)?,
    })
}

fn ranks_of(d: &SubspaceDims, eps: Option<usize>, warnings: &mut Vec<String>) -> Ranks {
    let codim_bcd = d.ambient - d.b_plus_c_plus_d;
    let y4 = match eps {
        Some(e) => {
            if e > codim_bcd {
                warnings.push("epsilon = 1 but B+C+D fills the support; Y4 clamped at 0".into());
            }
            Rank::exact(codim_bcd.saturating_sub(e), false)
        }
        None => {
            warnings.push("epsilon unknown: Y4 is reported as an interval".into());
            Rank::interval(codim_bcd.saturating_sub(1), codim_bcd, false)
        }
    };
    Ranks {
        y0: Rank::interval(d.a_certified, d.local_norms, true),
        y1: Rank::exact(d.b - d.w_b, false),
        y2: Rank::exact(d.c - d.w_c, false),
        y3: Rank::exact(d.d - d.w_d, false),
        y4,
        z1: Rank::interval(d.v - d.local_norms, d.v - d.a_certified, true),
        z2: Rank::exact(d.w_b - d.v, true),
    }
}

fn witnesses_of(p: &SubspaceProfile) -> DResult<Witnesses> {
    let sp = &p.space;
    let bcd = p.b.sum(&p.c)?.sum(&p.d)?;
    Ok(Witnesses {
        y0: p.a_members.clone(),
        y1: sp.complement_classes(&p.w_b, &p.b)?,
        y2: sp.complement_classes(&p.w_c, &p.c)?,
        y3: sp.complement_classes(&p.w_d, &p.d)?,
        y4: sp.complement_classes(&bcd, &sp.full())?,
        z1: sp.complement_classes(&p.local_norms, &p.v)?,
        z2: sp.complement_classes(&p.v, &p.w_b)?,
        a_undetermined: p.a_undetermined.clone(),
    })
}
