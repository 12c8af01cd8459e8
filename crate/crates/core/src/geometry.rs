//! Diagonal Heintze data and the boundary invariants read off it.
//!
//! A diagonal Heintze algebra is `m ⋊ R` with `m` nilpotent and `R` acting by
//! a diagonalizable derivation with positive eigenvalues. Everything here is
//! computed from that derivation's spectrum.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::exactlin::{rational_roots, vec_scale, Matrix, Rational, Subspace, Vector};
use crate::liealg::LieAlgebra;
use crate::reduction::{cone_dimension, exponential_radical, is_class_c1, ReductionError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NilradicalKind {
    Abelian,
    Heisenberg,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeintzeData {
    pub nilradical: LieAlgebra,
    /// `ad(generator)` on the nilradical, in the nilradical's basis.
    #[serde(serialize_with = "crate::report::ser_matrix")]
    pub derivation: Matrix,
    /// In the input's coordinates, oriented so the spectrum is positive.
    #[serde(serialize_with = "crate::report::ser_vector")]
    pub generator: Vector,
    #[serde(serialize_with = "crate::report::ser_spectrum")]
    pub spectrum: Vec<(Rational, usize)>,
    /// `spectrum` divided by its smallest eigenvalue.
    #[serde(serialize_with = "crate::report::ser_spectrum")]
    pub normalized_spectrum: Vec<(Rational, usize)>,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub scale: Rational,
    /// True when the generator had to be replaced by its negative.
    pub flipped: bool,
    pub nilradical_kind: NilradicalKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NotHeintze {
    #[error("cone dimension is {0}, a Heintze algebra has rank one")]
    Rank(usize),
    #[error("not of class C1: {0}")]
    NotClassC1(String),
    #[error("irrational spectrum: characteristic polynomial does not split over Q")]
    IrrationalSpectrum,
    #[error("spectrum has eigenvalues of both signs or zero")]
    MixedSigns,
    #[error(transparent)]
    Reduction(#[from] ReductionError),
}

impl NotHeintze {
    /// Errors that reflect an unsupported instance rather than a plain "no".
    pub fn is_unsupported(&self) -> bool {
        match self {
            NotHeintze::IrrationalSpectrum => true,
            NotHeintze::Reduction(e) => e.is_unsupported(),
            _ => false,
        }
    }
}

pub fn detect_diagonal_heintze(g: &LieAlgebra) -> Result<HeintzeData, NotHeintze> {
    let rank = cone_dimension(g)?;
    if rank != 1 {
        return Err(NotHeintze::Rank(rank));
    }
    let c1 = is_class_c1(g)?;
    if !c1.holds {
        return Err(NotHeintze::NotClassC1(c1.failures.join("; ")));
    }
    let n = exponential_radical(g)?;
    let mut x = c1.complement[0].clone();
    let mut d = g.adjoint_on(&x, &n).map_err(ReductionError::from)?;
    let roots = rational_roots(&d.char_poly().map_err(ReductionError::from)?).map_err(ReductionError::from)?;
    if !roots.fully_split {
        return Err(NotHeintze::IrrationalSpectrum);
    }
    let zero = Rational::from_integer(0.into());
    let mut spectrum = roots.roots;
    let flipped = if spectrum.iter().all(|(l, _)| *l > zero) {
        false
    } else if spectrum.iter().all(|(l, _)| *l < zero) {
        let minus = -Rational::from_integer(1.into());
        x = vec_scale(&x, &minus);
        d = d.scale(&minus);
        spectrum = spectrum.into_iter().rev().map(|(l, m)| (-l, m)).collect();
        true
    } else {
        return Err(NotHeintze::MixedSigns);
    };
    let nilradical = g.restrict(&n).map_err(ReductionError::from)?.named(format!("nil({})", g.name()));
    let scale = spectrum[0].0.clone();
    let normalized_spectrum = spectrum.iter().map(|(l, m)| (l / &scale, *m)).collect();
    let nilradical_kind = nilradical_kind(&nilradical);
    Ok(HeintzeData {
        nilradical,
        derivation: d,
        generator: x,
        spectrum,
        normalized_spectrum,
        scale,
        flipped,
        nilradical_kind,
    })
}

pub fn nilradical_kind(m: &LieAlgebra) -> NilradicalKind {
    if m.is_abelian() {
        NilradicalKind::Abelian
    } else if is_heisenberg(m) {
        NilradicalKind::Heisenberg
    } else {
        NilradicalKind::Other
    }
}

/// Odd dimension, one-dimensional center equal to `[m,m]`, and the induced
/// alternating form on `m / z` nondegenerate.
pub fn is_heisenberg(m: &LieAlgebra) -> bool {
    let n = m.dim();
    if n.is_multiple_of(2) {
        return false;
    }
    let z = m.center();
    if z.dim() != 1 || m.derived_algebra() != z {
        return false;
    }
    let comp = z.complement_indices();
    let zv = &z.basis_vectors()[0];
    let pivot = z.pivots()[0];
    let k = comp.len();
    let mut omega = Matrix::zeros(k, k);
    for a in 0..k {
        for b in 0..k {
            let br = m.bracket_basis(comp[a], comp[b]);
            // [m,m] = z, so br is a multiple of zv, read off at its pivot.
            omega.set(a, b, &br[pivot] / &zv[pivot]);
        }
    }
    omega
        .determinant()
        .map(|d| d != Rational::from_integer(0.into()))
        .unwrap_or(false)
}

/// `trace(D) / λ_min`; invariant under positive rescaling of `D`.
pub fn conformal_dimension(h: &HeintzeData) -> Rational {
    let trace: Rational = h
        .spectrum
        .iter()
        .map(|(l, m)| l * Rational::from_integer((*m as i64).into()))
        .sum();
    trace / &h.spectrum[0].0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family", content = "n")]
pub enum SymmetricTag {
    /// Iwasawa `AN` of `SO(n,1)`.
    #[serde(rename = "SO_n1")]
    SO(usize),
    /// Iwasawa `AN` of `SU(n,1)`.
    #[serde(rename = "SU_n1")]
    SU(usize),
    #[serde(rename = "none")]
    None,
}

impl fmt::Display for SymmetricTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymmetricTag::SO(n) => write!(f, "SO({n},1)"),
            SymmetricTag::SU(n) => write!(f, "SU({n},1)"),
            SymmetricTag::None => f.write_str("none"),
        }
    }
}

impl SymmetricTag {
    pub fn is_some(&self) -> bool {
        *self != SymmetricTag::None
    }
}

pub fn identify_rank_one_iwasawa(h: &HeintzeData) -> SymmetricTag {
    let dim = h.nilradical.dim();
    let one = Rational::from_integer(1.into());
    let two = Rational::from_integer(2.into());
    match h.nilradical_kind {
        NilradicalKind::Abelian if h.normalized_spectrum.len() == 1 => SymmetricTag::SO(dim + 1),
        NilradicalKind::Heisenberg
            if h.normalized_spectrum == [(one, dim - 1), (two, 1)] =>
        {
            SymmetricTag::SU((dim - 1) / 2 + 1)
        }
        _ => SymmetricTag::None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Spsp {
    True,
    False,
    Unknown,
}

impl Spsp {
    pub fn as_bool(self) -> Option<bool> {
        match self {
            Spsp::True => Some(true),
            Spsp::False => Some(false),
            Spsp::Unknown => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpspVerdict {
    pub value: Spsp,
    pub rule: &'static str,
}

/// Conservative rule table; anything not covered is `Unknown`.
pub fn strong_pointed_sphere(h: &HeintzeData) -> SpspVerdict {
    let tag = identify_rank_one_iwasawa(h);
    if tag.is_some() {
        return SpspVerdict {
            value: Spsp::False,
            rule: "rank-one symmetric: the isometry group is transitive on the boundary",
        };
    }
    match h.nilradical_kind {
        NilradicalKind::Abelian => SpspVerdict {
            value: Spsp::True,
            rule: "abelian nilradical, not an Iwasawa subgroup of SO(n,1)",
        },
        NilradicalKind::Heisenberg if h.nilradical.dim() == 3 => {
            // Weights {a, b, a+b}; a = b is the SU(2,1) case handled above.
            SpspVerdict {
                value: Spsp::True,
                rule: "3-dimensional Heisenberg nilradical with distinct horizontal weights",
            }
        }
        _ => SpspVerdict {
            value: Spsp::Unknown,
            rule: "no rule covers this nilradical",
        },
    }
}

/// Derived subalgebra is abelian (used to admit factors into product matching).
pub fn has_abelian_derived(g: &LieAlgebra) -> bool {
    let d: Subspace = g.derived_algebra();
    g.commute(&d, &d).unwrap_or(false)
}
