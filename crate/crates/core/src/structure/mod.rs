//! Fingerprints, direct-factor splitting, the catalog of named algebras and
//! witness-backed isomorphism answers.

mod catalog;
mod extended;
mod iso;
mod recognize;

pub use catalog::{catalog, lookup, match_catalog, CatalogEntry, CatalogMatch, DehnType, ParamSpec};
pub use extended::{builtin_extended, load_extended_dir, parse_extended, ExtendedEntry};
pub use iso::{isomorphic, IsoAnswer, IsoVerdict};

use serde::Serialize;
use thiserror::Error;

use crate::exactlin::{unit, Matrix, Subspace, Vector};
use crate::liealg::{triangularize, LieAlgebra, LieError};
use crate::reduction::{cone_dimension, exponential_radical, is_class_c1, ReductionError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("internal invariant violated: {0}")]
    Internal(&'static str),
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("parameters ({given}) are not admissible for {name}: {constraint}")]
    Inadmissible {
        name: String,
        given: String,
        constraint: String,
    },
    #[error("extended catalog file {file}: {message}")]
    Extended { file: String, message: String },
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Fingerprint {
    pub dim: usize,
    pub lcs_dims: Vec<usize>,
    pub derived_dims: Vec<usize>,
    pub center_dim: usize,
    pub exprad_dim: usize,
    pub cone_dim: usize,
    pub nilpotent: bool,
    pub completely_solvable: bool,
}

/// Basis-independent; the exponential radical is read off the lower central
/// series whether or not the algebra is solvable.
pub fn fingerprint(g: &LieAlgebra) -> Fingerprint {
    let lcs = g.lower_central_series();
    let exprad_dim = lcs.last().dim();
    Fingerprint {
        dim: g.dim(),
        derived_dims: g.derived_series().dims,
        center_dim: g.center().dim(),
        exprad_dim,
        cone_dim: g.dim() - exprad_dim,
        nilpotent: lcs.reaches_zero(),
        completely_solvable: triangularize(g).is_ok(),
        lcs_dims: lcs.dims,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EuclideanSplit {
    pub euclidean_dim: usize,
    pub complement: LieAlgebra,
    /// Columns: the Euclidean basis, then the complement's basis.
    #[serde(serialize_with = "crate::report::ser_matrix")]
    pub change_of_basis: Matrix,
}

/// `g = R^k ⊕ c` with `k = dim z - dim (z ∩ [g,g])`. The complement is
/// `[g,g]` plus unit vectors, hence an ideal.
pub fn split_euclidean(g: &LieAlgebra) -> Result<EuclideanSplit, StructureError> {
    let n = g.dim();
    let z = g.center();
    let d = g.derived_algebra();
    let seed = z.intersection(&d).basis_vectors();
    let euclid: Vec<Vector> = z.extend_basis(&seed)[seed.len()..].to_vec();
    let mut comp = d.basis_vectors();
    let mut span = d.sum(&Subspace::from_vectors(n, &euclid));
    for i in 0..n {
        if span.is_full() {
            break;
        }
        let u = unit(n, i);
        if !span.contains(&u) {
            span = span.sum(&Subspace::from_vectors(n, std::slice::from_ref(&u)));
            comp.push(u);
        }
    }
    let k = euclid.len();
    let mut cols = euclid;
    cols.extend(comp.iter().cloned());
    let p = Matrix::from_columns(n, &cols);
    let complement = g.restrict_to_basis(&comp)?.named(format!("{}/R^{k}", g.name()));
    let expected = LieAlgebra::direct_sum(&LieAlgebra::abelian(k), &complement);
    if !g.transport(&p)?.same_constants(&expected) {
        return Err(StructureError::Internal("euclidean split does not recombine"));
    }
    Ok(EuclideanSplit {
        euclidean_dim: k,
        complement,
        change_of_basis: p,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitResult {
    pub euclidean_dim: usize,
    pub factors: Vec<LieAlgebra>,
    /// Columns: Euclidean basis, then each factor's basis in order.
    #[serde(serialize_with = "crate::report::ser_matrix")]
    pub change_of_basis: Matrix,
    /// Every factor is certified indecomposable. `false` only means no proof
    /// was found in this basis.
    pub complete: bool,
    /// Per factor: indecomposability certified (rank one).
    pub certified: Vec<bool>,
}

impl SplitResult {
    /// `R^k ⊕ f_1 ⊕ …` in the split basis.
    pub fn recombined(&self) -> LieAlgebra {
        let mut out = LieAlgebra::abelian(self.euclidean_dim);
        for f in &self.factors {
            out = LieAlgebra::direct_sum(&out, f);
        }
        out
    }
}

/// For class (C1) algebras: a basis of joint weight vectors of `R_exp`
/// followed by the complement, in which bracket connectivity sees the
/// splitting. `None` when no such structure is available.
fn weight_adapted_basis(c: &LieAlgebra) -> Option<Vec<Vector>> {
    let cert = is_class_c1(c).ok()?;
    if !cert.holds {
        return None;
    }
    let n = exponential_radical(c).ok()?;
    let nb = n.basis_vectors();
    let mut spaces = vec![Subspace::full(n.dim())];
    for h in &cert.complement {
        let a = c.adjoint_on(h, &n).ok()?;
        let roots = crate::exactlin::rational_roots(&a.char_poly().ok()?).ok()?;
        let mut next = Vec::new();
        for w in &spaces {
            let mut total = 0;
            for (lam, _) in &roots.roots {
                let piece = w.intersection(&a.eigenspace(lam).ok()?);
                total += piece.dim();
                if !piece.is_zero() {
                    next.push(piece);
                }
            }
            if total != w.dim() {
                return None;
            }
        }
        spaces = next;
    }
    let mut basis: Vec<Vector> = Vec::with_capacity(c.dim());
    for w in spaces {
        for coords in w.basis_vectors() {
            let mut v = crate::exactlin::zero_vec(c.dim());
            for (ci, b) in coords.iter().zip(&nb) {
                crate::exactlin::vec_axpy(&mut v, ci, b);
            }
            basis.push(v);
        }
    }
    basis.extend(cert.complement.iter().cloned());
    (Subspace::from_vectors(c.dim(), &basis).dim() == c.dim()).then_some(basis)
}

fn components(g: &LieAlgebra) -> Vec<Vec<usize>> {
    let n = g.dim();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        let mut i = i;
        while p[i] != r {
            let next = p[i];
            p[i] = r;
            i = next;
        }
        r
    }
    let union = |a: usize, b: usize, p: &mut Vec<usize>| {
        let (ra, rb) = (find(p, a), find(p, b));
        if ra != rb {
            p[ra.max(rb)] = ra.min(rb);
        }
    };
    for ((i, j, k), _) in g.constants() {
        union(*i, *j, &mut parent);
        union(*i, *k, &mut parent);
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    groups.into_values().collect()
}

pub fn split_factors(g: &LieAlgebra) -> Result<SplitResult, StructureError> {
    let es = split_euclidean(g)?;
    let c = &es.complement;
    let cd = c.dim();
    let adapted = weight_adapted_basis(c).unwrap_or_else(|| (0..cd).map(|i| unit(cd, i)).collect());
    let q = Matrix::from_columns(cd, &adapted);
    let c2 = c.transport(&q)?;
    let comps = components(&c2);
    let mut order: Vec<usize> = Vec::with_capacity(cd);
    let mut factors = Vec::with_capacity(comps.len());
    for (idx, comp) in comps.iter().enumerate() {
        let basis: Vec<Vector> = comp.iter().map(|&i| unit(cd, i)).collect();
        let f = c2.restrict_to_basis(&basis)?.named(if comps.len() == 1 {
            format!("{}_factor", g.name())
        } else {
            format!("{}_factor{}", g.name(), idx + 1)
        });
        factors.push(f);
        order.extend(comp.iter().copied());
    }
    // Full change of basis: Euclidean part, then the complement basis
    // (adapted, then permuted into blocks), all in input coordinates.
    let k = es.euclidean_dim;
    let n = g.dim();
    let p = &es.change_of_basis;
    let mut cols: Vec<Vector> = (0..k).map(|i| p.column(i)).collect();
    for &i in &order {
        let in_c = &adapted[i];
        let mut v = crate::exactlin::zero_vec(n);
        for (cj, coef) in in_c.iter().enumerate() {
            crate::exactlin::vec_axpy(&mut v, coef, &p.column(k + cj));
        }
        cols.push(v);
    }
    let change = Matrix::from_columns(n, &cols);
    let certified: Vec<bool> = factors
        .iter()
        .map(|f| cone_dimension(f).map(|r| r == 1).unwrap_or(false))
        .collect();
    let out = SplitResult {
        euclidean_dim: k,
        complete: certified.iter().all(|&b| b),
        certified,
        factors,
        change_of_basis: change,
    };
    if !g.transport(&out.change_of_basis)?.same_constants(&out.recombined()) {
        return Err(StructureError::Internal("factor split does not recombine"));
    }
    Ok(out)
}
