//! Constructive Lie theorem over Q.
//!
//! Builds `0 = V_0 ⊂ V_1 ⊂ … ⊂ V_n = g` one line at a time. At each step the
//! adjoint action on `g/V_k` has a common eigenvector if `g` is completely
//! solvable. Weights vanish on `[g, g]`, so the search is confined to the
//! joint kernel of `[g, g]`. That kernel is invariant, and the remaining
//! generators commute on it, so their rational eigenspaces can be intersected
//! one generator at a time.

use std::fmt;

use num_traits::Zero;

use super::LieAlgebra;
use crate::exactlin::{rational_roots, unit, Matrix, Rational, Subspace, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangularization {
    /// `a_0 = g ⊃ a_1 ⊃ … ⊃ a_n = 0`, every member an ideal of `g`.
    pub flag: Vec<Subspace>,
    /// `v_1, …, v_n` with `span(v_1..v_k) = a_{n-k}`; `ad` is upper
    /// triangular in this basis.
    pub adapted_basis: Vec<Vector>,
    /// `weights[k][i]`: the diagonal entry of `ad(e_i)` at position `k`.
    pub weights: Vec<Vector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TriangularizeFailure {
    NotSolvable,
    NoRationalCommonEigenvector { step: usize },
}

impl TriangularizeFailure {
    pub fn reason(&self) -> &'static str {
        match self {
            TriangularizeFailure::NotSolvable => "not solvable",
            TriangularizeFailure::NoRationalCommonEigenvector { .. } => {
                "no rational common eigenvector"
            }
        }
    }
}

impl fmt::Display for TriangularizeFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TriangularizeFailure::NotSolvable => write!(f, "not solvable"),
            TriangularizeFailure::NoRationalCommonEigenvector { step } => {
                write!(f, "no rational common eigenvector (flag step {})", step + 1)
            }
        }
    }
}

pub fn triangularize(g: &LieAlgebra) -> Result<Triangularization, TriangularizeFailure> {
    if !g.is_solvable() {
        return Err(TriangularizeFailure::NotSolvable);
    }
    let n = g.dim();
    let derived = g.derived_algebra();
    let kill: Vec<Vector> = derived.basis_vectors();
    let gens: Vec<Vector> = derived
        .complement_indices()
        .into_iter()
        .map(|i| unit(n, i))
        .collect();
    let ads: Vec<Matrix> = (0..n).map(|i| g.ad_basis(i)).collect();

    let mut span = Subspace::zero(n);
    let mut adapted = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for step in 0..n {
        let (proj, sect) = quotient_maps(&span);
        let induced = |x: &[Rational]| -> Matrix {
            let adx = g.ad(x).expect("dims");
            &(&proj * &adx) * &sect
        };
        let q = sect.cols();
        let mut stacked = Matrix::zeros(0, q);
        for y in &kill {
            stacked = stacked.vstack(&induced(y));
        }
        let w = if stacked.rows() == 0 {
            Subspace::full(q)
        } else {
            stacked.kernel()
        };
        let ops: Vec<Matrix> = gens.iter().map(|x| induced(x)).collect();
        let vbar = common_eigenvector(&ops, &w)
            .ok_or(TriangularizeFailure::NoRationalCommonEigenvector { step })?;
        let v = sect.mul_vec(&vbar);
        let mut lam = Vec::with_capacity(n);
        for ad in &ads {
            let img = (&(&proj * ad) * &sect).mul_vec(&vbar);
            let mu = eigen_ratio(&img, &vbar)
                .ok_or(TriangularizeFailure::NoRationalCommonEigenvector { step })?;
            lam.push(mu);
        }
        span = span.sum(&Subspace::from_vectors(n, std::slice::from_ref(&v)));
        adapted.push(v);
        weights.push(lam);
    }
    let mut flag: Vec<Subspace> = (0..=n)
        .map(|k| Subspace::from_vectors(n, &adapted[..k]))
        .collect();
    flag.reverse();
    Ok(Triangularization {
        flag,
        adapted_basis: adapted,
        weights,
    })
}

/// Projection onto (and section from) the lex-first coordinate complement of
/// `v`, i.e. matrices of `Q^n -> Q^n / v` and back.
fn quotient_maps(v: &Subspace) -> (Matrix, Matrix) {
    let n = v.ambient_dim();
    let comp = v.complement_indices();
    let mut cols = v.basis_vectors();
    cols.extend(comp.iter().map(|&i| unit(n, i)));
    let inv = Matrix::from_columns(n, &cols).inverse().expect("basis");
    let proj = inv.submatrix(v.dim(), n, 0, n);
    let sect = Matrix::from_columns(n, &comp.iter().map(|&i| unit(n, i)).collect::<Vec<_>>());
    (proj, sect)
}

/// A common eigenvector of `ops` inside the invariant subspace `w`, trying
/// every rational eigenvalue of each operator in turn.
fn common_eigenvector(ops: &[Matrix], w: &Subspace) -> Option<Vector> {
    if w.is_zero() {
        return None;
    }
    let Some((a, rest)) = ops.split_first() else {
        return Some(w.basis_vectors().swap_remove(0));
    };
    let basis = w.basis_vectors();
    let mut cols = Vec::with_capacity(basis.len());
    for b in &basis {
        cols.push(w.coordinates(&a.mul_vec(b))?);
    }
    let restricted = Matrix::from_columns(basis.len(), &cols);
    let roots = rational_roots(&restricted.char_poly().ok()?).ok()?;
    for (lam, _) in roots.roots {
        let shifted = a - &Matrix::identity(a.rows()).scale(&lam);
        let e = shifted.kernel().intersection(w);
        if let Some(v) = common_eigenvector(rest, &e) {
            return Some(v);
        }
    }
    None
}

/// `mu` with `img = mu * v`, if it exists (`v` nonzero).
fn eigen_ratio(img: &[Rational], v: &[Rational]) -> Option<Rational> {
    let k = v.iter().position(|c| !c.is_zero())?;
    let mu = &img[k] / &v[k];
    img.iter()
        .zip(v)
        .all(|(a, b)| *a == &mu * b)
        .then_some(mu)
}
