use super::{jordan_chevalley, ReductionError};
use crate::exactlin::{rational_roots, vec_axpy, vec_sub, zero_vec, Matrix, Rational, Subspace, Vector};
use crate::liealg::LieAlgebra;

/// Find `m` in `span(domain)` with `f(m) = target`, for a linear `f`.
pub fn solve_inner(
    target: &Matrix,
    domain: &[Vector],
    f: impl Fn(&[Rational]) -> Matrix,
) -> Option<Vector> {
    let ambient = domain.first().map_or(0, Vec::len);
    let flat = |m: &Matrix| -> Vector { m.row_vectors().concat() };
    let rhs = flat(target);
    if domain.is_empty() {
        return rhs.iter().all(|c| *c == Rational::from_integer(0.into())).then(Vec::new);
    }
    let cols: Vec<Vector> = domain.iter().map(|d| flat(&f(d))).collect();
    let coeffs = Matrix::from_columns(rhs.len(), &cols).solve(&rhs)?;
    let mut m = zero_vec(ambient);
    for (c, d) in coeffs.iter().zip(domain) {
        vec_axpy(&mut m, c, d);
    }
    Some(m)
}

/// `x - m` where `ad(m)` is the nilpotent part of `ad(x)`, so that `ad` of
/// the result is the semisimple part of `ad(x)`. `None` if that nilpotent
/// part is not inner.
pub fn inner_semisimple_lift(g: &LieAlgebra, x: &[Rational]) -> Result<Option<Vector>, ReductionError> {
    let jp = jordan_chevalley(&g.ad(x)?)?;
    if jp.is_semisimple() {
        return Ok(Some(x.to_vec()));
    }
    let n = g.dim();
    let basis: Vec<Vector> = (0..n).map(|i| crate::exactlin::unit(n, i)).collect();
    let m = solve_inner(&jp.nilpotent, &basis, |v| g.ad(v).expect("dims"));
    Ok(m.map(|m| vec_sub(x, &m)))
}

/// Eigenspaces of `ad(x)`, increasing eigenvalue; `None` unless `ad(x)` is
/// diagonalizable over Q.
pub fn weight_decomposition(g: &LieAlgebra, x: &[Rational]) -> Option<Vec<(Rational, Subspace)>> {
    let ad = g.ad(x).ok()?;
    let roots = rational_roots(&ad.char_poly().ok()?).ok()?;
    if !roots.fully_split {
        return None;
    }
    let mut out = Vec::new();
    let mut total = 0;
    for (lam, _) in roots.roots {
        let e = ad.eigenspace(&lam).ok()?;
        total += e.dim();
        out.push((lam, e));
    }
    (total == g.dim()).then_some(out)
}
