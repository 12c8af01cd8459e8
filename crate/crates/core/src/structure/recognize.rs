//! Normal-form recognizers. Each one builds a candidate basis from weight
//! data and returns `(params, basis)`; the caller certifies the answer by
//! transporting the input into that basis and comparing constants.

use num_traits::{Signed, Zero};

use crate::exactlin::{
    int, rational_roots, unit, vec_axpy, vec_scale, vec_sub, zero_vec, Matrix, Rational, Subspace, Vector,
};
use crate::geometry::is_heisenberg;
use crate::liealg::{triangularize, LieAlgebra};
use crate::reduction::{exponential_radical, inner_semisimple_lift, jordan_chevalley};

pub(crate) type Candidate = (Vec<Rational>, Vec<Vector>);

fn to_ambient(basis: &[Vector], coords: &[Rational]) -> Vector {
    let mut v = zero_vec(basis.first().map_or(0, Vec::len));
    for (c, b) in coords.iter().zip(basis) {
        vec_axpy(&mut v, c, b);
    }
    v
}

/// Eigenspaces of `m` (in the coordinates of `basis`) mapped to ambient
/// vectors. `None` unless `m` is diagonalizable over Q.
fn eigen_ambient(m: &Matrix, basis: &[Vector]) -> Option<Vec<(Rational, Vec<Vector>)>> {
    let roots = rational_roots(&m.char_poly().ok()?).ok()?;
    if !roots.fully_split {
        return None;
    }
    let mut out = Vec::new();
    let mut total = 0;
    for (lam, _) in roots.roots {
        let e = m.eigenspace(&lam).ok()?;
        total += e.dim();
        out.push((lam, e.basis_vectors().iter().map(|c| to_ambient(basis, c)).collect()));
    }
    (total == m.rows()).then_some(out)
}

/// Rank-one frame: a semisimple `x` outside `R_exp` and the weight spaces of
/// `ad(x)` on `R_exp`.
struct RankOne {
    x: Vector,
    radical: Subspace,
    weights: Vec<(Rational, Vec<Vector>)>,
}

impl RankOne {
    fn flat(&self) -> Vec<(Rational, Vector)> {
        self.weights
            .iter()
            .flat_map(|(l, vs)| vs.iter().map(move |v| (l.clone(), v.clone())))
            .collect()
    }
}

fn rank_one(g: &LieAlgebra) -> Option<RankOne> {
    triangularize(g).ok()?;
    let r = exponential_radical(g).ok()?;
    if g.dim() != r.dim() + 1 {
        return None;
    }
    let s = unit(g.dim(), r.complement_indices()[0]);
    let x = inner_semisimple_lift(g, &s).ok()??;
    if r.contains(&x) {
        return None;
    }
    let d = g.adjoint_on(&x, &r).ok()?;
    let weights = eigen_ambient(&d, &r.basis_vectors())?;
    Some(RankOne { x, radical: r, weights })
}

fn radical_is_abelian(g: &LieAlgebra, r: &Subspace) -> bool {
    g.restrict(r).map(|a| a.is_abelian()).unwrap_or(false)
}

pub(crate) fn a2(g: &LieAlgebra) -> Option<Candidate> {
    if g.dim() != 2 {
        return None;
    }
    let f = rank_one(g)?;
    let [(lam, vs)] = f.weights.as_slice() else { return None };
    if lam.is_zero() {
        return None;
    }
    Some((vec![], vec![vs[0].clone(), vec_scale(&f.x, &lam.recip())]))
}

pub(crate) fn heis(g: &LieAlgebra) -> Option<Candidate> {
    if g.dim() != 3 || !is_heisenberg(g) {
        return None;
    }
    let idx = g.center().complement_indices();
    let (e1, e2) = (unit(3, idx[0]), unit(3, idx[1]));
    let e3 = g.bracket(&e1, &e2).ok()?;
    Some((vec![], vec![e1, e2, e3]))
}

pub(crate) fn g3_3(g: &LieAlgebra) -> Option<Candidate> {
    if g.dim() != 3 {
        return None;
    }
    let f = rank_one(g)?;
    let [(lam, vs)] = f.weights.as_slice() else { return None };
    if lam.is_zero() || !radical_is_abelian(g, &f.radical) {
        return None;
    }
    Some((vec![], vec![vs[0].clone(), vs[1].clone(), vec_scale(&f.x, &lam.recip())]))
}

/// Normalizing weight: largest modulus, the positive one on a tie.
fn dominant(ws: &[Rational]) -> Option<Rational> {
    let m = ws.iter().map(|w| w.abs()).max()?;
    if m.is_zero() {
        return None;
    }
    Some(if ws.contains(&m) { m } else { -m })
}

pub(crate) fn g3_5(g: &LieAlgebra) -> Option<Candidate> {
    if g.dim() != 3 {
        return None;
    }
    let f = rank_one(g)?;
    if f.weights.len() != 2 || !radical_is_abelian(g, &f.radical) {
        return None;
    }
    let ws: Vec<Rational> = f.weights.iter().map(|(l, _)| l.clone()).collect();
    let mu = dominant(&ws)?;
    let (main, other) = if f.weights[0].0 == mu { (0, 1) } else { (1, 0) };
    let alpha = &f.weights[other].0 / &mu;
    Some((
        vec![alpha],
        vec![
            f.weights[main].1[0].clone(),
            f.weights[other].1[0].clone(),
            vec_scale(&f.x, &mu.recip()),
        ],
    ))
}

pub(crate) fn g4_5(g: &LieAlgebra) -> Option<Candidate> {
    if g.dim() != 4 {
        return None;
    }
    let f = rank_one(g)?;
    if !radical_is_abelian(g, &f.radical) {
        return None;
    }
    let flat = f.flat();
    let m = flat.iter().map(|(w, _)| w.abs()).max()?;
    if m.is_zero() || flat.iter().any(|(w, _)| w.is_zero()) {
        return None;
    }
    for mu in [m.clone(), -m] {
        let Some(lead) = flat.iter().position(|(w, _)| *w == mu) else { continue };
        let mut rest: Vec<(Rational, Vector)> = flat
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != lead)
            .map(|(_, (w, v))| (w / &mu, v.clone()))
            .collect();
        rest.sort_by(|a, b| a.0.cmp(&b.0));
        let (alpha, beta) = (rest[0].0.clone(), rest[1].0.clone());
        if alpha == int(-1) && beta.is_negative() {
            continue;
        }
        return Some((
            vec![alpha, beta],
            vec![flat[lead].1.clone(), rest[0].1.clone(), rest[1].1.clone(), vec_scale(&f.x, &mu.recip())],
        ));
    }
    None
}

pub(crate) fn g4_8(g: &LieAlgebra) -> Option<Candidate> {
    if g.dim() != 4 {
        return None;
    }
    let f = rank_one(g)?;
    if f.weights.len() != 3 || f.weights.iter().any(|(_, vs)| vs.len() != 1) {
        return None;
    }
    let (lo, mid, hi) = (&f.weights[0], &f.weights[1], &f.weights[2]);
    if !mid.0.is_zero() || lo.0 != -hi.0.clone() {
        return None;
    }
    let mu = hi.0.clone();
    let e1 = hi.1[0].clone();
    let e2 = lo.1[0].clone();
    let e3 = g.bracket(&e1, &e2).ok()?;
    Some((vec![], vec![e1, e2, e3, vec_scale(&f.x, &mu.recip())]))
}

pub(crate) fn g4_9(g: &LieAlgebra) -> Option<Candidate> {
    if g.dim() != 4 {
        return None;
    }
    let f = rank_one(g)?;
    let rb = f.radical.basis_vectors();
    let n = g.restrict(&f.radical).ok()?;
    if !is_heisenberg(&n) {
        return None;
    }
    let z0 = to_ambient(&rb, &n.center().basis_vectors()[0]);
    let c = f.weights.iter().find(|(_, vs)| {
        Subspace::from_vectors(g.dim(), vs).contains(&z0)
    })?.0.clone();
    let mut others: Vec<Rational> = Vec::new();
    let mut dropped = false;
    for (w, vs) in &f.weights {
        for _ in vs {
            if *w == c && !dropped {
                dropped = true;
            } else {
                others.push(w.clone());
            }
        }
    }
    let [p0, q0] = others.as_slice() else { return None };
    let p = dominant(&[p0.clone(), q0.clone()])?;
    let q = if *p0 == p { q0.clone() } else { p0.clone() };
    let line = Subspace::from_vectors(g.dim(), &[z0]);
    let off_center = |w: &Rational| -> Vec<Vector> {
        f.weights
            .iter()
            .filter(|(l, _)| l == w)
            .flat_map(|(_, vs)| vs.iter().filter(|v| !line.contains(v)).cloned())
            .collect()
    };
    let (e1, e2) = if p == q {
        let vs = off_center(&p);
        if vs.len() < 2 {
            return None;
        }
        (vs[0].clone(), vs[1].clone())
    } else {
        (off_center(&p).first()?.clone(), off_center(&q).first()?.clone())
    };
    let e3 = g.bracket(&e1, &e2).ok()?;
    Some((vec![&q / &p], vec![e1, e2, e3, vec_scale(&f.x, &p.recip())]))
}

/// Rank-two frame for an abelian `R_exp` with abelian quotient: commuting
/// `x` (acting semisimply) and `y` (acting nilpotently) spanning a
/// complement.
struct RankTwo {
    x: Vector,
    y: Vector,
    radical: Subspace,
    ax: Matrix,
    ay: Matrix,
}

fn flat(m: &Matrix) -> Vector {
    m.row_vectors().concat()
}

fn combine(a: &Matrix, b: &Matrix, c: &[Rational]) -> Matrix {
    let mut out = a.scale(&c[0]);
    let bb = b.scale(&c[1]);
    for r in 0..out.rows() {
        for k in 0..out.cols() {
            let v = out.get(r, k) + bb.get(r, k);
            out.set(r, k, v);
        }
    }
    out
}

fn rank_two(g: &LieAlgebra) -> Option<RankTwo> {
    triangularize(g).ok()?;
    let r = exponential_radical(g).ok()?;
    let n = g.dim();
    if n != r.dim() + 2 || !radical_is_abelian(g, &r) {
        return None;
    }
    let idx = r.complement_indices();
    let (s1, s2) = (unit(n, idx[0]), unit(n, idx[1]));
    if !r.contains(&g.bracket(&s1, &s2).ok()?) {
        return None;
    }
    let (a1, a2) = (g.adjoint_on(&s1, &r).ok()?, g.adjoint_on(&s2, &r).ok()?);
    let (j1, j2) = (jordan_chevalley(&a1).ok()?, jordan_chevalley(&a2).ok()?);
    let rows = flat(&j1.nilpotent).len();
    let kill = |m1: &Matrix, m2: &Matrix| -> Option<Vector> {
        let k = Matrix::from_columns(rows, &[flat(m1), flat(m2)]).kernel();
        (k.dim() == 1).then(|| k.basis_vectors()[0].clone())
    };
    let c = kill(&j1.nilpotent, &j2.nilpotent)?;
    let d = kill(&j1.semisimple, &j2.semisimple)?;
    let lin = |k: &[Rational]| {
        let mut v = vec_scale(&s1, &k[0]);
        vec_axpy(&mut v, &k[1], &s2);
        v
    };
    let x = lin(&c);
    let y0 = lin(&d);
    let ax = combine(&a1, &a2, &c);
    // Make y commute with x: [x, y0 - m] = 0 for some m in R.
    let rb = r.basis_vectors();
    let target = r.coordinates(&g.bracket(&x, &y0).ok()?)?;
    let m = ax.solve(&target)?;
    let y = vec_sub(&y0, &to_ambient(&rb, &m));
    if !g.bracket(&x, &y).ok()?.iter().all(Zero::is_zero) {
        return None;
    }
    let ay = g.adjoint_on(&y, &r).ok()?;
    Some(RankTwo { x, y, radical: r, ax, ay })
}

pub(crate) fn g4_9_0(g: &LieAlgebra) -> Option<Candidate> {
    if g.dim() != 4 {
        return None;
    }
    let f = rank_two(g)?;
    let w = f.ax.get(0, 0).clone();
    if w.is_zero() || f.ax != Matrix::identity(2).scale(&w) || f.ay.is_zero() {
        return None;
    }
    let rb = f.radical.basis_vectors();
    let e2 = (0..2)
        .map(|i| rb[i].clone())
        .find(|v| !g.bracket(&f.y, v).map(|b| b.iter().all(Zero::is_zero)).unwrap_or(true))?;
    let e3 = f.y.clone();
    let e1 = g.bracket(&e2, &e3).ok()?;
    Some((vec![], vec![e1, e2, e3, vec_scale(&f.x, &w.recip())]))
}

pub(crate) fn g5_19(g: &LieAlgebra) -> Option<Candidate> {
    if g.dim() != 5 {
        return None;
    }
    let f = rank_two(g)?;
    let rb = f.radical.basis_vectors();
    let image = Subspace::from_vectors(3, &f.ay.columns());
    if image.dim() != 1 || !f.ay.pow(2).is_zero() {
        return None;
    }
    let u = image.basis_vectors()[0].clone();
    let au = f.ax.mul_vec(&u);
    let w = u.iter().zip(&au).find(|(a, _)| !a.is_zero()).map(|(a, b)| b / a)?;
    if w.is_zero() || au != vec_scale(&u, &w) {
        return None;
    }
    let d = f.ax.scale(&w.recip());
    let ker = f.ay.kernel();
    let e1c = d
        .eigenspace(&int(1))
        .ok()?
        .basis_vectors()
        .into_iter()
        .find(|v| !ker.contains(v))?;
    let e1 = to_ambient(&rb, &e1c);
    let e2 = f.y.clone();
    let e3 = g.bracket(&e1, &e2).ok()?;
    let e3c = f.radical.coordinates(&e3)?;
    let roots = rational_roots(&d.char_poly().ok()?).ok()?;
    let mut found = None;
    for (lam, _) in &roots.roots {
        let space = d.eigenspace(lam).ok()?.intersection(&ker);
        if let Some(v) = space
            .basis_vectors()
            .into_iter()
            .find(|v| Subspace::from_vectors(3, &[e3c.clone(), v.clone()]).dim() == 2)
        {
            found = Some((lam.clone(), v));
            break;
        }
    }
    let (beta, e4c) = found?;
    Some((
        vec![int(1), beta],
        vec![e1, e2, e3, to_ambient(&rb, &e4c), vec_scale(&f.x, &w.recip())],
    ))
}
