use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::{DerivationAction, LieError};
use crate::exactlin::{
    is_zero_vec, unit, vec_axpy, zero_vec, Matrix, Rational, Subspace, Vector,
};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieAlgebra {
    name: String,
    labels: Vec<String>,
    /// `(i, j, k) -> c^k_{ij}`, zero-based, `i < j`, no zero values.
    constants: BTreeMap<(usize, usize, usize), Rational>,
}

/// First basis triple (1-based, `i < j < k`) on which Jacobi fails.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JacobiViolation {
    pub triple: (usize, usize, usize),
    pub residual: Vector,
}

impl fmt::Display for JacobiViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j, k) = self.triple;
        write!(
            f,
            "Jacobi identity fails on (e{i}, e{j}, e{k}); residual [{}]",
            self.residual
                .iter()
                .map(|r| r.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        )
    }
}

/// `g/I` on the lexicographically first complement of `I` by basis vectors.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: LieAlgebra,
    /// `dim(g/I) x dim(g)`: coordinates of the image in the quotient basis.
    pub projection: Matrix,
    /// `dim(g) x dim(g/I)`: quotient basis vector `a` lifts to `e_{complement[a]}`.
    pub section: Matrix,
    pub complement: Vec<usize>,
}

pub fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("e{i}")).collect()
}

impl LieAlgebra {
    pub fn abelian(n: usize) -> Self {
        LieAlgebra::with_labels(format!("r{n}"), default_labels(n))
    }

    pub fn with_labels(name: impl Into<String>, labels: Vec<String>) -> Self {
        LieAlgebra {
            name: name.into(),
            labels,
            constants: BTreeMap::new(),
        }
    }

    /// Build from 1-based `(i, j, k, c)` entries meaning `[e_i, e_j] += c e_k`.
    /// Either orientation of `(i, j)` is accepted.
    pub fn from_constants(
        name: impl Into<String>,
        dim: usize,
        entries: &[(usize, usize, usize, Rational)],
    ) -> Self {
        let mut g = LieAlgebra::with_labels(name, default_labels(dim));
        for (i, j, k, c) in entries {
            assert!(*i != *j && *i >= 1 && *j >= 1 && *k >= 1, "bad constant index");
            let mut v = g.bracket_basis(i - 1, j - 1);
            v[k - 1] += c;
            g.set_bracket(i - 1, j - 1, &v);
        }
        g
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn set_labels(&mut self, labels: Vec<String>) {
        assert_eq!(labels.len(), self.dim());
        self.labels = labels;
    }

    /// Nonzero constants `((i, j, k), c)`, zero-based, `i < j`, sorted.
    pub fn constants(&self) -> impl Iterator<Item = (&(usize, usize, usize), &Rational)> {
        self.constants.iter()
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.is_empty()
    }

    /// Set `[e_i, e_j] = v` (zero-based); the opposite orientation follows.
    pub fn set_bracket(&mut self, i: usize, j: usize, v: &[Rational]) {
        let n = self.dim();
        assert!(i < n && j < n && i != j && v.len() == n);
        let (a, b, sign) = if i < j { (i, j, false) } else { (j, i, true) };
        for k in 0..n {
            self.constants.remove(&(a, b, k));
            if !v[k].is_zero() {
                let c = if sign { -v[k].clone() } else { v[k].clone() };
                self.constants.insert((a, b, k), c);
            }
        }
    }

    /// `[e_i, e_j]` (zero-based).
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vector {
        let n = self.dim();
        let mut out = zero_vec(n);
        if i == j {
            return out;
        }
        let (a, b, sign) = if i < j { (i, j, false) } else { (j, i, true) };
        for ((_, _, k), c) in self.constants.range((a, b, 0)..(a, b + 1, 0)) {
            out[*k] = if sign { -c.clone() } else { c.clone() };
        }
        out
    }

    fn check_len(&self, v: &[Rational]) -> Result<(), LieError> {
        if v.len() == self.dim() {
            Ok(())
        } else {
            Err(LieError::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            })
        }
    }

    fn check_sub(&self, s: &Subspace) -> Result<(), LieError> {
        if s.ambient_dim() == self.dim() {
            Ok(())
        } else {
            Err(LieError::DimensionMismatch {
                expected: self.dim(),
                found: s.ambient_dim(),
            })
        }
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vector, LieError> {
        self.check_len(x)?;
        self.check_len(y)?;
        let mut out = zero_vec(self.dim());
        for ((i, j, k), c) in &self.constants {
            let coef = &x[*i] * &y[*j] - &x[*j] * &y[*i];
            if !coef.is_zero() {
                out[*k] += coef * c;
            }
        }
        Ok(out)
    }

    /// Matrix of `ad(x)`: column `j` is `[x, e_j]`.
    pub fn ad(&self, x: &[Rational]) -> Result<Matrix, LieError> {
        self.check_len(x)?;
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for ((i, j, k), c) in &self.constants {
            // [x, e_j] picks up x_i c^k_{ij}; [x, e_i] picks up -x_j c^k_{ij}.
            if !x[*i].is_zero() {
                let v = m.get(*k, *j) + &x[*i] * c;
                m.set(*k, *j, v);
            }
            if !x[*j].is_zero() {
                let v = m.get(*k, *i) - &x[*j] * c;
                m.set(*k, *i, v);
            }
        }
        Ok(m)
    }

    pub fn ad_basis(&self, i: usize) -> Matrix {
        self.ad(&unit(self.dim(), i)).expect("length matches")
    }

    /// Jacobi identity on every basis triple.
    pub fn validate(&self) -> Result<(), JacobiViolation> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                let eij = self.bracket_basis(i, j);
                for k in j + 1..n {
                    let ejk = self.bracket_basis(j, k);
                    let eki = self.bracket_basis(k, i);
                    let mut r = self.bracket(&unit(n, i), &ejk).expect("dims");
                    let t2 = self.bracket(&unit(n, j), &eki).expect("dims");
                    let t3 = self.bracket(&unit(n, k), &eij).expect("dims");
                    vec_axpy(&mut r, &Rational::from_integer(1.into()), &t2);
                    vec_axpy(&mut r, &Rational::from_integer(1.into()), &t3);
                    if !is_zero_vec(&r) {
                        return Err(JacobiViolation {
                            triple: (i + 1, j + 1, k + 1),
                            residual: r,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Same algebra in the basis given by the columns of `p`.
    pub fn transport(&self, p: &Matrix) -> Result<LieAlgebra, LieError> {
        let n = self.dim();
        if p.rows() != n || p.cols() != n {
            return Err(LieError::DimensionMismatch {
                expected: n,
                found: p.cols(),
            });
        }
        let inv = p.inverse().ok_or(LieError::SingularBasisChange)?;
        let cols = p.columns();
        let mut out = LieAlgebra::with_labels(self.name.clone(), default_labels(n));
        for a in 0..n {
            for b in a + 1..n {
                let br = self.bracket(&cols[a], &cols[b])?;
                if !is_zero_vec(&br) {
                    out.set_bracket(a, b, &inv.mul_vec(&br));
                }
            }
        }
        Ok(out)
    }

    /// Subalgebra spanned by `basis` (assumed independent), in that basis.
    pub fn restrict_to_basis(&self, basis: &[Vector]) -> Result<LieAlgebra, LieError> {
        let span = Subspace::from_vectors(self.dim(), basis);
        if span.dim() != basis.len() {
            return Err(LieError::SingularBasisChange);
        }
        let coords = Matrix::from_columns(self.dim(), basis);
        let m = basis.len();
        let mut out = LieAlgebra::with_labels(self.name.clone(), default_labels(m));
        for a in 0..m {
            for b in a + 1..m {
                let br = self.bracket(&basis[a], &basis[b])?;
                if is_zero_vec(&br) {
                    continue;
                }
                let c = coords.solve(&br).ok_or(LieError::NotASubalgebra)?;
                out.set_bracket(a, b, &c);
            }
        }
        Ok(out)
    }

    /// Subalgebra `s` in its canonical (RREF) basis.
    pub fn restrict(&self, s: &Subspace) -> Result<LieAlgebra, LieError> {
        self.check_sub(s)?;
        self.restrict_to_basis(&s.basis_vectors())
    }

    /// Span of `[a, b]` over basis pairs.
    pub fn product_space(&self, a: &Subspace, b: &Subspace) -> Result<Subspace, LieError> {
        self.check_sub(a)?;
        self.check_sub(b)?;
        let bv = b.basis_vectors();
        let mut vs = Vec::new();
        for x in a.basis_vectors() {
            for y in &bv {
                vs.push(self.bracket(&x, y)?);
            }
        }
        Ok(Subspace::from_vectors(self.dim(), &vs))
    }

    pub fn full(&self) -> Subspace {
        Subspace::full(self.dim())
    }

    pub fn derived_algebra(&self) -> Subspace {
        let vs: Vec<Vector> = self
            .constants_by_pair()
            .into_values()
            .collect();
        Subspace::from_vectors(self.dim(), &vs)
    }

    fn constants_by_pair(&self) -> BTreeMap<(usize, usize), Vector> {
        let mut out: BTreeMap<(usize, usize), Vector> = BTreeMap::new();
        for ((i, j, k), c) in &self.constants {
            out.entry((*i, *j))
                .or_insert_with(|| zero_vec(self.dim()))[*k] = c.clone();
        }
        out
    }

    /// `{x : [x, s] = 0}`.
    pub fn centralizer(&self, s: &Subspace) -> Result<Subspace, LieError> {
        self.check_sub(s)?;
        let n = self.dim();
        // x -> ([x, s_1], ..., [x, s_m]) stacked; [x, s] = -ad(s) x.
        let mut stacked = Matrix::zeros(0, n);
        for v in s.basis_vectors() {
            stacked = stacked.vstack(&self.ad(&v)?);
        }
        if stacked.rows() == 0 {
            return Ok(Subspace::full(n));
        }
        Ok(stacked.kernel())
    }

    pub fn center(&self) -> Subspace {
        self.centralizer(&self.full()).expect("dims")
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> Result<bool, LieError> {
        Ok(s.contains_subspace(&self.product_space(s, s)?))
    }

    pub fn is_ideal(&self, s: &Subspace) -> Result<bool, LieError> {
        Ok(s.contains_subspace(&self.product_space(&self.full(), s)?))
    }

    pub fn quotient(&self, ideal: &Subspace) -> Result<Quotient, LieError> {
        if !self.is_ideal(ideal)? {
            return Err(LieError::NotAnIdeal);
        }
        let n = self.dim();
        let complement = ideal.complement_indices();
        let q = complement.len();
        let mut cols = ideal.basis_vectors();
        cols.extend(complement.iter().map(|&i| unit(n, i)));
        let inv = Matrix::from_columns(n, &cols)
            .inverse()
            .expect("ideal basis plus complement is a basis");
        let projection = inv.submatrix(ideal.dim(), n, 0, n);
        let section = Matrix::from_columns(n, &complement.iter().map(|&i| unit(n, i)).collect::<Vec<_>>());
        let labels = complement.iter().map(|&i| self.labels[i].clone()).collect();
        let mut algebra = LieAlgebra::with_labels(format!("{}/I", self.name), labels);
        for a in 0..q {
            for b in a + 1..q {
                let br = self.bracket_basis(complement[a], complement[b]);
                let img = projection.mul_vec(&br);
                if !is_zero_vec(&img) {
                    algebra.set_bracket(a, b, &img);
                }
            }
        }
        Ok(Quotient {
            algebra,
            projection,
            section,
            complement,
        })
    }

    /// `ad(x)` restricted to the invariant subspace `inv`, in its canonical basis.
    pub fn adjoint_on(&self, x: &[Rational], inv: &Subspace) -> Result<Matrix, LieError> {
        self.check_len(x)?;
        self.check_sub(inv)?;
        let basis = inv.basis_vectors();
        let mut cols = Vec::with_capacity(basis.len());
        for b in &basis {
            let img = self.bracket(x, b)?;
            cols.push(inv.coordinates(&img).ok_or(LieError::NotInvariant)?);
        }
        Ok(Matrix::from_columns(basis.len(), &cols))
    }

    pub fn direct_sum(a: &LieAlgebra, b: &LieAlgebra) -> LieAlgebra {
        let (na, nb) = (a.dim(), b.dim());
        let labels = merged_labels(&a.labels, &b.labels);
        let mut out = LieAlgebra::with_labels(format!("{} + {}", a.name, b.name), labels);
        for ((i, j, k), c) in &a.constants {
            out.constants.insert((*i, *j, *k), c.clone());
        }
        for ((i, j, k), c) in &b.constants {
            out.constants.insert((i + na, j + na, k + na), c.clone());
        }
        debug_assert_eq!(out.dim(), na + nb);
        out
    }

    /// `n ⋊ h`: basis of `n` followed by basis of `h`, `[h_a, n_i] = M_a n_i`.
    pub fn semidirect_product(act: &DerivationAction) -> Result<LieAlgebra, LieError> {
        act.check()?;
        let (n, h) = (act.target(), act.source());
        let (dn, dh) = (n.dim(), h.dim());
        let labels = merged_labels(&n.labels, &h.labels);
        let mut out = LieAlgebra::with_labels(format!("{} x| {}", n.name, h.name), labels);
        for ((i, j, k), c) in &n.constants {
            out.constants.insert((*i, *j, *k), c.clone());
        }
        for ((i, j, k), c) in &h.constants {
            out.constants.insert((i + dn, j + dn, k + dn), c.clone());
        }
        for (a, m) in act.matrices().iter().enumerate() {
            for i in 0..dn {
                // [n_i, h_a] = -M_a n_i
                for k in 0..dn {
                    let c = m.get(k, i);
                    if !c.is_zero() {
                        out.constants.insert((i, dn + a, k), -c.clone());
                    }
                }
            }
        }
        debug_assert_eq!(out.dim(), dn + dh);
        Ok(out)
    }

    /// Rewrite with labels `e1..en`.
    pub fn with_default_labels(mut self) -> Self {
        self.labels = default_labels(self.dim());
        self
    }

    /// `true` iff the brackets agree entry for entry (labels and name ignored).
    pub fn same_constants(&self, other: &LieAlgebra) -> bool {
        self.dim() == other.dim() && self.constants == other.constants
    }

    /// Whether `[x, y] = 0` identically on `a x b`.
    pub fn commute(&self, a: &Subspace, b: &Subspace) -> Result<bool, LieError> {
        Ok(self.product_space(a, b)?.is_zero())
    }

    /// Express `v` in coordinates relative to `basis` (which spans a space
    /// containing `v`).
    pub fn coords_in(basis: &[Vector], v: &[Rational]) -> Option<Vector> {
        if basis.is_empty() {
            return is_zero_vec(v).then(Vec::new);
        }
        Matrix::from_columns(v.len(), basis).solve(v)
    }
}

fn merged_labels(a: &[String], b: &[String]) -> Vec<String> {
    let clash = a.iter().any(|l| b.contains(l));
    if clash {
        default_labels(a.len() + b.len())
    } else {
        a.iter().chain(b).cloned().collect()
    }
}
