use num_traits::Zero;

use super::{is_zero_vec, unit, Matrix, Rational, Vector};

/// Linear subspace of `Q^n`, stored as the nonzero rows of an RREF matrix.
///
/// The RREF basis is the canonical representative, so derived equality is
/// equality of subspaces.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace {
            ambient_dim: n,
            basis: Matrix::zeros(0, n),
            pivots: Vec::new(),
        }
    }

    pub fn full(n: usize) -> Self {
        Subspace {
            ambient_dim: n,
            basis: Matrix::identity(n),
            pivots: (0..n).collect(),
        }
    }

    /// Span of the given vectors (zero vectors and dependencies allowed).
    pub fn from_vectors(n: usize, vectors: &[Vector]) -> Self {
        let useful: Vec<Vector> = vectors
            .iter()
            .filter(|v| !is_zero_vec(v))
            .cloned()
            .collect();
        if useful.is_empty() {
            return Subspace::zero(n);
        }
        assert!(useful.iter().all(|v| v.len() == n), "vector length mismatch");
        let (r, pivots) = Matrix::from_rows(useful).rref_with_pivots();
        let basis = r.submatrix(0, pivots.len(), 0, n);
        Subspace {
            ambient_dim: n,
            basis,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// Canonical basis: the RREF rows.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is not in
    /// the subspace.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vector> {
        assert_eq!(v.len(), self.ambient_dim);
        let coords: Vector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (i, c) in coords.iter().enumerate() {
            super::vec_axpy(&mut residual, &-c.clone(), self.basis.row(i));
        }
        is_zero_vec(&residual).then_some(coords)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis_vectors().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vs = self.basis_vectors();
        vs.extend(other.basis_vectors());
        Subspace::from_vectors(self.ambient_dim, &vs)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let n = self.ambient_dim;
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(n);
        }
        let a = self.basis_vectors();
        let b = other.basis_vectors();
        // Solve sum x_i a_i - sum y_j b_j = 0.
        let mut cols = a.clone();
        cols.extend(b.iter().map(|v| v.iter().map(|x| -x.clone()).collect()));
        let kernel = Matrix::from_columns(n, &cols).kernel();
        let vectors: Vec<Vector> = kernel
            .basis_vectors()
            .iter()
            .map(|k| {
                let mut v = super::zero_vec(n);
                for (xi, ai) in k.iter().zip(&a) {
                    super::vec_axpy(&mut v, xi, ai);
                }
                v
            })
            .collect();
        Subspace::from_vectors(n, &vectors)
    }

    /// Indices of the lexicographically first set of standard basis vectors
    /// that completes this subspace to the whole space.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut current = self.clone();
        let mut out = Vec::new();
        for i in 0..self.ambient_dim {
            if current.is_full() {
                break;
            }
            let e = unit(self.ambient_dim, i);
            if !current.contains(&e) {
                current = current.sum(&Subspace::from_vectors(self.ambient_dim, &[e]));
                out.push(i);
            }
        }
        out
    }

    /// Greedily extend `seed` (assumed independent, spanning a subspace of
    /// `self`) by canonical basis vectors of `self` until it spans `self`.
    pub fn extend_basis(&self, seed: &[Vector]) -> Vec<Vector> {
        let mut out: Vec<Vector> = seed.to_vec();
        let mut span = Subspace::from_vectors(self.ambient_dim, seed);
        for v in self.basis_vectors() {
            if span.dim() == self.dim() {
                break;
            }
            if !span.contains(&v) {
                span = span.sum(&Subspace::from_vectors(self.ambient_dim, std::slice::from_ref(&v)));
                out.push(v);
            }
        }
        out
    }

    /// If the canonical basis vector `i` is a standard unit vector, its index.
    pub fn basis_unit_index(&self, i: usize) -> Option<usize> {
        let row = self.basis.row(i);
        let nonzero: Vec<usize> = (0..row.len()).filter(|&k| !row[k].is_zero()).collect();
        (nonzero.len() == 1).then(|| nonzero[0])
    }
}
