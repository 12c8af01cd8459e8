use super::{LieAlgebra, LieError};
use crate::exactlin::{unit, vec_add, Matrix, Rational};

/// A linear map `h -> Der(n)` given on the basis of `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationAction {
    source: LieAlgebra,
    target: LieAlgebra,
    matrices: Vec<Matrix>,
}

impl DerivationAction {
    /// Checked constructor: every matrix must be a derivation of `target`
    /// and the map must be a Lie homomorphism.
    pub fn new(
        source: LieAlgebra,
        target: LieAlgebra,
        matrices: Vec<Matrix>,
    ) -> Result<Self, LieError> {
        let act = DerivationAction {
            source,
            target,
            matrices,
        };
        act.check()?;
        Ok(act)
    }

    /// Unchecked constructor, for tests that need a broken action.
    pub fn new_unchecked(source: LieAlgebra, target: LieAlgebra, matrices: Vec<Matrix>) -> Self {
        DerivationAction {
            source,
            target,
            matrices,
        }
    }

    pub fn source(&self) -> &LieAlgebra {
        &self.source
    }

    pub fn target(&self) -> &LieAlgebra {
        &self.target
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    /// Matrix of the element with coordinates `v` in the basis of `h`.
    pub fn apply(&self, v: &[Rational]) -> Matrix {
        let n = self.target.dim();
        v.iter()
            .zip(&self.matrices)
            .fold(Matrix::zeros(n, n), |acc, (c, m)| &acc + &m.scale(c))
    }

    pub fn check(&self) -> Result<(), LieError> {
        let (dn, dh) = (self.target.dim(), self.source.dim());
        if self.matrices.len() != dh {
            return Err(LieError::DimensionMismatch {
                expected: dh,
                found: self.matrices.len(),
            });
        }
        for m in &self.matrices {
            if m.rows() != dn || m.cols() != dn {
                return Err(LieError::DimensionMismatch {
                    expected: dn,
                    found: m.rows(),
                });
            }
        }
        for (g, m) in self.matrices.iter().enumerate() {
            if let Some((i, j)) = leibniz_failure(&self.target, m) {
                return Err(LieError::NotADerivation { generator: g, i, j });
            }
        }
        for a in 0..dh {
            for b in a + 1..dh {
                let lhs = self.apply(&self.source.bracket_basis(a, b));
                let rhs = self.matrices[a].commutator(&self.matrices[b]);
                if lhs != rhs {
                    return Err(LieError::NotAHomomorphism { i: a, j: b });
                }
            }
        }
        Ok(())
    }
}

/// First basis pair on which `D[x, y] = [Dx, y] + [x, Dy]` fails.
pub(crate) fn leibniz_failure(g: &LieAlgebra, d: &Matrix) -> Option<(usize, usize)> {
    let n = g.dim();
    let cols = d.columns();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = d.mul_vec(&g.bracket_basis(i, j));
            let rhs = vec_add(
                &g.bracket(&cols[i], &unit(n, j)).expect("dims"),
                &g.bracket(&unit(n, i), &cols[j]).expect("dims"),
            );
            if lhs != rhs {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn is_derivation(g: &LieAlgebra, d: &Matrix) -> bool {
    d.rows() == g.dim() && d.cols() == g.dim() && leibniz_failure(g, d).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{int, q};

    #[test]
    fn semidirect_examples() {
        let r2 = LieAlgebra::abelian(2);
        let r1 = LieAlgebra::abelian(1);
        let act = DerivationAction::new(r1.clone(), r2.clone(), vec![Matrix::identity(2)]).unwrap();
        let g = LieAlgebra::semidirect_product(&act).unwrap();
        let g33 = LieAlgebra::from_constants("g3_3", 3, &[(3, 1, 1, int(1)), (3, 2, 2, int(1))]);
        assert!(g.same_constants(&g33));

        let d = Matrix::diagonal(&[int(1), q(1, 2)]);
        let act = DerivationAction::new(r1, r2, vec![d]).unwrap();
        let g = LieAlgebra::semidirect_product(&act).unwrap();
        let g35 = LieAlgebra::from_constants("g3_5", 3, &[(3, 1, 1, int(1)), (3, 2, 2, q(1, 2))]);
        assert!(g.same_constants(&g35));

        let heis = LieAlgebra::from_constants("heis", 3, &[(1, 2, 3, int(1))]);
        let act = DerivationAction::new(LieAlgebra::abelian(0), heis.clone(), vec![]).unwrap();
        assert!(LieAlgebra::semidirect_product(&act).unwrap().same_constants(&heis));
    }

    #[test]
    fn broken_leibniz_is_rejected() {
        let heis = LieAlgebra::from_constants("heis", 3, &[(1, 2, 3, int(1))]);
        // diag(1, 1, 1) is not a derivation of heis (needs weight 2 on e3).
        let bad = Matrix::identity(3);
        let err = DerivationAction::new(LieAlgebra::abelian(1), heis.clone(), vec![bad]).unwrap_err();
        assert!(matches!(err, LieError::NotADerivation { .. }));
        let good = Matrix::diagonal(&[int(1), int(1), int(2)]);
        assert!(DerivationAction::new(LieAlgebra::abelian(1), heis, vec![good]).is_ok());
    }

    #[test]
    fn non_homomorphism_is_rejected() {
        // h = A2 acting on R by matrices that commute although [e2, e1] = e1
        // demands M1 = [M2, M1] = 0.
        let a2 = LieAlgebra::from_constants("a2", 2, &[(2, 1, 1, int(1))]);
        let m = vec![Matrix::identity(1), Matrix::identity(1)];
        let err = DerivationAction::new(a2, LieAlgebra::abelian(1), m).unwrap_err();
        assert!(matches!(err, LieError::NotAHomomorphism { .. }));
    }
}
