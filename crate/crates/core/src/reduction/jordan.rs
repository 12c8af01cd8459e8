use serde::Serialize;

use super::ReductionError;
use crate::exactlin::{rational_roots, Matrix, Poly};

/// `M = S + N` with `S` diagonalizable over Q, `N` nilpotent, `SN = NS`,
/// and `S = witness(M)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JordanPair {
    #[serde(serialize_with = "crate::report::ser_matrix")]
    pub semisimple: Matrix,
    #[serde(serialize_with = "crate::report::ser_matrix")]
    pub nilpotent: Matrix,
    #[serde(serialize_with = "crate::report::ser_poly")]
    pub witness: Poly,
}

/// Newton iteration `q <- q - p(q) / p'(q)` in `Q[x]/(mu)`, where `mu` is the
/// minimal polynomial and `p` its squarefree part. Starting from `q = x` the
/// iteration converges quadratically to the `q` with `p(q) = 0 mod mu`;
/// `q(M)` is then the semisimple part.
pub fn jordan_chevalley(m: &Matrix) -> Result<JordanPair, ReductionError> {
    let chi = m.char_poly()?;
    if !rational_roots(&chi)?.fully_split {
        return Err(ReductionError::IrrationalSpectrum);
    }
    let mu = m.min_poly()?;
    let p = mu.squarefree_part()?;
    let dp = p.derivative();
    let mut q = Poly::x().rem(&mu);
    // Quadratic convergence: log2(dim) + 1 rounds always suffice.
    for _ in 0..=usize::BITS {
        let pq = compose_mod(&p, &q, &mu);
        if pq.is_zero() {
            let semisimple = q.eval_matrix(m)?;
            let nilpotent = m - &semisimple;
            return Ok(JordanPair {
                semisimple,
                nilpotent,
                witness: q,
            });
        }
        let inv = compose_mod(&dp, &q, &mu)
            .inverse_mod(&mu)
            .ok_or(ReductionError::Internal("p'(q) not invertible modulo the minimal polynomial"))?;
        q = (&q - &(&pq * &inv)).rem(&mu);
    }
    Err(ReductionError::Internal("Jordan-Chevalley iteration did not converge"))
}

/// `p(q) mod m` by Horner's rule.
fn compose_mod(p: &Poly, q: &Poly, m: &Poly) -> Poly {
    p.coeffs()
        .iter()
        .rev()
        .fold(Poly::zero(), |acc, c| {
            (&(&acc * q) + &Poly::constant(c.clone())).rem(m)
        })
}

impl JordanPair {
    pub fn is_semisimple(&self) -> bool {
        self.nilpotent.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{q, Matrix};

    #[test]
    fn spec_examples() {
        let n = Matrix::from_i64(&[&[0, 1], &[0, 0]]);
        let jp = jordan_chevalley(&n).unwrap();
        assert!(jp.semisimple.is_zero());
        assert_eq!(jp.nilpotent, n);

        let jp = jordan_chevalley(&Matrix::identity(2)).unwrap();
        assert_eq!(jp.semisimple, Matrix::identity(2));
        assert!(jp.nilpotent.is_zero());

        let j = Matrix::from_i64(&[&[1, 1], &[0, 1]]);
        let jp = jordan_chevalley(&j).unwrap();
        assert_eq!(jp.semisimple, Matrix::identity(2));
        assert_eq!(jp.nilpotent, n);
    }

    #[test]
    fn repeated_eigenvalue_with_indirect_coupling() {
        // Eigenvalue 1 twice, coupled through the 1/2 entry: not diagonalizable.
        let m = Matrix::from_rows(vec![
            vec![q(1, 1), q(3, 1), q(0, 1)],
            vec![q(0, 1), q(1, 2), q(1, 1)],
            vec![q(0, 1), q(0, 1), q(1, 1)],
        ]);
        let jp = jordan_chevalley(&m).unwrap();
        assert!(jp.nilpotent.pow(3).is_zero());
        assert_eq!(&jp.semisimple * &jp.nilpotent, &jp.nilpotent * &jp.semisimple);
        assert!(!jp.nilpotent.is_zero());
    }

    #[test]
    fn irrational_spectrum_is_rejected() {
        let rot = Matrix::from_i64(&[&[0, -1], &[1, 0]]);
        assert_eq!(jordan_chevalley(&rot), Err(ReductionError::IrrationalSpectrum));
    }
}
