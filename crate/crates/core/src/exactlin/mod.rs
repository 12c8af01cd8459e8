//! Exact linear and polynomial algebra over arbitrary-precision rationals.
//!
//! Everything downstream (structure constants, reductions, invariants) is built
//! on the types here. There is no floating point anywhere in this module: every
//! rank, kernel and eigenvalue is computed exactly, so two runs on the same
//! input always agree bit for bit.

mod matrix;
mod poly;
mod roots;
mod subspace;

pub use matrix::Matrix;
pub use poly::Poly;
pub use roots::{rational_roots, RationalRoots};
pub use subspace::Subspace;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Arbitrary-precision rational. Always reduced, denominator positive.
pub type Rational = BigRational;

/// Column vector of rationals.
pub type Vector = Vec<Rational>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// `n/d` as a rational. Panics if `d == 0`.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn zero_vec(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

/// Standard basis vector `e_i` of `Q^n` (zero-based).
pub fn unit(n: usize, i: usize) -> Vector {
    let mut v = zero_vec(n);
    v[i] = Rational::one();
    v
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn vec_add(a: &[Rational], b: &[Rational]) -> Vector {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Rational], b: &[Rational]) -> Vector {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Rational], c: &Rational) -> Vector {
    a.iter().map(|x| x * c).collect()
}

/// `a += c * b`, in place.
pub fn vec_axpy(a: &mut [Rational], c: &Rational, b: &[Rational]) {
    if c.is_zero() {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x += c * y;
        }
    }
}

/// Format a rational the way the input language writes it (`3`, `-1/2`).
pub fn fmt_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn fmt_vector(v: &[Rational]) -> Vec<String> {
    v.iter().map(fmt_rational).collect()
}
