//! Lie algebras given by rational structure constants.
//!
//! An algebra is a basis (with labels) and a sparse table of constants
//! `c^k_{ij}` for `i < j`; `[e_i, e_j] = sum_k c^k_{ij} e_k`. Subspaces of an
//! algebra are plain [`Subspace`]s of the coordinate space; every operation
//! that takes one checks its ambient dimension.

mod action;
mod algebra;
mod series;
mod triangular;

pub use action::{is_derivation, DerivationAction};
pub use algebra::{default_labels, JacobiViolation, LieAlgebra, Quotient};
pub use series::{SeriesKind, SeriesReport};
pub use triangular::{triangularize, TriangularizeFailure, Triangularization};

use thiserror::Error;

use crate::exactlin::LinAlgError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("subspace is not an ideal")]
    NotAnIdeal,
    #[error("subspace is not a subalgebra")]
    NotASubalgebra,
    #[error("subspace is not invariant under the given element")]
    NotInvariant,
    #[error("basis change is singular")]
    SingularBasisChange,
    #[error("action matrix {generator} is not a derivation (fails on basis pair ({i}, {j}))")]
    NotADerivation { generator: usize, i: usize, j: usize },
    #[error("action is not a homomorphism on basis pair ({i}, {j})")]
    NotAHomomorphism { i: usize, j: usize },
    #[error("algebra is not solvable")]
    NotSolvable,
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}
