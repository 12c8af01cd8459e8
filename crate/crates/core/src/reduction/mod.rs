//! Exponential radical, cone dimension, Jordan–Chevalley decomposition and
//! the ρ₁ / ρ∞ reductions.
//!
//! ρ₁ replaces the action of `g / R_exp g` on `R_exp g` by the semisimple
//! parts of the adjoint matrices. ρ∞ is computed as ρ∞ ∘ ρ₁: the quotient is
//! replaced by its associated graded algebra and only the degree-one layer
//! keeps acting.

mod c1;
mod jordan;
mod lift;
mod rho;

pub use c1::{is_class_c1, ClassC1};
pub use jordan::{jordan_chevalley, JordanPair};
pub use lift::{inner_semisimple_lift, solve_inner, weight_decomposition};
pub use rho::{cone_dimension, exponential_radical, rho1, rho_infinity, ReductionResult};

use thiserror::Error;

use crate::exactlin::LinAlgError;
use crate::liealg::{LieError, TriangularizeFailure};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("algebra is not solvable")]
    NotSolvable,
    #[error("algebra is not completely solvable over Q: {0}")]
    NotCompletelySolvable(TriangularizeFailure),
    #[error("irrational spectrum: characteristic polynomial does not split over Q")]
    IrrationalSpectrum,
    #[error("semisimple parts of quotient generators {a} and {b} do not commute")]
    CommutationFailure { a: String, b: String },
    #[error("semisimple parts do not define a Lie action: {0}")]
    ActionFailure(LieError),
    #[error("graded action does not vanish on C^2 of the quotient (layer element {0})")]
    GradedActionNonzero(usize),
    #[error("internal invariant violated: {0}")]
    Internal(&'static str),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

impl ReductionError {
    /// Errors that mean "outside what this tool handles", as opposed to a
    /// broken invariant.
    pub fn is_unsupported(&self) -> bool {
        matches!(
            self,
            ReductionError::NotSolvable
                | ReductionError::NotCompletelySolvable(_)
                | ReductionError::IrrationalSpectrum
                | ReductionError::CommutationFailure { .. }
                | ReductionError::ActionFailure(_)
        )
    }
}

impl From<TriangularizeFailure> for ReductionError {
    fn from(f: TriangularizeFailure) -> Self {
        match f {
            TriangularizeFailure::NotSolvable => ReductionError::NotSolvable,
            other => ReductionError::NotCompletelySolvable(other),
        }
    }
}
