//! A finite universal-algebra workbench.
//!
//! Algebras live on carriers `{0..n-1}` with one lookup table per operation.
//! On top of that the crate computes congruence lattices and lattice laws,
//! enumerates internal structures (operations that are homomorphisms of the
//! ambient algebra and satisfy a set of equations), and renders sample-relative
//! uniqueness verdicts.

pub mod algebra;
pub mod congruences;
pub mod constructions;
pub mod graphs;
pub mod internal;
pub(crate) mod search;
pub mod specs;

use thiserror::Error;

pub use algebra::{AlgebraError, FiniteAlgebra, Homomorphism};
pub use congruences::{Congruence, CongruenceError};
pub use constructions::ConstructionError;
pub use graphs::GraphError;
pub use internal::InternalError;
pub use specs::{Equation, Signature, SpecError, Term, VarietyPresentation};

/// Default node budget for searches.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Umbrella error over all modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
    #[error(transparent)]
    Internal(#[from] InternalError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

impl Error {
    /// Whether the failure is a node budget running out rather than bad input.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::Internal(InternalError::BudgetExhausted { .. }) | Error::Graph(GraphError::BudgetExhausted { .. })
        )
    }
}
