//! Internal reflexive graphs and the category structures they carry.

mod category;
mod graph;

use thiserror::Error;

use crate::algebra::AlgebraError;

pub use category::{classify_structure, enumerate_category_structures, CategoryStructure, Classification};
pub use graph::ReflexiveGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("search budget exhausted after {nodes} nodes")]
    BudgetExhausted { nodes: u64 },
    #[error("budget must be positive")]
    ZeroBudget,
    #[error("not a reflexive graph: {0}")]
    NotReflexive(String),
    #[error("relation is not compatible with the operations")]
    NotCompatible,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
