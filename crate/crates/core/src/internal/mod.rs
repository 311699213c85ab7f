//! Internal structures: operations on an algebra that are homomorphisms of
//! the ambient signature and satisfy a target set of equations.

mod enumerate;
mod objects;
mod report;
mod spec;
mod structure;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::specs::SpecError;

pub use enumerate::{
    brute_force_internal, brute_force_internal_capped, enumerate_internal, enumerate_internal_limited,
    InternalEnumeration, BRUTE_FORCE_CAP,
};
pub use objects::{
    classify_object, cooperator, dual_structure, internal_structure_failure, subtraction_to_group, ObjectClass,
    Subobject, SubtractionOutcome,
};
pub use report::{crystallography_report, verdict_of, CrystallographyReport, RefutationWitness, SampleResult, Verdict};
pub use spec::{Duality, StructureSpec};
pub use structure::InternalStructure;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InternalError {
    #[error("node budget exhausted on `{sample}` after {nodes} nodes")]
    BudgetExhausted { sample: String, nodes: u64 },
    #[error("node budget must be positive")]
    ZeroBudget,
    #[error("candidate space exceeds the brute-force cap")]
    TooLarge,
    #[error("unknown structure `{0}`")]
    UnknownSpec(String),
    #[error("signature is not pointed (needs exactly one constant named `0`)")]
    NotPointed,
    #[error("algebras do not share a signature")]
    SignatureMismatch,
    #[error("more than one cooperator: the ambient category is not unital at this sample")]
    MultipleCooperators,
    #[error("structure `{0}` is not closed under duality")]
    NotDualityClosed(String),
    #[error("no samples given")]
    EmptySamples,
    #[error("{0}")]
    Malformed(String),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
