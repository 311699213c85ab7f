//! Finite algebras and their category: products, subalgebras, quotients,
//! homomorphism search and model enumeration.

mod finite;
mod hom;
mod models;
mod ops;

use thiserror::Error;

pub use finite::FiniteAlgebra;
pub use hom::{compatibility_failure, enumerate_homs, is_homomorphism, Homomorphism};
pub use models::{
    canonical_form, dedup_isomorphic, enumerate_models, enumerate_models_with, relabel, ModelEnumeration,
    CANONICAL_MAX,
};
pub(crate) use models::{compile_uterm, order_key, symbol_order};
pub use ops::{product, quotient, subalgebra, subalgebra_closure};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("algebras do not share a signature")]
    SignatureMismatch,
    #[error("malformed algebra: {0}")]
    Malformed(String),
    #[error("a carrier with constants cannot be empty")]
    EmptyWithConstants,
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("not a congruence: {0}")]
    NotCongruence(String),
    #[error("subset is not closed under the operations")]
    NotClosed,
    #[error("product of no factors")]
    EmptyProduct,
    #[error("carrier too large for this operation")]
    TooLarge,
    #[error("node budget must be positive")]
    ZeroBudget,
    #[error("constant `{constant}` is pinned to {pin}, outside a carrier of size {size}")]
    PinOutOfRange { constant: String, pin: usize, size: usize },
}
