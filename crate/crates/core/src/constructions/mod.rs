//! Built-in presentations, the functors `h`, `w`, `m`, `a`, the padding of
//! hyperextensible schemas, and sample algebra factories.

mod catalog;
mod functors;
mod jt;
mod padding;
mod samples;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::specs::SpecError;

pub use catalog::{
    builtin_variety, builtin_variety_names, chyper_equations, chyper_presentation, chyper_signature, ABGRP, CM3,
    COMMON, DISC, GRP, HEX3, IMP, MAG, MAL, PMAG,
};
pub use functors::{a, apply_functor, h, m, w, Functor, FunctorInput};
pub use jt::{jt_clone_search, JtSearchResult};
pub use padding::{chyper_type, pad_chyper, Justification, JustifiedEquation, PaddingReport};
pub use samples::{
    affine_space, boolean_implication, builtin_algebras_up_to, cm3_samples, cyclic_group, cyclic_monoid,
    discriminator, fp_vector_space, klein_group, max_monoid, named_sample, noncommutative_unitary_magma,
    one_element, paper71_samples, sample_set, shifting_fixture, small_groups, zero_pointed_magma,
    PAIR_PRODUCT_MAX,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("schema mismatch: {0}")]
    SchemaMismatch(String),
    #[error("construction failed validation: {0}")]
    Invalid(String),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
