//! Congruence lattices and the lattice-level conditions checked on them.

mod congruence;
mod lattice;
mod laws;
mod span;

use thiserror::Error;

pub use congruence::{generated_congruence, kernel_congruence, principal_congruence, Congruence};
pub use lattice::{all_congruences, all_congruences_capped, lattice_ops, CongruenceLattice, DEFAULT_PRINCIPAL_CAP};
pub use laws::{
    check_law_on, check_lattice_laws, check_shifting_lemma, check_shifting_on, LatticeLaw, LawCounterexample,
    LawVerdict, ShiftingCounterexample, ShiftingVerdict,
};
pub use span::{check_chyper_span, PunctualSpan, SpanCounterexample, SpanVerdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CongruenceError {
    #[error("congruence lattices need a nonempty carrier")]
    EmptyCarrier,
    #[error("{pairs} principal congruences exceed the cap of {cap}")]
    TooManyPrincipals { pairs: usize, cap: usize },
    #[error("congruence lattice exceeds the cap of {cap} elements")]
    LatticeTooLarge { cap: usize },
    #[error("congruences live on different carriers")]
    CarrierMismatch,
    #[error("signature is not pointed (needs exactly one constant named `0`)")]
    NotPointed,
    #[error("invalid punctual span: {0}")]
    InvalidSpan(String),
}
