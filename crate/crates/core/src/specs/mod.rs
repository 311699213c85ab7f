//! Signatures, terms and equations; the text format; term evaluation and
//! brute-force identity checking.

mod eval;
mod parse;
mod print;
mod signature;
mod term;

use thiserror::Error;

pub(crate) use eval::{odometer, CompiledEquation};
pub use eval::{check_identities, eval_term, satisfies, IdentityReport, Violation};
pub(crate) use parse::checked_pow;
pub use parse::{parse_algebra, parse_blocks, parse_variety, AlgebraDecl, Block, Pos};
pub use signature::{OpSymbol, Signature, Symbol};
pub use term::{Equation, Term, VarietyPresentation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("syntax error at {pos}: found {found}, expected {}", expected.join(" or "))]
    Syntax {
        pos: Pos,
        found: String,
        expected: Vec<String>,
    },
    #[error("`{op}` takes {expected} argument(s) but was given {found}")]
    ArityMismatch { op: String, expected: usize, found: usize },
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("unknown symbol `{name}` at {pos}")]
    UnknownSymbolAt { name: String, pos: Pos },
    #[error("operation `{0}` must have positive arity")]
    ZeroArity(String),
    #[error("variable `{0}` collides with a declared symbol")]
    VariableShadowsSymbol(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("missing table or constant for `{0}`")]
    MissingTable(String),
    #[error("table `{op}` has {found} entries, expected {expected}")]
    TableLength { op: String, expected: usize, found: usize },
    #[error("`{what}` has entry {value} outside carrier of size {size}")]
    OutOfRange { what: String, value: usize, size: usize },
    #[error("algebra `{algebra}` is declared over `{wanted}` but was read against `{given}`")]
    VarietyMismatch {
        algebra: String,
        wanted: String,
        given: String,
    },
    #[error("expected {expected}, found {found} block(s)")]
    WrongBlocks { expected: &'static str, found: usize },
    #[error("table size overflows")]
    TooLarge,
    #[error("invalid algebra: {0}")]
    Invalid(String),
}
