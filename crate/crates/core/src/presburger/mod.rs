//! Presburger arithmetic: parsing, quantifier elimination, normal forms for
//! iterated summation, and closed-form weighted geometric sums.

pub mod ast;
pub mod parse;
pub mod qe;
pub mod ranges;
pub mod sum;

pub use ast::{membership, Atom, Formula, Linear, PresburgerFormula, Rel};
pub use parse::{parse_linear, parse_presburger, parse_presburger_with_vars};
pub use qe::eliminate_quantifiers;
pub use ranges::{to_iterated_ranges, Bound, IteratedRangeSystem, Piece, Progression};
pub use sum::weighted_sum;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresburgerError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("undeclared variable {0}")]
    UndeclaredVariable(String),
    #[error("expected {expected} coordinates, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("divergent sum: {0}")]
    DivergentSum(String),
    #[error("formula is not quantifier-free")]
    NotQuantifierFree,
}
