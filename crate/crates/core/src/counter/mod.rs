//! Point counters: branch-arc images over `F_q[t]/t^{n+1}`, liftable
//! residues of integer polynomial systems modulo `p^{n+1}`, and Haar volumes
//! of monomial order loci.

pub mod branch_count;
pub mod field;
pub mod liftable;
pub mod measure;
pub mod poly;
pub mod report;
pub mod truncpow;

pub use branch_count::{count_branch_geometric, count_branch_image, count_branch_orbit, BranchCount, DEFAULT_BUDGET};
pub use field::Fq;
pub use liftable::{count_liftable, LiftCount};
pub use measure::{igusa_monomial, measure_ord_locus};
pub use poly::IntPoly;
pub use report::{CountReport, CountRow, Method};
pub use truncpow::TruncPow;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("{p} is not prime")]
    NotPrime { p: u64 },
    #[error("F_{p}^{d} is too large for table arithmetic")]
    FieldTooLarge { p: u64, d: u32 },
    #[error("prime {p} divides a coefficient denominator")]
    BadPrime { p: u64 },
    #[error("enumeration needs {needed} steps, budget is {budget}")]
    BudgetExceeded { needed: String, budget: u64 },
    #[error("polynomial syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
}
