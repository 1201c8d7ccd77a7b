//! Plane curve branches `x = w^m, y = Σ a_j w^j`: characteristic exponents,
//! the closed-form geometric and arithmetic Poincaré series, the classes of
//! the order strata, and recovery of the exponents from poles.

mod charseq;
mod gap;
mod poincare;
mod poles;
mod spec;

use thiserror::Error;

pub use charseq::{characteristic_sequence, CharSeq};
pub use gap::order_gap;
pub use poincare::{chi_c_arc_class, p_ar, p_geom, ArcClass};
pub use poles::{puiseux_from_poles, puiseux_poles};
pub use spec::BranchSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BranchError {
    #[error("invalid branch: {0}")]
    Invalid(String),
    #[error("truncation order {truncation} too short: e = {e} > 1 and no further characteristic exponent")]
    TruncationTooShort { truncation: u32, e: u32 },
    #[error("stratum out of range: need 1 <= l <= n/m (n = {n}, l = {l}, m = {m})")]
    OutOfRange { n: u32, l: u32, m: u32 },
    #[error("{alpha} is not a Puiseux pole exponent for m = {m}")]
    NotAPuiseuxPole { alpha: String, m: u32 },
    #[error("{zeta} is not an m-th root of unity mod {p} (m = {m})")]
    BadRoot { zeta: u64, p: u64, m: u32 },
    #[error("prime {p} divides a coefficient denominator")]
    BadPrime { p: u64 },
}
