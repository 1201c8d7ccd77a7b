//! Exact rational series in `T` over `Q[L, L^-1, (L^i - 1)^-1]`.

pub mod fit;
pub mod rat;
pub mod series;
pub mod tate;
pub mod truncated;
pub mod unipoly;

use thiserror::Error;

pub use fit::{fit, fit_rational, fit_with_denominator, FitFactor};
pub use rat::Rat;
pub use series::{Fraction, GeomFactor, RatSeries};
pub use tate::TatePoly;
pub use truncated::TruncatedSeries;
pub use unipoly::{QRatFunc, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("evaluation at L = 0 of a polynomial with negative exponents")]
    ZeroBase,
    #[error("specialization at L = {q} hits a pole (factor index {index})")]
    SpecializationPole { q: String, index: u32 },
    #[error("coefficient of T^{t_exp} is not a Laurent polynomial: (L^{index} - 1) does not divide")]
    NonPolynomialCoefficient { t_exp: usize, index: u32 },
    #[error("division by zero")]
    DivisionByZero,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FitError {
    #[error("insufficient data: have {have} coefficients, need {need}")]
    InsufficientData { have: usize, need: usize },
    #[error("no rational fit: residual coefficient of T^{first_nonzero} is nonzero")]
    NoRationalFit { first_nonzero: usize },
}
