//! Reconstruction of a rational function from its leading coefficients when
//! the denominator is known up to a product of factors `(1 - c T^b)`.

use num_traits::{One, Zero};

use super::rat::Rat;
use super::unipoly::{QRatFunc, UniPoly};
use super::FitError;

/// A denominator factor `(1 - c T^b)` with `b ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FitFactor {
    pub c: Rat,
    pub b: usize,
}

impl FitFactor {
    pub fn new(c: Rat, b: usize) -> Self {
        assert!(b >= 1);
        Self { c, b }
    }

    fn poly(&self) -> UniPoly {
        let mut v = vec![Rat::zero(); self.b + 1];
        v[0] = Rat::one();
        v[self.b] = -self.c.clone();
        UniPoly::from_coeffs(v)
    }
}

/// Product of the hint factors.
pub fn hint_denominator(hint: &[FitFactor]) -> UniPoly {
    hint.iter().fold(UniPoly::one(), |acc, f| acc.mul(&f.poly()))
}

/// [`fit`] with the denominator already multiplied out, e.g. the reduced
/// denominator of a specialized series.
pub fn fit_with_denominator(
    data: &[Rat],
    denominator: &UniPoly,
    numerator_degree: Option<usize>,
) -> Result<UniPoly, FitError> {
    if data.is_empty() {
        return Err(FitError::InsufficientData { have: 0, need: 1 });
    }
    let order = data.len() - 1;
    let dd = denominator.degree().unwrap_or(0);
    let bound = match numerator_degree {
        Some(k) => {
            if order < dd + k {
                return Err(FitError::InsufficientData { have: data.len(), need: dd + k + 1 });
            }
            k
        }
        None => {
            if order < dd {
                return Err(FitError::InsufficientData { have: data.len(), need: dd + 1 });
            }
            order - dd
        }
    };
    // product of data with the denominator, truncated at `order`
    let mut prod = vec![Rat::zero(); order + 1];
    for (n, slot) in prod.iter_mut().enumerate() {
        for k in 0..=n.min(dd) {
            let c = denominator.coeff(k);
            if !c.is_zero() {
                *slot += c * &data[n - k];
            }
        }
    }
    if let Some(n) = (bound + 1..=order).find(|&n| !prod[n].is_zero()) {
        return Err(FitError::NoRationalFit { first_nonzero: n });
    }
    prod.truncate(bound + 1);
    Ok(UniPoly::from_coeffs(prod))
}

/// Solve `numerator = data · Π hint` up to `data.order`, requiring every
/// coefficient above the numerator degree bound to vanish.
///
/// Without an explicit bound the numerator may use every degree up to
/// `order - deg(denominator)`, leaving `deg(denominator)` checked coefficients.
pub fn fit(data: &[Rat], hint: &[FitFactor], numerator_degree: Option<usize>) -> Result<UniPoly, FitError> {
    fit_with_denominator(data, &hint_denominator(hint), numerator_degree)
}

/// Convenience: the reduced rational function `fit(..) / Π hint`.
pub fn fit_rational(
    data: &[Rat],
    denominator: &UniPoly,
    numerator_degree: Option<usize>,
) -> Result<QRatFunc, FitError> {
    let num = fit_with_denominator(data, denominator, numerator_degree)?;
    Ok(QRatFunc::new(num, denominator.clone()))
}
