use serde::{Deserialize, Serialize};

use super::{BranchError, CharSeq};
use crate::algebra::rat::frac;
use crate::algebra::{Fraction, GeomFactor, RatSeries, TatePoly};

fn origin_term() -> Fraction {
    Fraction::from_parts([(0, TatePoly::one())], [(GeomFactor::new(0, 1), 1)], [])
}

/// `(L-1) c L^k T^b / ((1 - L T)(1 - L^k T^b))`.
fn stratum_term(c: TatePoly, k: i64, b: u32) -> Fraction {
    Fraction::from_parts(
        [(b, &(&TatePoly::l_minus_one() * &c) * &TatePoly::l_pow(k))],
        [(GeomFactor::new(1, 1), 1), (GeomFactor::new(k, b), 1)],
        [],
    )
}

/// `1/(1-T) + (L-1)/(1-LT) · T^m/(1-T^m)`, unnormalized.
pub fn p_geom(c: &CharSeq) -> RatSeries {
    let m = c.m();
    RatSeries::from(origin_term()).add(&RatSeries::from(stratum_term(TatePoly::one(), 0, m)))
}

/// ```text
/// 1/(1-T) + (L-1)/(1-LT) [ (1/m) T^m/(1-T^m)
///   + Σ_i (N_i - N_{i-1})/m · L^{β_i-m} T^{β_i}/(1 - L^{β_i-m} T^{β_i}) ]
/// ```
/// with one fraction per summand.
pub fn p_ar(c: &CharSeq) -> RatSeries {
    let m = c.m() as i64;
    let mut s =
        RatSeries::from(origin_term()).add(&RatSeries::from(stratum_term(TatePoly::constant(frac(1, m)), 0, m as u32)));
    for i in 1..=c.g {
        let weight = frac((c.big_n[i] - c.big_n[i - 1]) as i64, m);
        let beta = c.beta[i];
        s = s.add(&RatSeries::from(stratum_term(TatePoly::constant(weight), beta as i64 - m, beta)));
    }
    s
}

/// Classes of the stratum of `n`-jets whose `x` has order `l·m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcClass {
    /// The `i` with `l·β_i ≤ n < l·β_{i+1}` (`β_{g+1} = ∞`).
    pub index: usize,
    pub geometric: TatePoly,
    pub arithmetic: TatePoly,
}

pub fn chi_c_arc_class(c: &CharSeq, n: u32, l: u32) -> Result<ArcClass, BranchError> {
    let m = c.m();
    if l == 0 || l as u64 * m as u64 > n as u64 {
        return Err(BranchError::OutOfRange { n, l, m });
    }
    let index = (0..=c.g).rev().find(|&i| l as u64 * c.beta[i] as u64 <= n as u64).unwrap();
    let geometric = &TatePoly::l_minus_one() * &TatePoly::l_pow((n - l * m) as i64);
    let arithmetic = geometric.scale(&frac(c.big_n[index] as i64, m as i64));
    Ok(ArcClass { index, geometric, arithmetic })
}
