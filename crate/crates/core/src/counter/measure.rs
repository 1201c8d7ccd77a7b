use num_traits::{One, Zero};

use crate::algebra::rat::{self, Rat};
use crate::algebra::{Fraction, GeomFactor, RatSeries, TatePoly};

/// Haar volume of `{x ∈ Z_p^m : ord(x_1^{k_1} ··· x_m^{k_m}) = n}`.
///
/// Counts residues modulo `p^{n+1}` one valuation class at a time: a
/// coordinate of valuation `v ≤ n` has `(p-1) p^{n-v}` residues, and the
/// monomial's order only depends on coordinate orders up to `n`.
pub fn measure_ord_locus(k: &[u32], p: u64, n: u32) -> Rat {
    fn go(k: &[u32], p: u64, n: u32, remaining: u32) -> Rat {
        let Some((&k0, rest)) = k.split_first() else {
            return if remaining == 0 { Rat::one() } else { Rat::zero() };
        };
        if k0 == 0 {
            return go(rest, p, n, remaining);
        }
        let mut acc = Rat::zero();
        for v in 0..=remaining / k0 {
            let residues = rat::int(p as i64 - 1) * rat::pow(&rat::int(p as i64), (n - v) as i64);
            let class = residues / rat::pow(&rat::int(p as i64), n as i64 + 1);
            acc += class * go(rest, p, n, remaining - k0 * v);
        }
        acc
    }
    go(k, p, n, n)
}

/// `Π_i (1 - L^{-1}) / (1 - L^{-1} T^{k_i})`.
pub fn igusa_monomial(k: &[u32]) -> RatSeries {
    assert!(k.iter().all(|&x| x >= 1), "exponents must be positive");
    let unit = &TatePoly::one() - &TatePoly::l_pow(-1);
    let numerator = (0..k.len()).fold(TatePoly::one(), |acc, _| &acc * &unit);
    RatSeries::from(Fraction::from_parts([(0, numerator)], k.iter().map(|&ki| (GeomFactor::new(-1, ki), 1)), []))
}
