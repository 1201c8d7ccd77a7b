use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use super::BranchError;
use crate::algebra::rat::{self, Rat};

/// Poles strictly between -1 and 0, the ones carrying characteristic exponents.
pub fn puiseux_poles(alphas: &BTreeSet<Rat>) -> BTreeSet<Rat> {
    let lo = -Rat::one();
    alphas.iter().filter(|a| **a > lo && a.is_negative()).cloned().collect()
}

/// `β_i = m / (α_i + 1)`, sorted ascending.
pub fn puiseux_from_poles<'a>(m: u32, alphas: impl IntoIterator<Item = &'a Rat>) -> Result<Vec<u32>, BranchError> {
    let mut out = Vec::new();
    for a in alphas {
        let bad = || BranchError::NotAPuiseuxPole { alpha: rat::to_string(a), m };
        if !(*a > -Rat::one() && a.is_negative()) {
            return Err(bad());
        }
        let beta = rat::int(m as i64) / (a + Rat::one());
        if !beta.is_integer() || beta.is_zero() {
            return Err(bad());
        }
        out.push(rat::to_i64(&beta).and_then(|b| u32::try_from(b).ok()).ok_or_else(bad)?);
    }
    out.sort_unstable();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{frac, int};

    #[test]
    fn worked_branch() {
        let poles = [frac(-1, 3), frac(-3, 7)];
        assert_eq!(puiseux_from_poles(4, &poles).unwrap(), vec![6, 7]);
    }

    #[test]
    fn cusp() {
        assert_eq!(puiseux_from_poles(2, &[frac(-1, 3)]).unwrap(), vec![3]);
    }

    #[test]
    fn excluded_values() {
        assert!(puiseux_from_poles(4, &[int(-1)]).is_err());
        assert!(puiseux_from_poles(4, &[int(0)]).is_err());
        // 4 / (1 - 2/5) = 20/3
        assert!(puiseux_from_poles(4, &[frac(-2, 5)]).is_err());
    }

    #[test]
    fn filter() {
        let all: BTreeSet<Rat> = [int(0), int(-1), frac(-1, 3), int(1)].into_iter().collect();
        assert_eq!(puiseux_poles(&all), BTreeSet::from([frac(-1, 3)]));
    }
}
