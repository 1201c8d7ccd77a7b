//! Small-integer modular helpers shared by the counters and the branch module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::algebra::Rat;

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

/// Inverse modulo a prime.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Reduction of a rational modulo `p`; `None` when `p` divides the denominator.
pub fn rat_mod(q: &Rat, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let den = q.denom().mod_floor(&pb).to_u64().unwrap();
    if den == 0 {
        return None;
    }
    let num = q.numer().mod_floor(&pb).to_u64().unwrap();
    Some(mul_mod(num, inv_mod(den, p), p))
}

/// Whether `p` divides the numerator of `q` (i.e. `q ≡ 0 mod p` when defined).
pub fn divides_numerator(q: &Rat, p: u64) -> bool {
    (q.numer() % BigInt::from(p)).is_zero()
}

/// Multiplicative order of `a` modulo prime `p`.
pub fn order_mod(a: u64, p: u64) -> u64 {
    let a = a % p;
    assert!(a != 0);
    let n = p - 1;
    let mut ord = n;
    for f in prime_factors(n) {
        while ord.is_multiple_of(f) && pow_mod(a, ord / f, p) == 1 {
            ord /= f;
        }
    }
    ord
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2;
    while f * f <= n {
        if n.is_multiple_of(f) {
            out.push(f);
            while n.is_multiple_of(f) {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::frac;

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn rationals_mod_p() {
        assert_eq!(rat_mod(&frac(1, 2), 5), Some(3));
        assert_eq!(rat_mod(&frac(-1, 3), 7), Some(2));
        assert_eq!(rat_mod(&frac(1, 5), 5), None);
    }

    #[test]
    fn orders() {
        assert_eq!(order_mod(2, 5), 4);
        assert_eq!(order_mod(4, 5), 2);
        assert_eq!(order_mod(1, 13), 1);
    }
}
