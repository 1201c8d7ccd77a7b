//! Table-driven arithmetic in `F_{p^d}`.
//!
//! Elements are integers in `[0, q)` whose base-`p` digits are the
//! coefficients of a polynomial in `x` modulo a fixed primitive polynomial
//! (lowest digit = constant term). The prime subfield is therefore `0..p`
//! in every extension, which lets images computed over different extension
//! degrees be compared directly.

use super::CountError;
use crate::modp;

/// Largest field order for which the log/exp tables are built.
pub const MAX_FIELD_ORDER: u64 = 1 << 24;

#[derive(Clone, Debug)]
pub struct Fq {
    p: u32,
    d: u32,
    q: u32,
    /// Monic modulus, coefficients `x^0..x^d`.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl Fq {
    pub fn new(p: u64, d: u32) -> Result<Self, CountError> {
        if !modp::is_prime(p) {
            return Err(CountError::NotPrime { p });
        }
        if d == 0 {
            return Err(CountError::Invalid("extension degree must be >= 1".into()));
        }
        let q = p.checked_pow(d).filter(|&q| q <= MAX_FIELD_ORDER).ok_or(CountError::FieldTooLarge { p, d })?;
        let (p, q) = (p as u32, q as u32);
        let modulus = first_primitive(p, d);
        let mut f = Self { p, d, q, modulus, exp: Vec::new(), log: Vec::new() };
        f.build_tables();
        Ok(f)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Coefficients `x^0..x^d` of the defining polynomial.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn in_prime_field(&self, a: u32) -> bool {
        a < self.p
    }

    fn build_tables(&mut self) {
        let n = (self.q - 1) as usize;
        let mut exp = vec![0u32; n];
        let mut log = vec![0u32; self.q as usize];
        let mut cur = vec![0u32; self.d as usize];
        cur[0] = 1;
        for (k, slot) in exp.iter_mut().enumerate() {
            let v = self.encode(&cur);
            *slot = v;
            log[v as usize] = k as u32;
            times_x(&mut cur, &self.modulus, self.p);
        }
        self.exp = exp;
        self.log = log;
    }

    fn encode(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.d == 1 {
            let s = a + b;
            return if s >= self.p { s - self.p } else { s };
        }
        let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
        while a > 0 || b > 0 {
            let s = (a % self.p + b % self.p) % self.p;
            out += s * place;
            place *= self.p;
            a /= self.p;
            b /= self.p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.d == 1 {
            return if a == 0 { 0 } else { self.p - a };
        }
        let (mut a, mut out, mut place) = (a, 0, 1);
        while a > 0 {
            let c = a % self.p;
            out += ((self.p - c) % self.p) * place;
            place *= self.p;
            a /= self.p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        let s = self.log[a as usize] + self.log[b as usize];
        self.exp[(if s >= n { s - n } else { s }) as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        let n = self.q - 1;
        let l = self.log[a as usize];
        self.exp[((n - l) % n) as usize]
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.q - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (e % n)) % n) as usize]
    }

    /// Embeds an element of `F_p`.
    pub fn from_prime(&self, a: u64) -> u32 {
        (a % self.p as u64) as u32
    }

    /// Primitive element (the class of `x`).
    pub fn generator(&self) -> u32 {
        self.exp[if self.q > 2 { 1 } else { 0 }]
    }

    /// All `ζ` with `ζ^m = 1`.
    pub fn roots_of_unity(&self, m: u64) -> Vec<u32> {
        let n = (self.q - 1) as u64;
        let g = modp::gcd(m, n);
        let step = n / g;
        (0..g).map(|k| self.exp[(k * step) as usize]).collect()
    }
}

fn times_x(cur: &mut [u32], modulus: &[u32], p: u32) {
    let d = cur.len();
    let top = cur[d - 1];
    for k in (1..d).rev() {
        cur[k] = cur[k - 1];
    }
    cur[0] = 0;
    if top != 0 {
        for k in 0..d {
            // subtract top * modulus[k]
            cur[k] = (cur[k] + p - (top * modulus[k]) % p) % p;
        }
    }
}

/// Lexicographically first monic polynomial of degree `d` over `F_p` for
/// which `x` has multiplicative order `p^d - 1`. Such a polynomial is
/// irreducible, and the choice is deterministic.
fn first_primitive(p: u32, d: u32) -> Vec<u32> {
    if d == 1 {
        // x - g for the least primitive root g, so that x ≡ g
        let g = (1..p as u64).find(|&g| p == 2 || modp::order_mod(g, p as u64) == (p - 1) as u64).unwrap();
        return vec![(p - g as u32) % p, 1];
    }
    let q = (p as u64).pow(d);
    let n = q - 1;
    let factors = modp::prime_factors(n);
    let total = (p as u64).pow(d);
    for code in 0..total {
        let mut modulus: Vec<u32> = (0..d).map(|k| ((code / (p as u64).pow(k)) % p as u64) as u32).collect();
        if modulus[0] == 0 {
            continue;
        }
        modulus.push(1);
        if factors.iter().all(|f| !x_pow_is_one(&modulus, p, n / f)) && x_pow_is_one(&modulus, p, n) {
            return modulus;
        }
    }
    unreachable!("primitive polynomials exist in every degree")
}

fn x_pow_is_one(modulus: &[u32], p: u32, e: u64) -> bool {
    let d = modulus.len() - 1;
    let mulmod = |a: &[u32], b: &[u32]| -> Vec<u32> {
        let mut prod = vec![0u64; 2 * d];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        for k in (d..2 * d).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for j in 0..d {
                let sub = c * modulus[j] as u64 % p as u64;
                prod[k - d + j] = (prod[k - d + j] + p as u64 - sub) % p as u64;
            }
        }
        prod[..d].iter().map(|&c| c as u32).collect()
    };
    let mut base = vec![0u32; d];
    if d > 1 {
        base[1] = 1;
    } else {
        base[0] = (p - modulus[0]) % p;
    }
    let mut acc = vec![0u32; d];
    acc[0] = 1;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(&acc, &base);
        }
        base = mulmod(&base, &base);
        e >>= 1;
    }
    acc[0] == 1 && acc[1..].iter().all(|&c| c == 0)
}
