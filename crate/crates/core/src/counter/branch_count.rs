//! Images of the arcs `w = Σ_{i≥1} w_i t^i` under `w ↦ (w^m, Σ a_j w^j)`
//! modulo `t^{n+1}`.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{CountError, Fq, TruncPow};
use crate::branch::BranchSpec;
use crate::modp;

/// Default cap on the number of enumerated arcs.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchCount {
    pub n: u32,
    #[serde(with = "biguint_str")]
    pub count: BigUint,
    /// Image sizes of the strata `ord w = ℓ` with `ℓ m ≤ n`; the origin is
    /// counted separately (it is always one point).
    pub strata: BTreeMap<u32, String>,
}

mod biguint_str {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

impl BranchCount {
    fn assemble(n: u32, strata: BTreeMap<u32, BigUint>) -> Self {
        let count = strata.values().fold(BigUint::one(), |acc, c| acc + c);
        Self { n, count, strata: strata.into_iter().map(|(l, c)| (l, c.to_string())).collect() }
    }
}

/// Branch coefficients reduced into `F_q`.
struct Reduced {
    m: u32,
    /// `(j, a_j mod p)` with `a_j ≢ 0`.
    coeffs: Vec<(u32, u32)>,
}

fn reduce(b: &BranchSpec, f: &Fq) -> Result<Reduced, CountError> {
    let p = f.p() as u64;
    let mut coeffs = Vec::new();
    for (j, a) in b.coeffs() {
        let r = modp::rat_mod(a, p).ok_or(CountError::BadPrime { p })?;
        if r != 0 {
            coeffs.push((j, f.from_prime(r)));
        }
    }
    Ok(Reduced { m: b.m(), coeffs })
}

impl Reduced {
    /// `(x, y)` modulo `t^{n+1}`; `w` has length `n + 1`.
    fn image(&self, w: &TruncPow, f: &Fq) -> (TruncPow, TruncPow) {
        let n = w.order();
        let Some(l) = w.valuation() else {
            return (TruncPow::zero(n), TruncPow::zero(n));
        };
        let x = w.pow(self.m, f);
        let mut y = TruncPow::zero(n);
        let mut pw = TruncPow::one(n);
        let mut e = 0;
        for &(j, a) in &self.coeffs {
            if j as usize * l > n {
                break;
            }
            pw = pw.mul(&w.pow(j - e, f), f);
            e = j;
            y = y.add(&pw.scale(a, f), f);
        }
        (x, y)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum ImageKey {
    Packed(u128),
    Wide(Box<[u32]>),
}

fn key(x: &TruncPow, y: &TruncPow, q: u32, packed: bool) -> ImageKey {
    let digits = x.coeffs()[1..].iter().chain(&y.coeffs()[1..]);
    if packed {
        ImageKey::Packed(digits.fold(0u128, |acc, &c| acc * q as u128 + c as u128))
    } else {
        ImageKey::Wide(digits.copied().collect())
    }
}

fn packable(q: u32, n: u32) -> bool {
    (2 * n as u64) as f64 * (q as f64).log2() < 127.0
}

fn check_budget(needed: &BigUint, budget: u64) -> Result<(), CountError> {
    if *needed > BigUint::from(budget) {
        return Err(CountError::BudgetExceeded { needed: needed.to_string(), budget });
    }
    Ok(())
}

/// Distinct images of the arcs of order `l` whose coefficients beyond
/// `top` vanish, partitioned on the leading coefficient.
fn stratum_images(r: &Reduced, f: &Fq, n: u32, l: u32, top: u32) -> usize {
    let q = f.order();
    let packed = packable(q, n);
    let free = (top - l) as usize;
    let sets: Vec<HashSet<ImageKey>> = (1..q)
        .into_par_iter()
        .map(|lead| {
            let mut set = HashSet::new();
            let mut digits = vec![0u32; free];
            let mut w = TruncPow::zero(n as usize);
            w.coeffs_mut()[l as usize] = lead;
            loop {
                let (x, y) = r.image(&w, f);
                set.insert(key(&x, &y, q, packed));
                // odometer over w_{l+1}..w_top
                let mut k = 0;
                while k < free {
                    digits[k] += 1;
                    if digits[k] < q {
                        break;
                    }
                    digits[k] = 0;
                    k += 1;
                }
                if k == free {
                    break;
                }
                for (i, &d) in digits.iter().enumerate() {
                    w.coeffs_mut()[l as usize + 1 + i] = d;
                }
            }
            set
        })
        .collect();
    let mut it = sets.into_iter();
    let mut all = it.next().unwrap_or_default();
    for s in it {
        all.extend(s);
    }
    all.len()
}

/// Number of distinct `(x mod t^{n+1}, y mod t^{n+1})` over `F_{p^d}`.
///
/// With `window = false` every arc `w_1 t + ... + w_n t^n` is enumerated.
/// With `window = true` the stratum `ord w = ℓ` only varies
/// `w_ℓ..w_{ℓ+n-ℓm}`: the coefficient of `t^k` (`k ≤ n`) in `w^j`, `j ≥ m`,
/// involves no `w_i` with `i > k - (j-1)ℓ`.
pub fn count_branch_image(
    b: &BranchSpec,
    p: u64,
    d: u32,
    n: u32,
    window: bool,
    budget: u64,
) -> Result<BranchCount, CountError> {
    let f = Fq::new(p, d)?;
    let r = reduce(b, &f)?;
    let q = BigUint::from(f.order());
    let m = b.m();
    let needed = if window {
        (1..=n / m).fold(BigUint::zero(), |acc, l| acc + (&q - 1u32) * q.pow(n - l * m))
    } else {
        q.pow(n)
    };
    check_budget(&needed, budget)?;

    let mut strata = BTreeMap::new();
    for l in 1..=n {
        let top = if window { l + n.saturating_sub(l * m) } else { n };
        if l * m > n {
            if window {
                break;
            }
            // every such arc maps to the origin
            debug_assert_eq!(stratum_images(&r, &f, n, l, top.max(l)), 1);
            continue;
        }
        strata.insert(l, BigUint::from(stratum_images(&r, &f, n, l, top)));
    }
    Ok(BranchCount::assemble(n, strata))
}

/// Exact image count by orbit-stabilizer, for `p ∤ m`.
///
/// In the window of stratum `ℓ`, `x = w^m` fixes `w` up to `w ↦ ζ w` with
/// `ζ ∈ μ_m(F_q)`, and `ζ` fixes `y` mod `t^{n+1}` iff `ζ^j = 1` for every
/// `j` with `a_j ≢ 0` and `jℓ ≤ n`. Each stratum then has
/// `(q-1) q^{n-ℓm} / |stabilizer|` image points.
pub fn count_branch_orbit(b: &BranchSpec, p: u64, d: u32, n: u32) -> Result<BranchCount, CountError> {
    let f = Fq::new(p, d)?;
    let r = reduce(b, &f)?;
    let m = b.m();
    if (m as u64).is_multiple_of(p) {
        return Err(CountError::Invalid(format!("orbit counting needs p ∤ m (p = {p}, m = {m})")));
    }
    let q = BigUint::from(f.order());
    let roots = f.roots_of_unity(m as u64);
    let mut strata = BTreeMap::new();
    for l in 1..=n / m {
        let stab = roots
            .iter()
            .filter(|&&z| r.coeffs.iter().filter(|(j, _)| j * l <= n).all(|&(j, _)| f.pow(z, j as u64) == 1))
            .count();
        let orbit_points = (&q - 1u32) * q.pow(n - l * m);
        debug_assert!((&orbit_points % stab).is_zero());
        strata.insert(l, orbit_points / stab);
    }
    Ok(BranchCount::assemble(n, strata))
}

/// Smallest `d` with `m (p-1) | p^d - 1`: the field holding every `m`-th root
/// of every element of `F_p^*`.
fn root_field_degree(p: u64, m: u32) -> u32 {
    let modulus = m as u64 * (p - 1);
    (1..=64).find(|&d| (modp::pow_mod(p, d as u64, modulus) + modulus - 1).is_multiple_of(modulus)).unwrap()
}

/// Number of `F_p`-rational image points over `F̄_p`.
///
/// For each `F_p`-rational `x`-jet of order `ℓm` and each root `u₀` of its
/// leading coefficient (in `F_{p^d}`, `d` as in `root_field_degree`), the
/// window of `w` is solved from `w^m = x` coefficient by coefficient; the
/// image is kept when `y` is `F_p`-rational too. Relies on the window claim
/// (validated by `count_branch_image`); reported as heuristic.
pub fn count_branch_geometric(b: &BranchSpec, p: u64, n: u32, budget: u64) -> Result<BranchCount, CountError> {
    let m = b.m();
    if !modp::is_prime(p) {
        return Err(CountError::NotPrime { p });
    }
    if (m as u64).is_multiple_of(p) {
        return Err(CountError::Invalid(format!("geometric counting needs p ∤ m (p = {p}, m = {m})")));
    }
    let d = root_field_degree(p, m);
    let f = Fq::new(p, d)?;
    let r = reduce(b, &f)?;
    let needed =
        (1..=n / m).fold(BigUint::zero(), |acc, l| acc + BigUint::from(p - 1) * BigUint::from(p).pow(n - l * m) * m);
    check_budget(&needed, budget)?;

    let q = f.order();
    let packed = packable(q, n);
    let inv_m = f.inv(f.from_prime(m as u64));
    let mut strata = BTreeMap::new();
    for l in 1..=n / m {
        let span = (n - l * m) as usize;
        let sets: Vec<HashSet<ImageKey>> = (1..p as u32)
            .into_par_iter()
            .map(|lead| {
                let mut set = HashSet::new();
                let roots: Vec<u32> = (1..q).filter(|&u| f.pow(u, m as u64) == lead).collect();
                let mut tail = vec![0u32; span];
                loop {
                    // x / (lead t^{ℓm}) = 1 + X
                    let mut one_x = vec![1u32; 1];
                    one_x.extend(tail.iter().map(|&c| f.mul(c, f.inv(lead))));
                    for &u0 in &roots {
                        let v = solve_root(&one_x, m, inv_m, &f);
                        let mut w = TruncPow::zero(n as usize);
                        for (i, &c) in v.iter().enumerate() {
                            w.coeffs_mut()[l as usize + i] = f.mul(u0, c);
                        }
                        let (x, y) = r.image(&w, &f);
                        debug_assert!(x.coeffs().iter().all(|&c| f.in_prime_field(c)));
                        if y.coeffs().iter().all(|&c| f.in_prime_field(c)) {
                            set.insert(key(&x, &y, q, packed));
                        }
                    }
                    let mut k = 0;
                    while k < span {
                        tail[k] += 1;
                        if tail[k] < p as u32 {
                            break;
                        }
                        tail[k] = 0;
                        k += 1;
                    }
                    if k == span {
                        break;
                    }
                }
                set
            })
            .collect();
        let mut all = HashSet::new();
        for s in sets {
            all.extend(s);
        }
        strata.insert(l, BigUint::from(all.len()));
    }
    Ok(BranchCount::assemble(n, strata))
}

/// The unique `1 + v` with `(1 + v)^m = target` modulo `t^{len}`.
fn solve_root(target: &[u32], m: u32, inv_m: u32, f: &Fq) -> Vec<u32> {
    let len = target.len();
    let mut v = vec![0u32; len];
    v[0] = 1;
    for k in 1..len {
        let cur = TruncPow::from_coeffs(v.clone(), len - 1).pow(m, f);
        // coefficient k of (1+v)^m is m v_k + (terms in v_1..v_{k-1})
        v[k] = f.mul(f.sub(target[k], cur.coeffs()[k]), inv_m);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn worked() -> BranchSpec {
        BranchSpec::with_int_coeffs(4, &[(6, 1), (7, 1)]).unwrap()
    }

    fn count(b: &BranchSpec, p: u64, n: u32, window: bool) -> u64 {
        count_branch_image(b, p, 1, n, window, DEFAULT_BUDGET).unwrap().count.try_into().unwrap()
    }

    #[test]
    fn worked_branch_small_orders() {
        let b = worked();
        assert_eq!(count(&b, 5, 3, false), 1);
        assert_eq!(count(&b, 5, 4, false), 2);
        assert_eq!(count(&b, 5, 6, false), 51);
    }

    #[test]
    fn window_matches_exhaustive() {
        let b = worked();
        for n in 0..=7 {
            assert_eq!(count(&b, 5, n, true), count(&b, 5, n, false), "n = {n}");
        }
        let cusp = BranchSpec::with_int_coeffs(2, &[(3, 1)]).unwrap();
        for n in 0..=6 {
            assert_eq!(count(&cusp, 7, n, true), count(&cusp, 7, n, false));
        }
    }

    #[test]
    fn orbit_matches_enumeration() {
        let b = worked();
        for (p, top) in [(5, 7), (13, 6), (3, 8), (7, 6)] {
            for n in 0..=top {
                let orbit = count_branch_orbit(&b, p, 1, n).unwrap();
                let brute = count_branch_image(&b, p, 1, n, true, DEFAULT_BUDGET).unwrap();
                assert_eq!(orbit, brute, "p = {p}, n = {n}");
            }
        }
    }

    #[test]
    fn smooth_counts_everything() {
        let b = BranchSpec::with_int_coeffs(1, &[(2, 3)]).unwrap();
        for n in 0..=5 {
            assert_eq!(count(&b, 3, n, false), 3u64.pow(n));
        }
    }

    #[test]
    fn extension_field() {
        let cusp = BranchSpec::with_int_coeffs(2, &[(3, 1)]).unwrap();
        let a = count_branch_image(&cusp, 2, 2, 4, false, DEFAULT_BUDGET).unwrap();
        let o = count_branch_orbit(&cusp, 3, 2, 4).unwrap();
        let w = count_branch_image(&cusp, 3, 2, 4, true, DEFAULT_BUDGET).unwrap();
        assert_eq!(o, w);
        assert!(a.count > BigUint::one());
    }

    #[test]
    fn geometric_counts() {
        // 1 + Σ_ℓ (p-1) p^{n-ℓm}
        let b = worked();
        for p in [3u64, 5, 7] {
            for n in 0..=7u32 {
                let expect: u64 = 1 + (1..=n / 4).map(|l| (p - 1) * p.pow(n - 4 * l)).sum::<u64>();
                let got = count_branch_geometric(&b, p, n, DEFAULT_BUDGET).unwrap();
                assert_eq!(got.count, BigUint::from(expect), "p = {p}, n = {n}");
            }
        }
    }

    #[test]
    fn budget_and_bad_prime() {
        let b = worked();
        assert!(matches!(count_branch_image(&b, 5, 1, 8, false, 1000), Err(CountError::BudgetExceeded { .. })));
        let half = BranchSpec::new(2, [(3, crate::algebra::rat::frac(1, 3))], None).unwrap();
        assert_eq!(count_branch_image(&half, 3, 1, 2, false, 100), Err(CountError::BadPrime { p: 3 }));
    }
}
