//! Residues modulo `p^{n+1}` of `Z_p`-points of `{f = 0}`, by a search over
//! `p`-adic balls `a + p^k Z_p^v`.
//!
//! A ball is discarded when some `f_j` has constant valuation `< K` on it
//! (`K = n + 1 + depth`); that proves no point of the ball solves the system
//! modulo `p^K`. Each surviving residue at level `n + 1` is searched for a
//! Hensel certificate along the slices spanned by Jacobian minors, and
//! otherwise for any solution modulo `p^K`.

use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{CountError, IntPoly};
use crate::modp;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftCount {
    pub n: u32,
    /// Residues with a solution modulo `p^{n+1+depth}` above them.
    pub count: String,
    /// Residues proven to lift to `Z_p`.
    pub certified_residues: String,
    /// True iff every counted residue is proven to lift.
    pub certified: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Decision {
    Found,
    Dead,
    Unknown,
}

struct Search<'a> {
    f: Vec<&'a IntPoly>,
    /// `∂f_j/∂x_i`.
    jac: Vec<Vec<IntPoly>>,
    v: usize,
    all: Vec<usize>,
    /// Column sets of the maximal Jacobian minors.
    minors: Vec<Vec<usize>>,
    p: u64,
    /// Working precision: arithmetic is modulo `p^prec`.
    prec: u32,
    modulus: u64,
    n1: u32,
    target: u32,
    visits: AtomicU64,
    budget: u64,
}

fn val_u64(x: u64, p: u64, cap: u32) -> u32 {
    if x == 0 {
        return cap;
    }
    let (mut x, mut v) = (x, 0);
    while x % p == 0 && v < cap {
        x /= p;
        v += 1;
    }
    v
}

fn val_big(x: &BigInt, p: u64) -> Option<u32> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let (mut x, mut v) = (x.abs(), 0);
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        x = q;
        v += 1;
    }
}

/// Determinant by fraction-free elimination.
fn det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let s = a.len();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..s {
        if a[k][k].is_zero() {
            match (k + 1..s).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..s {
            for j in k + 1..s {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    prev * sign
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

impl Search<'_> {
    fn tick(&self) -> Result<(), CountError> {
        let seen = self.visits.fetch_add(1, Ordering::Relaxed);
        if seen >= self.budget {
            return Err(CountError::BudgetExceeded {
                needed: format!("more than {seen} ball visits"),
                budget: self.budget,
            });
        }
        Ok(())
    }

    /// Some `f_j` has constant valuation below the target on `a + p^k Z_p^v`,
    /// or on its slice where only the coordinates in `free` move.
    fn dead(&self, a: &[u64], k: u32, free: Option<&[usize]>) -> bool {
        for f in &self.f {
            let val = val_u64(f.eval_mod(a, self.modulus), self.p, self.prec);
            if val >= self.target {
                continue;
            }
            if val < k {
                return true;
            }
            let moves = |alpha: &[u32]| match free {
                None => true,
                Some(s) => alpha.iter().enumerate().all(|(i, &e)| e == 0 || s.contains(&i)),
            };
            let mu = f
                .taylor_mod(a, self.modulus)
                .iter()
                .filter(|(alpha, _)| moves(alpha))
                .map(|(alpha, &c)| val_u64(c, self.p, self.prec) + k * alpha.iter().sum::<u32>())
                .min()
                .unwrap_or(u32::MAX);
            if val < mu {
                return true;
            }
        }
        false
    }

    /// A `Z_p`-root congruent to `b` modulo `p^{n+1}` exists.
    fn certificate(&self, b: &[u64]) -> bool {
        let point: Vec<BigInt> = b.iter().map(|&x| BigInt::from(x)).collect();
        let values: Vec<BigInt> = self.f.iter().map(|f| f.eval(&point)).collect();
        let Some(vf) = values.iter().filter_map(|x| val_big(x, self.p)).min() else {
            return true;
        };
        let s = self.f.len();
        if s > self.v {
            return false;
        }
        let jac: Vec<Vec<BigInt>> = self.jac.iter().map(|row| row.iter().map(|d| d.eval(&point)).collect()).collect();
        let delta = self
            .minors
            .iter()
            .filter_map(|cols| {
                let minor = jac.iter().map(|row| cols.iter().map(|&c| row[c].clone()).collect()).collect();
                val_big(&det(minor), self.p)
            })
            .min();
        match delta {
            Some(d) => vf > 2 * d && vf - d >= self.n1,
            None => false,
        }
    }

    fn children<'s>(&'s self, a: &[u64], k: u32, free: &'s [usize]) -> impl Iterator<Item = Vec<u64>> + 's {
        let step = self.p.pow(k);
        let total = self.p.pow(free.len() as u32);
        let a = a.to_vec();
        (0..total).map(move |mut z| {
            let mut c = a.clone();
            for &i in free {
                c[i] += step * (z % self.p);
                z /= self.p;
            }
            c
        })
    }

    /// Looks for a certified point above `a`, moving only the coordinates
    /// in `free` (the columns of a Jacobian minor).
    fn find_in_slice(&self, a: &[u64], k: u32, free: &[usize]) -> Result<bool, CountError> {
        self.tick()?;
        if self.certificate(a) {
            return Ok(true);
        }
        if k >= self.target {
            return Ok(false);
        }
        for c in self.children(a, k, free) {
            if !self.dead(&c, k + 1, Some(free)) && self.find_in_slice(&c, k + 1, free)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Some point above `a` solves the system modulo `p^K`.
    fn lift_exists(&self, a: &[u64], k: u32) -> Result<bool, CountError> {
        self.tick()?;
        let solved = self.f.iter().all(|f| val_u64(f.eval_mod(a, self.modulus), self.p, self.prec) >= self.target);
        if solved {
            return Ok(true);
        }
        if k >= self.target {
            return Ok(false);
        }
        for c in self.children(a, k, &self.all) {
            if !self.dead(&c, k + 1, None) && self.lift_exists(&c, k + 1)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Classifies a residue at level `n + 1`.
    fn decide(&self, a: &[u64]) -> Result<Decision, CountError> {
        if self.certificate(a) {
            return Ok(Decision::Found);
        }
        if self.f.len() <= self.v {
            for cols in &self.minors {
                if self.find_in_slice(a, self.n1, cols)? {
                    return Ok(Decision::Found);
                }
            }
        }
        Ok(if self.lift_exists(a, self.n1)? { Decision::Unknown } else { Decision::Dead })
    }

    /// `(counted, certified)` residues at level `n + 1` inside ball `a` of level `k`.
    fn count(&self, a: &[u64], k: u32) -> Result<(u64, u64), CountError> {
        self.tick()?;
        if k == self.n1 {
            return Ok(match self.decide(a)? {
                Decision::Found => (1, 1),
                Decision::Unknown => (1, 0),
                Decision::Dead => (0, 0),
            });
        }
        let mut acc = (0, 0);
        for c in self.children(a, k, &self.all) {
            if !self.dead(&c, k + 1, None) {
                let (x, y) = self.count(&c, k + 1)?;
                acc = (acc.0 + x, acc.1 + y);
            }
        }
        Ok(acc)
    }
}

/// Counts residues `a mod p^{n+1}` (in `v = nvars` variables) with
/// `w(a) ≡ 0 mod p` for every `w` in `origin`, such that the system `f`
/// has a solution modulo `p^{n+1+depth}` above `a`.
///
/// A residue is proven liftable when a point `b` above it is an exact root
/// or satisfies `ord f(b) > 2δ` and `ord f(b) - δ ≥ n + 1`, `δ` the least
/// valuation of a maximal Jacobian minor at `b`. `budget` caps visited balls.
pub fn count_liftable(
    f: &[IntPoly],
    origin: &[IntPoly],
    nvars: usize,
    p: u64,
    n: u32,
    depth: u32,
    budget: u64,
) -> Result<LiftCount, CountError> {
    if !modp::is_prime(p) {
        return Err(CountError::NotPrime { p });
    }
    if let Some(bad) = f.iter().chain(origin).find(|g| g.nvars() > nvars) {
        return Err(CountError::Invalid(format!("polynomial {bad} uses more than {nvars} variables")));
    }
    if nvars == 0 {
        return Err(CountError::Invalid("at least one variable is required".into()));
    }
    let f: Vec<IntPoly> = f.iter().map(|g| g.widen(nvars)).collect();
    let origin: Vec<IntPoly> = origin.iter().map(|g| g.widen(nvars)).collect();
    let n1 = n + 1;
    let target = n1 + depth;
    let prec = (1..).take_while(|&k| (p as u128).pow(k) < 1u128 << 63).last().unwrap_or(0);
    if target > prec {
        return Err(CountError::BudgetExceeded {
            needed: format!("precision p^{}", target + 1),
            budget: (p as u128).pow(prec) as u64,
        });
    }

    let level_one: Vec<Vec<u64>> = (0..p.pow(nvars as u32))
        .map(|mut z| {
            (0..nvars)
                .map(|_| {
                    let d = z % p;
                    z /= p;
                    d
                })
                .collect()
        })
        .filter(|a: &Vec<u64>| origin.iter().all(|w| w.eval_mod(a, p) == 0))
        .collect();

    let live: Vec<&IntPoly> = f.iter().filter(|g| !g.is_zero()).collect();
    if live.is_empty() {
        let bulk = BigUint::from(level_one.len()) * BigUint::from(p).pow(nvars as u32 * n);
        return Ok(LiftCount { n, count: bulk.to_string(), certified_residues: bulk.to_string(), certified: true });
    }

    let live_count = live.len();
    let search = Search {
        jac: live.iter().map(|g| (0..nvars).map(|i| g.derivative(i)).collect()).collect(),
        f: live,
        v: nvars,
        all: (0..nvars).collect(),
        minors: subsets(nvars, live_count),
        p,
        prec,
        modulus: (p as u128).pow(prec) as u64,
        n1,
        target,
        visits: AtomicU64::new(0),
        budget,
    };
    let parts = level_one
        .par_iter()
        .filter(|a| !search.dead(a, 1, None))
        .map(|a| search.count(a, 1))
        .collect::<Result<Vec<_>, _>>()?;
    let (count, proven) = parts.iter().fold((0u64, 0u64), |acc, x| (acc.0 + x.0, acc.1 + x.1));
    Ok(LiftCount { n, count: count.to_string(), certified_residues: proven.to_string(), certified: count == proven })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branch::BranchSpec;
    use crate::counter::{count_branch_image, DEFAULT_BUDGET};

    fn polys(texts: &[&str]) -> Vec<IntPoly> {
        IntPoly::parse_system(texts).unwrap()
    }

    fn origin2() -> Vec<IntPoly> {
        polys(&["x1", "x2"])
    }

    #[test]
    fn cusp_matches_branch_count() {
        let f = polys(&["x1^2 - x2^3"]);
        let cusp = BranchSpec::with_int_coeffs(2, &[(3, 1)]).unwrap();
        // residues (0, p^n u) with u a non-square need depth > 2n to be excluded
        for n in 0..=4 {
            let lift = count_liftable(&f, &origin2(), 2, 7, n, 2 * n + 2, DEFAULT_BUDGET).unwrap();
            let arcs = count_branch_image(&cusp, 7, 1, n, false, DEFAULT_BUDGET).unwrap();
            assert!(lift.certified, "n = {n}");
            assert_eq!(lift.count, arcs.count.to_string(), "n = {n}");
        }
    }

    #[test]
    fn shallow_depth_counts_unliftable_residues() {
        // (0, 7^4 u) for the three non-squares u mod 7 solve f mod 7^12
        let f = polys(&["x1^2 - x2^3"]);
        let shallow = count_liftable(&f, &origin2(), 2, 7, 4, 6, DEFAULT_BUDGET).unwrap();
        let deep = count_liftable(&f, &origin2(), 2, 7, 4, 8, DEFAULT_BUDGET).unwrap();
        assert!(!shallow.certified && deep.certified);
        let (s, d): (u64, u64) = (shallow.count.parse().unwrap(), deep.count.parse().unwrap());
        assert_eq!(s, d + 3);
    }

    #[test]
    fn depth_zero_is_uncertified() {
        let f = polys(&["x1^2 - x2^3"]);
        let lift = count_liftable(&f, &origin2(), 2, 7, 4, 0, DEFAULT_BUDGET).unwrap();
        assert!(!lift.certified);
    }

    #[test]
    fn monotone_in_depth() {
        let f = polys(&["x1^2 - x2^3"]);
        let mut last = u64::MAX;
        for depth in 0..=5 {
            let c: u64 = count_liftable(&f, &origin2(), 2, 5, 3, depth, DEFAULT_BUDGET).unwrap().count.parse().unwrap();
            assert!(c <= last);
            last = c;
        }
    }

    #[test]
    fn trivial_systems() {
        let x = polys(&["x1"]);
        for n in 0..4 {
            let c = count_liftable(&x, &[], 1, 5, n, 2, DEFAULT_BUDGET).unwrap();
            assert_eq!(c.count, "1");
            assert!(c.certified);
        }
        let c = count_liftable(&[], &[], 1, 3, 2, 0, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.count, "27");
        assert!(c.certified);
    }

    #[test]
    fn smooth_conic() {
        // x^2 + y^2 = 1 has p^n (p - 1) points mod p^{n+1} for p ≡ 1 mod 4
        let f = polys(&["x1^2 + x2^2 - 1"]);
        for n in 0..3 {
            let c = count_liftable(&f, &[], 2, 5, n, 1, DEFAULT_BUDGET).unwrap();
            assert_eq!(c.count, (4 * 5u64.pow(n)).to_string());
            assert!(c.certified);
        }
    }

    #[test]
    fn no_points() {
        // x^2 = 2 has no 5-adic solution
        let f = polys(&["x1^2 - 2"]);
        let c = count_liftable(&f, &[], 1, 5, 3, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.count, "0");
        assert!(c.certified);
    }

    #[test]
    fn guards() {
        let f = polys(&["x1^2 - x2^3"]);
        assert!(matches!(count_liftable(&f, &[], 2, 7, 30, 0, DEFAULT_BUDGET), Err(CountError::BudgetExceeded { .. })));
        assert!(matches!(count_liftable(&f, &[], 2, 7, 3, 1, 10), Err(CountError::BudgetExceeded { .. })));
        assert!(count_liftable(&f, &[], 1, 7, 3, 1, 10).is_err());
    }

    #[test]
    fn determinant() {
        let m =
            |v: &[&[i64]]| v.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect::<Vec<Vec<BigInt>>>();
        assert_eq!(det(m(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(det(m(&[&[2, 3, 1], &[4, 1, 5], &[7, 2, 2]])), BigInt::from(2 * (2 - 10) - 3 * (8 - 35) + (8 - 7)));
    }
}
