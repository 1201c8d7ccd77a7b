//! Closed-form summation of `L^{-β(ℓ)} T^{τ(ℓ)}` over an iterated range system.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::ast::Linear;
use super::ranges::{Bound, IteratedRangeSystem};
use super::PresburgerError;
use crate::algebra::rat::{self, Rat};
use crate::algebra::{Fraction, GeomFactor, RatSeries, TatePoly};

/// Polynomial in the outer parameters, keyed by exponent vectors.
type Poly = BTreeMap<Vec<u32>, Rat>;

fn poly_const(c: Rat, n: usize) -> Poly {
    let mut p = Poly::new();
    if !c.is_zero() {
        p.insert(vec![0; n], c);
    }
    p
}

fn poly_affine(b: &Bound, shift: i128) -> Poly {
    let n = b.coeffs.len();
    let mut p = poly_const(Rat::from_integer(BigInt::from(b.constant + shift)), n);
    for (i, &c) in b.coeffs.iter().enumerate() {
        if c != 0 {
            let mut e = vec![0; n];
            e[i] = 1;
            p.insert(e, Rat::from_integer(BigInt::from(c)));
        }
    }
    p
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let slot = out.entry(e).or_insert_with(Rat::zero);
            *slot += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn poly_add(a: &mut Poly, b: &Poly, sign: i64) {
    for (e, c) in b {
        let slot = a.entry(e.clone()).or_insert_with(Rat::zero);
        *slot += c * Rat::from_integer(BigInt::from(sign));
    }
    a.retain(|_, c| !c.is_zero());
}

fn poly_pow(a: &Poly, k: u32, n: usize) -> Poly {
    (0..k).fold(poly_const(Rat::one(), n), |acc, _| poly_mul(&acc, a))
}

fn binomial(n: u32, k: u32) -> Rat {
    (0..k).fold(Rat::one(), |acc, i| acc * rat::frac((n - i) as i64, (i + 1) as i64))
}

/// `Σ_{u=0}^{x} u^e` as a polynomial in `x`, in the Newton basis: `P(x) = Σ_i c_i·C(x, i)`.
fn faulhaber_newton(e: u32) -> Vec<Rat> {
    let vals: Vec<Rat> = (0..=e as i64 + 1)
        .scan(Rat::zero(), |acc, u| {
            *acc += rat::pow(&rat::int(u), e as i64);
            Some(acc.clone())
        })
        .collect();
    let mut diffs = vals;
    let mut out = Vec::new();
    while !diffs.is_empty() {
        out.push(diffs[0].clone());
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    out
}

/// `P(b)` for the affine `b`.
fn faulhaber_at(e: u32, b: &Poly, n: usize) -> Poly {
    let mut out = Poly::new();
    let mut falling = poly_const(Rat::one(), n);
    for (i, c) in faulhaber_newton(e).into_iter().enumerate() {
        let term: Poly = falling.iter().map(|(k, v)| (k.clone(), v * &c / factorial(i))).collect();
        poly_add(&mut out, &term, 1);
        let mut next = b.clone();
        poly_add(&mut next, &poly_const(rat::int(i as i64), n), -1);
        falling = poly_mul(&falling, &next);
    }
    out
}

fn factorial(i: usize) -> Rat {
    (1..=i as i64).fold(Rat::one(), |acc, k| acc * rat::int(k))
}

/// Eulerian numbers `A(r, k)`, `k < r`.
fn eulerian(r: u32) -> Vec<Rat> {
    let mut row = vec![Rat::one()];
    for n in 2..=r {
        let mut next = vec![Rat::zero(); n as usize];
        for k in 0..n as usize {
            let mut v = Rat::zero();
            if k < row.len() {
                v += &row[k] * rat::int(k as i64 + 1);
            }
            if k >= 1 && k - 1 < row.len() {
                v += &row[k - 1] * rat::int(n as i64 - k as i64);
            }
            next[k] = v;
        }
        row = next;
    }
    row
}

/// `Σ_{s≥0} s^r x^s` with `x = L^a T^c`, `(a, c) ≠ (0, 0)`, `c ≥ 0`.
fn power_geometric(r: u32, a: i64, c: u32) -> RatSeries {
    let numerator: Vec<(u32, TatePoly)> = if r == 0 {
        vec![(0, TatePoly::one())]
    } else {
        eulerian(r)
            .into_iter()
            .enumerate()
            .map(|(k, e)| (c * (k as u32 + 1), TatePoly::l_pow(a * (k as i64 + 1)).scale(&e)))
            .collect()
    };
    if c > 0 {
        return RatSeries::from(Fraction::from_parts(numerator, [(GeomFactor::new(a, c), r + 1)], []));
    }
    let inv = Fraction::geometric_inverse(a, 0).expect("a != 0");
    let f = (0..=r).fold(Fraction::from_parts(numerator, [], []), |acc, _| acc.mul(&inv));
    RatSeries::from(f)
}

/// `coeff · L^{l0 + Σ l_i u_i} · T^{t0 + Σ t_i u_i} · Π u_i^{pows_i}`.
#[derive(Clone, Debug)]
struct Term {
    coeff: RatSeries,
    l0: i64,
    t0: i64,
    l: Vec<i64>,
    t: Vec<i64>,
    pows: Vec<u32>,
}

impl Term {
    fn times(&self, factor: &RatSeries, c: &Rat, mono: &[u32]) -> Term {
        let mut out = self.clone();
        out.coeff = self.coeff.mul(factor).scale(&TatePoly::constant(c.clone()));
        for (p, e) in out.pows.iter_mut().zip(mono) {
            *p += e;
        }
        out
    }
}

fn affine_shift(b: &Bound, scale: i128, shift: i128) -> Bound {
    Bound { coeffs: b.coeffs.iter().map(|c| c * scale).collect(), constant: b.constant * scale + shift }
}

/// `sign · Σ_{u ≥ start} u^e x^u`, `x = L^a T^c`, with `u` the `j`-th parameter.
#[allow(clippy::too_many_arguments)]
fn tail(base: &Term, j: usize, start: &Bound, a: i64, c: i64, e: u32, sign: i64, out: &mut Vec<Term>) {
    let start_poly = poly_affine(start, 0);
    for r in 0..=e {
        let g = power_geometric(r, a, c as u32);
        let scalar = binomial(e, r) * rat::int(sign);
        for (mono, coef) in poly_pow(&start_poly, e - r, j) {
            let mut t = base.times(&g, &(&coef * &scalar), &mono);
            // x^start
            for (i, &s) in start.coeffs.iter().enumerate() {
                t.l[i] += a * s as i64;
                t.t[i] += c * s as i64;
            }
            t.l0 += a * start.constant as i64;
            t.t0 += c * start.constant as i64;
            out.push(t);
        }
    }
}

fn sum_var(terms: Vec<Term>, j: usize, lower: &Bound, upper: Option<&Bound>) -> Result<Vec<Term>, PresburgerError> {
    let mut out = Vec::new();
    for mut base in terms {
        let (a, c, e) = (base.l[j], base.t[j], base.pows[j]);
        base.l[j] = 0;
        base.t[j] = 0;
        base.pows[j] = 0;
        if a == 0 && c == 0 {
            let Some(upper) = upper else {
                return Err(PresburgerError::DivergentSum(format!("parameter {j} is unbounded with constant weight")));
            };
            let mut p = faulhaber_at(e, &poly_affine(upper, 0), j);
            poly_add(&mut p, &faulhaber_at(e, &poly_affine(lower, -1), j), -1);
            for (mono, coef) in p {
                out.push(base.times(&RatSeries::one(), &coef, &mono));
            }
            continue;
        }
        match upper {
            None if c < 0 || (c == 0 && a > 0) => {
                return Err(PresburgerError::DivergentSum(format!(
                    "parameter {j} is unbounded with non-decreasing weight"
                )));
            }
            None => tail(&base, j, lower, a, c, e, 1, &mut out),
            Some(upper) if c < 0 => {
                // u = -v, v from -upper to -lower
                let sign = if e % 2 == 0 { 1 } else { -1 };
                tail(&base, j, &affine_shift(upper, -1, 0), -a, -c, e, sign, &mut out);
                tail(&base, j, &affine_shift(lower, -1, 1), -a, -c, e, -sign, &mut out);
            }
            Some(upper) => {
                tail(&base, j, lower, a, c, e, 1, &mut out);
                tail(&base, j, &affine_shift(upper, 1, 1), a, c, e, -1, &mut out);
            }
        }
    }
    Ok(out)
}

/// `Σ_{ℓ ∈ sys} L^{-β(ℓ)} T^{τ(ℓ)}` as a rational series.
///
/// Every unbounded parameter must make the weight decrease: positive
/// `T`-slope, or zero `T`-slope and positive `β`-slope.
pub fn weighted_sum(
    sys: &IteratedRangeSystem,
    lweight: &Linear,
    tweight: &Linear,
) -> Result<RatSeries, PresburgerError> {
    for v in lweight.coeffs.keys().chain(tweight.coeffs.keys()) {
        if !sys.vars.contains(v) {
            return Err(PresburgerError::UndeclaredVariable(v.clone()));
        }
    }
    let k = sys.vars.len();
    let mut done: Vec<Term> = Vec::new();
    for piece in &sys.pieces {
        let mut term = Term {
            coeff: RatSeries::one(),
            l0: -lweight.constant as i64,
            t0: tweight.constant as i64,
            l: vec![0; k],
            t: vec![0; k],
            pows: vec![0; k],
        };
        for (j, (name, pr)) in sys.vars.iter().zip(&piece.vars).enumerate() {
            let (b, tau) = (lweight.coeff(name), tweight.coeff(name));
            term.l[j] = -(b * pr.step) as i64;
            term.t[j] = (tau * pr.step) as i64;
            term.l0 -= (b * pr.offset) as i64;
            term.t0 += (tau * pr.offset) as i64;
        }
        let mut terms = vec![term];
        for j in (0..k).rev() {
            let pr = &piece.vars[j];
            terms = sum_var(terms, j, &pr.lower, pr.upper.as_ref())?;
        }
        done.extend(terms);
    }

    let mut out = RatSeries::zero();
    let min_t = done.iter().map(|t| t.t0).min().unwrap_or(0);
    let shift = (-min_t).max(0);
    let mut low = RatSeries::zero();
    for t in &done {
        let f = t.coeff.scale(&TatePoly::l_pow(t.l0));
        if shift == 0 {
            out = out.add(&f.shift_t(t.t0 as u32));
        } else {
            low = low.add(&f.shift_t((t.t0 + shift) as u32));
        }
    }
    if shift > 0 {
        let f = low
            .combined()
            .unshift_t(shift as u32)
            .ok_or_else(|| PresburgerError::DivergentSum("negative powers of T".into()))?;
        out = out.add(&RatSeries::from(f));
    }
    Ok(out)
}
