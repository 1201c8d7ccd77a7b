//! Rational power series in `T` with coefficients in `Q[L, L^-1, (L^i - 1)^-1]`.
//!
//! A [`RatSeries`] is a finite sum of [`Fraction`]s. Each fraction is a
//! polynomial in `T` over Laurent polynomials in `L`, divided by products of
//! geometric factors `(1 - L^a T^b)` with `b ≥ 1` and cyclotomic-type factors
//! `(L^i - 1)`. Sums are kept unreduced until [`RatSeries::normalize`] is
//! called, so closed forms keep their displayed shape.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rat::{self, Rat};
use super::tate::{l_power, TatePoly};
use super::truncated::TruncatedSeries;
use super::unipoly::{QRatFunc, UniPoly};
use super::AlgebraError;

/// The factor `(1 - L^a T^b)`. Ordered by `(b, a)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeomFactor {
    pub b: u32,
    pub a: i64,
}

impl GeomFactor {
    pub fn new(a: i64, b: u32) -> Self {
        assert!(b >= 1, "geometric factor needs positive T-degree");
        Self { b, a }
    }

    fn as_tpoly(&self) -> TPoly {
        let mut p = TPoly::one();
        p.add_term(self.b, TatePoly::l_pow(self.a).scale(&-Rat::one()));
        p
    }

    /// `T = L^alpha` root of the factor.
    pub fn pole_exponent(&self) -> Rat {
        rat::frac(-self.a, self.b as i64)
    }

    fn render(&self, latex: bool) -> String {
        let l = l_power(self.a, latex);
        let t = match self.b {
            1 => "T".to_string(),
            b if latex => format!("T^{{{b}}}"),
            b => format!("T^{b}"),
        };
        match (l.is_empty(), latex) {
            (true, _) => format!("1-{t}"),
            (false, true) => format!("1-{l}{t}"),
            (false, false) => format!("1-{l}*{t}"),
        }
    }
}

/// Polynomial in `T` with [`TatePoly`] coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub(crate) struct TPoly {
    terms: BTreeMap<u32, TatePoly>,
}

impl TPoly {
    pub(crate) fn zero() -> Self {
        Self::default()
    }

    pub(crate) fn one() -> Self {
        Self::constant(TatePoly::one())
    }

    pub(crate) fn constant(c: TatePoly) -> Self {
        let mut p = Self::zero();
        p.add_term(0, c);
        p
    }

    pub(crate) fn add_term(&mut self, k: u32, c: TatePoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_default();
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    fn coeff(&self, k: u32) -> TatePoly {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                out.add_term(k1 + k2, c1 * c2);
            }
        }
        out
    }

    fn scale(&self, c: &TatePoly) -> Self {
        let mut out = Self::zero();
        for (k, x) in &self.terms {
            out.add_term(*k, x * c);
        }
        out
    }

    /// Exact quotient by `(1 - L^a T^b)`.
    fn div_geom(&self, f: GeomFactor) -> Option<Self> {
        let Some(deg) = self.degree() else {
            return Some(Self::zero());
        };
        if deg < f.b {
            return None;
        }
        // q_k = n_k + L^a q_{k-b}, for k ≤ deg - b; the rest must vanish.
        let top = deg - f.b;
        let mut q: Vec<TatePoly> = Vec::with_capacity(top as usize + 1);
        for k in 0..=top {
            let mut c = self.coeff(k);
            if k >= f.b {
                c = &c + &q[(k - f.b) as usize].shift(f.a);
            }
            q.push(c);
        }
        for k in top + 1..=deg {
            // remainder coefficient: n_k + L^a q_{k-b} (q beyond top is zero)
            let mut r = self.coeff(k);
            if k >= f.b && k - f.b <= top {
                r = &r + &q[(k - f.b) as usize].shift(f.a);
            }
            if !r.is_zero() {
                return None;
            }
        }
        let mut out = Self::zero();
        for (k, c) in q.into_iter().enumerate() {
            out.add_term(k as u32, c);
        }
        Some(out)
    }

    fn div_cyclo(&self, i: u32) -> Option<Self> {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            out.add_term(*k, c.div_cyclo(i)?);
        }
        Some(out)
    }

    fn render(&self, latex: bool) -> (String, bool) {
        if self.is_zero() {
            return ("0".into(), false);
        }
        let mut parts: Vec<String> = Vec::new();
        for (k, c) in &self.terms {
            let t = match *k {
                0 => String::new(),
                1 => "T".into(),
                k if latex => format!("T^{{{k}}}"),
                k => format!("T^{k}"),
            };
            let ctext = c.render_coeff(latex);
            let piece = if t.is_empty() {
                ctext
            } else if c.is_one() {
                t
            } else if ctext == "-1" {
                format!("-{t}")
            } else if c.num_terms() > 1 {
                if latex {
                    format!("({ctext}){t}")
                } else {
                    format!("({ctext})*{t}")
                }
            } else if latex {
                format!("{ctext}{t}")
            } else {
                format!("{ctext}*{t}")
            };
            parts.push(piece);
        }
        let mut out = String::new();
        for (n, piece) in parts.iter().enumerate() {
            if n > 0 && !piece.starts_with('-') {
                out.push('+');
            }
            out.push_str(piece);
        }
        let compound = parts.len() > 1 || self.terms.get(&0).is_some_and(|c| c.num_terms() > 1);
        (out, compound)
    }
}

impl TatePoly {
    fn render_coeff(&self, latex: bool) -> String {
        if latex {
            self.to_latex()
        } else {
            self.to_text()
        }
    }
}

/// `numerator / (Π (1 - L^a T^b)^μ · Π (L^i - 1)^ν)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fraction {
    numerator: TPoly,
    geom: BTreeMap<GeomFactor, u32>,
    cyclo: BTreeMap<u32, u32>,
}

impl Fraction {
    pub fn constant(c: TatePoly) -> Self {
        Self::monomial(c, 0)
    }

    /// `c·T^k`.
    pub fn monomial(c: TatePoly, k: u32) -> Self {
        let mut numerator = TPoly::zero();
        numerator.add_term(k, c);
        Self { numerator, geom: BTreeMap::new(), cyclo: BTreeMap::new() }
    }

    /// Builds a fraction from numerator terms `(k, c)` meaning `c·T^k`.
    pub fn from_parts(
        numerator: impl IntoIterator<Item = (u32, TatePoly)>,
        geom: impl IntoIterator<Item = (GeomFactor, u32)>,
        cyclo: impl IntoIterator<Item = (u32, u32)>,
    ) -> Self {
        let mut num = TPoly::zero();
        for (k, c) in numerator {
            num.add_term(k, c);
        }
        let mut f = Self { numerator: num, geom: BTreeMap::new(), cyclo: BTreeMap::new() };
        for (g, m) in geom {
            assert!(g.b >= 1);
            if m > 0 {
                *f.geom.entry(g).or_insert(0) += m;
            }
        }
        for (i, m) in cyclo {
            assert!(i >= 1, "cyclotomic factor index must be positive");
            if m > 0 {
                *f.cyclo.entry(i).or_insert(0) += m;
            }
        }
        f
    }

    /// `1 / (1 - L^a T^b)`; with `b = 0` the factor is rewritten over `(L^|a| - 1)`.
    pub fn geometric_inverse(a: i64, b: u32) -> Result<Self, AlgebraError> {
        if b >= 1 {
            return Ok(Self::from_parts([(0, TatePoly::one())], [(GeomFactor::new(a, b), 1)], []));
        }
        match a.signum() {
            0 => Err(AlgebraError::DivisionByZero),
            // 1/(1 - L^a) = -1/(L^a - 1)
            1 => Ok(Self::from_parts([(0, -TatePoly::one())], [], [(a as u32, 1)])),
            // 1/(1 - L^-c) = L^c/(L^c - 1)
            _ => {
                let c = a.unsigned_abs() as u32;
                Ok(Self::from_parts([(0, TatePoly::l_pow(c as i64))], [], [(c, 1)]))
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn geom_factors(&self) -> impl Iterator<Item = (GeomFactor, u32)> + '_ {
        self.geom.iter().map(|(g, m)| (*g, *m))
    }

    pub fn cyclo_factors(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.cyclo.iter().map(|(i, m)| (*i, *m))
    }

    /// Numerator terms `(k, c)` meaning `c·T^k`.
    pub fn numerator_terms(&self) -> impl Iterator<Item = (u32, &TatePoly)> + '_ {
        self.numerator.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self {
            numerator: self.numerator.mul(&other.numerator),
            geom: self.geom.clone(),
            cyclo: self.cyclo.clone(),
        };
        for (g, m) in &other.geom {
            *out.geom.entry(*g).or_insert(0) += m;
        }
        for (i, m) in &other.cyclo {
            *out.cyclo.entry(*i).or_insert(0) += m;
        }
        out
    }

    pub fn scale(&self, c: &TatePoly) -> Self {
        Self { numerator: self.numerator.scale(c), ..self.clone() }
    }

    /// Multiply by `T^k`.
    pub fn shift_t(&self, k: u32) -> Self {
        let mut numerator = TPoly::zero();
        for (e, c) in &self.numerator.terms {
            numerator.add_term(e + k, c.clone());
        }
        Self { numerator, ..self.clone() }
    }

    /// Divide by `T^k`; `None` unless every numerator term has degree `≥ k`.
    pub fn unshift_t(&self, k: u32) -> Option<Self> {
        let mut numerator = TPoly::zero();
        for (e, c) in &self.numerator.terms {
            numerator.add_term(e.checked_sub(k)?, c.clone());
        }
        Some(Self { numerator, ..self.clone() })
    }

    fn cyclo_product(&self) -> TatePoly {
        self.cyclo.iter().fold(TatePoly::one(), |acc, (i, m)| &acc * &TatePoly::cyclo(*i).pow(*m))
    }

    fn geom_product(&self) -> TPoly {
        let mut acc = TPoly::one();
        for (g, m) in &self.geom {
            for _ in 0..*m {
                acc = acc.mul(&g.as_tpoly());
            }
        }
        acc
    }

    /// Cancel whole factors that divide the numerator exactly.
    fn cancel(&mut self) {
        if self.numerator.is_zero() {
            self.geom.clear();
            self.cyclo.clear();
            return;
        }
        let factors: Vec<GeomFactor> = self.geom.keys().copied().collect();
        for g in factors {
            while self.geom.get(&g).copied().unwrap_or(0) > 0 {
                match self.numerator.div_geom(g) {
                    Some(q) => {
                        self.numerator = q;
                        let m = self.geom.get_mut(&g).unwrap();
                        *m -= 1;
                        if *m == 0 {
                            self.geom.remove(&g);
                        }
                    }
                    None => break,
                }
            }
        }
        let cycs: Vec<u32> = self.cyclo.keys().copied().collect();
        for i in cycs {
            while self.cyclo.get(&i).copied().unwrap_or(0) > 0 {
                match self.numerator.div_cyclo(i) {
                    Some(q) => {
                        self.numerator = q;
                        let m = self.cyclo.get_mut(&i).unwrap();
                        *m -= 1;
                        if *m == 0 {
                            self.cyclo.remove(&i);
                        }
                    }
                    None => break,
                }
            }
        }
    }

    /// Expansion of `numerator / Π geom` to `T^order`, cyclotomic factors untouched.
    fn expand_geom(&self, order: usize) -> Vec<TatePoly> {
        let mut c: Vec<TatePoly> = (0..=order as u32).map(|k| self.numerator.coeff(k)).collect();
        for (g, m) in &self.geom {
            let b = g.b as usize;
            for _ in 0..*m {
                for k in b..=order {
                    let add = c[k - b].shift(g.a);
                    c[k] = &c[k] + &add;
                }
            }
        }
        c
    }

    fn specialize(&self, q: &Rat) -> Result<QRatFunc, AlgebraError> {
        let mut num = Vec::new();
        let deg = self.numerator.degree().unwrap_or(0) as usize;
        for k in 0..=deg {
            num.push(self.numerator.coeff(k as u32).eval(q)?);
        }
        let mut den = UniPoly::one();
        for (g, m) in &self.geom {
            let mut f = vec![Rat::zero(); g.b as usize + 1];
            f[0] = Rat::one();
            f[g.b as usize] = -rat::pow(q, g.a);
            let f = UniPoly::from_coeffs(f);
            for _ in 0..*m {
                den = den.mul(&f);
            }
        }
        for (i, m) in &self.cyclo {
            let c = rat::pow(q, *i as i64) - Rat::one();
            if c.is_zero() {
                return Err(AlgebraError::SpecializationPole { q: rat::to_string(q), index: *i });
            }
            den = den.scale(&num_traits::pow(c, *m as usize));
        }
        Ok(QRatFunc::new(UniPoly::from_coeffs(num), den))
    }

    fn render(&self, latex: bool) -> String {
        let (num, compound) = self.numerator.render(latex);
        let mut factors: Vec<String> = Vec::new();
        for (g, m) in &self.geom {
            factors.push(with_mult(format!("({})", g.render(latex)), *m, latex));
        }
        for (i, m) in &self.cyclo {
            let l = l_power(*i as i64, latex);
            factors.push(with_mult(format!("({l}-1)"), *m, latex));
        }
        if factors.is_empty() {
            return num;
        }
        if latex {
            return format!("\\frac{{{num}}}{{{}}}", factors.join(""));
        }
        let num = if compound { format!("({num})") } else { num };
        if factors.len() == 1 && !factors[0].contains(")^") {
            format!("{num}/{}", factors[0])
        } else {
            format!("{num}/({})", factors.join("*"))
        }
    }
}

fn with_mult(f: String, m: u32, latex: bool) -> String {
    match (m, latex) {
        (1, _) => f,
        (m, true) => format!("{f}^{{{m}}}"),
        (m, false) => format!("{f}^{m}"),
    }
}

/// A finite sum of fractions; see the module docs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RatSeries {
    terms: Vec<Fraction>,
}

impl RatSeries {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(TatePoly::one())
    }

    pub fn constant(c: TatePoly) -> Self {
        Self::from(Fraction::constant(c))
    }

    /// `1 / (1 - L^a T^b)`, `b ≥ 1`.
    pub fn geometric(a: i64, b: u32) -> Self {
        Self::from(Fraction::from_parts([(0, TatePoly::one())], [(GeomFactor::new(a, b), 1)], []))
    }

    pub fn terms(&self) -> &[Fraction] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self { terms }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-TatePoly::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = Vec::new();
        for x in &self.terms {
            for y in &other.terms {
                let p = x.mul(y);
                if !p.is_zero() {
                    terms.push(p);
                }
            }
        }
        Self { terms }
    }

    pub fn scale(&self, c: &TatePoly) -> Self {
        Self { terms: self.terms.iter().map(|f| f.scale(c)).filter(|f| !f.is_zero()).collect() }
    }

    pub fn shift_t(&self, k: u32) -> Self {
        Self { terms: self.terms.iter().map(|f| f.shift_t(k)).collect() }
    }

    /// All fractions over one common denominator (maximal multiplicity of
    /// every factor), without cancellation.
    pub fn combined(&self) -> Fraction {
        let mut geom: BTreeMap<GeomFactor, u32> = BTreeMap::new();
        let mut cyclo: BTreeMap<u32, u32> = BTreeMap::new();
        for f in &self.terms {
            for (g, m) in &f.geom {
                let e = geom.entry(*g).or_insert(0);
                *e = (*e).max(*m);
            }
            for (i, m) in &f.cyclo {
                let e = cyclo.entry(*i).or_insert(0);
                *e = (*e).max(*m);
            }
        }
        let mut numerator = TPoly::zero();
        for f in &self.terms {
            let mut n = f.numerator.clone();
            for (g, m) in &geom {
                for _ in f.geom.get(g).copied().unwrap_or(0)..*m {
                    n = n.mul(&g.as_tpoly());
                }
            }
            for (i, m) in &cyclo {
                for _ in f.cyclo.get(i).copied().unwrap_or(0)..*m {
                    n = n.scale(&TatePoly::cyclo(*i));
                }
            }
            numerator = numerator.add(&n);
        }
        let mut out = Fraction { numerator, geom, cyclo };
        if out.numerator.is_zero() {
            out.geom.clear();
            out.cyclo.clear();
        }
        out
    }

    /// Single fraction, factors cancelled against the numerator by exact
    /// division, factors sorted by `(b, a)`.
    pub fn normalize(&self) -> Self {
        let mut f = self.combined();
        f.cancel();
        if f.is_zero() {
            Self::zero()
        } else {
            Self::from(f)
        }
    }

    /// Equality as elements of the ring, by cross-multiplication.
    pub fn same_series(&self, other: &Self) -> bool {
        let x = self.combined();
        let y = other.combined();
        let lhs = x.numerator.mul(&y.geom_product()).scale(&y.cyclo_product());
        let rhs = y.numerator.mul(&x.geom_product()).scale(&x.cyclo_product());
        lhs == rhs
    }

    /// Coefficients of `T^0..=T^order`.
    pub fn expand(&self, order: usize) -> Result<TruncatedSeries<TatePoly>, AlgebraError> {
        let mut cyclo: BTreeMap<u32, u32> = BTreeMap::new();
        for f in &self.terms {
            for (i, m) in &f.cyclo {
                let e = cyclo.entry(*i).or_insert(0);
                *e = (*e).max(*m);
            }
        }
        let mut acc = vec![TatePoly::zero(); order + 1];
        for f in &self.terms {
            let mut mult = TatePoly::one();
            for (i, m) in &cyclo {
                let have = f.cyclo.get(i).copied().unwrap_or(0);
                mult = &mult * &TatePoly::cyclo(*i).pow(m - have);
            }
            for (slot, c) in acc.iter_mut().zip(f.expand_geom(order)) {
                *slot = &*slot + &(&c * &mult);
            }
        }
        for (n, slot) in acc.iter_mut().enumerate() {
            for (i, m) in &cyclo {
                for _ in 0..*m {
                    *slot = slot.div_cyclo(*i).ok_or(AlgebraError::NonPolynomialCoefficient { t_exp: n, index: *i })?;
                }
            }
        }
        Ok(TruncatedSeries::new(acc))
    }

    /// Substitute `L := q`, giving a reduced element of Q(T).
    pub fn specialize(&self, q: &Rat) -> Result<QRatFunc, AlgebraError> {
        if q.is_zero() {
            return Err(AlgebraError::ZeroBase);
        }
        if q.abs().is_one() {
            return Err(AlgebraError::SpecializationPole { q: rat::to_string(q), index: 0 });
        }
        let mut acc = QRatFunc::new(UniPoly::zero(), UniPoly::one());
        for f in &self.terms {
            acc = acc.add(&f.specialize(q)?);
        }
        Ok(acc)
    }

    /// Exponents `alpha` such that `T = L^alpha` is a pole.
    ///
    /// Each candidate comes from a geometric factor `(1 - L^a T^b)`, giving
    /// `alpha = -a/b`. It is a pole when the denominator vanishes there to
    /// higher order than the numerator; the numerator's order is found by
    /// repeated synthetic division by `T - S^r` in `Q[S, S^-1]`, `S = L^(1/s)`.
    pub fn poles_in_l(&self) -> BTreeSet<Rat> {
        let f = self.normalize();
        let Some(frac) = f.terms.first() else {
            return BTreeSet::new();
        };
        let mut by_alpha: BTreeMap<Rat, u32> = BTreeMap::new();
        for (g, m) in &frac.geom {
            *by_alpha.entry(g.pole_exponent()).or_insert(0) += m;
        }
        let mut out = BTreeSet::new();
        for (alpha, den_mult) in by_alpha {
            let s = i64::try_from(alpha.denom()).expect("small denominator");
            let r = i64::try_from(alpha.numer()).expect("small numerator");
            let deg = frac.numerator.degree().unwrap_or(0) as usize;
            let mut coeffs: Vec<TatePoly> = (0..=deg).map(|k| frac.numerator.coeff(k as u32).dilate(s)).collect();
            let mut num_mult = 0u32;
            while num_mult < den_mult && coeffs.iter().any(|c| !c.is_zero()) {
                let (quot, rem) = synthetic_division(&coeffs, r);
                if !rem.is_zero() {
                    break;
                }
                coeffs = quot;
                num_mult += 1;
            }
            if den_mult > num_mult {
                out.insert(alpha);
            }
        }
        out
    }

    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        join_terms(self.terms.iter().map(|f| f.render(false)).collect())
    }

    pub fn to_latex(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        join_terms(self.terms.iter().map(|f| f.render(true)).collect())
    }
}

fn join_terms(parts: Vec<String>) -> String {
    let mut out = String::new();
    for (k, p) in parts.into_iter().enumerate() {
        if k > 0 {
            if let Some(rest) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
                continue;
            }
            out.push_str(" + ");
        }
        out.push_str(&p);
    }
    out
}

/// Divide `Σ c_k T^k` by `T - S^r`; returns (quotient, remainder).
fn synthetic_division(coeffs: &[TatePoly], r: i64) -> (Vec<TatePoly>, TatePoly) {
    let n = coeffs.len();
    if n <= 1 {
        return (Vec::new(), coeffs.first().cloned().unwrap_or_default());
    }
    let mut quot = vec![TatePoly::zero(); n - 1];
    quot[n - 2] = coeffs[n - 1].clone();
    for k in (1..n - 1).rev() {
        quot[k - 1] = &coeffs[k] + &quot[k].shift(r);
    }
    let rem = &coeffs[0] + &quot[0].shift(r);
    while quot.last().is_some_and(|c| c.is_zero()) {
        quot.pop();
    }
    (quot, rem)
}

impl From<Fraction> for RatSeries {
    fn from(f: Fraction) -> Self {
        if f.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![f] }
        }
    }
}

impl fmt::Display for RatSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

// ---- JSON wire format ----

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FractionWire {
    numerator: Vec<(u32, TatePoly)>,
    #[serde(rename = "denomGeom")]
    denom_geom: Vec<(i64, u32, u32)>,
    #[serde(rename = "denomCyclo")]
    denom_cyclo: Vec<(u32, u32)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SeriesWire {
    terms: Vec<FractionWire>,
}

impl From<&Fraction> for FractionWire {
    fn from(f: &Fraction) -> Self {
        Self {
            numerator: f.numerator.terms.iter().map(|(k, c)| (*k, c.clone())).collect(),
            denom_geom: f.geom.iter().map(|(g, m)| (g.a, g.b, *m)).collect(),
            denom_cyclo: f.cyclo.iter().map(|(i, m)| (*i, *m)).collect(),
        }
    }
}

impl TryFrom<FractionWire> for Fraction {
    type Error = String;

    fn try_from(w: FractionWire) -> Result<Self, String> {
        if let Some((a, b, _)) = w.denom_geom.iter().find(|(_, b, _)| *b == 0) {
            return Err(format!("geometric factor (a={a}, b={b}) needs b >= 1"));
        }
        if w.denom_cyclo.iter().any(|(i, _)| *i == 0) {
            return Err("cyclotomic factor index must be >= 1".into());
        }
        Ok(Fraction::from_parts(
            w.numerator,
            w.denom_geom.into_iter().map(|(a, b, m)| (GeomFactor::new(a, b), m)),
            w.denom_cyclo,
        ))
    }
}

impl Serialize for Fraction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FractionWire::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Fraction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        FractionWire::deserialize(d)?.try_into().map_err(serde::de::Error::custom)
    }
}

impl Serialize for RatSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SeriesWire { terms: self.terms.iter().map(FractionWire::from).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = SeriesWire::deserialize(d)?;
        let mut terms = Vec::new();
        for f in w.terms {
            let f: Fraction = f.try_into().map_err(serde::de::Error::custom)?;
            if !f.is_zero() {
                terms.push(f);
            }
        }
        Ok(Self { terms })
    }
}
