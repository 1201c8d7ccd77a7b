//! Laurent polynomials in the Lefschetz class `L`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rat::{self, Rat};
use super::AlgebraError;

/// `Σ c_e L^e` with integer (possibly negative) exponents. Zero coefficients
/// are never stored, so structural equality is ring equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<(i64, String)>", try_from = "Vec<(i64, String)>")]
pub struct TatePoly {
    terms: BTreeMap<i64, Rat>,
}

impl TatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Rat, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    /// `L^e`.
    pub fn l_pow(e: i64) -> Self {
        Self::monomial(Rat::one(), e)
    }

    /// `L - 1`.
    pub fn l_minus_one() -> Self {
        Self::l_pow(1) - Self::one()
    }

    /// `L^i - 1`.
    pub fn cyclo(i: u32) -> Self {
        Self::l_pow(i as i64) - Self::one()
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rat)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: i64, c: Rat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, e: i64) -> Rat {
        self.terms.get(&e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rat)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// The single term, if this is a monomial.
    pub fn as_monomial(&self) -> Option<(i64, &Rat)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect() }
    }

    /// Multiply by `L^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    /// Replace `L` by `L^k` (k ≠ 0).
    pub fn dilate(&self, k: i64) -> Self {
        debug_assert!(k != 0);
        Self { terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact evaluation at `L = q`.
    pub fn eval(&self, q: &Rat) -> Result<Rat, AlgebraError> {
        if q.is_zero() && self.min_exp().is_some_and(|e| e < 0) {
            return Err(AlgebraError::ZeroBase);
        }
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            acc += c * rat::pow(q, *e);
        }
        Ok(acc)
    }

    /// Exact quotient by `L^i - 1`, or `None` if it does not divide.
    pub fn div_cyclo(&self, i: u32) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let i = i as i64;
        let lo = self.min_exp().unwrap();
        let mut rem = self.terms.clone();
        let mut quot = BTreeMap::new();
        // Peel off the top degree until what is left sits below lo + i.
        while let Some((&top, _)) = rem.iter().next_back() {
            if top < lo + i {
                break;
            }
            let c = rem.remove(&top).unwrap();
            let slot = rem.entry(top - i).or_insert_with(Rat::zero);
            *slot += &c;
            if slot.is_zero() {
                rem.remove(&(top - i));
            }
            quot.insert(top - i, c);
        }
        if rem.is_empty() {
            Some(Self { terms: quot.into_iter().filter(|(_, c)| !c.is_zero()).collect() })
        } else {
            None
        }
    }

    /// Exact quotient by another Laurent polynomial, if it divides.
    pub fn div_exact(&self, d: &TatePoly) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (dlo, dhi) = (d.min_exp().unwrap(), d.max_exp().unwrap());
        let lead = d.coeff(dhi);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        let lo = self.min_exp().unwrap();
        while let Some(top) = rem.max_exp() {
            if top - dhi < lo - dlo {
                break;
            }
            let c = rem.coeff(top) / &lead;
            let e = top - dhi;
            quot.add_term(e, c.clone());
            rem = rem - d.shift(e).scale(&c);
        }
        rem.is_zero().then_some(quot)
    }

    pub fn to_text(&self) -> String {
        self.render(false)
    }

    pub fn to_latex(&self) -> String {
        self.render(true)
    }

    fn render(&self, latex: bool) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { "-" } else { "+" });
            }
            let var = l_power(*e, latex);
            if var.is_empty() {
                out.push_str(&rat_text(&mag, latex));
            } else if mag.is_one() {
                out.push_str(&var);
            } else {
                out.push_str(&rat_text(&mag, latex));
                out.push_str(if latex { " " } else { "*" });
                out.push_str(&var);
            }
        }
        out
    }
}

pub(crate) fn rat_text(q: &Rat, latex: bool) -> String {
    if latex && !q.is_integer() {
        format!("\\frac{{{}}}{{{}}}", q.numer(), q.denom())
    } else {
        rat::to_string(q)
    }
}

pub(crate) fn l_power(e: i64, latex: bool) -> String {
    let l = if latex { "\\mathbf{L}" } else { "L" };
    match e {
        0 => String::new(),
        1 => l.to_string(),
        _ if latex => format!("{l}^{{{e}}}"),
        _ => format!("{l}^{e}"),
    }
}

impl fmt::Display for TatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl From<TatePoly> for Vec<(i64, String)> {
    fn from(p: TatePoly) -> Self {
        p.terms.iter().map(|(e, c)| (*e, rat::to_string(c))).collect()
    }
}

impl TryFrom<Vec<(i64, String)>> for TatePoly {
    type Error = String;

    fn try_from(v: Vec<(i64, String)>) -> Result<Self, String> {
        let mut p = TatePoly::zero();
        for (e, c) in v {
            p.add_term(e, rat::parse(&c)?);
        }
        Ok(p)
    }
}

impl From<Rat> for TatePoly {
    fn from(c: Rat) -> Self {
        Self::constant(c)
    }
}

impl Add<&TatePoly> for &TatePoly {
    type Output = TatePoly;
    fn add(self, rhs: &TatePoly) -> TatePoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Add for TatePoly {
    type Output = TatePoly;
    fn add(self, rhs: TatePoly) -> TatePoly {
        &self + &rhs
    }
}

impl Neg for &TatePoly {
    type Output = TatePoly;
    fn neg(self) -> TatePoly {
        TatePoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Neg for TatePoly {
    type Output = TatePoly;
    fn neg(self) -> TatePoly {
        -&self
    }
}

impl Sub<&TatePoly> for &TatePoly {
    type Output = TatePoly;
    fn sub(self, rhs: &TatePoly) -> TatePoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Sub for TatePoly {
    type Output = TatePoly;
    fn sub(self, rhs: TatePoly) -> TatePoly {
        &self - &rhs
    }
}

impl Mul<&TatePoly> for &TatePoly {
    type Output = TatePoly;
    fn mul(self, rhs: &TatePoly) -> TatePoly {
        let mut out = TatePoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for TatePoly {
    type Output = TatePoly;
    fn mul(self, rhs: TatePoly) -> TatePoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{frac, int};

    #[test]
    fn eval_examples() {
        let p = TatePoly::l_minus_one() * TatePoly::l_pow(2);
        assert_eq!(p.eval(&int(5)).unwrap(), int(100));
        assert_eq!(TatePoly::one().eval(&int(-3)).unwrap(), int(1));
        // (N1/m)(L-1)L^2 with N1 = 2, m = 4
        let q = p.scale(&frac(2, 4));
        assert_eq!(q.eval(&int(5)).unwrap(), int(50));
    }

    #[test]
    fn zero_base() {
        assert_eq!(TatePoly::l_pow(-1).eval(&int(0)), Err(AlgebraError::ZeroBase));
        assert_eq!(TatePoly::l_pow(2).eval(&int(0)).unwrap(), int(0));
    }

    #[test]
    fn cyclo_division() {
        let p = TatePoly::cyclo(3) * TatePoly::from_terms([(-2, int(1)), (1, frac(1, 2))]);
        assert_eq!(p.div_cyclo(3).unwrap(), TatePoly::from_terms([(-2, int(1)), (1, frac(1, 2))]));
        assert!(TatePoly::l_pow(2).div_cyclo(1).is_none());
        assert_eq!(TatePoly::cyclo(4).div_cyclo(2).unwrap(), TatePoly::cyclo(2) + TatePoly::from(int(2)));
    }

    #[test]
    fn general_division() {
        let a = TatePoly::from_terms([(-1, int(2)), (0, int(1)), (3, frac(-1, 3))]);
        let b = TatePoly::from_terms([(0, int(1)), (2, int(5))]);
        assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
        assert!(a.div_exact(&b).is_none());
    }

    #[test]
    fn rendering() {
        let p = TatePoly::from_terms([(2, int(1)), (1, int(-1)), (0, int(1))]);
        assert_eq!(p.to_text(), "L^2-L+1");
        assert_eq!(TatePoly::from_terms([(-1, frac(-1, 4))]).to_text(), "-1/4*L^-1");
    }
}
