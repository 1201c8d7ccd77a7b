//! Integer polynomials in `x1..xm`, parsed from text like `"x1^2 - x2^3"`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::CountError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    /// Exponent vector (padded to the number of variables) to coefficient.
    terms: BTreeMap<Vec<u32>, BigInt>,
    nvars: usize,
}

impl IntPoly {
    pub fn zero(nvars: usize) -> Self {
        Self { terms: BTreeMap::new(), nvars }
    }

    pub fn constant(c: BigInt, nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// `x_{i+1}` (0-based index).
    pub fn var(i: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, BigInt::one());
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        let entry = self.terms.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Same polynomial over more variables.
    pub fn widen(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e = e.clone();
                e.resize(nvars, 0);
                (e, c.clone())
            })
            .collect();
        Self { terms, nvars }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(), nvars: self.nvars }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(BigInt::one(), self.nvars), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, point: &[BigInt]) -> BigInt {
        self.terms.iter().map(|(e, c)| e.iter().zip(point).fold(c.clone(), |acc, (&k, x)| acc * x.pow(k))).sum()
    }

    /// Value modulo `modulus` at a point given by residues in `[0, modulus)`.
    pub fn eval_mod(&self, point: &[u64], modulus: u64) -> u64 {
        let m = modulus as u128;
        let mut acc = 0u128;
        for (e, c) in &self.terms {
            let mut t = bigint_mod(c, modulus) as u128;
            for (&k, &x) in e.iter().zip(point) {
                for _ in 0..k {
                    t = t * x as u128 % m;
                }
            }
            acc = (acc + t) % m;
        }
        acc as u64
    }

    /// Taylor coefficients `c_α(a)` with `f(a + y) = Σ_α c_α(a) y^α`,
    /// reduced modulo `modulus`; the `α = 0` entry is omitted.
    pub fn taylor_mod(&self, point: &[u64], modulus: u64) -> BTreeMap<Vec<u32>, u64> {
        let m = modulus as u128;
        let mut out: BTreeMap<Vec<u32>, u128> = BTreeMap::new();
        for (e, c) in &self.terms {
            let c = bigint_mod(c, modulus) as u128;
            // enumerate α ≤ e componentwise
            let mut alpha = vec![0u32; e.len()];
            loop {
                if alpha.iter().any(|&a| a > 0) {
                    let mut t = c;
                    for i in 0..e.len() {
                        t = t * (binom(e[i], alpha[i]) % m) % m;
                        for _ in 0..e[i] - alpha[i] {
                            t = t * point[i] as u128 % m;
                        }
                    }
                    let slot = out.entry(alpha.clone()).or_insert(0);
                    *slot = (*slot + t) % m;
                }
                let mut i = 0;
                while i < e.len() {
                    if alpha[i] < e[i] {
                        alpha[i] += 1;
                        break;
                    }
                    alpha[i] = 0;
                    i += 1;
                }
                if i == e.len() {
                    break;
                }
            }
        }
        out.into_iter().map(|(a, v)| (a, v as u64)).collect()
    }

    /// `∂f/∂x_{i+1}`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                out.add_term(e2, c * BigInt::from(e[i]));
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, CountError> {
        let mut p = Parser { s: text.as_bytes(), pos: 0, nvars: 0 };
        let tree = p.expr()?;
        p.skip_ws();
        if p.pos < p.s.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(tree.build(p.nvars))
    }

    /// Parses several polynomials over a common variable set.
    pub fn parse_system<S: AsRef<str>>(texts: &[S]) -> Result<Vec<Self>, CountError> {
        let polys = texts.iter().map(|t| Self::parse(t.as_ref())).collect::<Result<Vec<_>, _>>()?;
        let n = polys.iter().map(|p| p.nvars).max().unwrap_or(0);
        Ok(polys.into_iter().map(|p| p.widen(n)).collect())
    }
}

fn binom(n: u32, k: u32) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

pub(crate) fn bigint_mod(c: &BigInt, m: u64) -> u64 {
    let r = c % BigInt::from(m);
    let r = if r.is_negative() { r + BigInt::from(m) } else { r };
    r.to_u64().unwrap()
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest total degree first
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.iter().sum::<u32>().cmp(&a.0.iter().sum::<u32>()).then(b.0.cmp(a.0)));
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, k) })
                .collect();
            let abs = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{abs}")?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{abs}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

enum Expr {
    Num(BigInt),
    Var(usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    fn build(&self, n: usize) -> IntPoly {
        match self {
            Expr::Num(c) => IntPoly::constant(c.clone(), n),
            Expr::Var(i) => IntPoly::var(*i, n),
            Expr::Add(a, b) => a.build(n).add(&b.build(n)),
            Expr::Sub(a, b) => a.build(n).add(&b.build(n).neg()),
            Expr::Mul(a, b) => a.build(n).mul(&b.build(n)),
            Expr::Neg(a) => a.build(n).neg(),
            Expr::Pow(a, k) => a.build(n).pow(*k),
        }
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> CountError {
        CountError::Syntax { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
    }

    fn expr(&mut self) -> Result<Expr, CountError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, CountError> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, CountError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let Some(k) = self.digits() else {
                return Err(self.err("expected exponent"));
            };
            let k = k.parse().map_err(|_| self.err("exponent too large"))?;
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, CountError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'x') => {
                self.pos += 1;
                let Some(idx) = self.digits().and_then(|d| d.parse::<usize>().ok()).filter(|&i| i >= 1) else {
                    return Err(self.err("expected variable x1, x2, ..."));
                };
                self.nvars = self.nvars.max(idx);
                Ok(Expr::Var(idx - 1))
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits().unwrap();
                Ok(Expr::Num(d.parse().unwrap()))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn parse_cusp() {
        let f = IntPoly::parse("x1^2 - x2^3").unwrap();
        assert_eq!(f.nvars(), 2);
        assert_eq!(f.eval(&big(&[8, 4])), BigInt::zero());
        assert_eq!(f.eval(&big(&[1, 1])), BigInt::zero());
        assert_eq!(f.eval(&big(&[2, 1])), BigInt::from(3));
        assert_eq!(f.to_string(), "-x2^3 + x1^2");
    }

    #[test]
    fn parse_products_and_parens() {
        let f = IntPoly::parse("3*(x1 + 1)^2 - -2*x1").unwrap();
        // 3x^2 + 8x + 3
        assert_eq!(f.eval(&big(&[2])), BigInt::from(31));
        assert_eq!(f.degree(), 2);
        assert_eq!(IntPoly::parse("x1 - x1").unwrap(), IntPoly::zero(1));
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(IntPoly::parse("x1 + * 3"), Err(CountError::Syntax { pos: 5, .. })));
        assert!(IntPoly::parse("y^2").is_err());
        assert!(IntPoly::parse("x0").is_err());
        assert!(IntPoly::parse("(x1").is_err());
        assert!(IntPoly::parse("x1 x2").is_err());
    }

    #[test]
    fn taylor_reconstructs() {
        let f = IntPoly::parse("x1^2*x2 - 5*x2^3 + 7").unwrap();
        let a = [3u64, 4];
        let m = 1_000_003;
        let t = f.taylor_mod(&a, m);
        // f(a + y) at y = (2, 5) equals f(5, 9)
        let y = [2u64, 5];
        let mut v = f.eval_mod(&a, m) as u128;
        for (alpha, c) in &t {
            let mut term = *c as u128;
            for (i, &k) in alpha.iter().enumerate() {
                term = term * (y[i] as u128).pow(k) % m as u128;
            }
            v = (v + term) % m as u128;
        }
        assert_eq!(v as u64, f.eval_mod(&[5, 9], m));
        assert_eq!(f.eval_mod(&[5, 9], m), bigint_mod(&f.eval(&big(&[5, 9])), m));
    }

    #[test]
    fn system_widens() {
        let s = IntPoly::parse_system(&["x1", "x3 - x2"]).unwrap();
        assert!(s.iter().all(|p| p.nvars() == 3));
    }
}
