use super::Fq;

/// Element of `F_q[t]/t^{n+1}`; `coeffs[i]` is the coefficient of `t^i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncPow {
    coeffs: Vec<u32>,
}

impl TruncPow {
    pub fn zero(n: usize) -> Self {
        Self { coeffs: vec![0; n + 1] }
    }

    pub fn one(n: usize) -> Self {
        let mut s = Self::zero(n);
        s.coeffs[0] = 1;
        s
    }

    /// Pads with zeros or truncates to length `n + 1`.
    pub fn from_coeffs(mut coeffs: Vec<u32>, n: usize) -> Self {
        coeffs.resize(n + 1, 0);
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [u32] {
        &mut self.coeffs
    }

    /// `t`-adic valuation, `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    pub fn add(&self, other: &Self, f: &Fq) -> Self {
        Self { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f.add(a, b)).collect() }
    }

    pub fn scale(&self, c: u32, f: &Fq) -> Self {
        Self { coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect() }
    }

    pub fn mul(&self, other: &Self, f: &Fq) -> Self {
        let n = self.order();
        let mut out = vec![0u32; n + 1];
        let (Some(va), Some(vb)) = (self.valuation(), other.valuation()) else {
            return Self { coeffs: out };
        };
        for i in va..=n {
            let a = self.coeffs[i];
            if a == 0 {
                continue;
            }
            for j in vb..=n - i {
                let b = other.coeffs[j];
                if b != 0 {
                    out[i + j] = f.add(out[i + j], f.mul(a, b));
                }
            }
        }
        Self { coeffs: out }
    }

    pub fn pow(&self, e: u32, f: &Fq) -> Self {
        let mut acc = Self::one(self.order());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f);
            }
            base = base.mul(&base, f);
            e >>= 1;
        }
        acc
    }
}
