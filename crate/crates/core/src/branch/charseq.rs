use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{BranchError, BranchSpec};

/// Characteristic data of a branch.
///
/// `beta[0] = e[0] = m`, `big_n[0] = 1`; for `1 ≤ i ≤ g`:
/// `e[i] = gcd(e[i-1], beta[i])`, `e[i-1] = n[i-1] * e[i]` and
/// `big_n[i] = n[0] * ... * n[i-1]`, so `big_n[i] * e[i] = m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharSeq {
    pub g: usize,
    pub beta: Vec<u32>,
    pub e: Vec<u32>,
    pub n: Vec<u32>,
    #[serde(rename = "N")]
    pub big_n: Vec<u32>,
}

impl CharSeq {
    pub fn m(&self) -> u32 {
        self.beta[0]
    }

    /// `beta[1..=g]`.
    pub fn exponents(&self) -> &[u32] {
        &self.beta[1..]
    }

    /// Checks the structural identities; used by tests and on deserialization
    /// of externally supplied data.
    pub fn is_consistent(&self) -> bool {
        let g = self.g;
        if self.beta.len() != g + 1 || self.e.len() != g + 1 || self.n.len() != g || self.big_n.len() != g + 1 {
            return false;
        }
        let m = self.beta[0];
        if self.e[0] != m || self.big_n[0] != 1 || self.e[g] != 1 {
            return false;
        }
        (1..=g).all(|i| {
            self.e[i] == self.e[i - 1].gcd(&self.beta[i])
                && self.e[i] < self.e[i - 1]
                && self.e[i - 1] == self.n[i - 1] * self.e[i]
                && self.big_n[i] == self.big_n[i - 1] * self.n[i - 1]
                && self.big_n[i] * self.e[i] == m
                && self.beta[i] > self.beta[i - 1]
        })
    }

    pub fn to_text(&self) -> String {
        let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(", ");
        format!(
            "g: {}\nbeta: [{}; {}]\ne: [{}]\nn: [{}]\nN: [{}]",
            self.g,
            self.beta[0],
            join(&self.beta[1..]),
            join(&self.e),
            join(&self.n),
            join(&self.big_n)
        )
    }
}

/// Runs the recurrence `beta_i = min{ j : a_j ≠ 0, e_{i-1} ∤ j }`,
/// `e_i = gcd(e_{i-1}, beta_i)` until `e_g = 1`.
pub fn characteristic_sequence(b: &BranchSpec) -> Result<CharSeq, BranchError> {
    let m = b.m();
    let mut beta = vec![m];
    let mut e = vec![m];
    let mut n = Vec::new();
    let mut big_n = vec![1u32];
    while *e.last().unwrap() > 1 {
        let prev = *e.last().unwrap();
        let next = b
            .coeffs()
            .map(|(j, _)| j)
            .find(|j| j % prev != 0)
            .ok_or(BranchError::TruncationTooShort { truncation: b.truncation(), e: prev })?;
        let ei = prev.gcd(&next);
        beta.push(next);
        e.push(ei);
        n.push(prev / ei);
        big_n.push(big_n.last().unwrap() * (prev / ei));
    }
    Ok(CharSeq { g: beta.len() - 1, beta, e, n, big_n })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smooth_branch() {
        let c = characteristic_sequence(&BranchSpec::with_int_coeffs(1, &[(3, 5)]).unwrap()).unwrap();
        assert_eq!(c, CharSeq { g: 0, beta: vec![1], e: vec![1], n: vec![], big_n: vec![1] });
        assert!(c.is_consistent());
    }

    #[test]
    fn cusp() {
        let c = characteristic_sequence(&BranchSpec::with_int_coeffs(2, &[(3, 1)]).unwrap()).unwrap();
        assert_eq!(c.g, 1);
        assert_eq!(c.beta, vec![2, 3]);
        assert_eq!(c.e, vec![2, 1]);
        assert_eq!(c.n, vec![2]);
        assert_eq!(c.big_n, vec![1, 2]);
        assert_eq!(c.to_text().lines().nth(1), Some("beta: [2; 3]"));
    }

    #[test]
    fn two_pairs() {
        let c = characteristic_sequence(&BranchSpec::with_int_coeffs(4, &[(6, 1), (7, 1)]).unwrap()).unwrap();
        assert_eq!(c.g, 2);
        assert_eq!(c.beta, vec![4, 6, 7]);
        assert_eq!(c.e, vec![4, 2, 1]);
        assert_eq!(c.n, vec![2, 2]);
        assert_eq!(c.big_n, vec![1, 2, 4]);
        assert!(c.is_consistent());
    }

    #[test]
    fn non_characteristic_terms_are_skipped() {
        // a_8 is divisible by e_0 = 4 and a_10 by e_1 = 2
        let b = BranchSpec::with_int_coeffs(4, &[(4, 3), (6, 1), (8, 2), (10, 1), (11, -1)]).unwrap();
        let c = characteristic_sequence(&b).unwrap();
        assert_eq!(c.beta, vec![4, 6, 11]);
    }

    #[test]
    fn truncation_too_short() {
        let b = BranchSpec::with_int_coeffs(4, &[(6, 1), (8, 1)]).unwrap();
        assert_eq!(characteristic_sequence(&b), Err(BranchError::TruncationTooShort { truncation: 8, e: 2 }));
    }
}
