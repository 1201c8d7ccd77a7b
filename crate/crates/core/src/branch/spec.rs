use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::BranchError;
use crate::algebra::rat::{self, Rat};

/// A formal branch `x = w^m`, `y = Σ_{m ≤ j ≤ J} a_j w^j`.
///
/// Coefficients beyond the truncation order are treated as zero, so the
/// branch is the polynomial parametrization given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchSpec {
    m: u32,
    coeffs: BTreeMap<u32, Rat>,
    truncation: u32,
}

impl BranchSpec {
    pub fn new(
        m: u32,
        coeffs: impl IntoIterator<Item = (u32, Rat)>,
        truncation: Option<u32>,
    ) -> Result<Self, BranchError> {
        if m == 0 {
            return Err(BranchError::Invalid("multiplicity m must be >= 1".into()));
        }
        let mut map = BTreeMap::new();
        for (j, c) in coeffs {
            if j < m {
                return Err(BranchError::Invalid(format!("coefficient index {j} below m = {m}")));
            }
            if map.insert(j, c).is_some() {
                return Err(BranchError::Invalid(format!("coefficient index {j} given twice")));
            }
        }
        map.retain(|_, c: &mut Rat| !c.is_zero());
        let max_key = map.keys().next_back().copied().unwrap_or(m);
        let truncation = truncation.unwrap_or(max_key.max(m));
        if let Some(j) = map.keys().find(|&&j| j > truncation) {
            return Err(BranchError::Invalid(format!("coefficient index {j} beyond truncation {truncation}")));
        }
        Ok(Self { m, coeffs: map, truncation })
    }

    /// Convenience for integer coefficients.
    pub fn with_int_coeffs(m: u32, coeffs: &[(u32, i64)]) -> Result<Self, BranchError> {
        Self::new(m, coeffs.iter().map(|&(j, c)| (j, rat::int(c))), None)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    /// Nonzero coefficients `(j, a_j)` in increasing `j`.
    pub fn coeffs(&self) -> impl Iterator<Item = (u32, &Rat)> + '_ {
        self.coeffs.iter().map(|(j, c)| (*j, c))
    }

    pub fn coeff(&self, j: u32) -> Option<&Rat> {
        self.coeffs.get(&j)
    }

    pub fn from_json(s: &str) -> Result<Self, BranchError> {
        let w: BranchWire = serde_json::from_str(s).map_err(|e| BranchError::Invalid(e.to_string()))?;
        w.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&BranchWire::from(self)).expect("branch serializes")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BranchWire {
    m: u32,
    coeffs: Vec<(u32, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    truncation: Option<u32>,
}

impl From<&BranchSpec> for BranchWire {
    fn from(b: &BranchSpec) -> Self {
        Self {
            m: b.m,
            coeffs: b.coeffs.iter().map(|(j, c)| (*j, rat::to_string(c))).collect(),
            truncation: Some(b.truncation),
        }
    }
}

impl TryFrom<BranchWire> for BranchSpec {
    type Error = BranchError;

    fn try_from(w: BranchWire) -> Result<Self, BranchError> {
        let coeffs = w
            .coeffs
            .into_iter()
            .map(|(j, c)| rat::parse(&c).map(|q| (j, q)).map_err(BranchError::Invalid))
            .collect::<Result<Vec<_>, _>>()?;
        BranchSpec::new(w.m, coeffs, w.truncation)
    }
}

impl Serialize for BranchSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        BranchWire::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for BranchSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        BranchWire::deserialize(d)?.try_into().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_json() {
        let b = BranchSpec::from_json(r#"{"m": 4, "coeffs": [[6, "1"], [7, "1/2"]]}"#).unwrap();
        assert_eq!(b.m(), 4);
        assert_eq!(b.truncation(), 7);
        assert_eq!(b.coeff(7), Some(&rat::frac(1, 2)));
        let again = BranchSpec::from_json(&b.to_json()).unwrap();
        assert_eq!(again, b);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(BranchSpec::from_json(r#"{"m": 0, "coeffs": []}"#).is_err());
        assert!(BranchSpec::from_json(r#"{"m": 4, "coeffs": [[3, "1"]]}"#).is_err());
        assert!(BranchSpec::from_json(r#"{"m": 4, "coeffs": [[6, "x"]]}"#).is_err());
        assert!(BranchSpec::from_json(r#"{"m": 4, "coeffs": [[9, "1"]], "truncation": 8}"#).is_err());
        assert!(BranchSpec::from_json("{").is_err());
    }
}
