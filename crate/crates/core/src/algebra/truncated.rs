use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use super::rat::{self, Rat};
use super::tate::TatePoly;

/// Coefficients of `T^0..=T^order` of a power series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries<C> {
    coeffs: Vec<C>,
}

impl<C> TruncatedSeries<C> {
    /// Panics on an empty vector: a truncation always has order ≥ 0.
    pub fn new(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "truncated series needs at least T^0");
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &C {
        &self.coeffs[n]
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn map<D>(&self, f: impl FnMut(&C) -> D) -> TruncatedSeries<D> {
        TruncatedSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }
}

impl TruncatedSeries<TatePoly> {
    /// Evaluate every coefficient at `L = q`.
    pub fn eval(&self, q: &Rat) -> Result<TruncatedSeries<Rat>, super::AlgebraError> {
        let coeffs = self.coeffs.iter().map(|c| c.eval(q)).collect::<Result<Vec<_>, _>>()?;
        Ok(TruncatedSeries { coeffs })
    }
}

/// JSON encoding of a single coefficient.
pub trait JsonCoeff: Sized {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self, String>;
}

impl JsonCoeff for Rat {
    fn to_json(&self) -> Value {
        Value::String(rat::to_string(self))
    }

    fn from_json(v: &Value) -> Result<Self, String> {
        v.as_str().ok_or_else(|| "expected a rational string".to_string()).and_then(rat::parse)
    }
}

impl JsonCoeff for TatePoly {
    fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("tate poly serializes")
    }

    fn from_json(v: &Value) -> Result<Self, String> {
        serde_json::from_value(v.clone()).map_err(|e| e.to_string())
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    order: usize,
    coeffs: Vec<Value>,
}

impl<C: JsonCoeff> Serialize for TruncatedSeries<C> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Wire { order: self.order(), coeffs: self.coeffs.iter().map(JsonCoeff::to_json).collect() }.serialize(s)
    }
}

impl<'de, C: JsonCoeff> Deserialize<'de> for TruncatedSeries<C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        if w.coeffs.len() != w.order + 1 {
            return Err(D::Error::custom(format!(
                "order {} needs {} coefficients, got {}",
                w.order,
                w.order + 1,
                w.coeffs.len()
            )));
        }
        let coeffs = w.coeffs.iter().map(C::from_json).collect::<Result<Vec<_>, _>>().map_err(D::Error::custom)?;
        Ok(Self { coeffs })
    }
}
