use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Exhaustive,
    TruncatedWindow,
    OrbitStabilizer,
    RationalFiber,
    HenselCertified,
    StabilizedUncertified,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Exhaustive => "exhaustive",
            Method::TruncatedWindow => "truncated-window",
            Method::OrbitStabilizer => "orbit-stabilizer",
            Method::RationalFiber => "rational-fiber",
            Method::HenselCertified => "hensel-certified",
            Method::StabilizedUncertified => "stabilized-uncertified",
        }
    }

    pub fn is_certified(self) -> bool {
        self != Method::StabilizedUncertified
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountRow {
    pub n: u32,
    /// Decimal string: counts outgrow 64 bits quickly.
    pub count: String,
    pub method: Method,
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CountReport {
    pub series: String,
    pub p: u64,
    pub d: u32,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub assumptions: Vec<String>,
    pub rows: Vec<CountRow>,
}

impl CountReport {
    pub fn new(series: impl Into<String>, p: u64, d: u32) -> Self {
        Self { series: series.into(), p, d, assumptions: Vec::new(), rows: Vec::new() }
    }

    pub fn certified(&self) -> bool {
        self.rows.iter().all(|r| r.method.is_certified())
    }

    /// Copy with every timing zeroed, for byte-level comparisons.
    pub fn without_timing(&self) -> Self {
        let mut r = self.clone();
        r.rows.iter_mut().for_each(|row| row.seconds = 0.0);
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let mut r = CountReport::new("branch", 5, 1);
        r.rows.push(CountRow { n: 0, count: "1".into(), method: Method::Exhaustive, seconds: 0.25 });
        r.rows.push(CountRow {
            n: 1,
            count: "123456789012345678901234567890".into(),
            method: Method::StabilizedUncertified,
            seconds: 0.0,
        });
        let back = CountReport::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(!r.certified());
        assert!(r.to_json().contains("\"stabilized-uncertified\""));
    }
}
