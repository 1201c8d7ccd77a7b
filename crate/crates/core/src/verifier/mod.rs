//! End-to-end checks: specialize a symbolic series at `L = p` and compare
//! its coefficients exactly with point counts.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::rat::{self, Rat};
use crate::algebra::{fit_rational, AlgebraError, FitError, QRatFunc, RatSeries};
use crate::branch::{characteristic_sequence, p_ar, p_geom, BranchError, BranchSpec};
use crate::counter::{
    count_branch_geometric, count_branch_image, count_branch_orbit, count_liftable, igusa_monomial, measure_ord_locus,
    CountError, IntPoly, Method, DEFAULT_BUDGET,
};
use crate::modp;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("no admissible prime left after filtering")]
    NoAdmissiblePrime,
    #[error("invalid plan: {0}")]
    Invalid(String),
    #[error(transparent)]
    Count(#[from] CountError),
    #[error(transparent)]
    Branch(#[from] BranchError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    BranchPar,
    BranchPgeom,
    CuspCrossMethod,
    IgusaMonomial,
    RationalShape,
}

/// How `branch-par` counts arcs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BranchMethod {
    Exhaustive,
    #[default]
    Window,
    Orbit,
}

fn default_budget() -> u64 {
    DEFAULT_BUDGET
}

fn default_true() -> bool {
    true
}

fn default_coefficients() -> u32 {
    40
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerificationPlan {
    pub target: Target,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branch: Option<BranchSpec>,
    /// Equations and origin conditions for `cusp-cross-method`, in `x1, x2, …`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub poly: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub origin: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nvars: Option<usize>,
    /// Monomial exponents for `igusa-monomial`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub k: Vec<u32>,
    pub primes: Vec<u64>,
    pub n_max: u32,
    #[serde(default = "default_budget")]
    pub budget: u64,
    /// Lifting depth; `2n + 2` at order `n` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<u32>,
    #[serde(default)]
    pub method: BranchMethod,
    /// Coefficients fed to the fit in `rational-shape`.
    #[serde(default = "default_coefficients")]
    pub coefficients: u32,
    /// Replaces the symbolic side (e.g. to check that a wrong series fails).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series: Option<RatSeries>,
    /// With `false`, primes `p ≢ 1 mod m` are kept.
    #[serde(default = "default_true")]
    pub filter_primes: bool,
}

impl VerificationPlan {
    pub fn new(target: Target, primes: Vec<u64>, n_max: u32) -> Self {
        Self {
            target,
            branch: None,
            poly: Vec::new(),
            origin: Vec::new(),
            nvars: None,
            k: Vec::new(),
            primes,
            n_max,
            budget: DEFAULT_BUDGET,
            depth: None,
            method: BranchMethod::Window,
            coefficients: 40,
            series: None,
            filter_primes: true,
        }
    }

    pub fn with_branch(mut self, b: BranchSpec) -> Self {
        self.branch = Some(b);
        self
    }

    pub fn from_json(s: &str) -> Result<Self, VerifyError> {
        serde_json::from_str(s).map_err(|e| VerifyError::Invalid(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plan serializes")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Summary {
    Pass,
    Fail,
    Uncertified,
}

impl Summary {
    pub fn exit_code(self) -> i32 {
        match self {
            Summary::Pass => 0,
            Summary::Fail => 2,
            Summary::Uncertified => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub p: u64,
    pub n: u32,
    pub symbolic: String,
    pub counted: String,
    /// Second count for cross-method plans.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counted_alt: Option<String>,
    pub equal: bool,
    pub certified: bool,
    pub method: Method,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exclusion {
    pub p: u64,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub p: u64,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Verdict {
    pub target: Target,
    pub summary: Summary,
    pub excluded: Vec<Exclusion>,
    pub rows: Vec<Comparison>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_mismatch: Option<Comparison>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Verdict {
    /// Fails on a certified mismatch or a failed check; otherwise uncertified
    /// rows make the verdict uncertified (their counts are only upper bounds).
    fn assemble(
        target: Target,
        excluded: Vec<Exclusion>,
        rows: Vec<Comparison>,
        checks: Vec<Check>,
        notes: Vec<String>,
    ) -> Self {
        let first_mismatch = rows.iter().find(|r| !r.equal).cloned();
        let summary = if rows.iter().any(|r| r.certified && !r.equal) || checks.iter().any(|c| !c.passed) {
            Summary::Fail
        } else if rows.iter().any(|r| !r.certified) {
            Summary::Uncertified
        } else {
            Summary::Pass
        };
        Self { target, summary, excluded, rows, checks, first_mismatch, notes }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("verdict serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

/// Why `p` is not admissible for `b`, if it is not. With `mod_m`, primes
/// `p ≢ 1 mod m` are rejected as well.
pub fn prime_exclusion(b: &BranchSpec, p: u64, mod_m: bool) -> Option<String> {
    let m = b.m() as u64;
    if !modp::is_prime(p) {
        return Some("not prime".into());
    }
    if b.coeffs().any(|(_, a)| modp::rat_mod(a, p).is_none()) {
        return Some("divides a coefficient denominator".into());
    }
    if m > 1 && p <= m {
        return Some(format!("p <= m = {m}"));
    }
    if mod_m && p % m != 1 % m {
        return Some(format!("p is not 1 mod m = {m}"));
    }
    if let Ok(c) = characteristic_sequence(b) {
        for &beta in c.exponents() {
            let a = b.coeff(beta).expect("characteristic exponents carry nonzero coefficients");
            if modp::rat_mod(a, p) == Some(0) {
                return Some(format!("divides the coefficient of w^{beta}"));
            }
        }
    }
    None
}

fn filter(b: &BranchSpec, primes: &[u64], mod_m: bool) -> Result<(Vec<u64>, Vec<Exclusion>), VerifyError> {
    let mut keep = Vec::new();
    let mut excluded = Vec::new();
    for &p in primes {
        match prime_exclusion(b, p, mod_m) {
            Some(reason) => excluded.push(Exclusion { p, reason }),
            None => keep.push(p),
        }
    }
    if keep.is_empty() {
        return Err(VerifyError::NoAdmissiblePrime);
    }
    Ok((keep, excluded))
}

fn branch_of(plan: &VerificationPlan) -> Result<&BranchSpec, VerifyError> {
    plan.branch.as_ref().ok_or_else(|| VerifyError::Invalid("plan needs a branch".into()))
}

/// Coefficients `T^0..=T^order` of `s` at `L = p`.
pub fn specialized_coefficients(s: &RatSeries, p: u64, order: usize) -> Result<Vec<Rat>, VerifyError> {
    Ok(s.specialize(&rat::int(p as i64))?.expand(order))
}

fn int_rat(s: &str) -> Rat {
    Rat::from_integer(s.parse::<BigInt>().expect("decimal count"))
}

fn branch_count(
    b: &BranchSpec,
    p: u64,
    n: u32,
    method: BranchMethod,
    budget: u64,
) -> Result<(String, Method), VerifyError> {
    Ok(match method {
        BranchMethod::Exhaustive => {
            (count_branch_image(b, p, 1, n, false, budget)?.count.to_string(), Method::Exhaustive)
        }
        BranchMethod::Window => {
            (count_branch_image(b, p, 1, n, true, budget)?.count.to_string(), Method::TruncatedWindow)
        }
        BranchMethod::Orbit => (count_branch_orbit(b, p, 1, n)?.count.to_string(), Method::OrbitStabilizer),
    })
}

/// Coefficients of the arithmetic series against `F_p`-arc image counts.
pub fn verify_branch_par(plan: &VerificationPlan) -> Result<Verdict, VerifyError> {
    let b = branch_of(plan)?;
    let (primes, excluded) = filter(b, &plan.primes, plan.filter_primes)?;
    let series = match &plan.series {
        Some(s) => s.clone(),
        None => p_ar(&characteristic_sequence(b)?),
    };
    let mut rows = Vec::new();
    for p in primes {
        let sym = specialized_coefficients(&series, p, plan.n_max as usize)?;
        for n in 0..=plan.n_max {
            let (count, method) = branch_count(b, p, n, plan.method, plan.budget)?;
            let equal = sym[n as usize] == int_rat(&count);
            rows.push(Comparison {
                p,
                n,
                symbolic: rat::to_string(&sym[n as usize]),
                counted: count,
                counted_alt: None,
                equal,
                certified: true,
                method,
            });
        }
    }
    Ok(Verdict::assemble(Target::BranchPar, excluded, rows, vec![], vec![]))
}

/// Coefficients of the geometric series against `F_p`-rational image points
/// over `F̄_p`. Heuristic: which primes are good is not effective.
pub fn verify_branch_pgeom(plan: &VerificationPlan) -> Result<Verdict, VerifyError> {
    let b = branch_of(plan)?;
    let (primes, excluded) = filter(b, &plan.primes, false)?;
    let series = match &plan.series {
        Some(s) => s.clone(),
        None => p_geom(&characteristic_sequence(b)?),
    };
    let mut rows = Vec::new();
    for p in primes {
        let sym = specialized_coefficients(&series, p, plan.n_max as usize)?;
        for n in 0..=plan.n_max {
            let count = count_branch_geometric(b, p, n, plan.budget)?.count.to_string();
            rows.push(Comparison {
                p,
                n,
                equal: sym[n as usize] == int_rat(&count),
                symbolic: rat::to_string(&sym[n as usize]),
                counted: count,
                counted_alt: None,
                certified: true,
                method: Method::RationalFiber,
            });
        }
    }
    let notes = vec!["heuristic: geometric counts rely on the window claim and on p being a good prime".to_string()];
    Ok(Verdict::assemble(Target::BranchPgeom, excluded, rows, vec![], notes))
}

/// Liftable residue counts of an implicit equation against arc image counts
/// and the arithmetic series.
pub fn verify_cross_method(plan: &VerificationPlan) -> Result<Verdict, VerifyError> {
    let b = branch_of(plan)?;
    let (primes, excluded) = filter(b, &plan.primes, plan.filter_primes)?;
    let parse = |v: &[String]| -> Result<Vec<IntPoly>, VerifyError> {
        v.iter().map(|s| IntPoly::parse(s).map_err(VerifyError::from)).collect()
    };
    let (f, origin) = if plan.poly.is_empty() {
        (vec![IntPoly::parse("x1^2 - x2^3")?], vec![IntPoly::parse("x1")?, IntPoly::parse("x2")?])
    } else {
        (parse(&plan.poly)?, parse(&plan.origin)?)
    };
    let nvars = plan.nvars.unwrap_or_else(|| f.iter().chain(&origin).map(IntPoly::nvars).max().unwrap_or(1));
    let series = match &plan.series {
        Some(s) => s.clone(),
        None => p_ar(&characteristic_sequence(b)?),
    };
    let mut rows = Vec::new();
    for p in primes {
        let sym = specialized_coefficients(&series, p, plan.n_max as usize)?;
        for n in 0..=plan.n_max {
            let depth = plan.depth.unwrap_or(2 * n + 2);
            let lift = count_liftable(&f, &origin, nvars, p, n, depth, plan.budget)?;
            let (arc, _) = branch_count(b, p, n, plan.method, plan.budget)?;
            let s = &sym[n as usize];
            rows.push(Comparison {
                p,
                n,
                symbolic: rat::to_string(s),
                equal: *s == int_rat(&lift.count) && *s == int_rat(&arc),
                counted: lift.count,
                counted_alt: Some(arc),
                certified: lift.certified,
                method: if lift.certified { Method::HenselCertified } else { Method::StabilizedUncertified },
            });
        }
    }
    Ok(Verdict::assemble(Target::CuspCrossMethod, excluded, rows, vec![], vec![]))
}

/// Coefficients of `Π (1 - L^{-1}) / (1 - L^{-1} T^{k_i})` against Haar
/// volumes of `{ord(x^k) = n}`.
pub fn verify_igusa(plan: &VerificationPlan) -> Result<Verdict, VerifyError> {
    if plan.k.is_empty() || plan.k.contains(&0) {
        return Err(VerifyError::Invalid("igusa-monomial needs positive exponents k".into()));
    }
    let mut primes = Vec::new();
    let mut excluded = Vec::new();
    for &p in &plan.primes {
        if modp::is_prime(p) {
            primes.push(p);
        } else {
            excluded.push(Exclusion { p, reason: "not prime".into() });
        }
    }
    if primes.is_empty() {
        return Err(VerifyError::NoAdmissiblePrime);
    }
    let series = plan.series.clone().unwrap_or_else(|| igusa_monomial(&plan.k));
    let mut rows = Vec::new();
    for p in primes {
        let sym = specialized_coefficients(&series, p, plan.n_max as usize)?;
        for n in 0..=plan.n_max {
            let vol = measure_ord_locus(&plan.k, p, n);
            rows.push(Comparison {
                p,
                n,
                symbolic: rat::to_string(&sym[n as usize]),
                counted: rat::to_string(&vol),
                counted_alt: None,
                equal: sym[n as usize] == vol,
                certified: true,
                method: Method::Exhaustive,
            });
        }
    }
    Ok(Verdict::assemble(Target::IgusaMonomial, excluded, rows, vec![], vec![]))
}

/// Fits counts against the denominator of `series` at `L = p` and returns
/// the reduced fitted function.
pub fn fit_counts(series: &RatSeries, p: u64, counts: &[Rat]) -> Result<(QRatFunc, QRatFunc), FitOutcome> {
    let target = series.specialize(&rat::int(p as i64)).map_err(|e| FitOutcome::Algebra(e.to_string()))?;
    let fitted = fit_rational(counts, &target.denominator, None).map_err(FitOutcome::Fit)?;
    Ok((fitted, target))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FitOutcome {
    Fit(FitError),
    Algebra(String),
}

/// Orbit-stabilizer counts for `n < coefficients`, fitted to a rational
/// function with the specialized denominator of the arithmetic series.
pub fn verify_rational_shape(plan: &VerificationPlan) -> Result<Verdict, VerifyError> {
    let b = branch_of(plan)?;
    let (primes, excluded) = filter(b, &plan.primes, plan.filter_primes)?;
    let series = match &plan.series {
        Some(s) => s.clone(),
        None => p_ar(&characteristic_sequence(b)?),
    };
    let count_terms = plan.coefficients.max(1);
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    for p in primes {
        let sym = specialized_coefficients(&series, p, count_terms as usize - 1)?;
        let mut counts = Vec::new();
        for n in 0..count_terms {
            let c = count_branch_orbit(b, p, 1, n)?.count.to_string();
            let value = int_rat(&c);
            rows.push(Comparison {
                p,
                n,
                symbolic: rat::to_string(&sym[n as usize]),
                counted: c,
                counted_alt: None,
                equal: sym[n as usize] == value,
                certified: true,
                method: Method::OrbitStabilizer,
            });
            counts.push(value);
        }
        let check = match fit_counts(&series, p, &counts) {
            Ok((fitted, target)) => Check {
                p,
                name: "rational-fit".into(),
                passed: fitted == target,
                detail: format!("fitted {} against {}", fitted.to_text(), target.to_text()),
            },
            Err(FitOutcome::Fit(e)) => Check { p, name: "rational-fit".into(), passed: false, detail: e.to_string() },
            Err(FitOutcome::Algebra(e)) => Check { p, name: "rational-fit".into(), passed: false, detail: e },
        };
        checks.push(check);
    }
    Ok(Verdict::assemble(Target::RationalShape, excluded, rows, checks, vec![]))
}

pub fn run_plan(plan: &VerificationPlan) -> Result<Verdict, VerifyError> {
    match plan.target {
        Target::BranchPar => verify_branch_par(plan),
        Target::BranchPgeom => verify_branch_pgeom(plan),
        Target::CuspCrossMethod => verify_cross_method(plan),
        Target::IgusaMonomial => verify_igusa(plan),
        Target::RationalShape => verify_rational_shape(plan),
    }
}

/// A prime outside the `p ≡ 1 mod m` hypothesis where the specialized
/// arithmetic series and the arc count disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub p: u64,
    pub n: u32,
    pub symbolic: String,
    pub counted: String,
}

/// Searches primes `p ≢ 1 mod m` (otherwise admissible) in order, and `n`
/// upward, for the first disagreement.
pub fn find_hypothesis_witness(
    b: &BranchSpec,
    primes: &[u64],
    n_max: u32,
    budget: u64,
) -> Result<Option<Witness>, VerifyError> {
    let s = p_ar(&characteristic_sequence(b)?);
    for &p in primes {
        if prime_exclusion(b, p, false).is_some() || prime_exclusion(b, p, true).is_none() {
            continue;
        }
        let sym = specialized_coefficients(&s, p, n_max as usize)?;
        for n in 0..=n_max {
            let c = count_branch_image(b, p, 1, n, true, budget)?.count.to_string();
            if sym[n as usize] != int_rat(&c) {
                return Ok(Some(Witness { p, n, symbolic: rat::to_string(&sym[n as usize]), counted: c }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn worked() -> BranchSpec {
        BranchSpec::with_int_coeffs(4, &[(6, 1), (7, 1)]).unwrap()
    }

    fn cusp() -> BranchSpec {
        BranchSpec::with_int_coeffs(2, &[(3, 1)]).unwrap()
    }

    #[test]
    fn branch_par_at_five() {
        let v = verify_branch_par(&VerificationPlan::new(Target::BranchPar, vec![5], 8).with_branch(worked())).unwrap();
        assert_eq!(v.summary, Summary::Pass);
        let at = |n: u32| v.rows.iter().find(|r| r.n == n).unwrap().counted.clone();
        assert_eq!((at(3), at(4), at(6)), ("1".into(), "2".into(), "51".into()));
    }

    #[test]
    fn smooth_branch() {
        let b = BranchSpec::with_int_coeffs(1, &[(2, 1)]).unwrap();
        let v = verify_branch_par(&VerificationPlan::new(Target::BranchPar, vec![3, 7], 5).with_branch(b)).unwrap();
        assert_eq!(v.summary, Summary::Pass);
        assert!(v.rows.iter().all(|r| r.counted == 7u64.pow(r.n).to_string() || r.p == 3));
    }

    #[test]
    fn prime_filter() {
        let plan = VerificationPlan::new(Target::BranchPar, vec![7], 3).with_branch(worked());
        assert_eq!(verify_branch_par(&plan), Err(VerifyError::NoAdmissiblePrime));
        let plan = VerificationPlan::new(Target::BranchPar, vec![2, 3, 7, 15, 5], 3).with_branch(worked());
        let v = verify_branch_par(&plan).unwrap();
        assert_eq!(v.excluded.iter().map(|e| e.p).collect::<Vec<_>>(), vec![2, 3, 7, 15]);
        let half = BranchSpec::new(2, [(3, rat::frac(1, 5))], None).unwrap();
        assert!(prime_exclusion(&half, 5, true).unwrap().contains("denominator"));
        let five = BranchSpec::with_int_coeffs(2, &[(3, 5)]).unwrap();
        assert!(prime_exclusion(&five, 5, true).unwrap().contains("w^3"));
    }

    #[test]
    fn corrupted_series_fails() {
        let mut plan = VerificationPlan::new(Target::BranchPar, vec![5], 6).with_branch(worked());
        plan.series = Some(RatSeries::geometric(1, 1));
        let v = verify_branch_par(&plan).unwrap();
        assert_eq!(v.summary, Summary::Fail);
        assert_eq!(v.first_mismatch.as_ref().unwrap().n, 1);
    }

    #[test]
    fn pgeom() {
        let v = verify_branch_pgeom(&VerificationPlan::new(Target::BranchPgeom, vec![5, 7], 6).with_branch(worked()))
            .unwrap();
        assert_eq!(v.summary, Summary::Pass);
        assert!(!v.notes.is_empty());
    }

    #[test]
    fn igusa() {
        for k in [vec![1], vec![2], vec![1, 1]] {
            let mut plan = VerificationPlan::new(Target::IgusaMonomial, vec![3, 5], 6);
            plan.k = k;
            assert_eq!(verify_igusa(&plan).unwrap().summary, Summary::Pass);
        }
    }

    #[test]
    fn cross_method_cusp() {
        let v = verify_cross_method(&VerificationPlan::new(Target::CuspCrossMethod, vec![7], 3).with_branch(cusp()))
            .unwrap();
        assert_eq!(v.summary, Summary::Pass, "{}", v.to_json());
        let mut plan = VerificationPlan::new(Target::CuspCrossMethod, vec![7], 4).with_branch(cusp());
        plan.depth = Some(0);
        assert_eq!(verify_cross_method(&plan).unwrap().summary, Summary::Uncertified);
    }

    #[test]
    fn rational_shape() {
        let mut plan = VerificationPlan::new(Target::RationalShape, vec![5], 0).with_branch(worked());
        plan.coefficients = 40;
        let v = verify_rational_shape(&plan).unwrap();
        assert_eq!(v.summary, Summary::Pass, "{:?}", v.checks);
        let mut counts: Vec<Rat> = v.rows.iter().map(|r| int_rat(&r.counted)).collect();
        counts[30] += rat::int(1);
        let s = p_ar(&characteristic_sequence(&worked()).unwrap());
        assert!(matches!(fit_counts(&s, 5, &counts), Err(FitOutcome::Fit(FitError::NoRationalFit { .. }))));
    }

    #[test]
    fn witness_at_seven() {
        let w = find_hypothesis_witness(&worked(), &[3, 5, 7], 8, DEFAULT_BUDGET).unwrap().unwrap();
        assert_eq!(w, Witness { p: 7, n: 4, symbolic: "5/2".into(), counted: "4".into() });
    }

    #[test]
    fn verdict_json_round_trip_and_determinism() {
        let plan = VerificationPlan::new(Target::BranchPar, vec![5], 5).with_branch(worked());
        let a = run_plan(&plan).unwrap();
        let b = run_plan(&VerificationPlan::from_json(&plan.to_json()).unwrap()).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(Verdict::from_json(&a.to_json()).unwrap(), a);
        assert!(rat::parse(&a.rows[0].symbolic).unwrap() >= Rat::zero());
    }
}
