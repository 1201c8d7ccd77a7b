//! End-to-end acceptance criteria. Each criterion prints one PASS/FAIL line;
//! the test fails if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::io::Write;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};

use poincare_core::algebra::rat::{self, frac, int, Rat};
use poincare_core::algebra::{FitError, RatSeries, TatePoly};
use poincare_core::branch::{
    characteristic_sequence, order_gap, p_ar, p_geom, puiseux_from_poles, puiseux_poles, BranchSpec,
};
use poincare_core::counter::{
    count_branch_image, count_branch_orbit, count_liftable, igusa_monomial, measure_ord_locus, IntPoly, DEFAULT_BUDGET,
};
use poincare_core::verifier::{find_hypothesis_witness, fit_counts, FitOutcome};

type Outcome = Result<String, String>;
/// `(id, name, time limit in seconds, check)`.
type Criterion = (u32, &'static str, Option<u64>, fn() -> Outcome);
/// `(m, coefficients of y(w), beta, e, primes)`.
type GapCase = (u32, &'static [(u32, i64)], &'static [u32], &'static [u32], &'static [u64]);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn worked() -> BranchSpec {
    BranchSpec::with_int_coeffs(4, &[(6, 1), (7, 1)]).unwrap()
}

fn cusp() -> BranchSpec {
    BranchSpec::with_int_coeffs(2, &[(3, 1)]).unwrap()
}

fn coefficients(s: &RatSeries, p: u64, order: usize) -> Result<Vec<Rat>, String> {
    Ok(s.specialize(&int(p as i64)).map_err(|e| e.to_string())?.expand(order))
}

fn count(b: &BranchSpec, p: u64, n: u32, window: bool) -> Result<Rat, String> {
    let c = count_branch_image(b, p, 1, n, window, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    rat::parse(&c.count.to_string())
}

/// `1/(1-T) + (L-1)/(1-LT) [T^m/(m(1-T^m)) + Σ (N_i - N_{i-1})/m · L^{β_i-m} T^{β_i}/(1-L^{β_i-m} T^{β_i})]`,
/// one term per summand.
fn closed_form_terms(m: u32, beta: &[u32], big_n: &[u32]) -> Vec<RatSeries> {
    let g = RatSeries::geometric(1, 1).scale(&TatePoly::l_minus_one());
    let mut out = vec![RatSeries::geometric(0, 1)];
    out.push(g.mul(&RatSeries::geometric(0, m).shift_t(m)).scale(&TatePoly::constant(frac(1, m as i64))));
    for i in 1..beta.len() {
        let c = frac((big_n[i] - big_n[i - 1]) as i64, m as i64);
        let a = (beta[i] - m) as i64;
        out.push(g.mul(&RatSeries::geometric(a, beta[i]).shift_t(beta[i])).scale(&TatePoly::monomial(c, a)));
    }
    out
}

fn criterion_1() -> Outcome {
    let c = characteristic_sequence(&worked()).map_err(|e| e.to_string())?;
    ensure(c.beta == [4, 6, 7] && c.e == [4, 2, 1] && c.big_n == [1, 2, 4] && c.g == 2, || format!("charseq {c:?}"))?;

    let ar = p_ar(&c);
    let want = closed_form_terms(4, &[4, 6, 7], &[1, 2, 4]);
    ensure(ar.terms().len() == want.len(), || format!("{} terms in {ar}", ar.terms().len()))?;
    for (k, w) in want.iter().enumerate() {
        let hits = ar.terms().iter().filter(|t| RatSeries::from((*t).clone()).same_series(w)).count();
        ensure(hits == 1, || format!("closed-form term {k} ({w}) matched {hits} terms of {ar}"))?;
    }
    let geom_want = want[0]
        .add(&RatSeries::geometric(1, 1).scale(&TatePoly::l_minus_one()).mul(&RatSeries::geometric(0, 4).shift_t(4)));
    ensure(p_geom(&c).same_series(&geom_want), || format!("P_geom {}", p_geom(&c)))?;

    let poles = puiseux_poles(&ar.poles_in_l());
    let expected: BTreeSet<Rat> = [frac(-1, 3), frac(-3, 7)].into_iter().collect();
    ensure(poles == expected, || format!("poles {poles:?}"))?;
    let beta = puiseux_from_poles(4, poles.iter()).map_err(|e| e.to_string())?;
    ensure(beta == [6, 7], || format!("recovered {beta:?}"))?;
    Ok("beta (4;6,7), e (4,2,1), N (1,2,4); 4 closed-form terms; poles {-1/3, -3/7} -> (6,7)".into())
}

fn criterion_2() -> Outcome {
    let b = worked();
    let s = p_ar(&characteristic_sequence(&b).map_err(|e| e.to_string())?);
    let pinned = [(3u32, 1i64), (4, 2), (6, 51)];
    let mut timings = String::new();
    for p in [5u64, 13] {
        let sym = coefficients(&s, p, 8)?;
        for n in 0..=8u32 {
            let window = count(&b, p, n, true)?;
            ensure(window == sym[n as usize], || format!("p={p} n={n}: window {window} vs {}", sym[n as usize]))?;
            // exhaustive enumeration of p^n arcs; p = 13 stops at 13^5
            if p == 5 || n <= 5 {
                let full = count(&b, p, n, false)?;
                ensure(full == sym[n as usize], || format!("p={p} n={n}: exhaustive {full} vs {}", sym[n as usize]))?;
            }
        }
        if p == 5 {
            for (n, v) in pinned {
                ensure(sym[n as usize] == int(v), || format!("p=5 n={n}: {} vs pinned {v}", sym[n as usize]))?;
            }
        }
    }
    let t = Instant::now();
    count(&b, 5, 8, false)?;
    let full = t.elapsed();
    let t = Instant::now();
    count(&b, 5, 8, true)?;
    let window = t.elapsed();
    ensure(full <= Duration::from_secs(60), || format!("exhaustive p=5 n=8 took {full:?}"))?;
    ensure(window <= Duration::from_secs(10), || format!("window p=5 n=8 took {window:?}"))?;
    timings += &format!("exhaustive n=8 {:.2}s, window n=8 {:.3}s", full.as_secs_f64(), window.as_secs_f64());
    Ok(format!("p in {{5, 13}}, n <= 8 exact; pinned 1, 2, 51; {timings}"))
}

fn criterion_3() -> Outcome {
    let b = BranchSpec::with_int_coeffs(1, &[(2, 1), (3, 1)]).unwrap();
    let c = characteristic_sequence(&b).map_err(|e| e.to_string())?;
    let (ar, geom) = (p_ar(&c).normalize(), p_geom(&c).normalize());
    let smooth = RatSeries::geometric(1, 1);
    ensure(ar.same_series(&smooth) && geom.same_series(&smooth), || format!("{ar} / {geom}"))?;
    ensure(ar.to_text() == "1/(1-L*T)" && geom.to_text() == "1/(1-L*T)", || format!("{ar} / {geom}"))?;
    let mut enumerated = 0;
    for p in [2u64, 3, 5, 7, 11, 13] {
        for n in 0..=10u32 {
            let want = rat::pow(&int(p as i64), n as i64);
            // enumerate where p^n arcs are affordable, orbit-stabilizer above
            let got = if (p as f64).powi(n as i32) <= 2e6 {
                enumerated += 1;
                count(&b, p, n, false)?
            } else {
                rat::parse(&count_branch_orbit(&b, p, 1, n).map_err(|e| e.to_string())?.count.to_string())?
            };
            ensure(got == want, || format!("p={p} n={n}: {got}"))?;
        }
    }
    Ok(format!("normalized series 1/(1-L*T); counts p^n for p <= 13, n <= 10 ({enumerated} of 66 enumerated)"))
}

fn criterion_4() -> Outcome {
    let f = IntPoly::parse_system(&["x1^2 - x2^3"]).map_err(|e| e.to_string())?;
    let origin = [IntPoly::var(0, 2), IntPoly::var(1, 2)];
    let b = cusp();
    let s = p_ar(&characteristic_sequence(&b).map_err(|e| e.to_string())?);
    for p in [7u64, 11] {
        let sym = coefficients(&s, p, 5)?;
        for n in 0..=5u32 {
            let lift = count_liftable(&f, &origin, 2, p, n, 2 * n + 2, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            ensure(lift.certified, || format!("p={p} n={n}: liftable count not certified"))?;
            let lift = rat::parse(&lift.count)?;
            let image = count(&b, p, n, false)?;
            ensure(lift == image && image == sym[n as usize], || {
                format!("p={p} n={n}: liftable {lift}, image {image}, series {}", sym[n as usize])
            })?;
        }
    }
    Ok("p in {7, 11}, n <= 5: certified liftable = arc image = series".into())
}

/// Volume of `ord(Π x_i^{k_i}) = n` by enumerating one coordinate's residues
/// modulo `p^{n+1}` and combining valuation histograms.
fn residue_volume(k: &[u32], p: u64, n: u32) -> Rat {
    let modulus = p.pow(n + 1);
    let mut hist = vec![0u64; n as usize + 2];
    for x in 0..modulus {
        let mut v = 0;
        let mut y = x;
        while y != 0 && y % p == 0 && v <= n {
            y /= p;
            v += 1;
        }
        hist[if x == 0 { n as usize + 1 } else { v as usize }] += 1;
    }
    let mut ways = vec![Rat::zero(); n as usize + 1];
    ways[0] = Rat::one();
    for &ki in k {
        let mut next = vec![Rat::zero(); n as usize + 1];
        for (total, w) in ways.iter().enumerate() {
            for (v, &h) in hist.iter().enumerate().take(n as usize + 1) {
                let t = total + ki as usize * v;
                if t <= n as usize && h > 0 {
                    next[t] += w * int(h as i64);
                }
            }
        }
        ways = next;
    }
    &ways[n as usize] / rat::pow(&int(modulus as i64), k.len() as i64)
}

fn criterion_5() -> Outcome {
    for k in [&[1u32][..], &[2], &[1, 1]] {
        let s = igusa_monomial(k);
        for p in [3u64, 5] {
            let sym = coefficients(&s, p, 6)?;
            for n in 0..=6u32 {
                let vol = residue_volume(k, p, n);
                ensure(sym[n as usize] == vol, || format!("k={k:?} p={p} n={n}: {} vs {vol}", sym[n as usize]))?;
                let formula = measure_ord_locus(k, p, n);
                ensure(formula == vol, || format!("k={k:?} p={p} n={n}: class formula {formula} vs {vol}"))?;
            }
        }
    }
    for p in [3u64, 5] {
        let want = Rat::one() - frac(1, p as i64);
        ensure(measure_ord_locus(&[1], p, 0) == want, || format!("unit volume at p={p}"))?;
    }
    Ok("k in {(1), (2), (1,1)}, p in {3, 5}, n <= 6 equal residue-count volumes".into())
}

fn criterion_6() -> Outcome {
    let n = common::run_corpus()?;
    ensure(n >= 20, || format!("only {n} formulas"))?;
    Ok(format!("{n} formulas: QE on [-30,30]^v, sums to T^40"))
}

fn criterion_7() -> Outcome {
    let b = worked();
    let s = p_ar(&characteristic_sequence(&b).map_err(|e| e.to_string())?);
    let mut counts = Vec::new();
    for n in 0..40u32 {
        let c = rat::parse(&count_branch_orbit(&b, 5, 1, n).map_err(|e| e.to_string())?.count.to_string())?;
        if n <= 10 {
            let enumerated = count(&b, 5, n, true)?;
            ensure(c == enumerated, || format!("n={n}: orbit {c} vs window {enumerated}"))?;
        }
        counts.push(c);
    }
    let (fitted, target) = fit_counts(&s, 5, &counts).map_err(|e| format!("{e:?}"))?;
    ensure(fitted == target, || format!("fitted {} vs {}", fitted.to_text(), target.to_text()))?;
    let mut perturbed = counts.clone();
    perturbed[30] += Rat::one();
    match fit_counts(&s, 5, &perturbed) {
        Err(FitOutcome::Fit(FitError::NoRationalFit { .. })) => {}
        other => return Err(format!("perturbed counts: {other:?}")),
    }
    Ok(format!("40 counts at p=5 fit {}; perturbed n=30 gives NoRationalFit", fitted.to_text()))
}

fn criterion_8() -> Outcome {
    // (coefficients of y(w), beta, e) frozen by hand
    let cases: [GapCase; 4] = [
        (2, &[(3, 1)], &[2, 3], &[2, 1], &[3, 5, 7]),
        (4, &[(6, 1), (7, 1)], &[4, 6, 7], &[4, 2, 1], &[5, 13, 17]),
        (6, &[(8, 1), (9, 1), (10, 2)], &[6, 8, 9], &[6, 2, 1], &[7, 13, 19]),
        (12, &[(18, 1), (20, 1), (21, 1), (22, 3)], &[12, 18, 20, 21], &[12, 6, 2, 1], &[13, 37]),
    ];
    let mut checked = 0;
    for (m, coeffs, beta, e, primes) in cases {
        let b = BranchSpec::with_int_coeffs(m, coeffs).unwrap();
        let c = characteristic_sequence(&b).map_err(|e| e.to_string())?;
        ensure(c.beta == beta && c.e == e, || format!("m={m}: {c:?}"))?;
        for &p in primes {
            ensure((p - 1) % m as u64 == 0, || format!("{p} is not 1 mod {m}"))?;
            let pow = |z: u64, k: u32| (0..k).fold(1u64, |acc, _| acc * z % p);
            for zeta in (1..p).filter(|&z| pow(z, m) == 1) {
                let gap = order_gap(&b, p, zeta).map_err(|e| e.to_string())?;
                for i in 1..beta.len() {
                    let inside = pow(zeta, e[i - 1]) == 1 && pow(zeta, e[i]) != 1;
                    ensure((gap == Some(beta[i])) == inside, || {
                        format!("m={m} p={p} zeta={zeta} i={i}: gap {gap:?}, in mu(e_(i-1)) minus mu(e_i): {inside}")
                    })?;
                }
                ensure((zeta == 1) == gap.is_none(), || format!("m={m} p={p} zeta={zeta}: gap {gap:?}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("m in {{2, 4, 6, 12}}: {checked} roots of unity classified by their order gap"))
}

fn criterion_9() -> Outcome {
    let b = worked();
    let primes: Vec<u64> = (2..60).filter(|&q| poincare_core::modp::is_prime(q)).collect();
    let w = find_hypothesis_witness(&b, &primes, 8, DEFAULT_BUDGET)
        .map_err(|e| e.to_string())?
        .ok_or("no witness found")?;
    ensure((w.p, w.n, w.symbolic.as_str(), w.counted.as_str()) == (7, 4, "5/2", "4"), || format!("{w:?}"))?;
    // independent confirmation: exhaustive enumeration and direct specialization
    let full = count(&b, 7, 4, false)?;
    let s = p_ar(&characteristic_sequence(&b).map_err(|e| e.to_string())?);
    let sym = coefficients(&s, 7, 4)?;
    ensure(full == int(4) && sym[4] == frac(5, 2), || format!("exhaustive {full}, series {}", sym[4]))?;
    ensure(7 % 4 != 1, || "7 is 1 mod 4".into())?;
    Ok("p=7 (3 mod 4), n=4: P_ar gives 5/2, the image count is 4".into())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        (1, "closed forms", Some(1), criterion_1),
        (2, "specialization", None, criterion_2),
        (3, "smooth branch", None, criterion_3),
        (4, "cross-method", Some(120), criterion_4),
        (5, "igusa monomial", Some(5), criterion_5),
        (6, "presburger suite", Some(30), criterion_6),
        (7, "rational reconstruction", None, criterion_7),
        (8, "order gaps", None, criterion_8),
        (9, "hypothesis witness", None, criterion_9),
    ];
    let mut failed = Vec::new();
    let mut out = std::io::stdout();
    for (id, name, limit, run) in criteria {
        let t = Instant::now();
        let mut result = run();
        let elapsed = t.elapsed();
        if let (Ok(_), Some(l)) = (&result, limit) {
            if elapsed > Duration::from_secs(l) {
                result = Err(format!("took {:.2}s, limit {l}s", elapsed.as_secs_f64()));
            }
        }
        let (tag, detail) = match &result {
            Ok(d) => ("PASS", d.clone()),
            Err(e) => ("FAIL", e.clone()),
        };
        // written past the test harness capture so the lines always show
        writeln!(out, "criterion {id} {tag} {name} ({:.2}s): {detail}", elapsed.as_secs_f64()).unwrap();
        if result.is_err() {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
