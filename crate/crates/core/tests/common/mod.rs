//! Presburger corpus shared by the acceptance suite and the per-formula tests.
//! QE output is compared pointwise with bounded brute-force evaluation of the
//! original formula; range systems and sums are compared with direct
//! enumeration (sums up to `T^40`).

#![allow(dead_code)]

use poincare_core::algebra::TatePoly;
use poincare_core::presburger::{
    eliminate_quantifiers, membership, parse_linear, parse_presburger_with_vars, to_iterated_ranges, weighted_sum,
};

pub const QE_BOX: i64 = 30;
pub const SUM_ORDER: usize = 40;

pub struct QeCase {
    pub formula: &'static str,
    pub vars: &'static [&'static str],
}

pub struct SumCase {
    pub set: &'static str,
    /// Summation order, outermost first.
    pub vars: &'static [&'static str],
    pub lweight: &'static str,
    pub tweight: &'static str,
    pub lo: i64,
    pub hi: i64,
}

pub const QE_CASES: &[QeCase] = &[
    QeCase { formula: "E y. x = 2*y", vars: &["x"] },
    QeCase { formula: "E y. x = 3*y + 1 & y >= 0", vars: &["x"] },
    QeCase { formula: "A y. y >= x | y < 0", vars: &["x"] },
    QeCase { formula: "E y. 3*y <= x & x < 3*y + 2 & y == 1 mod 2", vars: &["x"] },
    QeCase { formula: "E y. x + y = 10 & y >= 0 & y <= 4", vars: &["x"] },
    QeCase { formula: "E y. E z. x = 2*y + 3*z & y >= 0 & z >= 0", vars: &["x"] },
    QeCase { formula: "E y. x = 2*y & y == 0 mod 3", vars: &["x"] },
    QeCase { formula: "E y. x < y & y < z", vars: &["x", "z"] },
    QeCase { formula: "E y. 2*x + 3*y = z & y >= 0", vars: &["x", "z"] },
    QeCase { formula: "A y. !(y >= 0 & y <= 2) | x + y >= 5", vars: &["x"] },
    QeCase { formula: "E y. x = 4*y + 2 | x = 6*y + 1", vars: &["x"] },
    QeCase { formula: "!(E y. x = 5*y)", vars: &["x"] },
    QeCase { formula: "E y. y >= x & y <= z & y == 0 mod 5", vars: &["x", "z"] },
    QeCase { formula: "A y. E z. y = 2*z | y = 2*z + 1 + x", vars: &["x"] },
    QeCase { formula: "E y. 3*x = 2*y & x >= -10 & y <= 20", vars: &["x"] },
    QeCase { formula: "E y. 4*y >= x - z & 4*y <= x + z & !(y = 0)", vars: &["x", "z"] },
    QeCase { formula: "x >= 2 & x == 1 mod 3 | x < -7", vars: &["x"] },
];

pub const SUM_CASES: &[SumCase] = &[
    SumCase { set: "n >= 4 & n == 0 mod 4", vars: &["n"], lweight: "0", tweight: "n", lo: -5, hi: 45 },
    SumCase { set: "l >= 1", vars: &["l"], lweight: "-2*l", tweight: "6*l", lo: -5, hi: 45 },
    SumCase { set: "n >= 1 & l >= 0 & l <= n", vars: &["n", "l"], lweight: "l", tweight: "n", lo: -3, hi: 42 },
    SumCase {
        set: "n >= 0 & l >= 0 & 2*l <= 3*n & 3*n <= 2*l + 1",
        vars: &["l", "n"],
        lweight: "n",
        tweight: "l + n",
        lo: -3,
        hi: 42,
    },
    SumCase { set: "E k. n = 3*k & k >= 1", vars: &["n"], lweight: "0", tweight: "n", lo: -5, hi: 45 },
    SumCase {
        set: "x >= 0 & y >= 0 & x + y <= 10",
        vars: &["x", "y"],
        lweight: "x - y",
        tweight: "x + y",
        lo: -3,
        hi: 42,
    },
    SumCase {
        set: "(n >= 2 & n <= 7) | (n >= 5 & n == 1 mod 2)",
        vars: &["n"],
        lweight: "0",
        tweight: "n",
        lo: -5,
        hi: 45,
    },
    SumCase {
        set: "a >= 1 & b >= a & b <= 2*a & !(b == a mod 3)",
        vars: &["a", "b"],
        lweight: "a",
        tweight: "b",
        lo: -3,
        hi: 42,
    },
    SumCase { set: "n >= 0 & m >= 0 & m <= 3", vars: &["n", "m"], lweight: "-m", tweight: "2*n + m", lo: -3, hi: 42 },
    SumCase { set: "x >= 0 & x <= 5 & y >= x", vars: &["x", "y"], lweight: "x", tweight: "y - x", lo: -3, hi: 48 },
    SumCase {
        set: "E k. n = 2*k & n >= 3 & !(n == 0 mod 3)",
        vars: &["n"],
        lweight: "-n",
        tweight: "n",
        lo: -5,
        hi: 45,
    },
];

pub fn check_qe(c: &QeCase) -> Result<(), String> {
    let f = parse_presburger_with_vars(c.formula, c.vars).map_err(|e| format!("{}: {e}", c.formula))?;
    let g = eliminate_quantifiers(&f);
    if !g.is_quantifier_free() {
        return Err(format!("{}: output still quantified", c.formula));
    }
    let v = c.vars.len();
    let mut point = vec![-QE_BOX; v];
    loop {
        let want = f.eval_bounded(&point, f.default_radius(&point)).map_err(|e| e.to_string())?;
        let got = membership(&g, &point).map_err(|e| e.to_string())?;
        if want != got {
            return Err(format!("{} vs {g} at {point:?}: expected {want}", c.formula));
        }
        let mut i = 0;
        while i < v {
            point[i] += 1;
            if point[i] <= QE_BOX {
                break;
            }
            point[i] = -QE_BOX;
            i += 1;
        }
        if i == v {
            return Ok(());
        }
    }
}

fn brute_sum(c: &SumCase) -> Result<Vec<TatePoly>, String> {
    let f = parse_presburger_with_vars(c.set, c.vars).map_err(|e| e.to_string())?;
    let (lw, tw) = (parse_linear(c.lweight).unwrap(), parse_linear(c.tweight).unwrap());
    let mut out = vec![TatePoly::zero(); SUM_ORDER + 1];
    let k = c.vars.len();
    let mut point = vec![c.lo; k];
    loop {
        if f.eval_bounded(&point, f.default_radius(&point)).map_err(|e| e.to_string())? {
            let env = |v: &str| point[c.vars.iter().position(|w| *w == v).unwrap()] as i128;
            let t = tw.eval(&env);
            if t < 0 {
                return Err(format!("{}: negative T-degree at {point:?}", c.set));
            }
            if t as usize <= SUM_ORDER {
                out[t as usize] = &out[t as usize] + &TatePoly::l_pow(-lw.eval(&env) as i64);
            }
        }
        let mut i = 0;
        while i < k {
            point[i] += 1;
            if point[i] <= c.hi {
                break;
            }
            point[i] = c.lo;
            i += 1;
        }
        if i == k {
            return Ok(out);
        }
    }
}

pub fn check_sum(c: &SumCase) -> Result<(), String> {
    let f = parse_presburger_with_vars(c.set, c.vars).map_err(|e| e.to_string())?;
    let f = if f.is_quantifier_free() { f } else { eliminate_quantifiers(&f) };
    let sys = to_iterated_ranges(&f, c.vars).map_err(|e| format!("{}: {e}", c.set))?;
    let s = weighted_sum(&sys, &parse_linear(c.lweight).unwrap(), &parse_linear(c.tweight).unwrap())
        .map_err(|e| format!("{}: {e}", c.set))?;
    let got = s.expand(SUM_ORDER).map_err(|e| e.to_string())?;
    let want = brute_sum(c)?;
    if got.coeffs() != &want[..] {
        return Err(format!("{}: series {s} disagrees with enumeration", c.set));
    }
    Ok(())
}

/// Pieces are disjoint and cover exactly the set on `[0, 40]^k`.
pub fn check_ranges(c: &SumCase) -> Result<(), String> {
    let f = parse_presburger_with_vars(c.set, c.vars).map_err(|e| e.to_string())?;
    let qf = if f.is_quantifier_free() { f.clone() } else { eliminate_quantifiers(&f) };
    let sys = to_iterated_ranges(&qf, c.vars).map_err(|e| format!("{}: {e}", c.set))?;
    let k = c.vars.len();
    let mut point = vec![0i64; k];
    loop {
        let want = usize::from(f.eval_bounded(&point, f.default_radius(&point)).map_err(|e| e.to_string())?);
        let wide: Vec<i128> = point.iter().map(|&x| x as i128).collect();
        let got = sys.multiplicity(&wide);
        if got != want {
            return Err(format!("{}: {got} pieces contain {point:?}, expected {want}", c.set));
        }
        let mut i = 0;
        while i < k {
            point[i] += 1;
            if point[i] <= 40 {
                break;
            }
            point[i] = 0;
            i += 1;
        }
        if i == k {
            return Ok(());
        }
    }
}

/// Runs the whole corpus; returns the number of formulas checked.
pub fn run_corpus() -> Result<usize, String> {
    for c in QE_CASES {
        check_qe(c)?;
    }
    for c in SUM_CASES {
        check_ranges(c)?;
        check_sum(c)?;
    }
    Ok(QE_CASES.len() + SUM_CASES.len())
}
