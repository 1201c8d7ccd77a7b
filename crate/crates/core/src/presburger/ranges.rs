//! Summation-ready normal form of a quantifier-free Presburger set.
//!
//! A piece describes the points `(ℓ_1, …, ℓ_k)` with
//! `ℓ_j = offset_j + step_j · u_j` and `lower_j(u_1..u_{j-1}) ≤ u_j ≤ upper_j(u_1..u_{j-1})`,
//! the bounds being affine with integer coefficients in the outer
//! parameters `u`. Pieces are pairwise disjoint.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::ast::{Linear, PresburgerFormula};
use super::qe::{and, dvd, gt, negate, substitute, to_qf, Qf};
use super::PresburgerError;

/// `Σ coeffs[i] · u_i + constant` over the outer parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bound {
    pub coeffs: Vec<i128>,
    pub constant: i128,
}

impl Bound {
    pub fn eval(&self, u: &[i128]) -> i128 {
        self.coeffs.iter().zip(u).map(|(c, x)| c * x).sum::<i128>() + self.constant
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Progression {
    pub offset: i128,
    pub step: i128,
    pub lower: Bound,
    pub upper: Option<Bound>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Piece {
    pub vars: Vec<Progression>,
}

impl Piece {
    pub fn contains(&self, point: &[i128]) -> bool {
        let mut u = Vec::with_capacity(point.len());
        for (pr, &x) in self.vars.iter().zip(point) {
            let d = x - pr.offset;
            if d.rem_euclid(pr.step) != 0 {
                return false;
            }
            let v = d / pr.step;
            if v < pr.lower.eval(&u) || pr.upper.as_ref().is_some_and(|b| v > b.eval(&u)) {
                return false;
            }
            u.push(v);
        }
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IteratedRangeSystem {
    pub vars: Vec<String>,
    pub pieces: Vec<Piece>,
}

impl IteratedRangeSystem {
    pub fn contains(&self, point: &[i128]) -> bool {
        self.pieces.iter().any(|p| p.contains(point))
    }

    /// Number of pieces containing the point; at most one.
    pub fn multiplicity(&self, point: &[i128]) -> usize {
        self.pieces.iter().filter(|p| p.contains(point)).count()
    }
}

impl fmt::Display for IteratedRangeSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let u: Vec<String> = self.vars.iter().map(|v| format!("u_{v}")).collect();
        let show = |b: &Bound| {
            let mut lin = Linear::constant(b.constant);
            for (c, name) in b.coeffs.iter().zip(&u) {
                lin.add_term(name, *c);
            }
            lin.to_string()
        };
        for (i, p) in self.pieces.iter().enumerate() {
            write!(f, "piece {i}:")?;
            for (j, pr) in p.vars.iter().enumerate() {
                let hi = pr.upper.as_ref().map(show).unwrap_or_else(|| "inf".into());
                write!(
                    f,
                    " {} = {} + {}*{}, {} <= {} <= {};",
                    self.vars[j],
                    pr.offset,
                    pr.step,
                    u[j],
                    show(&pr.lower),
                    u[j],
                    hi
                )?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Exact rational bound `num / den`, with `den | num` enforced by an atom.
#[derive(Clone, Debug)]
struct RBound {
    num: Linear,
    den: i128,
}

#[derive(Clone, Debug)]
struct Item {
    atoms: Vec<Qf>,
    offset: Vec<i128>,
    step: Vec<i128>,
    built: Vec<Option<(RBound, Option<RBound>)>>,
}

impl Item {
    /// Adds atoms; `false` when one of them is unsatisfiable.
    fn push(&mut self, a: Qf) -> bool {
        match a {
            Qf::True => true,
            Qf::False => false,
            Qf::And(v) => v.into_iter().all(|b| self.push(b)),
            a => {
                if !self.atoms.contains(&a) {
                    self.atoms.push(a);
                }
                true
            }
        }
    }

    fn map_bounds(&mut self, f: &dyn Fn(&RBound) -> RBound) {
        for b in self.built.iter_mut().flatten() {
            b.0 = f(&b.0);
            if let Some(u) = &b.1 {
                b.1 = Some(f(u));
            }
        }
    }

    /// `x := m·x + r` everywhere.
    fn split(&self, j: usize, x: &str, m: i128, r: i128) -> Option<Item> {
        let by = Linear::term(x, m).add(&Linear::constant(r));
        let mut out = Item { atoms: Vec::new(), ..self.clone() };
        for a in &self.atoms {
            if !out.push(substitute(a, x, &by)) {
                return None;
            }
        }
        out.map_bounds(&|b| RBound { num: b.num.substitute(x, &by), den: b.den });
        out.offset[j] += out.step[j] * r;
        out.step[j] *= m;
        Some(out)
    }
}

fn lin_of(a: &Qf) -> &Linear {
    match a {
        Qf::Gt(t) | Qf::Eq(t) | Qf::Dvd(_, t) | Qf::NDvd(_, t) => t,
        _ => unreachable!(),
    }
}

fn without(t: &Linear, x: &str) -> Linear {
    let mut s = t.clone();
    s.coeffs.remove(x);
    s
}

/// Disjoint disjunctive normal form over the atoms `Gt`, `Eq`, `Dvd`.
fn ddnf(f: &Qf) -> Vec<Vec<Qf>> {
    match f {
        Qf::True => vec![vec![]],
        Qf::False => vec![],
        Qf::NDvd(d, t) => {
            (1..*d).map(|k| dvd(*d, t.sub(&Linear::constant(k)))).filter(|a| *a != Qf::False).map(|a| vec![a]).collect()
        }
        Qf::And(v) => {
            let mut acc = vec![vec![]];
            for g in v {
                let parts = ddnf(g);
                let mut next = Vec::new();
                for a in &acc {
                    for p in &parts {
                        match and(a.iter().chain(p).cloned().collect()) {
                            Qf::False => {}
                            Qf::True => next.push(vec![]),
                            Qf::And(c) => next.push(c),
                            c => next.push(vec![c]),
                        }
                    }
                }
                acc = next;
            }
            acc
        }
        Qf::Or(v) => {
            let mut out = Vec::new();
            for (i, g) in v.iter().enumerate() {
                let mut parts = vec![g.clone()];
                parts.extend(v[..i].iter().map(negate));
                out.extend(ddnf(&and(parts)));
            }
            out
        }
        atom => vec![vec![atom.clone()]],
    }
}

fn eliminate_equation(mut item: Item, j: usize, x: &str, i: usize) -> Vec<Item> {
    let eq = item.atoms.remove(i);
    let t = lin_of(&eq);
    let a = t.coeff(x);
    let m = a.abs();
    let rest = without(t, x);
    // m·x = image
    let image = rest.scale(-a.signum());
    let mut out = Item { atoms: Vec::new(), ..item.clone() };
    if !out.push(dvd(m, rest.clone())) {
        return vec![];
    }
    for atom in &item.atoms {
        let lin = lin_of(atom);
        let c = lin.coeff(x);
        let new = if c == 0 {
            atom.clone()
        } else {
            let scaled = image.scale(c).add(&without(lin, x).scale(m));
            match atom {
                Qf::Gt(_) => gt(scaled),
                Qf::Eq(_) => super::qe::eq(scaled),
                Qf::Dvd(d, _) => dvd(d * m, scaled),
                _ => unreachable!(),
            }
        };
        if !out.push(new) {
            return vec![];
        }
    }
    out.map_bounds(&|b| {
        let c = b.num.coeff(x);
        if c == 0 {
            return b.clone();
        }
        RBound { num: image.scale(c).add(&without(&b.num, x).scale(m)), den: b.den * m }
    });
    let bound = RBound { num: image, den: m };
    out.built[j] = Some((bound.clone(), Some(bound)));
    vec![out]
}

/// Replaces `ceil(num/den)` (or `floor`) by exact divisions, one item per residue.
fn exact_bounds(items: Vec<(Item, Vec<RBound>, Vec<RBound>)>, ceil: bool) -> Vec<(Item, Vec<RBound>, Vec<RBound>)> {
    let mut out = Vec::new();
    for (item, lows, highs) in items {
        let list = if ceil { &lows } else { &highs };
        let mut acc: Vec<(Item, Vec<RBound>)> = vec![(item, Vec::new())];
        for b in list {
            let mut next = Vec::new();
            for (it, done) in acc {
                if b.den == 1 {
                    let mut d = done.clone();
                    d.push(b.clone());
                    next.push((it, d));
                    continue;
                }
                for rho in 0..b.den {
                    let mut it2 = it.clone();
                    if !it2.push(dvd(b.den, b.num.sub(&Linear::constant(rho)))) {
                        continue;
                    }
                    let shift = if ceil && rho > 0 { b.den - rho } else { -rho };
                    let mut d = done.clone();
                    d.push(RBound { num: b.num.add(&Linear::constant(shift)), den: b.den });
                    next.push((it2, d));
                }
            }
            acc = next;
        }
        for (it, done) in acc {
            if ceil {
                out.push((it, done, highs.clone()));
            } else {
                out.push((it, lows.clone(), done));
            }
        }
    }
    out
}

/// `a ≥ b` (or `a > b` when `strict`) between exact bounds.
fn compare(a: &RBound, b: &RBound, strict: bool) -> Qf {
    let diff = a.num.scale(b.den).sub(&b.num.scale(a.den));
    gt(if strict { diff } else { diff.add(&Linear::constant(1)) })
}

fn process(item: Item, j: usize, x: &str) -> Result<Vec<Item>, PresburgerError> {
    // an equation pins x
    let eq = item
        .atoms
        .iter()
        .enumerate()
        .filter(|(_, a)| matches!(a, Qf::Eq(t) if t.coeff(x) != 0))
        .min_by_key(|&(i, a)| (lin_of(a).coeff(x).abs(), i))
        .map(|(i, _)| i);
    if let Some(i) = eq {
        return Ok(eliminate_equation(item, j, x, i));
    }

    let m = item
        .atoms
        .iter()
        .filter_map(|a| match a {
            Qf::Dvd(d, t) if t.coeff(x) != 0 => Some(*d),
            _ => None,
        })
        .fold(1i128, |acc, d| acc.lcm(&d));
    let split: Vec<Item> = if m > 1 { (0..m).filter_map(|r| item.split(j, x, m, r)).collect() } else { vec![item] };

    let mut out = Vec::new();
    for mut it in split {
        let mut lows = Vec::new();
        let mut highs = Vec::new();
        let mut rest = Vec::new();
        for a in std::mem::take(&mut it.atoms) {
            let c = lin_of(&a).coeff(x);
            match &a {
                Qf::Gt(t) if c > 0 => {
                    lows.push(RBound { num: without(t, x).scale(-1).add(&Linear::constant(1)), den: c })
                }
                Qf::Gt(t) if c < 0 => highs.push(RBound { num: without(t, x).sub(&Linear::constant(1)), den: -c }),
                _ => {
                    debug_assert_eq!(c, 0);
                    rest.push(a);
                }
            }
        }
        it.atoms = rest;
        if lows.is_empty() {
            let offending: Vec<String> = highs
                .iter()
                .map(|h| {
                    format!(
                        "{}",
                        super::qe::to_formula(&gt(h.num.sub(&Linear::term(x, h.den)).add(&Linear::constant(1))))
                    )
                })
                .collect();
            let shown = if offending.is_empty() { "no constraint".to_string() } else { offending.join(" & ") };
            return Err(PresburgerError::UnsupportedShape(format!("{x} has no lower bound ({shown})")));
        }
        let exact = exact_bounds(exact_bounds(vec![(it, lows, highs)], true), false);
        for (it, lows, highs) in exact {
            for (i, lo) in lows.iter().enumerate() {
                let his: Vec<Option<usize>> =
                    if highs.is_empty() { vec![None] } else { (0..highs.len()).map(Some).collect() };
                'case: for hi in his {
                    let mut it2 = it.clone();
                    for (k, other) in lows.iter().enumerate() {
                        if k != i && !it2.push(compare(lo, other, k < i)) {
                            continue 'case;
                        }
                    }
                    if let Some(h) = hi {
                        for (k, other) in highs.iter().enumerate() {
                            if k != h && !it2.push(compare(other, &highs[h], k < h)) {
                                continue 'case;
                            }
                        }
                        if !it2.push(compare(&highs[h], lo, false)) {
                            continue 'case;
                        }
                    }
                    it2.built[j] = Some((lo.clone(), hi.map(|h| highs[h].clone())));
                    out.push(it2);
                }
            }
        }
    }
    Ok(out)
}

fn finish(b: &RBound, vars: &[String], j: usize) -> Result<Bound, PresburgerError> {
    let bad = || PresburgerError::UnsupportedShape(format!("bound ({})/{} is not integral", b.num, b.den));
    if b.num.constant % b.den != 0 {
        return Err(bad());
    }
    let mut coeffs = vec![0; j];
    for (v, &c) in &b.num.coeffs {
        let i = vars.iter().position(|w| w == v).filter(|&i| i < j).ok_or_else(bad)?;
        if c % b.den != 0 {
            return Err(bad());
        }
        coeffs[i] = c / b.den;
    }
    Ok(Bound { coeffs, constant: b.num.constant / b.den })
}

/// Decomposes a quantifier-free formula into disjoint pieces with the given
/// variable order (outermost first).
pub fn to_iterated_ranges(f: &PresburgerFormula, order: &[&str]) -> Result<IteratedRangeSystem, PresburgerError> {
    if !f.is_quantifier_free() {
        return Err(PresburgerError::NotQuantifierFree);
    }
    let vars: Vec<String> = order.iter().map(|s| s.to_string()).collect();
    if let Some(v) = f.body.free_vars().into_iter().find(|v| !vars.contains(v)) {
        return Err(PresburgerError::UndeclaredVariable(v));
    }
    let k = vars.len();
    let mut items = Vec::new();
    for conj in ddnf(&to_qf(&f.body)) {
        let mut it = Item { atoms: Vec::new(), offset: vec![0; k], step: vec![1; k], built: vec![None; k] };
        if conj.into_iter().all(|a| it.push(a)) {
            items.push(it);
        }
    }
    for j in (0..k).rev() {
        let mut next = Vec::new();
        for it in items {
            next.extend(process(it, j, &vars[j])?);
        }
        items = next;
    }
    let mut pieces = Vec::new();
    for it in items {
        debug_assert!(it.atoms.is_empty());
        let mut progs = Vec::with_capacity(k);
        for j in 0..k {
            let (lo, hi) = it.built[j].as_ref().expect("every variable processed");
            progs.push(Progression {
                offset: it.offset[j],
                step: it.step[j],
                lower: finish(lo, &vars, j)?,
                upper: hi.as_ref().map(|h| finish(h, &vars, j)).transpose()?,
            });
        }
        pieces.push(Piece { vars: progs });
    }
    Ok(IteratedRangeSystem { vars, pieces })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presburger::{membership, parse_presburger_with_vars};

    fn check(src: &str, order: &[&str], hi: i64) -> IteratedRangeSystem {
        let f = parse_presburger_with_vars(src, order).unwrap();
        let sys = to_iterated_ranges(&f, order).unwrap();
        let k = order.len();
        let mut point = vec![0i64; k];
        loop {
            let p128: Vec<i128> = point.iter().map(|&x| x as i128).collect();
            let inside = membership(&f, &point).unwrap();
            assert_eq!(sys.multiplicity(&p128), inside as usize, "{src} at {point:?}\n{sys}");
            let mut i = 0;
            while i < k {
                point[i] += 1;
                if point[i] <= hi {
                    break;
                }
                point[i] = 0;
                i += 1;
            }
            if i == k {
                break;
            }
        }
        sys
    }

    #[test]
    fn monomial_cone() {
        let sys = check("n >= 4*l & l >= 1", &["l", "n"], 40);
        assert_eq!(sys.pieces.len(), 1);
        let p = &sys.pieces[0];
        assert_eq!(
            p.vars[0],
            Progression { offset: 0, step: 1, lower: Bound { coeffs: vec![], constant: 1 }, upper: None }
        );
        assert_eq!(
            p.vars[1],
            Progression { offset: 0, step: 1, lower: Bound { coeffs: vec![4], constant: 0 }, upper: None }
        );
    }

    #[test]
    fn single_progression() {
        let sys = check("n == 0 mod 4 & n >= 4", &["n"], 40);
        assert_eq!(sys.pieces.len(), 1);
        let pr = &sys.pieces[0].vars[0];
        assert_eq!((pr.offset, pr.step, pr.lower.constant, pr.upper.clone()), (0, 4, 1, None));
    }

    #[test]
    fn rescaled_band() {
        // over Z the band is unbounded below in both variables
        for order in [["n", "l"], ["l", "n"]] {
            let f = parse_presburger_with_vars("2*l <= 3*n & 3*n <= 2*l + 1", &order).unwrap();
            assert!(matches!(to_iterated_ranges(&f, &order), Err(PresburgerError::UnsupportedShape(_))));
        }
        check("2*l <= 3*n & 3*n <= 2*l + 1 & l >= 0", &["n", "l"], 60);
        check("2*l <= 3*n & 3*n <= 2*l + 1 & n >= 0", &["l", "n"], 60);
    }

    #[test]
    fn unions_and_negations() {
        check("(x >= 2 & y >= x) | (y >= 0 & x >= 0 & x + y <= 5)", &["x", "y"], 40);
        check("x >= 0 & y >= 0 & !(x == y mod 3) & 2*x + 3*y <= 50", &["x", "y"], 40);
        check("x >= 0 & x <= 30 & y >= 1 & !(x = 2*y) & y <= 20", &["x", "y"], 40);
        check("x >= 0 & y >= 0 & z >= 0 & x + y + z = 12 & x == 1 mod 2", &["x", "y", "z"], 14);
        check("a >= 0 & b >= a - 3 & b >= 2*a - 10 & b <= 3*a + 1", &["a", "b"], 40);
    }

    #[test]
    fn unbounded_below_is_rejected() {
        let f = parse_presburger_with_vars("x <= 5", &["x"]).unwrap();
        assert!(matches!(to_iterated_ranges(&f, &["x"]), Err(PresburgerError::UnsupportedShape(_))));
    }

    #[test]
    fn empty_set() {
        let sys = check("x >= 3 & x <= 1", &["x"], 10);
        assert!(sys.pieces.is_empty());
    }
}
