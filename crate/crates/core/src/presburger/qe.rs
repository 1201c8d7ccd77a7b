//! Cooper's quantifier elimination over `Z`.

use num_integer::Integer;

use super::ast::{Atom, Formula, Linear, PresburgerFormula, Rel};

/// Quantifier-free formulas in negation normal form over the atoms
/// `t > 0`, `t = 0`, `d | t` and `¬(d | t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Qf {
    True,
    False,
    Gt(Linear),
    Eq(Linear),
    Dvd(i128, Linear),
    NDvd(i128, Linear),
    And(Vec<Qf>),
    Or(Vec<Qf>),
}

fn floor_div(a: i128, b: i128) -> i128 {
    Integer::div_floor(&a, &b)
}

fn content(t: &Linear) -> i128 {
    t.coeffs.values().fold(0, |g, &c| g.gcd(&c))
}

pub(crate) fn gt(t: Linear) -> Qf {
    if t.is_constant() {
        return if t.constant > 0 { Qf::True } else { Qf::False };
    }
    let g = content(&t);
    if g > 1 {
        // Σ a x + c > 0  ⇔  Σ (a/g) x - floor(-c/g) > 0
        let mut s = t.clone();
        s.coeffs.values_mut().for_each(|c| *c /= g);
        s.constant = -floor_div(-t.constant, g);
        return Qf::Gt(s);
    }
    Qf::Gt(t)
}

pub(crate) fn eq(t: Linear) -> Qf {
    if t.is_constant() {
        return if t.constant == 0 { Qf::True } else { Qf::False };
    }
    let g = content(&t);
    if t.constant % g != 0 {
        return Qf::False;
    }
    let sign = if *t.coeffs.values().next().unwrap() < 0 { -1 } else { 1 };
    let mut s = t.clone();
    s.coeffs.values_mut().for_each(|c| *c = *c / g * sign);
    s.constant = t.constant / g * sign;
    Qf::Eq(s)
}

fn reduce_mod(d: i128, t: &Linear) -> Linear {
    let mut s = Linear::constant(t.constant.rem_euclid(d));
    for (v, &c) in &t.coeffs {
        s.add_term(v, c.rem_euclid(d));
    }
    s
}

pub(crate) fn dvd(d: i128, t: Linear) -> Qf {
    let d = d.abs();
    if d == 1 {
        return Qf::True;
    }
    let s = reduce_mod(d, &t);
    if s.is_constant() {
        return if s.constant == 0 { Qf::True } else { Qf::False };
    }
    let g = s.coeffs.values().fold(d.gcd(&s.constant), |g, &c| g.gcd(&c));
    if g > 1 {
        return dvd(
            d / g,
            Linear { coeffs: s.coeffs.iter().map(|(v, c)| (v.clone(), c / g)).collect(), constant: s.constant / g },
        );
    }
    Qf::Dvd(d, s)
}

pub(crate) fn ndvd(d: i128, t: Linear) -> Qf {
    negate(&dvd(d, t))
}

pub(crate) fn and(parts: Vec<Qf>) -> Qf {
    let mut out: Vec<Qf> = Vec::new();
    for p in parts {
        match p {
            Qf::True => {}
            Qf::False => return Qf::False,
            Qf::And(v) => {
                for q in v {
                    if !out.contains(&q) {
                        out.push(q);
                    }
                }
            }
            q => {
                if !out.contains(&q) {
                    out.push(q);
                }
            }
        }
    }
    match out.len() {
        0 => Qf::True,
        1 => out.pop().unwrap(),
        _ => Qf::And(out),
    }
}

pub(crate) fn or(parts: Vec<Qf>) -> Qf {
    let mut out: Vec<Qf> = Vec::new();
    for p in parts {
        match p {
            Qf::False => {}
            Qf::True => return Qf::True,
            Qf::Or(v) => {
                for q in v {
                    if !out.contains(&q) {
                        out.push(q);
                    }
                }
            }
            q => {
                if !out.contains(&q) {
                    out.push(q);
                }
            }
        }
    }
    match out.len() {
        0 => Qf::False,
        1 => out.pop().unwrap(),
        _ => Qf::Or(out),
    }
}

pub(crate) fn negate(f: &Qf) -> Qf {
    match f {
        Qf::True => Qf::False,
        Qf::False => Qf::True,
        // ¬(t > 0) ⇔ -t + 1 > 0
        Qf::Gt(t) => gt(t.scale(-1).add(&Linear::constant(1))),
        Qf::Eq(t) => or(vec![gt(t.clone()), gt(t.scale(-1))]),
        Qf::Dvd(d, t) => Qf::NDvd(*d, t.clone()),
        Qf::NDvd(d, t) => Qf::Dvd(*d, t.clone()),
        Qf::And(v) => or(v.iter().map(negate).collect()),
        Qf::Or(v) => and(v.iter().map(negate).collect()),
    }
}

fn atom_qf(a: &Atom) -> Qf {
    match a {
        Atom::Cmp { lhs, rel } => match rel {
            Rel::Le => gt(lhs.scale(-1).add(&Linear::constant(1))),
            Rel::Lt => gt(lhs.scale(-1)),
            Rel::Ge => gt(lhs.add(&Linear::constant(1))),
            Rel::Gt => gt(lhs.clone()),
            Rel::Eq => eq(lhs.clone()),
        },
        Atom::Cong { lhs, modulus } => dvd(*modulus, lhs.clone()),
    }
}

/// Quantifier-free formula to NNF; panics on quantifiers.
pub(crate) fn to_qf(f: &Formula) -> Qf {
    match f {
        Formula::True => Qf::True,
        Formula::False => Qf::False,
        Formula::Atom(a) => atom_qf(a),
        Formula::Not(g) => negate(&to_qf(g)),
        Formula::And(v) => and(v.iter().map(to_qf).collect()),
        Formula::Or(v) => or(v.iter().map(to_qf).collect()),
        Formula::Exists(..) | Formula::Forall(..) => unreachable!("quantifier in quantifier-free position"),
    }
}

pub(crate) fn to_formula(f: &Qf) -> Formula {
    match f {
        Qf::True => Formula::True,
        Qf::False => Formula::False,
        // t > 0 ⇔ t - 1 >= 0
        Qf::Gt(t) => Formula::Atom(Atom::cmp(t.sub(&Linear::constant(1)), Rel::Ge)),
        Qf::Eq(t) => Formula::Atom(Atom::cmp(t.clone(), Rel::Eq)),
        Qf::Dvd(d, t) => Formula::Atom(Atom::cong(t, *d)),
        Qf::NDvd(d, t) => Formula::Not(Box::new(Formula::Atom(Atom::cong(t, *d)))),
        Qf::And(v) => Formula::And(v.iter().map(to_formula).collect()),
        Qf::Or(v) => Formula::Or(v.iter().map(to_formula).collect()),
    }
}

fn map_atoms(f: &Qf, g: &dyn Fn(&Qf) -> Qf) -> Qf {
    match f {
        Qf::And(v) => and(v.iter().map(|h| map_atoms(h, g)).collect()),
        Qf::Or(v) => or(v.iter().map(|h| map_atoms(h, g)).collect()),
        Qf::True | Qf::False => f.clone(),
        atom => g(atom),
    }
}

fn atoms<'a>(f: &'a Qf, out: &mut Vec<&'a Qf>) {
    match f {
        Qf::And(v) | Qf::Or(v) => v.iter().for_each(|h| atoms(h, out)),
        Qf::True | Qf::False => {}
        a => out.push(a),
    }
}

fn atom_lin(a: &Qf) -> &Linear {
    match a {
        Qf::Gt(t) | Qf::Eq(t) | Qf::Dvd(_, t) | Qf::NDvd(_, t) => t,
        _ => unreachable!(),
    }
}

fn rebuild(a: &Qf, t: Linear) -> Qf {
    match a {
        Qf::Gt(_) => gt(t),
        Qf::Eq(_) => eq(t),
        Qf::Dvd(d, _) => dvd(*d, t),
        Qf::NDvd(d, _) => ndvd(*d, t),
        _ => unreachable!(),
    }
}

pub(crate) fn substitute(f: &Qf, x: &str, by: &Linear) -> Qf {
    map_atoms(f, &|a| rebuild(a, atom_lin(a).substitute(x, by)))
}

fn mentions(f: &Qf, x: &str) -> bool {
    let mut v = Vec::new();
    atoms(f, &mut v);
    v.iter().any(|a| atom_lin(a).coeff(x) != 0)
}

/// `x := -t/a` for an equation `a x + t = 0` inside a conjunction.
fn eliminate_by_equation(rest: &Qf, x: &str, a: i128, t: &Linear) -> Qf {
    let m = a.abs();
    let image = t.scale(-a.signum());
    let sub = map_atoms(rest, &|atom| {
        let lin = atom_lin(atom);
        let c = lin.coeff(x);
        if c == 0 {
            return atom.clone();
        }
        let mut s = lin.clone();
        s.coeffs.remove(x);
        // m·(c x + s) with m x = image
        let scaled = image.scale(c).add(&s.scale(m));
        match atom {
            Qf::Dvd(d, _) => dvd(d * m, scaled),
            Qf::NDvd(d, _) => ndvd(d * m, scaled),
            other => rebuild(other, scaled),
        }
    });
    and(vec![dvd(m, t.clone()), sub])
}

/// `∃x. φ` for quantifier-free `φ`.
pub(crate) fn cooper(x: &str, phi: &Qf) -> Qf {
    if !mentions(phi, x) {
        return phi.clone();
    }
    // an equation among the top-level conjuncts
    let conj: Vec<Qf> = match phi {
        Qf::And(v) => v.clone(),
        other => vec![other.clone()],
    };
    let pick = conj
        .iter()
        .enumerate()
        .filter_map(|(i, c)| match c {
            Qf::Eq(t) if t.coeff(x) != 0 => Some((i, t.coeff(x).abs())),
            _ => None,
        })
        .min_by_key(|&(i, a)| (a, i));
    if let Some((i, _)) = pick {
        let Qf::Eq(t) = &conj[i] else { unreachable!() };
        let a = t.coeff(x);
        let mut rest_t = t.clone();
        rest_t.coeffs.remove(x);
        let rest = and(conj.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, c)| c.clone()).collect());
        return eliminate_by_equation(&rest, x, a, &rest_t);
    }

    // unit coefficient for x
    let mut all = Vec::new();
    atoms(phi, &mut all);
    let l = all.iter().map(|a| atom_lin(a).coeff(x).abs()).filter(|&c| c != 0).fold(1i128, |acc, c| acc.lcm(&c));
    let unit = map_atoms(phi, &|atom| {
        let lin = atom_lin(atom);
        let c = lin.coeff(x);
        if c == 0 {
            return atom.clone();
        }
        let k = l / c.abs();
        let mut s = lin.scale(k);
        s.coeffs.insert(x.to_string(), c.signum());
        let split_eq =
            |s: Linear| and(vec![gt(s.add(&Linear::constant(1))), gt(s.scale(-1).add(&Linear::constant(1)))]);
        match atom {
            Qf::Gt(_) => Qf::Gt(s),
            Qf::Eq(_) => split_eq(s),
            Qf::Dvd(d, _) => Qf::Dvd(d * k, s),
            Qf::NDvd(d, _) => Qf::NDvd(d * k, s),
            _ => unreachable!(),
        }
    });
    let unit = if l > 1 { and(vec![unit, dvd(l, Linear::var(x))]) } else { unit };

    let mut all = Vec::new();
    atoms(&unit, &mut all);
    let mut lower: Vec<Linear> = Vec::new();
    let mut upper: Vec<Linear> = Vec::new();
    let mut delta = 1i128;
    for a in &all {
        let t = atom_lin(a);
        let c = t.coeff(x);
        if c == 0 {
            continue;
        }
        let mut rest = t.clone();
        rest.coeffs.remove(x);
        match a {
            // x + r > 0: x > -r
            Qf::Gt(_) if c > 0 => {
                let b = rest.scale(-1);
                if !lower.contains(&b) {
                    lower.push(b);
                }
            }
            // -x + r > 0: x < r
            Qf::Gt(_) => {
                if !upper.contains(&rest) {
                    upper.push(rest);
                }
            }
            Qf::Dvd(d, _) | Qf::NDvd(d, _) => delta = delta.lcm(d),
            _ => unreachable!("equations were split"),
        }
    }

    let from_below = lower.len() <= upper.len();
    let infinite = map_atoms(&unit, &|a| {
        let c = atom_lin(a).coeff(x);
        match a {
            Qf::Gt(_) if c != 0 => {
                if (c > 0) == from_below {
                    Qf::False
                } else {
                    Qf::True
                }
            }
            other => other.clone(),
        }
    });
    let mut parts = Vec::new();
    for j in 1..=delta {
        parts.push(substitute(&infinite, x, &Linear::constant(j)));
    }
    let points = if from_below { &lower } else { &upper };
    for p in points {
        for j in 1..=delta {
            let at = if from_below { p.add(&Linear::constant(j)) } else { p.sub(&Linear::constant(j)) };
            parts.push(substitute(&unit, x, &at));
        }
    }
    or(parts)
}

fn qe_rec(f: &Formula) -> Qf {
    match f {
        Formula::Exists(x, g) => cooper(x, &qe_rec(g)),
        Formula::Forall(x, g) => negate(&cooper(x, &negate(&qe_rec(g)))),
        Formula::Not(g) => negate(&qe_rec(g)),
        Formula::And(v) => and(v.iter().map(qe_rec).collect()),
        Formula::Or(v) => or(v.iter().map(qe_rec).collect()),
        other => to_qf(other),
    }
}

/// An equivalent quantifier-free formula over the same free variables.
pub fn eliminate_quantifiers(f: &PresburgerFormula) -> PresburgerFormula {
    PresburgerFormula { free: f.free.clone(), body: to_formula(&qe_rec(&f.body)) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presburger::{membership, parse_presburger};

    fn check(src: &str, lo: i64, hi: i64) -> PresburgerFormula {
        let f = parse_presburger(src).unwrap();
        let g = eliminate_quantifiers(&f);
        assert!(g.is_quantifier_free());
        let k = f.free.len();
        let mut point = vec![lo; k];
        loop {
            let r = f.default_radius(&point);
            assert_eq!(membership(&g, &point).unwrap(), f.eval_bounded(&point, r).unwrap(), "{src} at {point:?}: {g}");
            let mut i = 0;
            while i < k {
                point[i] += 1;
                if point[i] <= hi {
                    break;
                }
                point[i] = lo;
                i += 1;
            }
            if i == k {
                break;
            }
        }
        g
    }

    #[test]
    fn parity() {
        let g = check("E y. x = 2*y", -20, 20);
        assert_eq!(g.to_string(), "x == 0 mod 2");
    }

    #[test]
    fn bounded_half() {
        check("E y. x = 2*y & y >= 3", -20, 20);
    }

    #[test]
    fn inequalities_and_congruences() {
        check("E y. 3*y <= x & x < 3*y + 2", -15, 15);
        check("E y. 2*x <= 3*y & 3*y <= 2*x + 1 & y == 1 mod 2", -15, 15);
        check("A y. (y >= x | y < 0)", -10, 10);
        check("E y. E z. x = 3*y + 5*z & y >= 0 & z >= 0", -5, 20);
    }

    #[test]
    fn quantifier_free_unchanged_semantics() {
        let f = parse_presburger("x >= 1 & x <= 3").unwrap();
        let g = eliminate_quantifiers(&f);
        for x in -5..=5 {
            assert_eq!(membership(&g, &[x]).unwrap(), membership(&f, &[x]).unwrap());
        }
    }

    #[test]
    fn normalizations() {
        assert_eq!(
            gt(Linear::term("x", 2).add(&Linear::constant(-3))),
            Qf::Gt(Linear::var("x").add(&Linear::constant(-1)))
        );
        assert_eq!(eq(Linear::term("x", 2).add(&Linear::constant(1))), Qf::False);
        assert_eq!(
            dvd(4, Linear::term("x", 2).add(&Linear::constant(2))),
            Qf::Dvd(2, Linear::var("x").add(&Linear::constant(1)))
        );
        assert_eq!(dvd(3, Linear::term("x", 3).add(&Linear::constant(1))), Qf::False);
    }
}
