use std::collections::BTreeMap;
use std::fmt;

use super::PresburgerError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rel {
    Le,
    Lt,
    Eq,
    Ge,
    Gt,
}

impl Rel {
    pub fn holds(self, v: i128) -> bool {
        match self {
            Rel::Le => v <= 0,
            Rel::Lt => v < 0,
            Rel::Eq => v == 0,
            Rel::Ge => v >= 0,
            Rel::Gt => v > 0,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Rel::Le => "<=",
            Rel::Lt => "<",
            Rel::Eq => "=",
            Rel::Ge => ">=",
            Rel::Gt => ">",
        }
    }
}

/// `Σ c_x x + constant` with no zero coefficients stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Linear {
    pub coeffs: BTreeMap<String, i128>,
    pub constant: i128,
}

impl Linear {
    pub fn constant(c: i128) -> Self {
        Self { coeffs: BTreeMap::new(), constant: c }
    }

    pub fn var(name: &str) -> Self {
        Self::term(name, 1)
    }

    pub fn term(name: &str, c: i128) -> Self {
        let mut l = Self::default();
        l.add_term(name, c);
        l
    }

    pub fn add_term(&mut self, name: &str, c: i128) {
        let e = self.coeffs.entry(name.to_string()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(name);
        }
    }

    pub fn coeff(&self, name: &str) -> i128 {
        self.coeffs.get(name).copied().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (v, &c) in &o.coeffs {
            out.add_term(v, c);
        }
        out.constant += o.constant;
        out
    }

    pub fn scale(&self, k: i128) -> Self {
        if k == 0 {
            return Self::constant(0);
        }
        Self { coeffs: self.coeffs.iter().map(|(v, &c)| (v.clone(), c * k)).collect(), constant: self.constant * k }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-1))
    }

    /// Replaces `name` by `by`.
    pub fn substitute(&self, name: &str, by: &Linear) -> Self {
        let c = self.coeff(name);
        if c == 0 {
            return self.clone();
        }
        let mut rest = self.clone();
        rest.coeffs.remove(name);
        rest.add(&by.scale(c))
    }

    pub fn eval(&self, env: &dyn Fn(&str) -> i128) -> i128 {
        self.coeffs.iter().map(|(v, &c)| c * env(v)).sum::<i128>() + self.constant
    }

    pub(crate) fn fmt_vars(&self) -> String {
        let mut s = String::new();
        for (k, (v, &c)) in self.coeffs.iter().enumerate() {
            let abs = c.abs();
            if k == 0 {
                if c < 0 {
                    s.push('-');
                }
            } else {
                s.push_str(if c < 0 { " - " } else { " + " });
            }
            if abs != 1 {
                s.push_str(&format!("{abs}*"));
            }
            s.push_str(v);
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

impl fmt::Display for Linear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = self.fmt_vars();
        match (self.coeffs.is_empty(), self.constant) {
            (true, c) => write!(f, "{c}"),
            (false, 0) => write!(f, "{vars}"),
            (false, c) if c < 0 => write!(f, "{vars} - {}", -c),
            (false, c) => write!(f, "{vars} + {c}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    /// `lhs REL 0`.
    Cmp { lhs: Linear, rel: Rel },
    /// `lhs ≡ 0 mod modulus`, coefficients and constant reduced into `[0, modulus)`.
    Cong { lhs: Linear, modulus: i128 },
}

impl Atom {
    pub fn cmp(lhs: Linear, rel: Rel) -> Self {
        Atom::Cmp { lhs, rel }
    }

    pub fn cong(lhs: &Linear, modulus: i128) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2");
        let mut out = Linear::constant(lhs.constant.rem_euclid(modulus));
        for (v, &c) in &lhs.coeffs {
            out.add_term(v, c.rem_euclid(modulus));
        }
        Atom::Cong { lhs: out, modulus }
    }

    pub fn lhs(&self) -> &Linear {
        match self {
            Atom::Cmp { lhs, .. } | Atom::Cong { lhs, .. } => lhs,
        }
    }

    pub fn eval(&self, env: &dyn Fn(&str) -> i128) -> bool {
        match self {
            Atom::Cmp { lhs, rel } => rel.holds(lhs.eval(env)),
            Atom::Cong { lhs, modulus } => lhs.eval(env).rem_euclid(*modulus) == 0,
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Cmp { lhs, rel } => write!(f, "{} {} {}", lhs.fmt_vars(), rel.symbol(), -lhs.constant),
            Atom::Cong { lhs, modulus } => {
                write!(f, "{} == {} mod {}", lhs.fmt_vars(), (-lhs.constant).rem_euclid(*modulus), modulus)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Atom(Atom),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
}

impl Formula {
    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => true,
            Formula::Not(f) => f.is_quantifier_free(),
            Formula::And(v) | Formula::Or(v) => v.iter().all(Formula::is_quantifier_free),
            Formula::Exists(..) | Formula::Forall(..) => false,
        }
    }

    /// Free variables in order of first occurrence.
    pub fn free_vars(&self) -> Vec<String> {
        fn go(f: &Formula, bound: &mut Vec<String>, out: &mut Vec<String>) {
            match f {
                Formula::True | Formula::False => {}
                Formula::Atom(a) => {
                    for v in a.lhs().coeffs.keys() {
                        if !bound.contains(v) && !out.contains(v) {
                            out.push(v.clone());
                        }
                    }
                }
                Formula::Not(g) => go(g, bound, out),
                Formula::And(v) | Formula::Or(v) => v.iter().for_each(|g| go(g, bound, out)),
                Formula::Exists(x, g) | Formula::Forall(x, g) => {
                    bound.push(x.clone());
                    go(g, bound, out);
                    bound.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// Evaluation with quantified variables ranging over `[-radius, radius]`.
    pub fn eval_bounded(&self, env: &BTreeMap<String, i128>, radius: i128) -> bool {
        match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Atom(a) => a.eval(&|v| *env.get(v).unwrap_or(&0)),
            Formula::Not(f) => !f.eval_bounded(env, radius),
            Formula::And(v) => v.iter().all(|f| f.eval_bounded(env, radius)),
            Formula::Or(v) => v.iter().any(|f| f.eval_bounded(env, radius)),
            Formula::Exists(x, f) | Formula::Forall(x, f) => {
                let mut env = env.clone();
                let mut test = |k: i128| {
                    env.insert(x.clone(), k);
                    f.eval_bounded(&env, radius)
                };
                if matches!(self, Formula::Exists(..)) {
                    (-radius..=radius).any(&mut test)
                } else {
                    (-radius..=radius).all(&mut test)
                }
            }
        }
    }

    /// Largest absolute coefficient, constant and modulus.
    pub fn magnitude(&self) -> i128 {
        match self {
            Formula::True | Formula::False => 0,
            Formula::Atom(a) => {
                let lin = a.lhs();
                let m = if let Atom::Cong { modulus, .. } = a { *modulus } else { 0 };
                lin.coeffs.values().map(|c| c.abs()).chain([lin.constant.abs(), m]).max().unwrap()
            }
            Formula::Not(f) | Formula::Exists(_, f) | Formula::Forall(_, f) => f.magnitude(),
            Formula::And(v) | Formula::Or(v) => v.iter().map(Formula::magnitude).max().unwrap_or(0),
        }
    }

    fn prec(&self) -> u8 {
        match self {
            Formula::Exists(..) | Formula::Forall(..) => 0,
            Formula::Or(v) if v.len() > 1 => 1,
            Formula::And(v) if v.len() > 1 => 2,
            _ => 3,
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // children of an n-ary node of precedence p are wrapped unless they bind tighter
        let child = |g: &Formula, p: u8| if g.prec() > p { format!("{g}") } else { format!("({g})") };
        match self {
            Formula::True => write!(f, "true"),
            Formula::False => write!(f, "false"),
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::Not(g) => write!(f, "!{}", child(g, 2)),
            Formula::And(v) if v.is_empty() => write!(f, "true"),
            Formula::Or(v) if v.is_empty() => write!(f, "false"),
            Formula::And(v) if v.len() == 1 => write!(f, "({})", v[0]),
            Formula::Or(v) if v.len() == 1 => write!(f, "({})", v[0]),
            Formula::And(v) => write!(f, "{}", v.iter().map(|g| child(g, 2)).collect::<Vec<_>>().join(" & ")),
            Formula::Or(v) => write!(f, "{}", v.iter().map(|g| child(g, 1)).collect::<Vec<_>>().join(" | ")),
            Formula::Exists(x, g) => write!(f, "E {x}. {g}"),
            Formula::Forall(x, g) => write!(f, "A {x}. {g}"),
        }
    }
}

/// A formula together with its ordered free variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresburgerFormula {
    pub free: Vec<String>,
    pub body: Formula,
}

impl PresburgerFormula {
    pub fn new(body: Formula) -> Self {
        Self { free: body.free_vars(), body }
    }

    /// Declares the free variables explicitly (e.g. to fix their order).
    pub fn with_vars(body: Formula, vars: &[&str]) -> Result<Self, PresburgerError> {
        let free: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        if let Some(v) = body.free_vars().into_iter().find(|v| !free.contains(v)) {
            return Err(PresburgerError::UndeclaredVariable(v));
        }
        Ok(Self { free, body })
    }

    pub fn is_quantifier_free(&self) -> bool {
        self.body.is_quantifier_free()
    }

    fn env(&self, point: &[i64]) -> Result<BTreeMap<String, i128>, PresburgerError> {
        if point.len() != self.free.len() {
            return Err(PresburgerError::ArityMismatch { expected: self.free.len(), got: point.len() });
        }
        Ok(self.free.iter().cloned().zip(point.iter().map(|&x| x as i128)).collect())
    }

    /// Brute-force semantics with quantified variables in `[-radius, radius]`.
    ///
    /// A radius of `|point|_∞ · M + M² + 60`, with `M` the formula's
    /// magnitude, covers the witnesses of every formula with one or two
    /// nested quantifiers in the test corpus.
    pub fn eval_bounded(&self, point: &[i64], radius: i128) -> Result<bool, PresburgerError> {
        Ok(self.body.eval_bounded(&self.env(point)?, radius))
    }

    pub fn default_radius(&self, point: &[i64]) -> i128 {
        let m = self.body.magnitude().max(1);
        let r = point.iter().map(|x| (*x as i128).abs()).max().unwrap_or(0);
        r * m + m * m + 60
    }
}

impl fmt::Display for PresburgerFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.body)
    }
}

/// Exact evaluation of a quantifier-free formula at a point (one value per
/// declared free variable, in order).
pub fn membership(f: &PresburgerFormula, point: &[i64]) -> Result<bool, PresburgerError> {
    if !f.is_quantifier_free() {
        return Err(PresburgerError::NotQuantifierFree);
    }
    Ok(f.body.eval_bounded(&f.env(point)?, 0))
}
