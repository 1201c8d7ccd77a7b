//! Text syntax:
//!
//! ```text
//! formula := or
//! or      := and ('|' and)*
//! and     := unary ('&' unary)*
//! unary   := '!' unary | ('E' | 'A') var '.' formula | '(' formula ')'
//!          | 'true' | 'false' | atom
//! atom    := linear REL linear | linear ('≡' | '==') linear 'mod' int
//! linear  := ['-'] product (('+' | '-') product)*
//! product := factor ('*' factor)*       (at most one non-constant factor)
//! factor  := int | var | '(' linear ')' | '-' factor
//! ```

use super::ast::{Atom, Formula, Linear, PresburgerFormula, Rel};
use super::PresburgerError;

pub fn parse_presburger(text: &str) -> Result<PresburgerFormula, PresburgerError> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0 };
    let f = p.formula()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(PresburgerFormula::new(f))
}

/// Parses with an explicit list of free variables; any other free variable
/// is an error.
pub fn parse_presburger_with_vars(text: &str, vars: &[&str]) -> Result<PresburgerFormula, PresburgerError> {
    PresburgerFormula::with_vars(parse_presburger(text)?.body, vars)
}

/// A single linear term such as `2*n - l + 3`.
pub fn parse_linear(text: &str) -> Result<Linear, PresburgerError> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0 };
    let l = p.linear()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(l)
}

const KEYWORDS: [&str; 3] = ["mod", "true", "false"];

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn err(&self, msg: &str) -> PresburgerError {
        PresburgerError::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        let n = s.chars().count();
        if self.chars.len() >= self.pos + n && self.chars[self.pos..self.pos + n].iter().copied().eq(s.chars()) {
            self.pos += n;
            true
        } else {
            false
        }
    }

    /// Identifier or keyword starting at the cursor, without consuming it.
    fn word(&mut self) -> Option<String> {
        self.skip_ws();
        let c = *self.chars.get(self.pos)?;
        if !c.is_ascii_lowercase() {
            return None;
        }
        let w: String = self.chars[self.pos..]
            .iter()
            .take_while(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || **c == '_')
            .collect();
        Some(w)
    }

    fn variable(&mut self) -> Result<String, PresburgerError> {
        match self.word() {
            Some(w) if !KEYWORDS.contains(&w.as_str()) => {
                self.pos += w.chars().count();
                Ok(w)
            }
            _ => Err(self.err("expected variable")),
        }
    }

    fn formula(&mut self) -> Result<Formula, PresburgerError> {
        let mut parts = vec![self.conj()?];
        while self.eat("|") {
            parts.push(self.conj()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Formula::Or(parts) })
    }

    fn conj(&mut self) -> Result<Formula, PresburgerError> {
        let mut parts = vec![self.unary()?];
        while self.eat("&") {
            parts.push(self.unary()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Formula::And(parts) })
    }

    fn unary(&mut self) -> Result<Formula, PresburgerError> {
        match self.peek() {
            Some('!') | Some('¬') => {
                self.pos += 1;
                Ok(Formula::Not(Box::new(self.unary()?)))
            }
            Some(q @ ('E' | 'A' | '∃' | '∀')) => {
                self.pos += 1;
                let x = self.variable()?;
                if !self.eat(".") {
                    return Err(self.err("expected '.' after quantified variable"));
                }
                let body = Box::new(self.formula()?);
                Ok(if matches!(q, 'E' | '∃') { Formula::Exists(x, body) } else { Formula::Forall(x, body) })
            }
            Some('(') => {
                // either a parenthesised formula or an atom starting with a parenthesised term
                let start = self.pos;
                match self.atom() {
                    Ok(a) => Ok(Formula::Atom(a)),
                    Err(atom_err) => {
                        let atom_pos = self.pos;
                        self.pos = start + 1;
                        let inner = self.formula();
                        match inner {
                            Ok(f) if self.eat(")") => Ok(f),
                            Ok(_) => Err(self.err("expected ')'")),
                            Err(e) => Err(furthest(e, atom_err, atom_pos)),
                        }
                    }
                }
            }
            _ => {
                if let Some(w) = self.word() {
                    if w == "true" || w == "false" {
                        self.pos += w.len();
                        return Ok(if w == "true" { Formula::True } else { Formula::False });
                    }
                }
                Ok(Formula::Atom(self.atom()?))
            }
        }
    }

    fn atom(&mut self) -> Result<Atom, PresburgerError> {
        let lhs = self.linear()?;
        let rel = if self.eat("<=") || self.eat("≤") {
            Some(Rel::Le)
        } else if self.eat(">=") || self.eat("≥") {
            Some(Rel::Ge)
        } else if self.eat("==") || self.eat("≡") {
            None
        } else if self.eat("<") {
            Some(Rel::Lt)
        } else if self.eat(">") {
            Some(Rel::Gt)
        } else if self.eat("=") {
            Some(Rel::Eq)
        } else {
            return Err(self.err("expected relation"));
        };
        let rhs = self.linear()?;
        let diff = lhs.sub(&rhs);
        match rel {
            Some(rel) => Ok(Atom::cmp(diff, rel)),
            None => {
                if self.word().as_deref() != Some("mod") {
                    return Err(self.err("expected 'mod'"));
                }
                self.pos += 3;
                self.skip_ws();
                let n = self.integer()?;
                if n < 2 {
                    return Err(self.err("modulus must be at least 2"));
                }
                Ok(Atom::cong(&diff, n))
            }
        }
    }

    fn integer(&mut self) -> Result<i128, PresburgerError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| PresburgerError::Syntax { pos: start, msg: "integer too large".into() })
    }

    fn linear(&mut self) -> Result<Linear, PresburgerError> {
        let mut acc = self.product()?;
        loop {
            if self.eat("+") {
                acc = acc.add(&self.product()?);
            } else if self.peek() == Some('-') || self.peek() == Some('−') {
                self.pos += 1;
                acc = acc.sub(&self.product()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Linear, PresburgerError> {
        let mut acc = self.factor()?;
        while self.eat("*") {
            let at = self.pos;
            let rhs = self.factor()?;
            acc = match (acc.is_constant(), rhs.is_constant()) {
                (true, _) => rhs.scale(acc.constant),
                (_, true) => acc.scale(rhs.constant),
                _ => return Err(PresburgerError::Syntax { pos: at, msg: "non-linear product".into() }),
            };
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Linear, PresburgerError> {
        match self.peek() {
            Some('-') | Some('−') => {
                self.pos += 1;
                Ok(self.factor()?.scale(-1))
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.linear()?;
                if !self.eat(")") {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => Ok(Linear::constant(self.integer()?)),
            Some(c) if c.is_ascii_lowercase() => Ok(Linear::var(&self.variable()?)),
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

fn furthest(a: PresburgerError, b: PresburgerError, _b_pos: usize) -> PresburgerError {
    match (&a, &b) {
        (PresburgerError::Syntax { pos: pa, .. }, PresburgerError::Syntax { pos: pb, .. }) if pb > pa => b,
        _ => a,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PresburgerFormula {
        parse_presburger(s).unwrap()
    }

    #[test]
    fn exists_parity() {
        let f = p("E y. x = 2*y");
        let expect = Formula::Exists(
            "y".into(),
            Box::new(Formula::Atom(Atom::cmp(Linear::var("x").sub(&Linear::term("y", 2)), Rel::Eq))),
        );
        assert_eq!(f.body, expect);
        assert_eq!(f.free, vec!["x".to_string()]);
    }

    #[test]
    fn conjunction_of_three() {
        let f = p("x >= 1 & x <= n & x ≡ 0 mod 4");
        match &f.body {
            Formula::And(v) => assert_eq!(v.len(), 3),
            other => panic!("{other:?}"),
        }
        assert_eq!(p("x >= 1 & x <= n & x == 0 mod 4"), f);
        assert_eq!(f.free, vec!["x".to_string(), "n".to_string()]);
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(parse_presburger("x + * 3"), Err(PresburgerError::Syntax { .. })));
        assert!(matches!(parse_presburger("x * y = 1"), Err(PresburgerError::Syntax { .. })));
        assert!(matches!(parse_presburger("x == 1 mod 1"), Err(PresburgerError::Syntax { .. })));
        assert!(matches!(parse_presburger("E mod. x = 1"), Err(PresburgerError::Syntax { .. })));
        assert!(matches!(parse_presburger("(x = 1"), Err(PresburgerError::Syntax { .. })));
        assert!(matches!(parse_presburger("x = 1 y"), Err(PresburgerError::Syntax { .. })));
    }

    #[test]
    fn linear_terms() {
        assert_eq!(
            parse_linear("2*n - l + 3").unwrap(),
            Linear::term("n", 2).sub(&Linear::var("l")).add(&Linear::constant(3))
        );
        assert!(parse_linear("n >= 1").is_err());
    }

    #[test]
    fn undeclared() {
        assert_eq!(
            parse_presburger_with_vars("x + y >= 0", &["x"]),
            Err(PresburgerError::UndeclaredVariable("y".into()))
        );
        assert!(parse_presburger_with_vars("E y. x + y >= 0", &["x"]).is_ok());
    }

    #[test]
    fn parenthesised_terms_and_formulas() {
        let a = p("(x + 1)*2 <= 3*(y - x)");
        let b = p("2*x + 2 <= 3*y - 3*x");
        assert_eq!(a, b);
        let c = p("(x >= 1 | y >= 1) & !(x = y)");
        assert!(matches!(c.body, Formula::And(_)));
    }

    #[test]
    fn print_parse_round_trip() {
        for s in [
            "E y. x = 2*y",
            "x >= 1 & x <= n & x == 0 mod 4",
            "(x >= 1 | y >= 1) & !(x = y)",
            "A z. (z <= x | z >= y + 1)",
            "!(E y. (x = 3*y + 1 & y > 0)) | x < -5",
            "true & !false",
            "-x + 3*y - 7 == 2 mod 5",
            "(a | b1 >= 2) & (c_d < 0 | E e. e > 0 & e < 1)".replace("a |", "a >= 0 |").as_str(),
        ] {
            let f = p(s);
            let printed = f.to_string();
            assert_eq!(p(&printed), f, "{s} -> {printed}");
        }
    }
}
