//! Text grammar for polynomials and abs-ring elements.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | number | variable | 'abs' '(' variable ')' | '(' expr ')'
//! number := digits ('/' digits)?
//! ```
//!
//! Variables are `x0 … x{n-1}` by default. The crossed-lines formulas use named
//! variables such as `u0'` and `z1`, so identifiers may contain digits, `_`
//! and `'`.

use std::fmt;

use num_bigint::BigInt;
use pseudocliff_core::absring::{AbsElement, AbsRing, Polynomial};
use pseudocliff_core::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }

    /// Moves a column-only error found inside a larger line.
    pub fn at_line(mut self, line: usize, column_offset: usize) -> ParseError {
        self.line = line;
        self.column += column_offset;
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Which identifiers are variables, and their indices.
#[derive(Debug, Clone)]
pub enum Variables<'a> {
    /// `x0 … x{n-1}`.
    Indexed(usize),
    Named(&'a [&'a str]),
}

impl Variables<'_> {
    pub fn len(&self) -> usize {
        match self {
            Variables::Indexed(n) => *n,
            Variables::Named(names) => names.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn lookup(&self, name: &str) -> Option<usize> {
        match self {
            Variables::Indexed(n) => name
                .strip_prefix('x')
                .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
                .and_then(|d| d.parse().ok())
                .filter(|i| i < n),
            Variables::Named(names) => names.iter().position(|v| *v == name),
        }
    }
}

#[derive(Debug, Clone)]
enum Expr {
    Num(Rational),
    Var(usize),
    Abs { var: usize, column: usize },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
}

struct Parser<'s, 'v> {
    src: &'s str,
    pos: usize,
    vars: &'v Variables<'v>,
}

impl Parser<'_, '_> {
    fn error(&self, at: usize, message: impl Into<String>) -> ParseError {
        ParseError::new(1, at + 1, message)
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(self.pos, format!("expected `{c}`")))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while self.eat('*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn ident(&mut self) -> &str {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_' || c == '\'') {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.factor()?)))
            }
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().parse().expect("nonempty digit run");
                let den = if self.peek() == Some('/') {
                    self.pos += 1;
                    let d = self.digits();
                    if d.is_empty() {
                        return Err(self.error(self.pos, "expected a denominator"));
                    }
                    d.parse::<BigInt>().expect("nonempty digit run")
                } else {
                    BigInt::from(1)
                };
                if den == BigInt::from(0) {
                    return Err(self.error(start, "zero denominator"));
                }
                Ok(Expr::Num(Rational::new(num, den)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let name = self.ident().to_string();
                if name == "abs" && self.eat('(') {
                    self.skip_ws();
                    let at = self.pos;
                    let inner = self.ident().to_string();
                    let var = self
                        .vars
                        .lookup(&inner)
                        .ok_or_else(|| self.error(at, format!("abs() takes a single variable, found `{inner}`")))?;
                    self.expect(')')?;
                    return Ok(Expr::Abs { var, column: start + 1 });
                }
                self.vars
                    .lookup(&name)
                    .map(Expr::Var)
                    .ok_or_else(|| self.error(start, format!("unknown variable `{name}`")))
            }
            Some(c) => Err(self.error(start, format!("unexpected `{c}`"))),
            None => Err(self.error(start, "unexpected end of input")),
        }
    }
}

fn parse_expr(src: &str, vars: &Variables<'_>) -> Result<Expr, ParseError> {
    let mut p = Parser { src, pos: 0, vars };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < src.len() {
        return Err(p.error(p.pos, format!("unexpected `{}`", p.peek().unwrap_or(' '))));
    }
    Ok(e)
}

/// First abs variable used, and the position of any second, different one.
fn abs_vars(e: &Expr, found: &mut Option<usize>) -> Result<(), ParseError> {
    match e {
        Expr::Abs { var, column } => match found {
            Some(k) if k != var => Err(ParseError::new(
                1,
                *column,
                format!("only one abs variable per expression (already using x{k})"),
            )),
            _ => {
                *found = Some(*var);
                Ok(())
            }
        },
        Expr::Neg(a) => abs_vars(a, found),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
            abs_vars(a, found)?;
            abs_vars(b, found)
        }
        Expr::Num(_) | Expr::Var(_) => Ok(()),
    }
}

fn eval_poly(e: &Expr, n: usize) -> Polynomial {
    match e {
        Expr::Num(c) => Polynomial::constant(n, c.clone()),
        Expr::Var(i) => Polynomial::var(n, *i),
        Expr::Abs { .. } => unreachable!("checked before evaluation"),
        Expr::Neg(a) => -&eval_poly(a, n),
        Expr::Add(a, b) => &eval_poly(a, n) + &eval_poly(b, n),
        Expr::Sub(a, b) => &eval_poly(a, n) - &eval_poly(b, n),
        Expr::Mul(a, b) => &eval_poly(a, n) * &eval_poly(b, n),
    }
}

fn eval_abs(e: &Expr, ring: &AbsRing) -> AbsElement {
    let mixed = "operands share the ring";
    match e {
        Expr::Num(c) => ring.constant(c.clone()),
        Expr::Var(i) => ring.var(*i),
        Expr::Abs { .. } => ring.abs_generator(),
        Expr::Neg(a) => eval_abs(a, ring).neg(),
        Expr::Add(a, b) => eval_abs(a, ring).add(&eval_abs(b, ring)).expect(mixed),
        Expr::Sub(a, b) => eval_abs(a, ring).sub(&eval_abs(b, ring)).expect(mixed),
        Expr::Mul(a, b) => eval_abs(a, ring).mul(&eval_abs(b, ring)).expect(mixed),
    }
}

/// Parses a polynomial; `abs(...)` is rejected.
pub fn parse_polynomial(src: &str, vars: &Variables<'_>) -> Result<Polynomial, ParseError> {
    let e = parse_expr(src, vars)?;
    let mut found = None;
    abs_vars(&e, &mut found)?;
    if found.is_some() {
        let col = src.find("abs").map_or(1, |c| c + 1);
        return Err(ParseError::new(1, col, "abs() is not allowed here"));
    }
    Ok(eval_poly(&e, vars.len()))
}

/// Parses an element of `ring`; any `abs(xk)` must use the ring's variable.
pub fn parse_abs(src: &str, ring: &AbsRing) -> Result<AbsElement, ParseError> {
    let e = parse_expr(src, &Variables::Indexed(ring.num_vars()))?;
    let mut found = Some(ring.abs_var());
    abs_vars(&e, &mut found)?;
    Ok(eval_abs(&e, ring))
}

/// The abs variable an expression over `x0 … x{n-1}` uses, if any.
pub fn abs_variable(src: &str, num_vars: usize) -> Result<Option<usize>, ParseError> {
    let e = parse_expr(src, &Variables::Indexed(num_vars))?;
    let mut found = None;
    abs_vars(&e, &mut found)?;
    Ok(found)
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(src: &str) -> Result<Rational, ParseError> {
    let e = parse_expr(src.trim(), &Variables::Indexed(0))?;
    let p = eval_poly(&e, 0);
    Ok(p.as_constant().expect("no variables"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use pseudocliff_core::rational::{frac, int};

    fn poly(s: &str, n: usize) -> Polynomial {
        parse_polynomial(s, &Variables::Indexed(n)).unwrap()
    }

    #[test]
    fn polynomial_arithmetic() {
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let expected = &(&(&x * &x) - &y.scale(&frac(1, 2))) + &Polynomial::one(2);
        assert_eq!(poly("x0*x0 - 1/2*x1 + 1", 2), expected);
        assert_eq!(poly("(x0 + x1)*(x0 - x1)", 2), &(&x * &x) - &(&y * &y));
        assert_eq!(poly("-(-3)", 0).as_constant(), Some(int(3)));
    }

    #[test]
    fn printer_round_trip() {
        for s in ["x0*x0*x1 - 3/4*x1 + 2", "-x0 + 1", "0", "7/3*x0*x1*x1"] {
            let p = poly(s, 2);
            assert_eq!(poly(&p.to_string(), 2), p);
        }
        let ring = AbsRing::new(2, 1).unwrap();
        let a = parse_abs("x0 + 2*x0*abs(x1) - abs(x1)*abs(x1)", &ring).unwrap();
        assert_eq!(parse_abs(&a.to_string(), &ring).unwrap(), a);
        assert!(!a.is_smooth());
    }

    #[test]
    fn abs_squares_to_polynomial() {
        let ring = AbsRing::new(1, 0).unwrap();
        let a = parse_abs("abs(x0)*abs(x0)", &ring).unwrap();
        assert!(a.is_smooth());
        assert_eq!(a.smooth_part(), &poly("x0*x0", 1));
    }

    #[test]
    fn named_variables() {
        let names = ["u0'", "u0''", "z1"];
        let p = parse_polynomial("u0'*u0'' - 2*z1", &Variables::Named(&names)).unwrap();
        assert_eq!(p.coefficient(&[1, 1, 0]), int(1));
        assert_eq!(p.coefficient(&[0, 0, 1]), int(-2));
    }

    #[test]
    fn errors_carry_columns() {
        let err = parse_polynomial("x0 + y", &Variables::Indexed(1)).unwrap_err();
        assert_eq!((err.line, err.column), (1, 6));
        let err = parse_polynomial("x0 + ", &Variables::Indexed(1)).unwrap_err();
        assert!(err.message.contains("end of input"));
        let err = parse_polynomial("abs(x0)", &Variables::Indexed(1)).unwrap_err();
        assert!(err.message.contains("abs"));
        let err = parse_polynomial("1/0", &Variables::Indexed(0)).unwrap_err();
        assert_eq!(err.message, "zero denominator");
        let err = abs_variable("abs(x0) + abs(x1)", 2).unwrap_err();
        assert_eq!(err.column, 11);
        assert_eq!(abs_variable("x1*abs(x1)", 2).unwrap(), Some(1));
        assert!(parse_polynomial("x0 x0", &Variables::Indexed(1)).is_err());
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational(" -3/6 ").unwrap(), frac(-1, 2));
        assert!(parse_rational("x0").is_err());
    }
}
