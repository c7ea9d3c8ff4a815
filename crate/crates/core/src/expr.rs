//! Arithmetic expressions over the index variables `n` and `j`.
//!
//! Grammar (standard precedence, `^` over `*` `/` over `+` `-`; binary
//! `+ - * /` associate left, `^` associates right, unary minus binds looser
//! than `^`):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' unary)?
//! atom   := INT | 'n' | 'j' | '(' expr ')'
//! ```
//!
//! Evaluation happens in the realization of the surrounding problem: exact
//! rational division for rational scalars, IEEE semantics for float scalars.
//! An exponent must evaluate to a nonnegative integer. Fractions are written
//! with the division operator (`1/2`), which is exact under the rational
//! realization.

use std::fmt;

use num::traits::{Pow, Signed, ToPrimitive, Zero};
use num::{BigInt, BigRational};

use crate::error::{Error, Result};
use crate::scalar::{Realization, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    N,
    J,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Var::N => "n",
            Var::J => "j",
        })
    }
}

/// Which variables an expression may reference. Forcing expressions see only
/// `n`; coefficient expressions see `n` and `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarSet {
    NOnly,
    NAndJ,
}

impl VarSet {
    fn allows(self, var: Var) -> bool {
        match self {
            VarSet::NOnly => var == Var::N,
            VarSet::NAndJ => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Var(Var),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

pub fn parse(text: &str, vars: VarSet) -> std::result::Result<Expr, ParseError> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars,
    };
    let expr = parser.expr()?;
    parser.skip_ws();
    if parser.pos != parser.src.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(expr)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: VarSet,
}

impl<'a> Parser<'a> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> std::result::Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> std::result::Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(b'*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat(b'/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> std::result::Result<Expr, ParseError> {
        if self.eat(b'-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> std::result::Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            Ok(Expr::Pow(Box::new(base), Box::new(self.unary()?)))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> std::result::Result<Expr, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(b) if b.is_ascii_digit() => {
                let start = self.pos;
                while self.src.get(self.pos).is_some_and(|b| b.is_ascii_digit()) {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(Expr::Int(digits.parse().unwrap()))
            }
            Some(b @ (b'n' | b'j')) => {
                let after = self.src.get(self.pos + 1);
                if after.is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_') {
                    return Err(self.error("unknown identifier"));
                }
                let var = if b == b'n' { Var::N } else { Var::J };
                if !self.vars.allows(var) {
                    return Err(self.error(format!("variable {var} is not allowed here")));
                }
                self.pos += 1;
                Ok(Expr::Var(var))
            }
            Some(b) => Err(self.error(format!("unexpected character '{}'", b as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

impl Expr {
    pub fn uses_j(&self) -> bool {
        match self {
            Expr::Int(_) => false,
            Expr::Var(v) => *v == Var::J,
            Expr::Neg(e) => e.uses_j(),
            Expr::Add(a, b)
            | Expr::Sub(a, b)
            | Expr::Mul(a, b)
            | Expr::Div(a, b)
            | Expr::Pow(a, b) => a.uses_j() || b.uses_j(),
        }
    }

    /// Evaluate at the point `(n, j)` in the given realization.
    pub fn eval(&self, n: u32, j: Option<u32>, realization: Realization) -> Result<Scalar> {
        match realization {
            Realization::Rational => self.eval_rational(n, j).map(Scalar::Rational),
            Realization::Float => self.eval_float(n, j).map(Scalar::Float),
            Realization::Symbolic => Err(Error::Domain(
                "expressions evaluate to numeric scalars only".into(),
            )),
        }
    }

    fn eval_rational(&self, n: u32, j: Option<u32>) -> Result<BigRational> {
        match self {
            Expr::Int(v) => Ok(BigRational::from_integer(v.clone())),
            Expr::Var(Var::N) => Ok(BigRational::from_integer(n.into())),
            Expr::Var(Var::J) => match j {
                Some(j) => Ok(BigRational::from_integer(j.into())),
                None => Err(Error::Domain("variable j has no value here".into())),
            },
            Expr::Neg(e) => Ok(-e.eval_rational(n, j)?),
            Expr::Add(a, b) => Ok(a.eval_rational(n, j)? + b.eval_rational(n, j)?),
            Expr::Sub(a, b) => Ok(a.eval_rational(n, j)? - b.eval_rational(n, j)?),
            Expr::Mul(a, b) => Ok(a.eval_rational(n, j)? * b.eval_rational(n, j)?),
            Expr::Div(a, b) => {
                let denom = b.eval_rational(n, j)?;
                if denom.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(a.eval_rational(n, j)? / denom)
            }
            Expr::Pow(a, b) => {
                let exponent = b.eval_rational(n, j)?;
                if !exponent.is_integer() || exponent.is_negative() {
                    return Err(Error::BadExponent(exponent.to_string()));
                }
                let exponent = exponent
                    .to_integer()
                    .to_u32()
                    .ok_or_else(|| Error::BadExponent(exponent.to_string()))?;
                Ok(a.eval_rational(n, j)?.pow(exponent))
            }
        }
    }

    fn eval_float(&self, n: u32, j: Option<u32>) -> Result<f64> {
        match self {
            Expr::Int(v) => Ok(v.to_f64().unwrap_or(f64::INFINITY)),
            Expr::Var(Var::N) => Ok(n as f64),
            Expr::Var(Var::J) => match j {
                Some(j) => Ok(j as f64),
                None => Err(Error::Domain("variable j has no value here".into())),
            },
            Expr::Neg(e) => Ok(-e.eval_float(n, j)?),
            Expr::Add(a, b) => Ok(a.eval_float(n, j)? + b.eval_float(n, j)?),
            Expr::Sub(a, b) => Ok(a.eval_float(n, j)? - b.eval_float(n, j)?),
            Expr::Mul(a, b) => Ok(a.eval_float(n, j)? * b.eval_float(n, j)?),
            Expr::Div(a, b) => {
                let denom = b.eval_float(n, j)?;
                if denom == 0.0 {
                    return Err(Error::DivisionByZero);
                }
                Ok(a.eval_float(n, j)? / denom)
            }
            Expr::Pow(a, b) => {
                let exponent = b.eval_float(n, j)?;
                if exponent < 0.0 || exponent.fract() != 0.0 || !exponent.is_finite() {
                    return Err(Error::BadExponent(exponent.to_string()));
                }
                Ok(a.eval_float(n, j)?.powf(exponent))
            }
        }
    }
}

/// Fully parenthesized form; parsing it back yields the identical tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(v) => write!(f, "{v}"),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Neg(e) => write!(f, "(-{e})"),
            Expr::Add(a, b) => write!(f, "({a}+{b})"),
            Expr::Sub(a, b) => write!(f, "({a}-{b})"),
            Expr::Mul(a, b) => write!(f, "({a}*{b})"),
            Expr::Div(a, b) => write!(f, "({a}/{b})"),
            Expr::Pow(a, b) => write!(f, "({a}^{b})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::traits::One;
    use proptest::prelude::*;

    fn parse_nj(text: &str) -> Expr {
        parse(text, VarSet::NAndJ).unwrap()
    }

    /// Independent reference evaluator: compiles the tree to postfix and
    /// runs a stack machine, sharing no code with `eval_rational`.
    fn eval_postfix(expr: &Expr, n: u32, j: Option<u32>) -> Result<BigRational> {
        enum Op<'e> {
            Push(&'e Expr),
            Neg,
            Add,
            Sub,
            Mul,
            Div,
            Pow,
        }
        let mut schedule = Vec::new();
        fn flatten<'e>(e: &'e Expr, out: &mut Vec<Op<'e>>) {
            match e {
                Expr::Int(_) | Expr::Var(_) => out.push(Op::Push(e)),
                Expr::Neg(a) => {
                    flatten(a, out);
                    out.push(Op::Neg);
                }
                Expr::Add(a, b) => {
                    flatten(a, out);
                    flatten(b, out);
                    out.push(Op::Add);
                }
                Expr::Sub(a, b) => {
                    flatten(a, out);
                    flatten(b, out);
                    out.push(Op::Sub);
                }
                Expr::Mul(a, b) => {
                    flatten(a, out);
                    flatten(b, out);
                    out.push(Op::Mul);
                }
                Expr::Div(a, b) => {
                    flatten(a, out);
                    flatten(b, out);
                    out.push(Op::Div);
                }
                Expr::Pow(a, b) => {
                    flatten(a, out);
                    flatten(b, out);
                    out.push(Op::Pow);
                }
            }
        }
        flatten(expr, &mut schedule);
        let mut stack: Vec<BigRational> = Vec::new();
        for op in schedule {
            match op {
                Op::Push(Expr::Int(v)) => stack.push(BigRational::from_integer(v.clone())),
                Op::Push(Expr::Var(Var::N)) => stack.push(BigRational::from_integer(n.into())),
                Op::Push(Expr::Var(Var::J)) => match j {
                    Some(j) => stack.push(BigRational::from_integer(j.into())),
                    None => return Err(Error::Domain("variable j has no value here".into())),
                },
                Op::Push(_) => unreachable!(),
                Op::Neg => {
                    let a = stack.pop().unwrap();
                    stack.push(-a);
                }
                Op::Add | Op::Sub | Op::Mul | Op::Div | Op::Pow => {
                    let b = stack.pop().unwrap();
                    let a = stack.pop().unwrap();
                    match op {
                        Op::Add => stack.push(a + b),
                        Op::Sub => stack.push(a - b),
                        Op::Mul => stack.push(a * b),
                        Op::Div => {
                            if b.is_zero() {
                                return Err(Error::DivisionByZero);
                            }
                            stack.push(a / b);
                        }
                        Op::Pow => {
                            if !b.is_integer() || b.is_negative() {
                                return Err(Error::BadExponent(b.to_string()));
                            }
                            let e = b
                                .to_integer()
                                .to_u32()
                                .ok_or_else(|| Error::BadExponent(b.to_string()))?;
                            let mut acc = BigRational::one();
                            for _ in 0..e {
                                acc *= &a;
                            }
                            stack.push(acc);
                        }
                        _ => unreachable!(),
                    }
                }
            }
        }
        Ok(stack.pop().unwrap())
    }

    #[test]
    fn evaluates_at_a_point() {
        let e = parse_nj("n - j");
        assert_eq!(e.eval(4, Some(1), Realization::Rational).unwrap(), Scalar::rational(3, 1));
    }

    #[test]
    fn power_binds_tighter_than_division() {
        let e = parse_nj("1/2^n");
        assert_eq!(e.eval(2, None, Realization::Rational).unwrap(), Scalar::rational(1, 4));
        assert_eq!(e.eval(3, None, Realization::Rational).unwrap(), Scalar::rational(1, 8));
        // Discriminating case: 4/(2^2) = 1, while (4/2)^2 would be 4.
        let e = parse_nj("4/2^2");
        assert_eq!(e.eval(1, None, Realization::Rational).unwrap(), Scalar::rational(1, 1));
    }

    #[test]
    fn reports_offset_of_syntax_errors() {
        let err = parse("n*(j", VarSet::NAndJ).unwrap_err();
        assert_eq!(err.offset, 4);
        let err = parse("n +", VarSet::NAndJ).unwrap_err();
        assert_eq!(err.offset, 3);
    }

    #[test]
    fn rejects_j_in_n_only_context() {
        let err = parse("n + 2*j", VarSet::NOnly).unwrap_err();
        assert_eq!(err.offset, 6);
        assert!(err.message.contains('j'));
    }

    #[test]
    fn associativity_and_precedence() {
        let e = parse_nj("2-3-4");
        assert_eq!(e.eval(1, None, Realization::Rational).unwrap(), Scalar::rational(-5, 1));
        let e = parse_nj("2^3^2");
        assert_eq!(e.eval(1, None, Realization::Rational).unwrap(), Scalar::rational(512, 1));
        let e = parse_nj("-2^2");
        assert_eq!(e.eval(1, None, Realization::Rational).unwrap(), Scalar::rational(-4, 1));
        let e = parse_nj("2+3*4");
        assert_eq!(e.eval(1, None, Realization::Rational).unwrap(), Scalar::rational(14, 1));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let e = parse_nj("1/(n-4)");
        assert_eq!(e.eval(4, None, Realization::Rational).unwrap_err(), Error::DivisionByZero);
        assert!(e.eval(5, None, Realization::Rational).is_ok());
        assert_eq!(e.eval(4, None, Realization::Float).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn exponent_must_be_a_nonnegative_integer() {
        let e = parse_nj("2^(1/2)");
        assert!(matches!(e.eval(1, None, Realization::Rational).unwrap_err(), Error::BadExponent(_)));
        let e = parse_nj("2^(0-1)");
        assert!(matches!(e.eval(1, None, Realization::Rational).unwrap_err(), Error::BadExponent(_)));
        let e = parse_nj("2^-1");
        assert!(matches!(e.eval(1, None, Realization::Rational).unwrap_err(), Error::BadExponent(_)));
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            (0i64..=40).prop_map(|v| Expr::Int(v.into())),
            Just(Expr::Var(Var::N)),
            Just(Expr::Var(Var::J)),
        ];
        leaf.prop_recursive(5, 48, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Expr::Div(Box::new(a), Box::new(b))),
                (inner, 0u8..=3).prop_map(|(a, e)| Expr::Pow(
                    Box::new(a),
                    Box::new(Expr::Int(e.into()))
                )),
            ]
        })
    }

    proptest! {
        #[test]
        fn rendering_round_trips(e in arb_expr()) {
            let text = e.to_string();
            prop_assert_eq!(parse_nj(&text), e);
        }

        #[test]
        fn tree_walk_agrees_with_stack_machine(e in arb_expr(), n in 1u32..=30, j in 0u32..=29) {
            let walked = e.eval_rational(n, Some(j));
            let stacked = eval_postfix(&e, n, Some(j));
            prop_assert_eq!(walked, stacked);
        }
    }
}
