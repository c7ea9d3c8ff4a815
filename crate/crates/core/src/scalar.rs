//! The scalar ring shared by every evaluator.
//!
//! A [`Scalar`] is one of three realizations: exact arbitrary-precision
//! rationals, IEEE binary64 floats, or sparse symbolic polynomials. A value
//! carries its realization at runtime and mixing realizations in one
//! operation is an error, never a coercion, so exact-equality tests stay
//! meaningful. The float realization exists for benchmarks; identity suites
//! use the exact realizations only.

use std::fmt;

use num::traits::{One, Zero};
use num::BigRational;

use crate::counter;
use crate::error::{Error, Result};
use crate::poly::{fmt_big_rational, Symbol, SymbolicPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Realization {
    Rational,
    Float,
    Symbolic,
}

impl fmt::Display for Realization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Realization::Rational => "rational",
            Realization::Float => "float",
            Realization::Symbolic => "symbolic",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Rational(BigRational),
    Float(f64),
    Symbolic(SymbolicPoly),
}

impl Scalar {
    pub fn realization(&self) -> Realization {
        match self {
            Scalar::Rational(_) => Realization::Rational,
            Scalar::Float(_) => Realization::Float,
            Scalar::Symbolic(_) => Realization::Symbolic,
        }
    }

    pub fn zero(realization: Realization) -> Scalar {
        match realization {
            Realization::Rational => Scalar::Rational(BigRational::zero()),
            Realization::Float => Scalar::Float(0.0),
            Realization::Symbolic => Scalar::Symbolic(SymbolicPoly::zero()),
        }
    }

    pub fn one(realization: Realization) -> Scalar {
        match realization {
            Realization::Rational => Scalar::Rational(BigRational::one()),
            Realization::Float => Scalar::Float(1.0),
            Realization::Symbolic => Scalar::Symbolic(SymbolicPoly::one()),
        }
    }

    pub fn from_int(value: i64, realization: Realization) -> Scalar {
        match realization {
            Realization::Rational => Scalar::Rational(BigRational::from_integer(value.into())),
            Realization::Float => Scalar::Float(value as f64),
            Realization::Symbolic => {
                Scalar::Symbolic(SymbolicPoly::constant(BigRational::from_integer(value.into())))
            }
        }
    }

    /// Exact rational `p/q`; `q` must be nonzero.
    pub fn rational(p: i64, q: i64) -> Scalar {
        Scalar::Rational(BigRational::new(p.into(), q.into()))
    }

    pub fn symbol(s: Symbol) -> Scalar {
        Scalar::Symbolic(SymbolicPoly::symbol(s))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Float(x) => *x == 0.0,
            Scalar::Symbolic(p) => p.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Float(x) => *x == 1.0,
            Scalar::Symbolic(p) => p.is_one(),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_float(&self) -> Option<f64> {
        match self {
            Scalar::Float(x) => Some(*x),
            _ => None,
        }
    }

    pub fn as_poly(&self) -> Option<&SymbolicPoly> {
        match self {
            Scalar::Symbolic(p) => Some(p),
            _ => None,
        }
    }

    fn mismatch(&self, rhs: &Scalar) -> Error {
        Error::RealizationMismatch {
            lhs: self.realization(),
            rhs: rhs.realization(),
        }
    }

    // Exact realizations take 0/1 shortcuts (ring identities, so the result
    // is unchanged); the float path never does, to preserve IEEE semantics.

    pub fn add(&self, rhs: &Scalar) -> Result<Scalar> {
        counter::bump();
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(if a.is_zero() {
                rhs.clone()
            } else if b.is_zero() {
                self.clone()
            } else {
                Scalar::Rational(a + b)
            }),
            (Scalar::Float(a), Scalar::Float(b)) => Ok(Scalar::Float(a + b)),
            (Scalar::Symbolic(a), Scalar::Symbolic(b)) => Ok(if a.is_zero() {
                rhs.clone()
            } else if b.is_zero() {
                self.clone()
            } else {
                Scalar::Symbolic(a.add(b))
            }),
            _ => Err(self.mismatch(rhs)),
        }
    }

    pub fn sub(&self, rhs: &Scalar) -> Result<Scalar> {
        counter::bump();
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(if b.is_zero() {
                self.clone()
            } else {
                Scalar::Rational(a - b)
            }),
            (Scalar::Float(a), Scalar::Float(b)) => Ok(Scalar::Float(a - b)),
            (Scalar::Symbolic(a), Scalar::Symbolic(b)) => Ok(if b.is_zero() {
                self.clone()
            } else {
                Scalar::Symbolic(a.add(&b.neg()))
            }),
            _ => Err(self.mismatch(rhs)),
        }
    }

    pub fn mul(&self, rhs: &Scalar) -> Result<Scalar> {
        counter::bump();
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(if a.is_zero() || b.is_zero() {
                Scalar::Rational(BigRational::zero())
            } else if a.is_one() {
                rhs.clone()
            } else if b.is_one() {
                self.clone()
            } else {
                Scalar::Rational(a * b)
            }),
            (Scalar::Float(a), Scalar::Float(b)) => Ok(Scalar::Float(a * b)),
            (Scalar::Symbolic(a), Scalar::Symbolic(b)) => Ok(if a.is_zero() || b.is_zero() {
                Scalar::Symbolic(SymbolicPoly::zero())
            } else if a.is_one() {
                rhs.clone()
            } else if b.is_one() {
                self.clone()
            } else {
                Scalar::Symbolic(a.mul(b))
            }),
            _ => Err(self.mismatch(rhs)),
        }
    }

    pub fn neg(&self) -> Scalar {
        counter::bump();
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Float(x) => Scalar::Float(-x),
            Scalar::Symbolic(p) => Scalar::Symbolic(p.neg()),
        }
    }

    /// Relative/absolute closeness for the float realization; exact equality
    /// for the others.
    pub fn approx_eq(&self, rhs: &Scalar, tol: f64) -> bool {
        match (self, rhs) {
            (Scalar::Float(a), Scalar::Float(b)) => {
                let diff = (a - b).abs();
                diff <= tol || diff <= tol * b.abs().max(a.abs())
            }
            _ => self == rhs,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => f.write_str(&fmt_big_rational(r)),
            Scalar::Float(x) => write!(f, "{x}"),
            Scalar::Symbolic(p) => write!(f, "{p}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counter::{reset_scalar_ops, scalar_ops};

    #[test]
    fn rational_arithmetic_is_exact() {
        let sum = Scalar::rational(1, 2).add(&Scalar::rational(1, 3)).unwrap();
        assert_eq!(sum, Scalar::rational(5, 6));
        assert_eq!(sum.to_string(), "5/6");
    }

    #[test]
    fn symbolic_additive_identity() {
        let x = Scalar::symbol(Symbol::a(3, 1));
        let zero = Scalar::zero(Realization::Symbolic);
        assert_eq!(x.add(&zero).unwrap(), x);
    }

    #[test]
    fn mixed_realizations_are_rejected() {
        let err = Scalar::rational(1, 2).add(&Scalar::Float(0.5)).unwrap_err();
        assert_eq!(
            err,
            Error::RealizationMismatch {
                lhs: Realization::Rational,
                rhs: Realization::Float,
            }
        );
        assert!(Scalar::Float(1.0).mul(&Scalar::symbol(Symbol::W0)).is_err());
    }

    #[test]
    fn operations_bump_the_counter() {
        reset_scalar_ops();
        let a = Scalar::rational(2, 1);
        let b = a.add(&a).unwrap();
        let _ = b.mul(&a).unwrap();
        let _ = b.neg();
        assert_eq!(scalar_ops(), 3);
    }

    #[test]
    fn display_forms() {
        assert_eq!(Scalar::rational(4, 2).to_string(), "2");
        assert_eq!(Scalar::Float(0.5).to_string(), "0.5");
        assert_eq!(Scalar::symbol(Symbol::c(3)).to_string(), "c[3]");
    }
}
