//! JSON problem descriptions.
//!
//! ```json
//! {
//!   "w0": 1,
//!   "coefficients": {"kind": "expr", "expr": "1/n"},
//!   "forcing": {"kind": "table", "table": [[1, "2/3"], [4, 5]]},
//!   "horizon": 6,
//!   "scalar": "rational"
//! }
//! ```
//!
//! Exact values are integers or fraction strings `"p/q"`; under the float
//! scalar plain JSON numbers are read as binary64. The symbolic scalar
//! requires symbolic (or zero) sources and accepts the marker string
//! `"w0"` as the initial value. Validation errors name the offending
//! field.

use std::collections::BTreeSet;

use chainrec_core::expr::{parse, VarSet};
use chainrec_core::{
    CoefficientSource, ForcingSource, Problem, Realization, Scalar, Symbol, SymbolicPoly,
};
use num::traits::{ToPrimitive, Zero};
use num::{BigInt, BigRational};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ScalarKind {
    Rational,
    Float,
    Symbolic,
}

impl ScalarKind {
    pub fn realization(self) -> Realization {
        match self {
            ScalarKind::Rational => Realization::Rational,
            ScalarKind::Float => Realization::Float,
            ScalarKind::Symbolic => Realization::Symbolic,
        }
    }

    fn name(self) -> &'static str {
        match self {
            ScalarKind::Rational => "rational",
            ScalarKind::Float => "float",
            ScalarKind::Symbolic => "symbolic",
        }
    }
}

/// A table or `w0` value as it appears in JSON: a number or a string.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonScalar {
    Number(serde_json::Number),
    Text(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoeffKind {
    Table,
    Expr,
    Symbolic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ForcingKind {
    Table,
    Expr,
    Symbolic,
    Zero,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientsSpec {
    pub kind: CoeffKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<(u32, u32, JsonScalar)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expr: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ForcingSpec {
    pub kind: ForcingKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<(u32, JsonScalar)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expr: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub w0: JsonScalar,
    pub coefficients: CoefficientsSpec,
    pub forcing: ForcingSpec,
    pub horizon: u32,
    pub scalar: ScalarKind,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{path}: {message}")]
pub struct SpecError {
    pub path: String,
    pub message: String,
}

fn err<T>(path: impl Into<String>, message: impl Into<String>) -> Result<T, SpecError> {
    Err(SpecError {
        path: path.into(),
        message: message.into(),
    })
}

pub fn parse_spec(bytes: &[u8]) -> Result<ProblemSpec, SpecError> {
    serde_json::from_slice(bytes).map_err(|e| SpecError {
        path: "$".into(),
        message: e.to_string(),
    })
}

fn parse_fraction(text: &str, path: &str) -> Result<BigRational, SpecError> {
    let (p, q) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text.trim(), "1"),
    };
    let p: BigInt = match p.parse() {
        Ok(v) => v,
        Err(_) => return err(path, format!("cannot parse \"{text}\" as an integer or \"p/q\"")),
    };
    let q: BigInt = match q.parse() {
        Ok(v) => v,
        Err(_) => return err(path, format!("cannot parse \"{text}\" as an integer or \"p/q\"")),
    };
    if q.is_zero() {
        return err(path, "fraction denominator must be nonzero");
    }
    Ok(BigRational::new(p, q))
}

fn parse_value(value: &JsonScalar, kind: ScalarKind, path: &str) -> Result<Scalar, SpecError> {
    match kind {
        ScalarKind::Rational | ScalarKind::Symbolic => {
            let rational = match value {
                JsonScalar::Number(number) => {
                    if let Some(v) = number.as_i64() {
                        BigRational::from_integer(v.into())
                    } else if let Some(v) = number.as_u64() {
                        BigRational::from_integer(v.into())
                    } else {
                        return err(
                            path,
                            format!("exact values are integers or \"p/q\" strings, got {number}"),
                        );
                    }
                }
                JsonScalar::Text(text) => parse_fraction(text, path)?,
            };
            Ok(match kind {
                ScalarKind::Rational => Scalar::Rational(rational),
                _ => Scalar::Symbolic(SymbolicPoly::constant(rational)),
            })
        }
        ScalarKind::Float => match value {
            JsonScalar::Number(number) => match number.as_f64() {
                Some(v) => Ok(Scalar::Float(v)),
                None => err(path, format!("{number} does not fit a binary64 float")),
            },
            JsonScalar::Text(text) => {
                let rational = parse_fraction(text, path)?;
                match rational.to_f64() {
                    Some(v) => Ok(Scalar::Float(v)),
                    None => err(path, format!("\"{text}\" overflows a binary64 float")),
                }
            }
        },
    }
}

impl ProblemSpec {
    /// Validate and build, optionally overriding the declared scalar kind.
    pub fn to_problem(&self, scalar_override: Option<ScalarKind>) -> Result<Problem, SpecError> {
        let kind = scalar_override.unwrap_or(self.scalar);
        let realization = kind.realization();

        if kind == ScalarKind::Symbolic {
            if self.coefficients.kind != CoeffKind::Symbolic {
                return err(
                    "coefficients.kind",
                    "scalar \"symbolic\" requires symbolic coefficients",
                );
            }
            if !matches!(self.forcing.kind, ForcingKind::Symbolic | ForcingKind::Zero) {
                return err(
                    "forcing.kind",
                    "scalar \"symbolic\" requires symbolic or zero forcing",
                );
            }
        } else {
            if self.coefficients.kind == CoeffKind::Symbolic {
                return err(
                    "coefficients.kind",
                    format!("symbolic coefficients conflict with scalar \"{}\"", kind.name()),
                );
            }
            if self.forcing.kind == ForcingKind::Symbolic {
                return err(
                    "forcing.kind",
                    format!("symbolic forcing conflicts with scalar \"{}\"", kind.name()),
                );
            }
            if matches!(&self.w0, JsonScalar::Text(t) if t == "w0") {
                return err(
                    "w0",
                    format!("the symbolic marker \"w0\" conflicts with scalar \"{}\"", kind.name()),
                );
            }
        }

        let coefficients = self.build_coefficients(kind, realization)?;
        let forcing = self.build_forcing(kind, realization)?;
        let w0 = match &self.w0 {
            JsonScalar::Text(t) if t == "w0" => Scalar::symbol(Symbol::W0),
            other => parse_value(other, kind, "w0")?,
        };

        Problem::new(w0, coefficients, forcing, self.horizon).map_err(|e| SpecError {
            path: "$".into(),
            message: e.to_string(),
        })
    }

    fn build_coefficients(
        &self,
        kind: ScalarKind,
        realization: Realization,
    ) -> Result<CoefficientSource, SpecError> {
        let spec = &self.coefficients;
        match spec.kind {
            CoeffKind::Table => {
                if spec.expr.is_some() {
                    return err("coefficients.expr", "not allowed for kind \"table\"");
                }
                let Some(table) = &spec.table else {
                    return err("coefficients.table", "required for kind \"table\"");
                };
                let mut seen = BTreeSet::new();
                let mut entries = Vec::with_capacity(table.len());
                for (i, (n, j, value)) in table.iter().enumerate() {
                    let path = format!("coefficients.table[{i}]");
                    if *n < 1 || j >= n {
                        return err(path, format!("index ({n}, {j}) violates 0 <= j < n, n >= 1"));
                    }
                    if !seen.insert((*n, *j)) {
                        return err(path, format!("duplicate index ({n}, {j})"));
                    }
                    entries.push(((*n, *j), parse_value(value, kind, &path)?));
                }
                CoefficientSource::table(entries, realization).map_err(|e| SpecError {
                    path: "coefficients.table".into(),
                    message: e.to_string(),
                })
            }
            CoeffKind::Expr => {
                if spec.table.is_some() {
                    return err("coefficients.table", "not allowed for kind \"expr\"");
                }
                let Some(text) = &spec.expr else {
                    return err("coefficients.expr", "required for kind \"expr\"");
                };
                let expr = parse(text, VarSet::NAndJ).map_err(|e| SpecError {
                    path: "coefficients.expr".into(),
                    message: e.to_string(),
                })?;
                CoefficientSource::expression(expr, realization).map_err(|e| SpecError {
                    path: "coefficients.expr".into(),
                    message: e.to_string(),
                })
            }
            CoeffKind::Symbolic => {
                if spec.table.is_some() || spec.expr.is_some() {
                    return err("coefficients", "kind \"symbolic\" takes no table or expr");
                }
                Ok(CoefficientSource::generic())
            }
        }
    }

    fn build_forcing(
        &self,
        kind: ScalarKind,
        realization: Realization,
    ) -> Result<ForcingSource, SpecError> {
        let spec = &self.forcing;
        match spec.kind {
            ForcingKind::Table => {
                if spec.expr.is_some() {
                    return err("forcing.expr", "not allowed for kind \"table\"");
                }
                let Some(table) = &spec.table else {
                    return err("forcing.table", "required for kind \"table\"");
                };
                let mut seen = BTreeSet::new();
                let mut entries = Vec::with_capacity(table.len());
                for (i, (n, value)) in table.iter().enumerate() {
                    let path = format!("forcing.table[{i}]");
                    if *n < 1 {
                        return err(path, format!("index {n} violates n >= 1"));
                    }
                    if !seen.insert(*n) {
                        return err(path, format!("duplicate index {n}"));
                    }
                    entries.push((*n, parse_value(value, kind, &path)?));
                }
                ForcingSource::table(entries, realization).map_err(|e| SpecError {
                    path: "forcing.table".into(),
                    message: e.to_string(),
                })
            }
            ForcingKind::Expr => {
                if spec.table.is_some() {
                    return err("forcing.table", "not allowed for kind \"expr\"");
                }
                let Some(text) = &spec.expr else {
                    return err("forcing.expr", "required for kind \"expr\"");
                };
                let expr = parse(text, VarSet::NOnly).map_err(|e| SpecError {
                    path: "forcing.expr".into(),
                    message: e.to_string(),
                })?;
                ForcingSource::expression(expr, realization).map_err(|e| SpecError {
                    path: "forcing.expr".into(),
                    message: e.to_string(),
                })
            }
            ForcingKind::Symbolic => {
                if spec.table.is_some() || spec.expr.is_some() {
                    return err("forcing", "kind \"symbolic\" takes no table or expr");
                }
                Ok(ForcingSource::generic())
            }
            ForcingKind::Zero => {
                if spec.table.is_some() || spec.expr.is_some() {
                    return err("forcing", "kind \"zero\" takes no table or expr");
                }
                Ok(ForcingSource::zero(realization))
            }
        }
    }
}
