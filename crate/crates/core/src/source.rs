//! Coefficient and forcing providers.
//!
//! A [`CoefficientSource`] realizes the bivariate coefficient function
//! `a(x, y)`: a sparse table, an arithmetic expression in `n` and `j`, or
//! the generic symbolic family `a[n,j]`. It carries a nonnegative index
//! shift: with shift `l`, a query at `(n, j)` answers with the unshifted
//! value at `(n + l, j + l)`. Queries are only legal at `n >= 1`,
//! `0 <= j < n` (checked before shifting).
//!
//! Tables are sparse: absent entries read as the zero of the source's
//! realization, so band-limited coefficient patterns are expressed
//! naturally.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::poly::Symbol;
use crate::scalar::{Realization, Scalar};

#[derive(Debug, Clone, PartialEq)]
enum CoeffBacking {
    Table {
        entries: BTreeMap<(u32, u32), Scalar>,
        realization: Realization,
    },
    Expression {
        expr: Expr,
        realization: Realization,
    },
    Generic,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSource {
    backing: Arc<CoeffBacking>,
    shift: u32,
}

impl CoefficientSource {
    /// Sparse table source. Keys address the unshifted function and must lie
    /// in its domain; values must share `realization`.
    pub fn table<I>(entries: I, realization: Realization) -> Result<CoefficientSource>
    where
        I: IntoIterator<Item = ((u32, u32), Scalar)>,
    {
        let mut map = BTreeMap::new();
        for ((n, j), value) in entries {
            if n < 1 || j >= n {
                return Err(Error::Domain(format!(
                    "coefficient table key ({n}, {j}) violates 0 <= j < n, n >= 1"
                )));
            }
            if value.realization() != realization {
                return Err(Error::RealizationMismatch {
                    lhs: realization,
                    rhs: value.realization(),
                });
            }
            map.insert((n, j), value);
        }
        Ok(CoefficientSource {
            backing: Arc::new(CoeffBacking::Table {
                entries: map,
                realization,
            }),
            shift: 0,
        })
    }

    /// Expression source over `n` and `j`; numeric realizations only.
    pub fn expression(expr: Expr, realization: Realization) -> Result<CoefficientSource> {
        if realization == Realization::Symbolic {
            return Err(Error::Domain(
                "expression sources evaluate numerically; use a generic source for symbols".into(),
            ));
        }
        Ok(CoefficientSource {
            backing: Arc::new(CoeffBacking::Expression { expr, realization }),
            shift: 0,
        })
    }

    /// The generic symbolic family: a query at `(n, j)` yields the symbol
    /// `a[n,j]` (after shifting).
    pub fn generic() -> CoefficientSource {
        CoefficientSource {
            backing: Arc::new(CoeffBacking::Generic),
            shift: 0,
        }
    }

    /// Adds `extra` to the current shift; shifts compose additively.
    pub fn shifted(&self, extra: u32) -> CoefficientSource {
        CoefficientSource {
            backing: Arc::clone(&self.backing),
            shift: self.shift + extra,
        }
    }

    pub fn shift(&self) -> u32 {
        self.shift
    }

    pub fn realization(&self) -> Realization {
        match &*self.backing {
            CoeffBacking::Table { realization, .. } => *realization,
            CoeffBacking::Expression { realization, .. } => *realization,
            CoeffBacking::Generic => Realization::Symbolic,
        }
    }

    pub fn at(&self, n: u32, j: u32) -> Result<Scalar> {
        if n < 1 || j >= n {
            return Err(Error::Domain(format!(
                "coefficient query ({n}, {j}) violates 0 <= j < n, n >= 1"
            )));
        }
        let x = n
            .checked_add(self.shift)
            .ok_or_else(|| Error::Domain("shifted index overflows".into()))?;
        let y = j + self.shift;
        match &*self.backing {
            CoeffBacking::Table {
                entries,
                realization,
            } => Ok(entries
                .get(&(x, y))
                .cloned()
                .unwrap_or_else(|| Scalar::zero(*realization))),
            CoeffBacking::Expression { expr, realization } => expr.eval(x, Some(y), *realization),
            CoeffBacking::Generic => Ok(Scalar::symbol(Symbol::a(x, y))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum ForcingBacking {
    Table {
        entries: BTreeMap<u32, Scalar>,
        realization: Realization,
    },
    Expression {
        expr: Expr,
        realization: Realization,
    },
    Generic,
}

/// The forcing sequence `c(n)`, queried at integers `n >= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ForcingSource {
    backing: Arc<ForcingBacking>,
}

impl ForcingSource {
    pub fn table<I>(entries: I, realization: Realization) -> Result<ForcingSource>
    where
        I: IntoIterator<Item = (u32, Scalar)>,
    {
        let mut map = BTreeMap::new();
        for (n, value) in entries {
            if n < 1 {
                return Err(Error::Domain(format!(
                    "forcing table key {n} violates n >= 1"
                )));
            }
            if value.realization() != realization {
                return Err(Error::RealizationMismatch {
                    lhs: realization,
                    rhs: value.realization(),
                });
            }
            map.insert(n, value);
        }
        Ok(ForcingSource {
            backing: Arc::new(ForcingBacking::Table {
                entries: map,
                realization,
            }),
        })
    }

    /// The identically-zero forcing in the given realization.
    pub fn zero(realization: Realization) -> ForcingSource {
        ForcingSource::table([], realization).unwrap()
    }

    /// Expression over `n` only; numeric realizations only.
    pub fn expression(expr: Expr, realization: Realization) -> Result<ForcingSource> {
        if realization == Realization::Symbolic {
            return Err(Error::Domain(
                "expression sources evaluate numerically; use a generic source for symbols".into(),
            ));
        }
        if expr.uses_j() {
            return Err(Error::Domain(
                "forcing expressions may not use the variable j".into(),
            ));
        }
        Ok(ForcingSource {
            backing: Arc::new(ForcingBacking::Expression { expr, realization }),
        })
    }

    /// Generic symbolic forcing: a query at `n` yields the symbol `c[n]`.
    pub fn generic() -> ForcingSource {
        ForcingSource {
            backing: Arc::new(ForcingBacking::Generic),
        }
    }

    pub fn realization(&self) -> Realization {
        match &*self.backing {
            ForcingBacking::Table { realization, .. } => *realization,
            ForcingBacking::Expression { realization, .. } => *realization,
            ForcingBacking::Generic => Realization::Symbolic,
        }
    }

    pub fn at(&self, n: u32) -> Result<Scalar> {
        if n < 1 {
            return Err(Error::Domain(format!("forcing query {n} violates n >= 1")));
        }
        match &*self.backing {
            ForcingBacking::Table {
                entries,
                realization,
            } => Ok(entries
                .get(&n)
                .cloned()
                .unwrap_or_else(|| Scalar::zero(*realization))),
            ForcingBacking::Expression { expr, realization } => expr.eval(n, None, *realization),
            ForcingBacking::Generic => Ok(Scalar::symbol(Symbol::c(n))),
        }
    }
}
