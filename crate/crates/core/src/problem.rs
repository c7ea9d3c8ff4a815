//! The full instance of a variable-coefficient difference equation:
//! `w(n) = c(n) + sum_{j<n} a(n,j) * w(j)` for `n >= 1`, with initial value
//! `w(0) = w0` and horizon `N`.

use crate::error::{Error, Result};
use crate::scalar::{Realization, Scalar};
use crate::source::{CoefficientSource, ForcingSource};

#[derive(Debug, Clone, PartialEq)]
pub struct Problem {
    w0: Scalar,
    coefficients: CoefficientSource,
    forcing: ForcingSource,
    horizon: u32,
}

impl Problem {
    /// All three value providers must share one realization, and the
    /// coefficient source must be unshifted (shifts are introduced by the
    /// evaluators, not by problem data).
    pub fn new(
        w0: Scalar,
        coefficients: CoefficientSource,
        forcing: ForcingSource,
        horizon: u32,
    ) -> Result<Problem> {
        if coefficients.shift() != 0 {
            return Err(Error::Domain(
                "problem coefficients must carry shift 0".into(),
            ));
        }
        if w0.realization() != coefficients.realization() {
            return Err(Error::RealizationMismatch {
                lhs: w0.realization(),
                rhs: coefficients.realization(),
            });
        }
        if w0.realization() != forcing.realization() {
            return Err(Error::RealizationMismatch {
                lhs: w0.realization(),
                rhs: forcing.realization(),
            });
        }
        Ok(Problem {
            w0,
            coefficients,
            forcing,
            horizon,
        })
    }

    pub fn w0(&self) -> &Scalar {
        &self.w0
    }

    pub fn coefficients(&self) -> &CoefficientSource {
        &self.coefficients
    }

    pub fn forcing(&self) -> &ForcingSource {
        &self.forcing
    }

    pub fn horizon(&self) -> u32 {
        self.horizon
    }

    pub fn realization(&self) -> Realization {
        self.w0.realization()
    }
}
