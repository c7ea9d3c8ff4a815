//! Direct evaluation of the difference equation, term by term.
//!
//! `eval_direct` is the ground-truth oracle the other evaluation strategies
//! are checked against. It costs O(N^2) scalar operations and stores the
//! running prefix sums alongside the terms, since the closed forms target
//! the prefix sum and callers should never recompute it.
//!
//! `eval_homogeneous_shifted` produces the homogeneous solutions
//! `v(0) = 1`, `v(n) = sum_{j<n} a(n+l, j+l) * v(j)` for a shift `l`. With
//! generic symbolic coefficients the term `v(n)` has `2^(n-1)` monomials,
//! so callers choose horizons accordingly.

use crate::error::Result;
use crate::problem::Problem;
use crate::scalar::Scalar;
use crate::source::CoefficientSource;

/// Terms `w(0..=N)` and prefix sums `prefix[n] = sum_{j<=n} w(j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SequenceResult {
    pub terms: Vec<Scalar>,
    pub prefix: Vec<Scalar>,
}

pub fn eval_direct(problem: &Problem) -> Result<SequenceResult> {
    let horizon = problem.horizon() as usize;
    let mut terms = Vec::with_capacity(horizon + 1);
    terms.push(problem.w0().clone());
    for n in 1..=horizon {
        let mut acc = problem.forcing().at(n as u32)?;
        for (j, term) in terms.iter().enumerate() {
            acc = acc.add(&problem.coefficients().at(n as u32, j as u32)?.mul(term)?)?;
        }
        terms.push(acc);
    }
    let mut prefix = Vec::with_capacity(horizon + 1);
    prefix.push(terms[0].clone());
    for n in 1..=horizon {
        let next = prefix[n - 1].add(&terms[n])?;
        prefix.push(next);
    }
    Ok(SequenceResult { terms, prefix })
}

/// Homogeneous solutions under coefficients shifted by `extra_shift` on top
/// of whatever shift `coefficients` already carries. Returns `v(0..=length)`.
pub fn eval_homogeneous_shifted(
    coefficients: &CoefficientSource,
    extra_shift: u32,
    length: usize,
) -> Result<Vec<Scalar>> {
    let source = coefficients.shifted(extra_shift);
    let realization = source.realization();
    let mut v = Vec::with_capacity(length + 1);
    v.push(Scalar::one(realization));
    for n in 1..=length {
        let mut acc = Scalar::zero(realization);
        for (j, term) in v.iter().enumerate() {
            acc = acc.add(&source.at(n as u32, j as u32)?.mul(term)?)?;
        }
        v.push(acc);
    }
    Ok(v)
}
