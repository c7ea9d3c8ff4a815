//! State-vector construction of the sequence.
//!
//! A [`StateVector`] at level `n` is a dense length-`2^n` vector whose
//! entry sum equals the prefix sum `w(0) + ... + w(n)`. Its positions
//! (1-indexed) split into blocks: block 0 is position 1 and block `j`
//! (`1 <= j <= n`) is positions `2^(j-1)+1 ..= 2^j`; block `j` sums to the
//! term `w(j)`. The recursion is
//!
//! ```text
//! w_1 = < w0, c(1) + a(1,0)*w0 >
//! w_n = u_n  .  (ones(2) x w_(n-1))  +  c_n      (elementwise . and +)
//! ```
//!
//! with the masks
//!
//! ```text
//! u_k = ones(2^(k-1)) ++ < a(k, ceil(log2 i)) for i = 1..2^(k-1) >
//! c_i = < 2^i - 1 zeros, c(i) >
//! ```
//!
//! (`x` replicates: `kron(ones(p), v)` is `v` repeated `p` times; `++` is
//! concatenation). [`build_w_expanded`] computes the same vector
//! non-recursively by expanding the recursion into replicated mask
//! products; level-by-level equality of the two is one of the cross-checks.
//!
//! Dense storage only: at the capped levels (`n <= 20`) a `2^n` vector is
//! fine.

use crate::chainsum::ceil_log2;
use crate::error::{Error, Result};
use crate::problem::Problem;
use crate::scalar::{Realization, Scalar};
use crate::source::{CoefficientSource, ForcingSource};

/// Default level bound for state-vector construction.
pub const DEFAULT_VECTOR_CAP: u32 = 20;

pub fn ones(len: usize, realization: Realization) -> Vec<Scalar> {
    vec![Scalar::one(realization); len]
}

pub fn zeros(len: usize, realization: Realization) -> Vec<Scalar> {
    vec![Scalar::zero(realization); len]
}

/// Kronecker product of two vectors: `kron(u, v)[i*|v| + j] = u[i] * v[j]`.
pub fn kron(u: &[Scalar], v: &[Scalar]) -> Result<Vec<Scalar>> {
    let mut out = Vec::with_capacity(u.len() * v.len());
    for a in u {
        for b in v {
            out.push(a.mul(b)?);
        }
    }
    Ok(out)
}

pub fn concat(u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(u.len() + v.len());
    out.extend_from_slice(u);
    out.extend_from_slice(v);
    out
}

pub fn elemwise_mul(u: &[Scalar], v: &[Scalar]) -> Result<Vec<Scalar>> {
    if u.len() != v.len() {
        return Err(Error::Dimension {
            lhs: u.len(),
            rhs: v.len(),
        });
    }
    u.iter().zip(v).map(|(a, b)| a.mul(b)).collect()
}

pub fn elemwise_add(u: &[Scalar], v: &[Scalar]) -> Result<Vec<Scalar>> {
    if u.len() != v.len() {
        return Err(Error::Dimension {
            lhs: u.len(),
            rhs: v.len(),
        });
    }
    u.iter().zip(v).map(|(a, b)| a.add(b)).collect()
}

/// Entry sum. No absolute values: entries are signed and the identity the
/// construction satisfies is about the plain sum.
pub fn l1(v: &[Scalar]) -> Result<Scalar> {
    let first = v
        .first()
        .ok_or_else(|| Error::Domain("entry sum of an empty vector".into()))?;
    let mut acc = Scalar::zero(first.realization());
    for entry in v {
        acc = acc.add(entry)?;
    }
    Ok(acc)
}

/// The level-`k` coefficient mask `u_k`, length `2^k`.
pub fn build_u(k: u32, coefficients: &CoefficientSource) -> Result<Vec<Scalar>> {
    if k < 1 {
        return Err(Error::Domain("mask level must be >= 1".into()));
    }
    let half = 1usize << (k - 1);
    let mut out = ones(half, coefficients.realization());
    for i in 1..=half {
        out.push(coefficients.at(k, ceil_log2(i as u64))?);
    }
    Ok(out)
}

/// The level-`i` forcing vector `c_i`, length `2^i`: the forcing value in
/// the last position, zeros elsewhere.
pub fn build_c(i: u32, forcing: &ForcingSource) -> Result<Vec<Scalar>> {
    if i < 1 {
        return Err(Error::Domain("forcing level must be >= 1".into()));
    }
    let len = 1usize << i;
    let mut out = zeros(len - 1, forcing.realization());
    out.push(forcing.at(i)?);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    level: u32,
    entries: Vec<Scalar>,
}

impl StateVector {
    pub fn new(level: u32, entries: Vec<Scalar>) -> Result<StateVector> {
        let expected = 1usize << level;
        if entries.len() != expected {
            return Err(Error::Dimension {
                lhs: entries.len(),
                rhs: expected,
            });
        }
        Ok(StateVector { level, entries })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn l1(&self) -> Result<Scalar> {
        l1(&self.entries)
    }

    /// Sum of block `j`: position 1 for `j = 0`, positions
    /// `2^(j-1)+1 ..= 2^j` for `j >= 1`. Blocks partition the vector, so
    /// the block sums add up to the entry sum.
    pub fn block_sum(&self, j: u32) -> Result<Scalar> {
        if j > self.level {
            return Err(Error::Domain(format!(
                "block {j} is out of range for level {}",
                self.level
            )));
        }
        if j == 0 {
            return Ok(self.entries[0].clone());
        }
        let start = 1usize << (j - 1);
        let end = 1usize << j;
        l1(&self.entries[start..end])
    }
}

fn level_one(problem: &Problem) -> Result<Vec<Scalar>> {
    let a10 = problem.coefficients().at(1, 0)?;
    let second = problem.forcing().at(1)?.add(&a10.mul(problem.w0())?)?;
    Ok(vec![problem.w0().clone(), second])
}

fn check_level(n: u32, cap: u32) -> Result<()> {
    if n < 1 {
        return Err(Error::Domain("state vectors start at level 1".into()));
    }
    // 30 bounds the dense 2^n allocation no matter how far the cap is raised
    let cap = cap.min(30);
    if n > cap {
        return Err(Error::ResourceCap { n, cap });
    }
    Ok(())
}

/// Recursive construction of the level-`n` state vector.
pub fn build_w(problem: &Problem, n: u32) -> Result<StateVector> {
    build_w_capped(problem, n, DEFAULT_VECTOR_CAP)
}

pub fn build_w_capped(problem: &Problem, n: u32, cap: u32) -> Result<StateVector> {
    check_level(n, cap)?;
    let realization = problem.realization();
    let mut w = level_one(problem)?;
    for k in 2..=n {
        let doubled = kron(&ones(2, realization), &w)?;
        let masked = elemwise_mul(&build_u(k, problem.coefficients())?, &doubled)?;
        w = elemwise_add(&masked, &build_c(k, problem.forcing())?)?;
    }
    StateVector::new(n, w)
}

/// Non-recursive construction: replicate the level-1 vector and every mask
/// up to length `2^n` and combine them in one pass,
///
/// ```text
/// w_n = (ones(2^(n-1)) x w_1) . prod_{k=2..n} (ones(2^(n-k)) x u_k)
///     + sum_{i=2..n} (ones(2^(n-i)) x c_i) . prod_{k=i+1..n} (ones(2^(n-k)) x u_k)
/// ```
///
/// with elementwise products expanded left to right.
pub fn build_w_expanded(problem: &Problem, n: u32) -> Result<StateVector> {
    build_w_expanded_capped(problem, n, DEFAULT_VECTOR_CAP)
}

pub fn build_w_expanded_capped(problem: &Problem, n: u32, cap: u32) -> Result<StateVector> {
    check_level(n, cap)?;
    let realization = problem.realization();
    let replicate = |v: &[Scalar], copies: usize| kron(&ones(copies, realization), v);

    let mut total = replicate(&level_one(problem)?, 1usize << (n - 1))?;
    for k in 2..=n {
        let mask = replicate(&build_u(k, problem.coefficients())?, 1usize << (n - k))?;
        total = elemwise_mul(&total, &mask)?;
    }
    for i in 2..=n {
        let mut term = replicate(&build_c(i, problem.forcing())?, 1usize << (n - i))?;
        for k in (i + 1)..=n {
            let mask = replicate(&build_u(k, problem.coefficients())?, 1usize << (n - k))?;
            term = elemwise_mul(&term, &mask)?;
        }
        total = elemwise_add(&total, &term)?;
    }
    StateVector::new(n, total)
}
