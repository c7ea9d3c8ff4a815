//! The chain-sum operator and the closed forms built from it.
//!
//! For a coefficient function `f` and order `n`, the operator value is
//!
//! ```text
//! Phi_n(f) = 1 + sum over nonempty chains 0 = k0 < k1 < ... < km <= n
//!                of f(k1, k0) * f(k2, k1) * ... * f(km, k(m-1))
//! ```
//!
//! one factor per chain edge. Three independent routes compute it:
//!
//! - [`phi_binary`]: a sum over `j = 1..=2^n` where the periodic indicator
//!   `[2^k, 2^k]_j` reads bit `k` of `j - 1` and the partner index comes
//!   from `ceil(log2(1 + (j-1) mod 2^k))` — O(n * 2^n),
//! - [`phi_chain`]: explicit subset enumeration by bitmask, decoding each
//!   mask into a [`Chain`] and multiplying edge weights — O(n * 2^n),
//! - [`phi_dp`]: the polynomial-time route through the homogeneous
//!   solutions, `Phi_n(f) = v(0) + ... + v(n)` — O(n^2).
//!
//! The differenced operator `psi_n = Phi_n - Phi_(n-1)` sums only the
//! chains ending exactly at `n` and equals the homogeneous solution `v(n)`;
//! [`psi_dp`] computes it that way (with `psi_0 = 1` for the empty chain).
//!
//! Both exponential routes share the bitmask convention bit `k` <-> index
//! `k + 1` and refuse orders above a configurable cap rather than run for
//! hours. `phi_dp` has no cap.
//!
//! The closed forms: with `Phi_0 = 1`,
//!
//! ```text
//! prefix[n] = w0 * Phi_n(a) + sum_{l=1..n} c(l) * Phi_(n-l)(a shifted by l)
//! w(n)      = c(n) + w0 * psi_n(a) + sum_{l=1..n-1} c(l) * psi_(n-l)(a shifted by l)
//! ```
//!
//! both evaluated through the polynomial-time route. The `l = n` term of
//! the first line is `c(n) * Phi_0 = c(n)`.

use crate::error::{Error, Result};
use crate::problem::Problem;
use crate::recurrence::eval_homogeneous_shifted;
use crate::scalar::Scalar;
use crate::source::CoefficientSource;

/// Default order bound for the two `O(2^n)` evaluators.
pub const DEFAULT_EXPONENTIAL_CAP: u32 = 20;

/// Periodic indicator `[p,q]_j` for `j >= 1`: `p` zeros followed by `q`
/// ones, repeating. For `p = q = 2^k` this is bit `k` of `j - 1`.
pub fn bracket(p: u64, q: u64, j: u64) -> u64 {
    assert!(p >= 1 && q >= 1 && j >= 1, "bracket arguments are positive");
    u64::from((j - 1) % (p + q) >= p)
}

/// `ceil(log2(x))` for `x >= 1`.
pub fn ceil_log2(x: u64) -> u32 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}

/// A strictly increasing index tuple `k1 < ... < km` with implicit base
/// `k0 = 0`; the support of one monomial in the operator expansion. The
/// empty chain contributes the value 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    indices: Vec<u32>,
}

impl Chain {
    pub fn new(indices: Vec<u32>) -> Result<Chain> {
        let increasing = indices.windows(2).all(|w| w[0] < w[1]);
        if !increasing || indices.first().is_some_and(|&k| k < 1) {
            return Err(Error::Domain(
                "chain indices must be strictly increasing and >= 1".into(),
            ));
        }
        Ok(Chain { indices })
    }

    pub fn empty() -> Chain {
        Chain { indices: Vec::new() }
    }

    /// Decode a subset bitmask: bit `k` selects index `k + 1`.
    pub fn from_mask(mask: u64) -> Chain {
        let mut indices = Vec::with_capacity(mask.count_ones() as usize);
        let mut rest = mask;
        while rest != 0 {
            let bit = rest.trailing_zeros();
            indices.push(bit + 1);
            rest &= rest - 1;
        }
        Chain { indices }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    /// The chain's monomial value: one factor `f(k_i, k_(i-1))` per edge.
    pub fn weight(&self, source: &CoefficientSource) -> Result<Scalar> {
        let mut acc = Scalar::one(source.realization());
        let mut prev = 0u32;
        for &k in &self.indices {
            acc = acc.mul(&source.at(k, prev)?)?;
            prev = k;
        }
        Ok(acc)
    }
}

/// Order plus coefficient source (the source's shift selects the shifted
/// coefficient family).
#[derive(Debug, Clone)]
pub struct PhiRequest {
    n: u32,
    source: CoefficientSource,
    cap: u32,
}

impl PhiRequest {
    pub fn new(n: u32, source: CoefficientSource) -> PhiRequest {
        PhiRequest {
            n,
            source,
            cap: DEFAULT_EXPONENTIAL_CAP,
        }
    }

    pub fn with_cap(mut self, cap: u32) -> PhiRequest {
        self.cap = cap;
        self
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn source(&self) -> &CoefficientSource {
        &self.source
    }

    fn check_cap(&self) -> Result<()> {
        // 62 bounds the u64 subset masks no matter how far the cap is raised
        let cap = self.cap.min(62);
        if self.n > cap {
            Err(Error::ResourceCap { n: self.n, cap })
        } else {
            Ok(())
        }
    }
}

/// Binary-indexed expansion: `sum_{j=1..2^n} prod_{k=0..n-1}
/// (1 + [2^k,2^k]_j * (f(k+1, idx) - 1))` with
/// `idx = ceil(log2(1 + (j-1) mod 2^k))`. A factor with indicator 0 is 1
/// and a factor with indicator 1 reduces to `f(k+1, idx)`, so the source
/// is only queried where the indicator fires.
pub fn phi_binary(request: &PhiRequest) -> Result<Scalar> {
    request.check_cap()?;
    let realization = request.source.realization();
    let mut total = Scalar::zero(realization);
    for j in 1..=(1u64 << request.n) {
        let mut product = Scalar::one(realization);
        for k in 0..request.n {
            let period = 1u64 << k;
            if bracket(period, period, j) == 1 {
                let idx = ceil_log2(1 + ((j - 1) % period));
                product = product.mul(&request.source.at(k + 1, idx)?)?;
            }
        }
        total = total.add(&product)?;
    }
    Ok(total)
}

/// Combinatorial expansion: enumerate every subset of `{1..n}` as a chain
/// and sum the chain weights (the empty chain contributes 1).
pub fn phi_chain(request: &PhiRequest) -> Result<Scalar> {
    request.check_cap()?;
    let realization = request.source.realization();
    let mut total = Scalar::zero(realization);
    for mask in 0..(1u64 << request.n) {
        let weight = Chain::from_mask(mask).weight(&request.source)?;
        total = total.add(&weight)?;
    }
    Ok(total)
}

/// Polynomial-time route: the operator value equals the prefix sum of the
/// homogeneous solutions. This is the production path; the exponential
/// routes exist for verification and benchmarks.
pub fn phi_dp(request: &PhiRequest) -> Result<Scalar> {
    let v = eval_homogeneous_shifted(&request.source, 0, request.n as usize)?;
    let mut total = Scalar::zero(request.source.realization());
    for term in &v {
        total = total.add(term)?;
    }
    Ok(total)
}

/// Differenced operator via the homogeneous solutions: `psi_n(f) = v(n)`,
/// the sum over chains ending exactly at `n`; `psi_0 = 1`.
pub fn psi_dp(request: &PhiRequest) -> Result<Scalar> {
    let v = eval_homogeneous_shifted(&request.source, 0, request.n as usize)?;
    Ok(v.into_iter().next_back().expect("nonempty by construction"))
}

/// Closed form for the prefix sum `w(0) + ... + w(n)`, `1 <= n <= horizon`.
pub fn prefix_sum_closed_form(problem: &Problem, n: u32) -> Result<Scalar> {
    if n < 1 || n > problem.horizon() {
        return Err(Error::Domain(format!(
            "closed form needs 1 <= n <= horizon, got n = {n}, horizon = {}",
            problem.horizon()
        )));
    }
    let coefficients = problem.coefficients();
    let phi_full = phi_dp(&PhiRequest::new(n, coefficients.clone()))?;
    let mut total = problem.w0().mul(&phi_full)?;
    for l in 1..=n {
        let c_l = problem.forcing().at(l)?;
        let phi = phi_dp(&PhiRequest::new(n - l, coefficients.shifted(l)))?;
        total = total.add(&c_l.mul(&phi)?)?;
    }
    Ok(total)
}

/// Closed form for the single term `w(n)`, `1 <= n <= horizon`.
pub fn term_closed_form(problem: &Problem, n: u32) -> Result<Scalar> {
    if n < 1 || n > problem.horizon() {
        return Err(Error::Domain(format!(
            "closed form needs 1 <= n <= horizon, got n = {n}, horizon = {}",
            problem.horizon()
        )));
    }
    let coefficients = problem.coefficients();
    let mut total = problem.forcing().at(n)?;
    let psi_full = psi_dp(&PhiRequest::new(n, coefficients.clone()))?;
    total = total.add(&problem.w0().mul(&psi_full)?)?;
    for l in 1..n {
        let c_l = problem.forcing().at(l)?;
        let psi = psi_dp(&PhiRequest::new(n - l, coefficients.shifted(l)))?;
        total = total.add(&c_l.mul(&psi)?)?;
    }
    Ok(total)
}
