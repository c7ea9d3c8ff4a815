//! Sequences defined by nonhomogeneous linear difference equations with
//! variable coefficients:
//!
//! ```text
//! w(0) = w0,    w(n) = c(n) + sum_{j=0..n-1} a(n,j) * w(j)    for n >= 1,
//! ```
//!
//! evaluated four independent ways — direct recursion, a closed form built
//! from the chain-sum operator, its binary-indexed expansion, and a
//! state-vector construction — over exact rational, floating-point, and
//! symbolic scalars. The evaluators exist to be cross-checked: every route
//! must produce identical exact values, and the test suites and the
//! `verify` command hold them to that.
//!
//! Module map:
//!
//! - [`scalar`], [`poly`]: the scalar ring and sparse symbolic polynomials,
//! - [`expr`]: arithmetic expressions over the index variables,
//! - [`source`], [`problem`]: coefficient/forcing providers and the problem
//!   model,
//! - [`recurrence`]: the direct O(N^2) evaluator (the oracle) and the
//!   shifted homogeneous solutions,
//! - [`chainsum`]: the chain-sum operator in three implementations plus the
//!   closed forms for prefix sums and single terms,
//! - [`vectorproof`]: the length-`2^n` state-vector construction with its
//!   block structure,
//! - [`symbolic`]: expansion over generic symbols and canonical rendering,
//! - [`random`]: seeded random problems for verification,
//! - [`counter`]: thread-local scalar operation counting for benchmarks.

pub mod chainsum;
pub mod counter;
pub mod error;
pub mod expr;
pub mod poly;
pub mod problem;
pub mod random;
pub mod recurrence;
pub mod scalar;
pub mod source;
pub mod symbolic;
pub mod vectorproof;

pub use error::{Error, Result};
pub use poly::{Symbol, SymbolProduct, SymbolicPoly};
pub use problem::Problem;
pub use scalar::{Realization, Scalar};
pub use source::{CoefficientSource, ForcingSource};
