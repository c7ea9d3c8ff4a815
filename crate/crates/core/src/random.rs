//! Deterministic random problems for cross-evaluator verification.
//!
//! Values are rationals `p/q` with `p` in `[-9, 9]` and `q` in `[1, 9]`,
//! drawn from a seeded ChaCha stream: small magnitudes keep exact values
//! manageable over long products while still exercising signs and
//! non-integers. Identical seeds yield identical problems.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::problem::Problem;
use crate::scalar::{Realization, Scalar};
use crate::source::{CoefficientSource, ForcingSource};

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_rational<R: Rng>(rng: &mut R) -> Scalar {
    let p = rng.random_range(-9i64..=9);
    let q = rng.random_range(1i64..=9);
    Scalar::rational(p, q)
}

/// Dense random table over the full triangle `1 <= n <= max_n`, `0 <= j < n`.
pub fn random_coefficients<R: Rng>(rng: &mut R, max_n: u32) -> CoefficientSource {
    let mut entries = Vec::new();
    for n in 1..=max_n {
        for j in 0..n {
            entries.push(((n, j), random_rational(rng)));
        }
    }
    CoefficientSource::table(entries, Realization::Rational).expect("keys are in range")
}

pub fn random_forcing<R: Rng>(rng: &mut R, max_n: u32) -> ForcingSource {
    let entries = (1..=max_n).map(|n| (n, random_rational(rng)));
    ForcingSource::table(entries, Realization::Rational).expect("keys are in range")
}

pub fn random_problem<R: Rng>(rng: &mut R, horizon: u32) -> Problem {
    let w0 = random_rational(rng);
    let coefficients = random_coefficients(rng, horizon);
    let forcing = random_forcing(rng, horizon);
    Problem::new(w0, coefficients, forcing, horizon).expect("one realization throughout")
}
