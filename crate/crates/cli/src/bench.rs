//! The `bench` command: wall time and scalar-operation counts per method
//! and order, written as CSV (`method,n,nanos,ops`, LF line endings).
//!
//! Methods run on the float realization with unit coefficients so the cost
//! profile reflects loop structure, not big-integer growth: the `dp` route
//! is O(n^2) and extends to arbitrary n, the exponential routes stop at
//! their cap.

use std::path::Path;
use std::time::Instant;

use chainrec_core::chainsum::{phi_binary, phi_chain, phi_dp, PhiRequest, DEFAULT_EXPONENTIAL_CAP};
use chainrec_core::counter::{reset_scalar_ops, scalar_ops};
use chainrec_core::expr::{parse, VarSet};
use chainrec_core::recurrence::eval_direct;
use chainrec_core::vectorproof::{build_w, DEFAULT_VECTOR_CAP};
use chainrec_core::{CoefficientSource, ForcingSource, Problem, Realization, Scalar};

use crate::CliError;

pub const VALID_METHODS: &[&str] = &["dp", "binary", "chain", "vector", "direct"];

fn unit_source() -> CoefficientSource {
    CoefficientSource::expression(
        parse("1", VarSet::NAndJ).expect("constant parses"),
        Realization::Float,
    )
    .expect("float expression source")
}

fn unit_problem(horizon: u32) -> Problem {
    Problem::new(
        Scalar::Float(1.0),
        unit_source(),
        ForcingSource::zero(Realization::Float),
        horizon,
    )
    .expect("one realization throughout")
}

fn measure(method: &str, n: u32) -> Result<(u128, u64), CliError> {
    let source = unit_source();
    let problem = unit_problem(n);
    reset_scalar_ops();
    let start = Instant::now();
    match method {
        "dp" => {
            phi_dp(&PhiRequest::new(n, source))?;
        }
        "binary" => {
            phi_binary(&PhiRequest::new(n, source))?;
        }
        "chain" => {
            phi_chain(&PhiRequest::new(n, source))?;
        }
        "vector" => {
            build_w(&problem, n)?;
        }
        "direct" => {
            eval_direct(&problem)?;
        }
        _ => unreachable!("validated before dispatch"),
    }
    Ok((start.elapsed().as_nanos(), scalar_ops()))
}

pub fn run(max_n: u32, methods: &[String], output: &Path) -> Result<(), CliError> {
    if methods.is_empty() {
        return Err(CliError::Usage(format!(
            "--methods must name at least one of: {}",
            VALID_METHODS.join(", ")
        )));
    }
    for method in methods {
        if !VALID_METHODS.contains(&method.as_str()) {
            return Err(CliError::Usage(format!(
                "unknown method \"{method}\"; valid methods: {}",
                VALID_METHODS.join(", ")
            )));
        }
    }

    let mut csv = String::from("method,n,nanos,ops\n");
    for method in methods {
        let top = match method.as_str() {
            "dp" | "direct" => max_n,
            "vector" => max_n.min(DEFAULT_VECTOR_CAP),
            _ => max_n.min(DEFAULT_EXPONENTIAL_CAP),
        };
        for n in 1..=top {
            let (nanos, ops) = measure(method, n)?;
            csv.push_str(&format!("{method},{n},{nanos},{ops}\n"));
        }
    }
    std::fs::write(output, csv).map_err(|e| {
        CliError::Usage(format!("cannot write {}: {e}", output.display()))
    })?;
    Ok(())
}
