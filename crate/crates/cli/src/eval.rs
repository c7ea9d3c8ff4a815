//! The `eval` command: one table of `n, w_n, prefix_n` rows per run,
//! computed by the chosen strategy. Exact scalars make the table
//! method-independent, which the tests rely on.

use chainrec_core::chainsum::{prefix_sum_closed_form, term_closed_form};
use chainrec_core::recurrence::eval_direct;
use chainrec_core::vectorproof::build_w;
use chainrec_core::{Problem, Scalar};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    /// Term-by-term recursion
    Direct,
    /// Chain-sum closed forms
    Closed,
    /// State-vector block sums
    Vector,
}

pub fn run(problem: &Problem, method: Method, limit: Option<u32>) -> Result<String, CliError> {
    let last = match limit {
        Some(n) if n > problem.horizon() => {
            return Err(CliError::Usage(format!(
                "--n {n} exceeds the problem horizon {}",
                problem.horizon()
            )));
        }
        Some(n) => n,
        None => problem.horizon(),
    };

    let (terms, prefix) = match method {
        Method::Direct => {
            let result = eval_direct(problem)?;
            (result.terms, result.prefix)
        }
        Method::Closed => {
            let mut terms = vec![problem.w0().clone()];
            let mut prefix = vec![problem.w0().clone()];
            for n in 1..=last {
                terms.push(term_closed_form(problem, n)?);
                prefix.push(prefix_sum_closed_form(problem, n)?);
            }
            (terms, prefix)
        }
        Method::Vector => {
            let mut terms = vec![problem.w0().clone()];
            if last >= 1 {
                let state = build_w(problem, last)?;
                for j in 1..=last {
                    terms.push(state.block_sum(j)?);
                }
            }
            let mut prefix: Vec<Scalar> = vec![terms[0].clone()];
            for n in 1..=last as usize {
                let next = prefix[n - 1].add(&terms[n])?;
                prefix.push(next);
            }
            (terms, prefix)
        }
    };

    let mut rows = vec![[
        "n".to_string(),
        "w_n".to_string(),
        "prefix_n".to_string(),
    ]];
    for n in 0..=last as usize {
        rows.push([n.to_string(), terms[n].to_string(), prefix[n].to_string()]);
    }
    Ok(format_table(&rows))
}

fn format_table(rows: &[[String; 3]]) -> String {
    let mut widths = [0usize; 3];
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    for row in rows {
        // last column unpadded to avoid trailing spaces
        out.push_str(&format!(
            "{:<w0$}  {:<w1$}  {}\n",
            row[0],
            row[1],
            row[2],
            w0 = widths[0],
            w1 = widths[1],
        ));
    }
    out
}
