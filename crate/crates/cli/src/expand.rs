//! The `expand` command: canonical text of symbolic expansions.

use chainrec_core::symbolic::{expand_v, expand_w_grouped, render};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum What {
    /// The homogeneous solution at order n
    V,
    /// The term w(n), one carrier group per line
    W,
}

pub fn run(what: What, n: u32) -> Result<String, CliError> {
    match what {
        What::V => Ok(format!("{}\n", render(&expand_v(n)?))),
        What::W => {
            let grouped = expand_w_grouped(n)?;
            let mut out = String::new();
            for (carrier, poly) in grouped.groups() {
                out.push_str(&format!("{carrier}: {}\n", render(poly)));
            }
            Ok(out)
        }
    }
}
