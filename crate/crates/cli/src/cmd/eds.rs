use clap::Subcommand;
use num_traits::Zero;
use serde_json::json;
use somos_core::format_rational;
use somos_core::recurrence::{divisibility_check, eds_generate, hankel_check};

use super::{csv_string, strs};
use crate::error::CliError;
use crate::parse;
use crate::{Cli, Output};

#[derive(Subcommand, Debug)]
pub enum EdsCmd {
    /// Antisymmetric EDS from `τ₁..τ₄`.
    Gen {
        /// `τ₁,τ₂,τ₃,τ₄` with `τ₁ = ±1`.
        #[arg(long, allow_hyphen_values = true)]
        seeds: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        lo: i64,
        #[arg(long, default_value_t = 9, allow_hyphen_values = true)]
        hi: i64,
    },
    /// Antisymmetry, divisibility and the Hankel identity.
    Check {
        #[arg(long, allow_hyphen_values = true)]
        seeds: String,
        /// Largest index for antisymmetry and divisibility.
        #[arg(long, default_value_t = 30)]
        upto: i64,
        /// Hankel identity for `2 ≤ m < n ≤ hankel_max`.
        #[arg(long, default_value_t = 15)]
        hankel_max: i64,
    },
}

pub fn run(cmd: &EdsCmd, _cli: &Cli) -> Result<Output, CliError> {
    match cmd {
        EdsCmd::Gen { seeds, lo, hi } => {
            if lo > hi {
                return Err(CliError::Validation("--lo must not exceed --hi".into()));
            }
            let s = parse::exactly(parse::rational_list(seeds)?, 4, "--seeds")?;
            let w = eds_generate(&s, *lo, *hi)?;
            let mut out = Output::new(
                "eds gen",
                json!({"seeds": strs(&s), "lo": lo, "hi": hi}),
                json!({"offset": w.offset, "terms": strs(&w.terms)}),
            );
            out.csv = Some(csv_string(|b| w.write_csv(b)));
            out.text = Some(w.display_terms() + "\n");
            Ok(out)
        }
        EdsCmd::Check {
            seeds,
            upto,
            hankel_max,
        } => {
            let s = parse::exactly(parse::rational_list(seeds)?, 4, "--seeds")?;
            let top = (*upto).max(2 * hankel_max);
            let w = eds_generate(&s, -top, top)?;
            let anti_bad: Vec<i64> = (1..=*upto)
                .filter(|&n| w.get(-n).cloned().map(|t| -t) != w.get(n).cloned())
                .collect();
            let div = divisibility_check(&w.slice(0, *upto)?)?;
            let mut hankel = Vec::new();
            let mut count = 0;
            for n in 3..=*hankel_max {
                for m in 2..n {
                    count += 1;
                    let r = hankel_check(&w, m, n)?;
                    if !r.is_zero() {
                        hankel.push(json!({"m": m, "n": n, "residual": format_rational(&r)}));
                    }
                }
            }
            let pass = anti_bad.is_empty() && div.pass && hankel.is_empty();
            let mut out = Output::new(
                "eds check",
                json!({"seeds": strs(&s), "upto": upto, "hankel_max": hankel_max}),
                json!({
                    "antisymmetry": {"violations": anti_bad, "pass": anti_bad.is_empty()},
                    "divisibility": div,
                    "hankel": {"pairs_checked": count, "nonzero": hankel, "pass": hankel.is_empty()},
                    "pass": pass,
                }),
            );
            out.pass = pass;
            Ok(out)
        }
    }
}
