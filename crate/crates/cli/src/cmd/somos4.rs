use std::path::PathBuf;

use clap::{Args, Subcommand};
use serde_json::json;
use somos_core::recurrence::{laurent_check, DEFAULT_LAURENT_CAP};
use somos_core::solver::{self, alternating_closed_form, relative_error, SolverError};
use somos_core::{format_rational, Somos4Problem};

use super::{csv_string, strs};
use crate::error::CliError;
use crate::parse;
use crate::{Cli, Output};

#[derive(Args, Debug)]
pub struct ProblemArgs {
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    /// `τ₀,τ₁,τ₂,τ₃`.
    #[arg(long, allow_hyphen_values = true)]
    seeds: Option<String>,
    /// JSON file `{"alpha": "p/q", "beta": "p/q", "seeds": [..4 strings..]}`.
    #[arg(long, conflicts_with_all = ["alpha", "beta", "seeds"])]
    input: Option<PathBuf>,
}

impl ProblemArgs {
    fn problem(&self) -> Result<Somos4Problem, CliError> {
        if let Some(p) = &self.input {
            let prob: Somos4Problem = parse::json_file(p)?;
            return Ok(Somos4Problem::new(prob.alpha, prob.beta, prob.seeds)?);
        }
        let need = |o: &Option<String>, name: &str| {
            o.clone()
                .ok_or_else(|| CliError::Validation(format!("--{name} is required without --input")))
        };
        let alpha = parse::rational(&need(&self.alpha, "alpha")?)?;
        let beta = parse::rational(&need(&self.beta, "beta")?)?;
        let seeds = parse::exactly(parse::rational_list(&need(&self.seeds, "seeds")?)?, 4, "--seeds")?;
        Ok(Somos4Problem::new(alpha, beta, seeds)?)
    }
}

fn config(p: &Somos4Problem) -> serde_json::Value {
    json!({
        "alpha": format_rational(&p.alpha),
        "beta": format_rational(&p.beta),
        "seeds": strs(&p.seeds),
    })
}

#[derive(Subcommand, Debug)]
pub enum Somos4Cmd {
    /// Exact terms of `τₙ₊₂τₙ₋₂ = ατₙ₊₁τₙ₋₁ + βτₙ²`.
    Run {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Number of terms.
        #[arg(long, default_value_t = 10)]
        n: usize,
        /// First index.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        lo: i64,
    },
    /// Curve, lattice and closed-form constants of a Somos-4 sequence.
    Solve {
        #[command(flatten)]
        problem: ProblemArgs,
    },
    /// Evaluates the closed form and compares with the exact terms.
    ClosedForm {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, default_value_t = -5, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, default_value_t = 15, allow_hyphen_values = true)]
        to: i64,
    },
    /// Symbolic iterates with indeterminate seeds and coefficients.
    Laurent {
        #[arg(long, default_value_t = 8)]
        n: usize,
        /// Upper bound on `n`; symbolic growth is steep.
        #[arg(long, default_value_t = DEFAULT_LAURENT_CAP)]
        cap: usize,
    },
}

pub fn run(cmd: &Somos4Cmd, cli: &Cli) -> Result<Output, CliError> {
    match cmd {
        Somos4Cmd::Run { problem, n, lo } => {
            if *n == 0 {
                return Err(CliError::Validation("--n must be positive".into()));
            }
            let p = problem.problem()?;
            let hi = lo + *n as i64 - 1;
            let w = p.run(*lo, hi)?.slice(*lo, hi)?;
            let mut cfg = config(&p);
            cfg["lo"] = json!(lo);
            cfg["n"] = json!(n);
            let mut out = Output::new("somos4 run", cfg, json!({"offset": w.offset, "terms": strs(&w.terms)}));
            out.csv = Some(csv_string(|b| w.write_csv(b)));
            out.text = Some(w.display_terms() + "\n");
            Ok(out)
        }
        Somos4Cmd::Solve { problem } => {
            let p = problem.problem()?;
            let s = solver::solve(&p, cli.digits)?;
            let dump = serde_json::to_value(s.dump()).expect("solution serialises");
            Ok(Output::new("somos4 solve", config(&p), dump))
        }
        Somos4Cmd::ClosedForm { problem, from, to } => {
            if from > to {
                return Err(CliError::Validation("--from must not exceed --to".into()));
            }
            let p = problem.problem()?;
            let w = p.run(*from, *to)?;
            let mut cfg = config(&p);
            cfg["from"] = json!(from);
            cfg["to"] = json!(to);
            let mut rows = Vec::new();
            let mut worst: f64 = 0.0;
            let mut csv_rows = vec!["index,exact,closed_form,relative_error,error_estimate".to_string()];
            match solver::solve(&p, cli.digits) {
                Ok(s) => {
                    let d = cli.digits as usize;
                    for (n, t) in w.iter() {
                        let v = s.closed_form(n)?;
                        let err = relative_error(&v.value, t);
                        worst = worst.max(err);
                        let cf = v.value.to_string_digits(d);
                        csv_rows.push(format!(
                            "{n},{},\"{cf}\",{err:e},{:e}",
                            format_rational(t),
                            v.error_estimate
                        ));
                        rows.push(json!({
                            "n": n,
                            "exact": format_rational(t),
                            "closed_form": cf,
                            "relative_error": err,
                            "error_estimate": v.error_estimate,
                        }));
                    }
                }
                Err(SolverError::AlphaZero) => {
                    for (n, t) in w.iter() {
                        let v = alternating_closed_form(&p, n)?;
                        let err = if &v == t { 0.0 } else { f64::INFINITY };
                        worst = worst.max(err);
                        csv_rows.push(format!("{n},{},{},{err:e},0", format_rational(t), format_rational(&v)));
                        rows.push(json!({
                            "n": n,
                            "exact": format_rational(t),
                            "closed_form": format_rational(&v),
                            "relative_error": err,
                            "error_estimate": 0.0,
                        }));
                    }
                }
                Err(e) => return Err(e.into()),
            }
            let pass = worst <= 1e-6;
            let mut out = Output::new(
                "somos4 closed-form",
                cfg,
                json!({"rows": rows, "max_relative_error": worst, "tolerance": 1e-6, "pass": pass}),
            );
            out.csv = Some(csv_rows.join("\n") + "\n");
            out.pass = pass;
            Ok(out)
        }
        Somos4Cmd::Laurent { n, cap } => {
            let rep = laurent_check(*n, *cap)?;
            let pass = rep.pass;
            let mut out = Output::new(
                "somos4 laurent",
                json!({"n": n, "cap": cap}),
                serde_json::to_value(&rep).expect("report serialises"),
            );
            out.pass = pass;
            Ok(out)
        }
    }
}
