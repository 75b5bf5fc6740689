use clap::Subcommand;
use serde_json::json;
use somos_core::schur::{verify_all, DEFAULT_CAP};

use crate::error::CliError;
use crate::{Cli, Output};

#[derive(Subcommand, Debug)]
pub enum SchurCmd {
    /// Addition formula, order-8 coefficients, closed-form psi and the trilinear identity.
    Verify {
        /// Report every individual case rather than one line per identity.
        #[arg(long)]
        all: bool,
        /// Trilinear identity for `2 ≤ m ≤ cap`, `|n| ≤ cap`.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: i64,
    },
}

pub fn run(cmd: &SchurCmd, _cli: &Cli) -> Result<Output, CliError> {
    let SchurCmd::Verify { all, cap } = cmd;
    if *cap < 2 {
        return Err(CliError::Validation("--cap must be at least 2".into()));
    }
    let reps = verify_all(*cap)?;
    let pass = reps.iter().all(|r| r.pass);
    let mut text = String::new();
    let mut summary: Vec<(String, usize, usize)> = Vec::new();
    for r in &reps {
        match summary.iter_mut().find(|s| s.0 == r.identity) {
            Some(s) => {
                s.1 += 1;
                s.2 += usize::from(!r.pass);
            }
            None => summary.push((r.identity.clone(), 1, usize::from(!r.pass))),
        }
        if *all {
            let status = if r.pass { "PASS" } else { "FAIL" };
            text.push_str(&format!(
                "{} {:?} residual {} {status}\n",
                r.identity, r.indices, r.residual
            ));
        }
    }
    if !*all {
        for (name, n, bad) in &summary {
            let status = if *bad == 0 { "PASS" } else { "FAIL" };
            text.push_str(&format!(
                "{name}: {n} cases, residual {} {status}\n",
                if *bad == 0 { "0" } else { "nonzero" }
            ));
        }
    }
    let identities = if *all {
        serde_json::to_value(&reps).expect("reports serialise")
    } else {
        json!(summary
            .iter()
            .map(|(name, n, bad)| json!({
                "identity": name,
                "cases": n,
                "nonzero": bad,
                "residual": if *bad == 0 { "0" } else { "nonzero" },
                "pass": *bad == 0,
            }))
            .collect::<Vec<_>>())
    };
    let mut out = Output::new(
        "schur verify",
        json!({"all": all, "cap": cap}),
        json!({"identities": identities, "pass": pass}),
    );
    out.text = Some(text);
    out.pass = pass;
    Ok(out)
}
