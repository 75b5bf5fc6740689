use clap::Subcommand;
use serde_json::json;
use somos_core::reproduce::{criterion, run_all};

use crate::error::CliError;
use crate::{Cli, Format, Output};

#[derive(Subcommand, Debug)]
pub enum PaperCmd {
    /// Runs the acceptance suite and tabulates expected vs computed values.
    Reproduce {
        /// Run a single criterion (1-10).
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=10))]
        criterion: Option<u8>,
        /// Include wall-clock times in JSON output (not reproducible byte for byte).
        #[arg(long)]
        timings: bool,
    },
}

pub fn run(cmd: &PaperCmd, cli: &Cli) -> Result<Output, CliError> {
    let PaperCmd::Reproduce {
        criterion: which,
        timings,
    } = cmd;
    let reps = match which {
        Some(id) => vec![criterion(*id, cli.seed)],
        None => run_all(cli.seed),
    };
    let pass = reps.iter().all(|r| r.pass);
    let mut text = String::new();
    let w = reps
        .iter()
        .flat_map(|r| r.checks.iter().map(|c| c.quantity.chars().count()))
        .max()
        .unwrap_or(10)
        .max(8);
    for r in &reps {
        text.push_str(&r.line());
        text.push('\n');
        text.push_str(&format!(
            "    {:<w$}  {:<28}  {:<28}  {}\n",
            "quantity", "expected", "computed", "tolerance"
        ));
        for c in &r.checks {
            let mark = if c.pass { " " } else { "!" };
            text.push_str(&format!(
                "  {mark} {:<w$}  {:<28}  {:<28}  {}\n",
                c.quantity, c.expected, c.computed, c.tolerance
            ));
        }
    }
    let passed = reps.iter().filter(|r| r.pass).count();
    text.push_str(&format!("{passed}/{} criteria passed\n", reps.len()));
    let criteria: Vec<_> = reps
        .iter()
        .map(|r| {
            let mut v = json!({
                "id": r.id,
                "title": r.title,
                "checks": r.checks,
                "limit_s": r.limit_s,
                "error": r.error,
                "pass": r.pass,
            });
            if *timings {
                v["elapsed_s"] = json!(r.elapsed_s);
            }
            v
        })
        .collect();
    let mut out = Output::new(
        "paper reproduce",
        json!({"criterion": which, "seed": cli.seed}),
        json!({"criteria": criteria, "passed": passed, "pass": pass}),
    );
    out.text = Some(text);
    out.pass = pass;
    out.default_format = Format::Text;
    Ok(out)
}
