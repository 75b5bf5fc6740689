mod cmd;
mod error;
mod parse;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use error::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "somos",
    version,
    about = "Somos sequences, sigma functions and the Henon-Heiles BT"
)]
pub struct Cli {
    /// Working precision in decimal digits for multiprecision evaluation.
    #[arg(long, global = true, env = "SOMOS_DIGITS", default_value_t = 25)]
    pub digits: u32,

    /// Output format; JSON by default, a text table for `paper reproduce`.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Seed for randomised checks.
    #[arg(long, global = true, default_value_t = somos_core::reproduce::DEFAULT_SEED)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Somos-4 sequences and their elliptic closed form.
    #[command(subcommand)]
    Somos4(cmd::somos4::Somos4Cmd),
    /// Elliptic divisibility sequences.
    #[command(subcommand)]
    Eds(cmd::eds::EdsCmd),
    /// Genus-two Jacobian sequences and the order-8 recurrence.
    #[command(subcommand)]
    G2(cmd::g2::G2Cmd),
    /// Symbolic identities of the degenerate genus-two case.
    #[command(subcommand)]
    Schur(cmd::schur::SchurCmd),
    /// Henon-Heiles Backlund transformation.
    #[command(subcommand)]
    Hh(cmd::hh::HhCmd),
    /// Reproduction of the published values.
    #[command(subcommand)]
    Paper(cmd::paper::PaperCmd),
}

/// What a command produced; `pass = false` turns into exit code 3.
pub struct Output {
    pub command: &'static str,
    pub config: Value,
    pub result: Value,
    pub csv: Option<String>,
    pub text: Option<String>,
    pub pass: bool,
    pub default_format: Format,
}

impl Output {
    pub fn new(command: &'static str, config: Value, result: Value) -> Self {
        Output {
            command,
            config,
            result,
            csv: None,
            text: None,
            pass: true,
            default_format: Format::Json,
        }
    }

    fn render(&self, cli: &Cli) -> Result<String, CliError> {
        match cli.format.unwrap_or(self.default_format) {
            Format::Json => {
                let doc = json!({
                    "command": self.command,
                    "config": self.config,
                    "digits": cli.digits,
                    "result": self.result,
                });
                Ok(serde_json::to_string_pretty(&doc).expect("json values serialise") + "\n")
            }
            Format::Csv => self
                .csv
                .clone()
                .ok_or_else(|| CliError::Validation(format!("`{}` has no CSV output", self.command))),
            Format::Text => Ok(self
                .text
                .clone()
                .unwrap_or_else(|| serde_json::to_string_pretty(&self.result).expect("json values serialise") + "\n")),
        }
    }
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Somos4(c) => cmd::somos4::run(c, cli),
        Command::Eds(c) => cmd::eds::run(c, cli),
        Command::G2(c) => cmd::g2::run(c, cli),
        Command::Schur(c) => cmd::schur::run(c, cli),
        Command::Hh(c) => cmd::hh::run(c, cli),
        Command::Paper(c) => cmd::paper::run(c, cli),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let out = run(&cli).and_then(|o| o.render(&cli).map(|s| (s, o.pass)));
    match out {
        Ok((s, pass)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(s.as_bytes()).is_err() {
                return ExitCode::from(2);
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code())
        }
    }
}
