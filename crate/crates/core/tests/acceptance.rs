//! Acceptance suite: one PASS/FAIL line per criterion, always printed.
//!
//! Runs without the libtest harness so the table shows up in plain
//! `cargo test` output. Positional arguments filter by name, as with libtest.

use std::process::ExitCode;

use somos_core::reproduce::{criterion, DEFAULT_SEED};

const NAMES: [&str; 10] = [
    "c01_somos4_reproduction",
    "c02_eds_reproduction",
    "c03_exact_steps",
    "c04_uniformisation_constants",
    "c05_closed_form_round_trip",
    "c06_laurent_phenomenon",
    "c07_genus2_order8",
    "c08_schur_degenerate",
    "c09_henon_heiles_bt",
    "c10_weierstrass_self_checks",
];

fn main() -> ExitCode {
    let filters: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let selected: Vec<(u8, &str)> = (1u8..=10)
        .zip(NAMES)
        .filter(|(_, name)| filters.is_empty() || filters.iter().any(|f| name.contains(f.as_str())))
        .collect();
    if selected.is_empty() {
        return ExitCode::SUCCESS;
    }
    let mut failed = 0;
    for (id, _) in &selected {
        let r = criterion(*id, DEFAULT_SEED);
        println!("{}", r.line());
        for c in r.checks.iter().filter(|c| !c.pass) {
            println!(
                "    failed: {} expected {} computed {} (tol {})",
                c.quantity, c.expected, c.computed, c.tolerance
            );
        }
        failed += usize::from(!r.pass);
    }
    println!("acceptance: {} passed, {failed} failed", selected.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
