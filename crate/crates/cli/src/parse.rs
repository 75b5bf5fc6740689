use std::path::Path;

use serde::de::DeserializeOwned;
use somos_core::algebra::rational::to_f64;
use somos_core::{parse_rational, Rational};

use crate::error::CliError;

pub fn rational(s: &str) -> Result<Rational, CliError> {
    parse_rational(s.trim()).map_err(|e| CliError::Validation(format!("`{s}`: {e}")))
}

/// Comma-separated rationals, e.g. `1,-1,3/4`.
pub fn rational_list(s: &str) -> Result<Vec<Rational>, CliError> {
    s.split(',').map(rational).collect()
}

pub fn real(s: &str) -> Result<f64, CliError> {
    let t = s.trim();
    if let Ok(x) = t.parse::<f64>() {
        return Ok(x);
    }
    rational(t).map(|r| to_f64(&r))
}

pub fn real_list(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',').map(real).collect()
}

/// Points written `x:y`, separated by commas.
pub fn points(s: &str) -> Result<Vec<(Rational, Rational)>, CliError> {
    s.split(',')
        .map(|p| {
            let (x, y) = p
                .split_once(':')
                .ok_or_else(|| CliError::Validation(format!("point `{p}` is not of the form x:y")))?;
            Ok((rational(x)?, rational(y)?))
        })
        .collect()
}

pub fn json_file<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

pub fn exactly<T>(v: Vec<T>, n: usize, what: &str) -> Result<Vec<T>, CliError> {
    if v.len() != n {
        return Err(CliError::Validation(format!(
            "{what} needs {n} values, got {}",
            v.len()
        )));
    }
    Ok(v)
}

pub fn mu_sign(s: &str) -> Result<i8, String> {
    match s {
        "+" | "+1" | "1" | "plus" => Ok(1),
        "-" | "-1" | "minus" => Ok(-1),
        _ => Err(format!("`{s}` is not a sign (+1 or -1)")),
    }
}
