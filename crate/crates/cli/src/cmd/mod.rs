pub mod eds;
pub mod g2;
pub mod hh;
pub mod paper;
pub mod schur;
pub mod somos4;

use somos_core::{format_rational, Rational};

pub fn strs(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

pub fn csv_string(f: impl FnOnce(&mut Vec<u8>) -> Result<(), csv::Error>) -> String {
    let mut buf = Vec::new();
    f(&mut buf).expect("writing CSV to memory");
    String::from_utf8(buf).expect("CSV output is UTF-8")
}
