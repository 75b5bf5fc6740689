use std::io::Write;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::RecurrenceError;
use crate::algebra::rational::{self, serde_vec};
use crate::algebra::Rational;

/// Contiguous run of terms `τ_offset, τ_offset+1, …` indexed over ℤ.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SequenceWindow {
    pub offset: i64,
    #[serde(with = "serde_vec")]
    pub terms: Vec<Rational>,
}

impl SequenceWindow {
    pub fn new(offset: i64, terms: Vec<Rational>) -> Self {
        SequenceWindow { offset, terms }
    }

    pub fn lo(&self) -> i64 {
        self.offset
    }

    /// Last index held (one below `lo` for an empty window).
    pub fn hi(&self) -> i64 {
        self.offset + self.terms.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, n: i64) -> bool {
        n >= self.lo() && n <= self.hi()
    }

    pub fn get(&self, n: i64) -> Option<&Rational> {
        if self.contains(n) {
            self.terms.get((n - self.offset) as usize)
        } else {
            None
        }
    }

    /// Like [`get`](Self::get) but with a structured range error.
    pub fn at(&self, n: i64) -> Result<&Rational, RecurrenceError> {
        self.get(n).ok_or(RecurrenceError::Range {
            index: n,
            lo: self.lo(),
            hi: self.hi(),
        })
    }

    pub fn indices(&self) -> impl Iterator<Item = i64> {
        self.lo()..=self.hi()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &Rational)> {
        (self.offset..).zip(self.terms.iter())
    }

    /// Indices of exact zeros.
    pub fn zeros(&self) -> Vec<i64> {
        self.iter().filter(|(_, t)| t.is_zero()).map(|(n, _)| n).collect()
    }

    /// Sub-window `[lo, hi]`.
    pub fn slice(&self, lo: i64, hi: i64) -> Result<SequenceWindow, RecurrenceError> {
        self.at(lo)?;
        self.at(hi)?;
        let a = (lo - self.offset) as usize;
        let b = (hi - self.offset) as usize;
        Ok(SequenceWindow::new(lo, self.terms[a..=b].to_vec()))
    }

    /// `τₙ ↦ a·bⁿ·τₙ`.
    pub fn gauge(&self, a: &Rational, b: &Rational) -> SequenceWindow {
        let terms = self.iter().map(|(n, t)| a * rational::pow(b, n) * t).collect();
        SequenceWindow::new(self.offset, terms)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.terms.iter().map(rational::to_f64).collect()
    }

    /// CSV with columns `index,numerator,denominator`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<(), csv::Error> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(["index", "numerator", "denominator"])?;
        for (n, t) in self.iter() {
            wr.write_record([n.to_string(), t.numer().to_string(), t.denom().to_string()])?;
        }
        wr.flush()?;
        Ok(())
    }

    pub fn read_csv<R: std::io::Read>(r: R) -> Result<SequenceWindow, RecurrenceError> {
        let mut rd = csv::Reader::from_reader(r);
        let mut offset = None;
        let mut terms = Vec::new();
        for rec in rd.records() {
            let rec = rec.map_err(|e| RecurrenceError::Invalid(e.to_string()))?;
            let field = |i: usize| rec.get(i).unwrap_or("").trim().to_string();
            let n: i64 = field(0)
                .parse()
                .map_err(|_| RecurrenceError::Invalid(format!("bad index `{}`", field(0))))?;
            let expected = offset.map(|o: i64| o + terms.len() as i64);
            if let Some(e) = expected {
                if e != n {
                    return Err(RecurrenceError::Invalid(format!(
                        "non-contiguous index {n}, expected {e}"
                    )));
                }
            } else {
                offset = Some(n);
            }
            let t = rational::parse_rational(&format!("{}/{}", field(1), field(2)))?;
            terms.push(t);
        }
        Ok(SequenceWindow::new(offset.unwrap_or(0), terms))
    }

    /// Text form `τ_lo, …, τ_hi` with each term as `p` or `p/q`.
    pub fn display_terms(&self) -> String {
        self.terms
            .iter()
            .map(rational::format_rational)
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn from_ints(offset: i64, v: &[i64]) -> Self {
        SequenceWindow::new(offset, v.iter().map(|&x| rational::int(x)).collect())
    }
}
