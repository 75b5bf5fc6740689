use std::path::PathBuf;

use clap::{Args, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};
use somos_core::genus2::{
    bolza_seq, fit_somos8, tau_from_f, usable_rows, verify_sixth_order, verify_somos8, BolzaSequence, DivisorJson,
};
use somos_core::{format_rational, CurvePoint, MumfordDivisor, QuinticCurve, Rational};

use super::strs;
use crate::error::CliError;
use crate::parse;
use crate::{Cli, Output};

#[derive(Deserialize)]
#[serde(untagged)]
enum DivisorSpec {
    Points { points: Vec<CurvePoint> },
    Mumford(DivisorJson),
}

/// JSON input shared by the genus-two commands.
#[derive(Deserialize)]
struct G2Spec {
    curve: QuinticCurve,
    d0: Option<DivisorSpec>,
    p: Option<CurvePoint>,
    lo: Option<i64>,
    hi: Option<i64>,
}

#[derive(Args, Debug)]
pub struct CurveArgs {
    /// `c0,c1,c2,c3,c4` of `y² = 4x⁵ + c4x⁴ + c3x³ + c2x² + c1x + c0`.
    #[arg(long, allow_hyphen_values = true)]
    curve: Option<String>,
    /// Base divisor as points `x1:y1,x2:y2`.
    #[arg(long, allow_hyphen_values = true)]
    d0: Option<String>,
    /// Step point `x:y`.
    #[arg(long, allow_hyphen_values = true)]
    p: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    lo: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    hi: Option<i64>,
    /// JSON file with `curve`, `d0`, `p`, `lo`, `hi`; flags override it.
    #[arg(long)]
    input: Option<PathBuf>,
}

struct Resolved {
    curve: QuinticCurve,
    d0: Option<MumfordDivisor>,
    p: Option<CurvePoint>,
    lo: i64,
    hi: i64,
}

impl Resolved {
    fn config(&self) -> Value {
        json!({
            "curve": self.curve,
            "d0": self.d0.as_ref().map(|d| d.to_json()),
            "p": self.p,
            "lo": self.lo,
            "hi": self.hi,
        })
    }

    fn need(&self) -> Result<(&MumfordDivisor, &CurvePoint), CliError> {
        match (&self.d0, &self.p) {
            (Some(d), Some(p)) => Ok((d, p)),
            _ => Err(CliError::Validation(
                "a base divisor (--d0) and a step point (--p) are required".into(),
            )),
        }
    }

    fn sequence(&self) -> Result<BolzaSequence, CliError> {
        let (d0, p) = self.need()?;
        Ok(bolza_seq(&self.curve, d0, p, self.lo, self.hi)?)
    }
}

fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Validation(e.to_string())
}

impl CurveArgs {
    fn resolve(&self) -> Result<Resolved, CliError> {
        let spec: Option<G2Spec> = self.input.as_deref().map(parse::json_file).transpose()?;
        let coeffs: Option<Vec<Rational>> = match &self.curve {
            Some(s) => Some(parse::exactly(parse::rational_list(s)?, 5, "--curve")?),
            None => None,
        };
        let curve = match (coeffs, spec.as_ref()) {
            (Some(c), _) => {
                let [c0, c1, c2, c3, c4]: [Rational; 5] = c.try_into().expect("five coefficients");
                QuinticCurve::new([c0, c1, c2, c3, c4]).map_err(invalid)?
            }
            (None, Some(s)) => {
                s.curve.validate().map_err(invalid)?;
                s.curve.clone()
            }
            (None, None) => return Err(CliError::Validation("--curve or --input is required".into())),
        };
        let d0 = match (&self.d0, spec.as_ref().and_then(|s| s.d0.as_ref())) {
            (Some(s), _) => Some(points_divisor(&curve, &parse::points(s)?)?),
            (None, Some(DivisorSpec::Points { points })) => {
                let pts: Vec<(Rational, Rational)> = points.iter().map(|p| (p.x.clone(), p.y.clone())).collect();
                Some(points_divisor(&curve, &pts)?)
            }
            (None, Some(DivisorSpec::Mumford(j))) => {
                let d = MumfordDivisor::from_json(j);
                curve.check(&d).map_err(invalid)?;
                Some(d)
            }
            (None, None) => None,
        };
        let p = match (&self.p, spec.as_ref().and_then(|s| s.p.clone())) {
            (Some(s), _) => {
                let pts = parse::exactly(parse::points(s)?, 1, "--p")?;
                let (x, y) = pts.into_iter().next().expect("one point");
                Some(curve.point(x, y).map_err(invalid)?)
            }
            (None, Some(p)) => Some(curve.point(p.x, p.y).map_err(invalid)?),
            (None, None) => None,
        };
        let lo = self.lo.or(spec.as_ref().and_then(|s| s.lo)).unwrap_or(-20);
        let hi = self.hi.or(spec.as_ref().and_then(|s| s.hi)).unwrap_or(20);
        if lo > 0 || hi < 0 {
            return Err(CliError::Validation("the range [lo, hi] must contain 0".into()));
        }
        Ok(Resolved { curve, d0, p, lo, hi })
    }
}

fn points_divisor(curve: &QuinticCurve, pts: &[(Rational, Rational)]) -> Result<MumfordDivisor, CliError> {
    let cp = pts
        .iter()
        .map(|(x, y)| curve.point(x.clone(), y.clone()))
        .collect::<Result<Vec<_>, _>>()
        .map_err(invalid)?;
    curve.divisor_of_points(&cp).map_err(invalid)
}

#[derive(Subcommand, Debug)]
pub enum G2Cmd {
    /// Checks the curve is smooth and the points lie on it.
    Validate {
        #[command(flatten)]
        args: CurveArgs,
    },
    /// `𝒟ₙ = 𝒟₀ + n(P − ∞)` and `fₙ = Uₙ(λ)`.
    Seq {
        #[command(flatten)]
        args: CurveArgs,
    },
    /// Fits the order-8 coefficients `α₀..α₃`.
    Fit {
        #[command(flatten)]
        args: CurveArgs,
    },
    /// Fits, then checks the order-8 and sixth-order recurrences on every row.
    Verify {
        #[command(flatten)]
        args: CurveArgs,
        /// Check these coefficients instead of fitting, `a0,a1,a2,a3`.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
    },
}

/// Longest gap-free run of `f`, and `τ` on it.
fn tau_on_longest(seq: &BolzaSequence) -> Result<(i64, i64, somos_core::SequenceWindow), CliError> {
    let (lo, hi) = *seq
        .segments()
        .iter()
        .max_by_key(|(a, b)| b - a)
        .ok_or_else(|| CliError::Computation {
            kind: "genus2",
            message: "no gap-free run".into(),
        })?;
    Ok((lo, hi, tau_from_f(seq, lo, hi)?))
}

pub fn run(cmd: &G2Cmd, _cli: &Cli) -> Result<Output, CliError> {
    match cmd {
        G2Cmd::Validate { args } => {
            let r = args.resolve()?;
            let result = json!({
                "curve": r.curve,
                "smooth": true,
                "d0": r.d0.as_ref().map(|d| d.to_json()),
                "p": r.p,
                "valid": true,
            });
            Ok(Output::new("g2 validate", r.config(), result))
        }
        G2Cmd::Seq { args } => {
            let r = args.resolve()?;
            let (d0, p) = r.need()?;
            let divs = r.curve.divisor_sequence(d0, p, r.lo, r.hi)?;
            let mut rows = Vec::new();
            let mut csv = vec!["index,f,U,V".to_string()];
            for (n, d) in &divs {
                let f = (d.degree() == 2).then(|| format_rational(&d.u.eval(&p.x)));
                let j = d.to_json();
                csv.push(format!(
                    "{n},{},\"{}\",\"{}\"",
                    f.clone().unwrap_or_default(),
                    strs(&j.u).join(" "),
                    strs(&j.v).join(" ")
                ));
                rows.push(json!({"n": n, "f": f, "divisor": j}));
            }
            let gaps: Vec<i64> = divs.iter().filter(|(_, d)| d.degree() != 2).map(|(n, _)| *n).collect();
            let mut out = Output::new(
                "g2 seq",
                r.config(),
                json!({"lambda": format_rational(&p.x), "gaps": gaps, "rows": rows}),
            );
            out.csv = Some(csv.join("\n") + "\n");
            Ok(out)
        }
        G2Cmd::Fit { args } => {
            let r = args.resolve()?;
            let seq = r.sequence()?;
            let (lo, hi, t) = tau_on_longest(&seq)?;
            let alpha = fit_somos8(&t)?;
            let result = json!({
                "gaps": seq.gaps(),
                "segment": [lo, hi],
                "tau": {"offset": t.offset, "terms": strs(&t.terms)},
                "usable_rows": usable_rows(&t),
                "alpha": strs(&alpha),
            });
            Ok(Output::new("g2 fit", r.config(), result))
        }
        G2Cmd::Verify { args, alpha } => {
            let r = args.resolve()?;
            let seq = r.sequence()?;
            let (lo, hi, t) = tau_on_longest(&seq)?;
            let alpha: [Rational; 4] = match alpha {
                Some(s) => parse::exactly(parse::rational_list(s)?, 4, "--alpha")?
                    .try_into()
                    .expect("four coefficients"),
                None => fit_somos8(&t)?,
            };
            let v8 = verify_somos8(&t, &alpha);
            let v6 = verify_sixth_order(&seq, &alpha);
            let pass = v8.pass && v6.pass;
            let mut out = Output::new(
                "g2 verify",
                r.config(),
                json!({
                    "segment": [lo, hi],
                    "alpha": strs(&alpha),
                    "somos8": v8,
                    "sixth_order": v6,
                    "pass": pass,
                }),
            );
            out.pass = pass;
            Ok(out)
        }
    }
}
