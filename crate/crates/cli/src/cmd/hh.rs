use clap::{Args, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};
use somos_core::henon_heiles::{
    self as hh, bt_step_coords, cross_check_jacobian, separation_variables, Branch, LaxCoords, Separation,
};
use somos_core::{format_rational, HHParams, HHState, Rational};

use super::strs;
use crate::error::CliError;
use crate::parse;
use crate::{Cli, Output};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum BranchArg {
    Continuity,
    Positive,
    Negative,
}

impl From<BranchArg> for Branch {
    fn from(b: BranchArg) -> Branch {
        match b {
            BranchArg::Continuity => Branch::Continuity,
            BranchArg::Positive => Branch::Positive,
            BranchArg::Negative => Branch::Negative,
        }
    }
}

#[derive(Args, Debug)]
pub struct SystemArgs {
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    a: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    c: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    m: String,
    /// `q1,q2,p1,p2`.
    #[arg(long, allow_hyphen_values = true)]
    state: String,
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    #[arg(long, default_value_t = 10)]
    steps: usize,
    /// Sign of `μ = ±√f(λ)`.
    #[arg(long, default_value = "+1", value_parser = parse::mu_sign, allow_hyphen_values = true)]
    mu_sign: i8,
}

impl SystemArgs {
    fn config(&self, extra: Value) -> Value {
        let mut v = json!({
            "a": self.a, "c": self.c, "m": self.m,
            "state": self.state, "lambda": self.lambda,
            "steps": self.steps, "mu_sign": self.mu_sign,
        });
        if let (Value::Object(m), Value::Object(e)) = (&mut v, extra) {
            m.extend(e);
        }
        v
    }

    fn exact(&self) -> Result<(HHState<Rational>, HHParams<Rational>, Rational), CliError> {
        let s = parse::exactly(parse::rational_list(&self.state)?, 4, "--state")?;
        let st = HHState::new(s[0].clone(), s[1].clone(), s[2].clone(), s[3].clone());
        let pr = HHParams::new(
            parse::rational(&self.a)?,
            parse::rational(&self.c)?,
            parse::rational(&self.m)?,
        );
        Ok((st, pr, parse::rational(&self.lambda)?))
    }

    fn real(&self) -> Result<(HHState<f64>, HHParams<f64>, f64), CliError> {
        let s = parse::exactly(parse::real_list(&self.state)?, 4, "--state")?;
        let st = HHState::new(s[0], s[1], s[2], s[3]);
        let pr = HHParams::new(parse::real(&self.a)?, parse::real(&self.c)?, parse::real(&self.m)?);
        Ok((st, pr, parse::real(&self.lambda)?))
    }
}

#[derive(Subcommand, Debug)]
pub enum HhCmd {
    /// Iterates the BT, reporting the integrals and residuals at each step.
    Simulate {
        #[command(flatten)]
        sys: SystemArgs,
        /// Sign choice for the new `q1`.
        #[arg(long, value_enum, default_value_t = BranchArg::Continuity)]
        branch: BranchArg,
        /// Exact rational arithmetic on `(q1², q2, q1p1, p2)`.
        #[arg(long)]
        exact: bool,
    },
    /// Compares exact BT steps with Cantor arithmetic on the spectral curve.
    Crosscheck {
        #[command(flatten)]
        sys: SystemArgs,
    },
}

fn cjson(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn separation_json<T: hh::Scalar>(sep: &Separation<T>) -> Value {
    match sep.points() {
        Ok(pts) => json!(pts
            .iter()
            .map(|(x, y)| json!({"x": cjson(*x), "y": cjson(*y)}))
            .collect::<Vec<_>>()),
        Err(e) => json!({"error": e.to_string()}),
    }
}

fn exact_separation(sep: &Separation<Rational>) -> Value {
    json!({
        "U": strs(sep.u.coeffs()),
        "V": strs(sep.v.coeffs()),
        "points": separation_json(sep),
    })
}

fn coords_json(c: &LaxCoords<Rational>) -> Value {
    json!({
        "q1_sq": format_rational(&c.q1_sq),
        "q2": format_rational(&c.q2),
        "q1p1": format_rational(&c.q1p1),
        "p2": format_rational(&c.p2),
    })
}

pub fn run(cmd: &HhCmd, _cli: &Cli) -> Result<Output, CliError> {
    match cmd {
        HhCmd::Simulate {
            sys,
            branch,
            exact: false,
        } => {
            let (st, pr, lambda) = sys.real()?;
            let orbit = hh::simulate(&st, &pr, &lambda, sys.mu_sign, sys.steps, (*branch).into())?;
            let f = hh::spectral_curve(&st, &pr)?;
            let mut csv = vec!["step,q1,q2,p1,p2,h1,h2,lax_residual".to_string()];
            let steps: Vec<Value> = orbit
                .iter()
                .map(|r| {
                    let [q1, q2, p1, p2] = r.state.to_f64();
                    csv.push(format!(
                        "{},{q1:e},{q2:e},{p1:e},{p2:e},{:e},{:e},{:e}",
                        r.step, r.h1, r.h2, r.lax_residual
                    ));
                    json!({
                        "step": r.step,
                        "state": {"q1": q1, "q2": q2, "p1": p1, "p2": p2},
                        "h1": r.h1,
                        "h2": r.h2,
                        "lax_residual": r.lax_residual,
                        "separation_vars": separation_json(&r.separation),
                        "curve_residual": r.separation.curve_residual(&f).ok(),
                    })
                })
                .collect();
            let mut out = Output::new(
                "hh simulate",
                sys.config(json!({"branch": format!("{branch:?}").to_lowercase(), "exact": false})),
                json!({"spectral_curve": f, "steps": steps}),
            );
            out.csv = Some(csv.join("\n") + "\n");
            Ok(out)
        }
        HhCmd::Simulate {
            sys,
            branch,
            exact: true,
        } => {
            let (st, pr, lambda) = sys.exact()?;
            let f = hh::spectral_curve(&st, &pr)?;
            let mut co = st.coords();
            let mut prev_q1 = st.q1.clone();
            let mut steps = Vec::new();
            let mut residual = 0.0;
            for k in 0..=sys.steps {
                if k > 0 {
                    let step = bt_step_coords(&co, &pr, &lambda, sys.mu_sign)?;
                    residual = step.lax_residual;
                    co = step.coords;
                }
                let state = match co.to_state((*branch).into(), Some(&prev_q1)) {
                    Ok(s) => {
                        prev_q1 = s.q1.clone();
                        json!({"q1": format_rational(&s.q1), "q2": format_rational(&s.q2),
                               "p1": format_rational(&s.p1), "p2": format_rational(&s.p2)})
                    }
                    Err(_) => Value::Null,
                };
                let sep = separation_variables(&co, &pr);
                steps.push(json!({
                    "step": k,
                    "coords": coords_json(&co),
                    "state": state,
                    "h1": format_rational(&co.h1(&pr)?),
                    "h2": format_rational(&co.h2(&pr)?),
                    "lax_residual": residual,
                    "on_curve": sep.on_curve(&f),
                    "separation_vars": exact_separation(&sep),
                }));
            }
            Ok(Output::new(
                "hh simulate",
                sys.config(json!({"branch": format!("{branch:?}").to_lowercase(), "exact": true})),
                json!({"spectral_curve": strs(&f), "steps": steps}),
            ))
        }
        HhCmd::Crosscheck { sys } => {
            let (st, pr, lambda) = sys.exact()?;
            let rep = cross_check_jacobian(&st.coords(), &pr, &lambda, sys.mu_sign, sys.steps)?;
            let steps: Vec<Value> = rep
                .steps
                .iter()
                .map(
                    |s| json!({"n": s.n, "bt": s.bt.to_json(), "jacobian": s.jacobian.to_json(), "matches": s.matches}),
                )
                .collect();
            let mut out = Output::new(
                "hh crosscheck",
                sys.config(json!({})),
                json!({
                    "curve": rep.curve,
                    "step_point": rep.step_point,
                    "steps": steps,
                    "first_mismatch": rep.first_mismatch,
                    "pass": rep.pass,
                }),
            );
            out.pass = rep.pass;
            Ok(out)
        }
    }
}
