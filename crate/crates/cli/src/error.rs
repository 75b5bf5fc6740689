use serde_json::json;

#[derive(Debug)]
pub enum CliError {
    /// Bad input: exit code 1.
    Validation(String),
    /// The computation itself failed: exit code 2.
    Computation { kind: &'static str, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Computation { .. } => 2,
        }
    }

    pub fn to_json(&self) -> String {
        let v = match self {
            CliError::Validation(m) => json!({"error": "validation", "message": m}),
            CliError::Computation { kind, message } => json!({"error": kind, "message": message}),
        };
        v.to_string()
    }
}

macro_rules! computation_from {
    ($($t:ty => $kind:expr),* $(,)?) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Computation { kind: $kind, message: e.to_string() }
            }
        })*
    };
}

computation_from! {
    somos_core::recurrence::RecurrenceError => "recurrence",
    somos_core::solver::SolverError => "solver",
    somos_core::weierstrass::WeierstrassError => "weierstrass",
    somos_core::genus2::Genus2Error => "genus2",
    somos_core::schur::SchurError => "schur",
    somos_core::henon_heiles::HHError => "henon_heiles",
    somos_core::algebra::AlgebraError => "algebra",
}
