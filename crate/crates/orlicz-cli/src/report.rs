//! Report envelope and tolerance echo.

use serde::Serialize;
use serde_json::Value;

/// Numerical settings echoed into every report header. `ORLICZ_TOL`
/// overrides the root/quadrature tolerance; internal searches run at or
/// below this bound.
#[derive(Clone, Debug, Serialize)]
pub struct Tolerances {
    pub root_tol: f64,
    pub limit_agreement: f64,
    pub series_n_max: u64,
    pub series_window: u64,
}

impl Tolerances {
    pub fn from_env() -> Self {
        let root_tol = std::env::var("ORLICZ_TOL")
            .ok()
            .and_then(|s| s.parse::<f64>().ok())
            .filter(|t| *t > 0.0)
            .unwrap_or(1e-10);
        Tolerances {
            root_tol,
            limit_agreement: 0.01,
            series_n_max: 100_000,
            series_window: 200,
        }
    }

    pub fn series_policy(&self) -> orlicz::series::SummabilityPolicy {
        orlicz::series::SummabilityPolicy {
            n_max: self.series_n_max,
            window: self.series_window,
            ..Default::default()
        }
    }
}

/// Wraps a payload with the command name and the tolerance header, rendered
/// as deterministic pretty JSON.
pub fn envelope(command: &str, tolerances: &Tolerances, payload: &impl Serialize) -> String {
    #[derive(Serialize)]
    struct Envelope<'a> {
        command: &'a str,
        tolerances: &'a Tolerances,
        report: Value,
    }
    let env = Envelope {
        command,
        tolerances,
        report: serde_json::to_value(payload).expect("serializable payload"),
    };
    serde_json::to_string_pretty(&env).expect("serializable envelope")
}
