//! Text formats: gate and Hamiltonian specs, JSON reports, summaries and
//! CSV charts.

mod chart;
mod json;
mod named;
mod summary;

pub use chart::{chart_cell, chart_cone, chart_grid, ChartAxis};
pub use json::{matrix_from_json, matrix_to_json, to_json, write_json};
pub use named::{parse_gate, parse_hamiltonian, NamedGate, ParsedHamiltonian};
pub use summary::{
    emit_report, format_angle, summarize_cost, summarize_gate, summarize_hamiltonian,
    summarize_order, summarize_schedule, GateReport, HamiltonianReport, Report,
};

use crate::error::{Error, Result};
use crate::tolerance::Tolerance;

/// Environment variable that overrides the default scalar tolerance.
pub const TOL_ENV: &str = "GATECOST_TOL";

/// Tolerance from `GATECOST_TOL` if set, the built-in default otherwise.
pub fn tolerance_from_env() -> Result<Tolerance> {
    match std::env::var(TOL_ENV) {
        Ok(s) => {
            let tol: f64 = s
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("{TOL_ENV}={s:?} is not a number")))?;
            if !(tol > 0.0 && tol.is_finite()) {
                return Err(Error::Parse(format!(
                    "{TOL_ENV} must be positive, got {tol}"
                )));
            }
            Ok(Tolerance::from_scalar(tol))
        }
        Err(_) => Ok(Tolerance::default()),
    }
}
