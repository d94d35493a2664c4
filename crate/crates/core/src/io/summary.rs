use std::f64::consts::FRAC_PI_4;
use std::fmt::Write;
use std::path::Path;

use serde::Serialize;

use crate::cost::CostReport;
use crate::error::Result;
use crate::gate::{CanonicalGateVector, LocalFactorization};
use crate::hamiltonian::HamiltonianVector;
use crate::linalg::{sigma_sigma_coefficients, sigma_sigma_sum, Mat2};
use crate::order::{OrderVerdict, Relation};
use crate::protocol::SimulationSchedule;

use super::json::{to_json, write_text};

/// Anything the command line reports.
#[derive(Clone, Copy, Debug)]
pub enum Report<'a> {
    Gate(&'a GateReport),
    Hamiltonian(&'a HamiltonianReport),
    Cost(&'a CostReport),
    Order(&'a OrderVerdict),
    /// Segment vertices are read back using the coupling.
    Schedule(&'a SimulationSchedule, &'a HamiltonianVector),
}

impl Report<'_> {
    pub fn summary(&self) -> String {
        match self {
            Report::Gate(r) => summarize_gate(r),
            Report::Hamiltonian(r) => summarize_hamiltonian(r),
            Report::Cost(r) => summarize_cost(r),
            Report::Order(r) => summarize_order(r),
            Report::Schedule(r, h) => summarize_schedule(r, h),
        }
    }

    pub fn json(&self) -> Result<String> {
        match self {
            Report::Gate(r) => to_json(r),
            Report::Hamiltonian(r) => to_json(r),
            Report::Cost(r) => to_json(r),
            Report::Order(r) => to_json(r),
            Report::Schedule(r, _) => to_json(r),
        }
    }
}

/// Human-readable summary of `report`; also writes its JSON to `json`
/// (`-` for standard output) when given.
pub fn emit_report(report: &Report<'_>, json: Option<&Path>) -> Result<String> {
    if let Some(path) = json {
        let mut text = report.json()?;
        text.push('\n');
        write_text(&text, path)?;
    }
    Ok(report.summary())
}

/// Canonical decomposition as reported by `canon-gate`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GateReport {
    pub lambda: CanonicalGateVector,
    pub global_phase: [f64; 2],
    pub u1: Mat2,
    pub v1: Mat2,
    pub u2: Mat2,
    pub v2: Mat2,
    pub residual: f64,
}

impl GateReport {
    pub fn new(f: &LocalFactorization, residual: f64) -> Self {
        GateReport {
            lambda: f.core,
            global_phase: [f.global_phase.re, f.global_phase.im],
            u1: f.u1,
            v1: f.v1,
            u2: f.u2,
            v2: f.v2,
            residual,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HamiltonianReport {
    pub h: HamiltonianVector,
}

/// `π/4`, `3π/4`, `-π/2`, ... when `x` is a nonzero integer multiple of π/4.
pub fn format_angle(x: f64) -> Option<String> {
    let k = x / FRAC_PI_4;
    let n = k.round();
    if n == 0.0 || (k - n).abs() > 1e-9 * n.abs() {
        return None;
    }
    let n = n as i64;
    let g = gcd(n.unsigned_abs(), 4) as i64;
    let (num, den) = (n / g, 4 / g);
    let sign = if num < 0 { "-" } else { "" };
    let coeff = match num.abs() {
        1 => String::new(),
        a => a.to_string(),
    };
    Some(match den {
        1 => format!("{sign}{coeff}π"),
        d => format!("{sign}{coeff}π/{d}"),
    })
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

// Decomposition round-off below this is shown as zero in summaries.
const DISPLAY_ZERO: f64 = 1e-12;

fn value(x: f64) -> String {
    match format_angle(x) {
        Some(a) => a,
        None if x.abs() < DISPLAY_ZERO => "0".to_string(),
        None => format!("{x}"),
    }
}

fn vector(v: [f64; 3]) -> String {
    format!("({}, {}, {})", value(v[0]), value(v[1]), value(v[2]))
}

fn annotated(x: f64) -> String {
    match format_angle(x) {
        Some(a) => format!("{x} ({a})"),
        None => format!("{x}"),
    }
}

pub fn summarize_gate(r: &GateReport) -> String {
    format!(
        "λ = {}\nreconstruction residual = {:.3e}\n",
        vector(r.lambda.as_array()),
        r.residual
    )
}

pub fn summarize_hamiltonian(r: &HamiltonianReport) -> String {
    format!("h = {}\n", vector(r.h.as_array()))
}

pub fn summarize_cost(r: &CostReport) -> String {
    let mut s = format!(
        "λ = {}\nh = {}\n",
        vector(r.lambda.as_array()),
        vector(r.h.as_array())
    );
    if r.feasible {
        writeln!(s, "cost = {}, branch {}", annotated(r.cost), r.branch).unwrap();
    } else {
        s.push_str("cost = infinite (gate is non-local, interaction is zero)\n");
    }
    s
}

pub fn summarize_order(r: &OrderVerdict) -> String {
    let mut s = format!(
        "V = {}\nU = {}\n",
        vector(r.lambda_v.as_array()),
        vector(r.lambda_u.as_array())
    );
    let relation = match r.relation {
        Relation::LessOrEqual => "V ≤ U",
        Relation::GreaterOrEqual => "U ≤ V",
        Relation::Equal => "V = U",
        Relation::Incomparable => "incomparable",
        Relation::Undetermined => "undetermined",
    };
    let basis = if r.exact {
        "exact"
    } else {
        "dominance check and witness search"
    };
    writeln!(s, "relation: {relation} ({basis})").unwrap();
    for w in &r.witnesses {
        writeln!(
            s,
            "witness h = {}: C(V) = {}, C(U) = {}",
            vector(w.h.as_array()),
            annotated(w.cost_v),
            annotated(w.cost_u)
        )
        .unwrap();
    }
    s
}

pub fn summarize_schedule(r: &SimulationSchedule, h: &HamiltonianVector) -> String {
    let mut s = format!(
        "total time = {}, branch {}, {} segment{}\n",
        annotated(r.total_time),
        r.branch,
        r.segments.len(),
        if r.segments.len() == 1 { "" } else { "s" }
    );
    let ham = sigma_sigma_sum(h.as_array());
    for seg in &r.segments {
        let k = seg.post_local_a.kron(&seg.post_local_b);
        let v = sigma_sigma_coefficients(&(k * ham * k.adjoint()));
        writeln!(
            s,
            "  {} under {}",
            annotated(seg.duration),
            vector(v.map(|x| x + 0.0))
        )
        .unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::cost::interaction_cost;

    #[test]
    fn angles() {
        assert_eq!(format_angle(FRAC_PI_4).as_deref(), Some("π/4"));
        assert_eq!(format_angle(PI / 2.0).as_deref(), Some("π/2"));
        assert_eq!(format_angle(3.0 * FRAC_PI_4).as_deref(), Some("3π/4"));
        assert_eq!(format_angle(PI).as_deref(), Some("π"));
        assert_eq!(format_angle(-PI / 2.0).as_deref(), Some("-π/2"));
        assert_eq!(format_angle(2.0 * PI).as_deref(), Some("2π"));
        assert_eq!(format_angle(0.0), None);
        assert_eq!(format_angle(1.0), None);
    }

    #[test]
    fn cost_lines() {
        let r = interaction_cost(&CanonicalGateVector::CNOT, &HamiltonianVector::ISING);
        assert!(summarize_cost(&r).contains("cost = 0.7853981633974483 (π/4), branch (0,0,0)\n"));
        let r = interaction_cost(&CanonicalGateVector::CNOT, &HamiltonianVector::ZERO);
        assert!(
            summarize_cost(&r).contains("cost = infinite (gate is non-local, interaction is zero)")
        );
    }

    #[test]
    fn emit_report_writes_json_and_returns_summary() {
        let r = interaction_cost(&CanonicalGateVector::CNOT, &HamiltonianVector::ISING);
        let dir = std::env::temp_dir().join(format!("gatecost-emit-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("cost.json");
        let summary = emit_report(&Report::Cost(&r), Some(&path)).unwrap();
        assert_eq!(summary, summarize_cost(&r));
        let written = std::fs::read_to_string(&path).unwrap();
        assert_eq!(written.trim_end(), to_json(&r).unwrap());
        std::fs::remove_dir_all(&dir).unwrap();
        assert_eq!(emit_report(&Report::Cost(&r), None).unwrap(), summary);
    }
}
