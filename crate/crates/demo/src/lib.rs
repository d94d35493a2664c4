//! Browser bindings: gate cost, a cost heatmap over a slice of the
//! canonical cell, and gate comparison. Results come back as JSON strings
//! so that failures can be shown in the page instead of thrown.

use std::f64::consts::FRAC_PI_4;

use gatecost::io::{summarize_cost, summarize_order, to_json};
use gatecost::{
    canonical_vector, compare_general, interaction_cost, parse_gate, parse_hamiltonian,
    CanonicalGateVector, HamiltonianVector, Tolerance,
};
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Serialize)]
struct Answer<T> {
    summary: String,
    warnings: Vec<String>,
    report: T,
}

#[derive(Serialize)]
struct Failure {
    error: String,
}

fn respond<T: Serialize>(result: Result<Answer<T>, String>) -> String {
    let text = match result {
        Ok(answer) => to_json(&answer),
        Err(error) => to_json(&Failure { error }),
    };
    text.unwrap_or_else(|e| format!("{{\"error\":\"{e}\"}}"))
}

fn gate_vector(spec: &str) -> Result<CanonicalGateVector, String> {
    let tol = Tolerance::default();
    let u = parse_gate(spec, &tol).map_err(|e| e.to_string())?;
    canonical_vector(&u).map_err(|e| e.to_string())
}

fn hamiltonian(spec: &str) -> Result<(HamiltonianVector, Vec<String>), String> {
    let tol = Tolerance::default();
    let parsed = parse_hamiltonian(spec, &tol).map_err(|e| e.to_string())?;
    let h = gatecost::canonical_hamiltonian(&parsed.input).map_err(|e| e.to_string())?;
    Ok((h, parsed.warnings))
}

/// Cost of `gate` (e.g. `cnot`, `canonical:0.6,0.3,0.1`) under `ham`
/// (e.g. `heisenberg`, `vec:1,0.5,0`).
#[wasm_bindgen]
pub fn gate_cost(gate: &str, ham: &str) -> String {
    respond((|| {
        let lambda = gate_vector(gate)?;
        let (h, warnings) = hamiltonian(ham)?;
        let report = interaction_cost(&lambda, &h);
        Ok(Answer {
            summary: summarize_cost(&report),
            warnings,
            report,
        })
    })())
}

/// Row-major `resolution × resolution` grid of costs on the slice
/// `λ3 = l3` of the canonical cell, `λ1` along columns and `λ2` along rows,
/// both from 0 to π/4. Points outside the cell are NaN.
#[wasm_bindgen]
pub fn cost_landscape(h1: f64, h2: f64, h3: f64, l3: f64, resolution: usize) -> Vec<f64> {
    let n = resolution.max(2);
    let Ok(h) = HamiltonianVector::new([h1, h2, h3], 1e-12) else {
        return vec![f64::NAN; n * n];
    };
    let step = |k: usize| FRAC_PI_4 * (k as f64 / (n - 1) as f64);
    let mut out = Vec::with_capacity(n * n);
    for row in 0..n {
        for col in 0..n {
            let cost = CanonicalGateVector::new(step(col), step(row), l3, 1e-12)
                .map(|g| interaction_cost(&g, &h).cost)
                .unwrap_or(f64::NAN);
            out.push(cost);
        }
    }
    out
}

/// Whether `v` is less non-local than `u`, with witness couplings.
#[wasm_bindgen]
pub fn compare(v: &str, u: &str, samples: u32, seed: u32) -> String {
    respond((|| {
        let (v, u) = (gate_vector(v)?, gate_vector(u)?);
        let verdict = compare_general(&v, &u, samples as usize, seed as u64);
        Ok(Answer {
            summary: summarize_order(&verdict),
            warnings: Vec::new(),
            report: verdict,
        })
    })())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cost_answer() {
        let text = gate_cost("cnot", "ising");
        assert!(text.contains("cost = 0.7853981633974483 (π/4)"), "{text}");
        assert!(text.contains("\"feasible\":true"));
        let text = gate_cost("swap", "vec:0.2,1,0.5");
        assert!(text.contains("not ordered"));
    }

    #[test]
    fn errors_are_reported() {
        assert!(gate_cost("toffoli", "ising").starts_with("{\"error\":"));
        assert!(compare("cnot", "nope", 10, 1).starts_with("{\"error\":"));
    }

    #[test]
    fn landscape_shape() {
        let grid = cost_landscape(1.0, 0.0, 0.0, 0.0, 5);
        assert_eq!(grid.len(), 25);
        // λ2 > λ1 is outside the cell
        assert!(grid[5].is_nan());
        assert_eq!(grid[0], 0.0);
        // (π/4, π/4, 0) under Ising
        assert!((grid[24] - 2.0 * FRAC_PI_4).abs() < 1e-15);
        assert!(cost_landscape(0.0, 1.0, 0.0, 0.0, 3)
            .iter()
            .all(|x| x.is_nan()));
    }

    #[test]
    fn comparison() {
        let text = compare("cnot", "xy", 50, 1);
        assert!(text.contains("\"relation\":\"lessOrEqual\""), "{text}");
    }
}
