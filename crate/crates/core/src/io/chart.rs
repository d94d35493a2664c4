use std::f64::consts::FRAC_PI_4;

use rayon::prelude::*;

use crate::cost::interaction_cost;
use crate::gate::CanonicalGateVector;
use crate::hamiltonian::HamiltonianVector;

/// What a chart holds fixed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ChartAxis {
    /// Fixed coupling; rows range over the canonical cell.
    Coupling(HamiltonianVector),
    /// Fixed gate; rows range over the unit coupling cone.
    Gate(CanonicalGateVector),
}

pub fn chart_grid(axis: &ChartAxis, resolution: usize) -> String {
    match axis {
        ChartAxis::Coupling(h) => chart_cell(h, resolution),
        ChartAxis::Gate(l) => chart_cone(l, resolution),
    }
}

fn cell(x: f64) -> String {
    if x.is_finite() {
        format!("{x}")
    } else {
        "inf".to_string()
    }
}

/// Cost over a uniform lattice of the canonical cell with spacing
/// `π/(4(resolution−1))`, for a fixed coupling. Branch is 1 (direct) or 2
/// (shifted).
pub fn chart_cell(h: &HamiltonianVector, resolution: usize) -> String {
    let n = resolution.max(2) - 1;
    let step = |k: usize| FRAC_PI_4 * (k as f64 / n as f64);
    let mut points = Vec::new();
    for i in 0..=n {
        for j in 0..=i {
            for k in -(j as i64)..=(j as i64) {
                let l3 = if k < 0 {
                    -step(k.unsigned_abs() as usize)
                } else {
                    step(k as usize)
                };
                if let Ok(g) = CanonicalGateVector::new(step(i), step(j), l3, 0.0) {
                    points.push(g);
                }
            }
        }
    }
    let rows: Vec<String> = points
        .par_iter()
        .map(|g| {
            let r = interaction_cost(g, h);
            let [l1, l2, l3] = g.as_array();
            format!(
                "{l1},{l2},{l3},{},{}",
                cell(r.cost),
                r.winning_branch().number()
            )
        })
        .collect();
    let mut out = String::from("l1,l2,l3,cost,branch\n");
    for row in rows {
        out.push_str(&row);
        out.push('\n');
    }
    out
}

/// Cost over the unit slice `{h1 = 1 ≥ h2 ≥ |h3|}` of the coupling cone, for
/// a fixed gate.
pub fn chart_cone(lambda: &CanonicalGateVector, resolution: usize) -> String {
    let n = resolution.max(2) - 1;
    let mut points = Vec::new();
    for j in 0..=n {
        for k in -(j as i64)..=(j as i64) {
            points.push([1.0, j as f64 / n as f64, k as f64 / n as f64]);
        }
    }
    let rows: Vec<String> = points
        .par_iter()
        .map(|h| {
            let r = interaction_cost(lambda, &HamiltonianVector::new_unchecked(*h));
            format!("{},{},{},{}", h[0], h[1], h[2], cell(r.cost))
        })
        .collect();
    let mut out = String::from("h1,h2,h3,cost\n");
    for row in rows {
        out.push_str(&row);
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(csv: &str) -> Vec<Vec<f64>> {
        csv.lines()
            .skip(1)
            .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
            .collect()
    }

    #[test]
    fn ising_corner_is_three_quarters_pi() {
        let csv = chart_cell(&HamiltonianVector::ISING, 5);
        assert!(csv.starts_with("l1,l2,l3,cost,branch\n"));
        let r = rows(&csv);
        let swap = r.iter().find(|row| row[..3] == [FRAC_PI_4; 3]).unwrap();
        assert!((swap[3] - 3.0 * FRAC_PI_4).abs() < 1e-15);
        // no duplicates, and the mirrored face λ1 = π/4, λ3 < 0 is excluded
        assert!(r.iter().all(|row| !(row[0] == FRAC_PI_4 && row[2] < 0.0)));
    }

    #[test]
    fn identity_costs_nothing() {
        let r = rows(&chart_cone(&CanonicalGateVector::IDENTITY, 6));
        assert_eq!(r.len(), 36);
        assert!(r.iter().all(|row| row[3] == 0.0));
    }

    #[test]
    fn swap_under_heisenberg() {
        let r = rows(&chart_cone(&CanonicalGateVector::SWAP, 4));
        let heis = r.iter().find(|row| row[..3] == [1.0, 1.0, 1.0]).unwrap();
        assert!((heis[3] - FRAC_PI_4).abs() < 1e-15);
    }

    #[test]
    fn deterministic() {
        assert_eq!(
            chart_cell(&HamiltonianVector::XY, 7),
            chart_cell(&HamiltonianVector::XY, 7)
        );
    }

    #[test]
    fn grid_dispatches_on_axis() {
        let h = HamiltonianVector::HEISENBERG;
        assert_eq!(chart_grid(&ChartAxis::Coupling(h), 4), chart_cell(&h, 4));
        let l = CanonicalGateVector::CNOT;
        assert_eq!(chart_grid(&ChartAxis::Gate(l), 4), chart_cone(&l, 4));
    }
}
