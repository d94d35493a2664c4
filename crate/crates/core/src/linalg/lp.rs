//! Convex-combination feasibility over a handful of points.
//!
//! Finds `w ≥ 0`, `Σ w = 1`, `Σ w_k v_k = target` with a dense Phase-I
//! simplex. Pivoting follows Bland's rule (lowest eligible index enters,
//! lowest basic index wins ratio ties), which rules out cycling and makes
//! the result a deterministic function of the vertex order.

use crate::error::{Error, Result};

const PIVOT_EPS: f64 = 1e-12;

/// Nonnegative weights summing to one whose combination of `vertices`
/// equals `target` within `tol`.
pub fn feasible_combination(target: [f64; 3], vertices: &[[f64; 3]], tol: f64) -> Result<Vec<f64>> {
    if vertices.is_empty() {
        return Err(Error::Infeasible("no vertices given".into()));
    }
    let n = vertices.len();
    let rows = 4;
    // Columns: n structural, then `rows` artificial, then the right-hand side.
    let width = n + rows + 1;
    let rhs = width - 1;
    let mut tab = vec![vec![0.0; width]; rows];
    for (k, v) in vertices.iter().enumerate() {
        for r in 0..3 {
            tab[r][k] = v[r];
        }
        tab[3][k] = 1.0;
    }
    for r in 0..3 {
        tab[r][rhs] = target[r];
    }
    tab[3][rhs] = 1.0;
    for (r, row) in tab.iter_mut().enumerate() {
        if row[rhs] < 0.0 {
            for x in row.iter_mut() {
                *x = -*x;
            }
        }
        row[n + r] = 1.0;
    }
    let mut basis: Vec<usize> = (n..n + rows).collect();

    // Reduced costs of the Phase-I objective (sum of artificials).
    let mut cost = vec![0.0; width];
    for row in &tab {
        for (c, x) in cost.iter_mut().zip(row) {
            *c -= x;
        }
    }
    for c in cost.iter_mut().skip(n).take(rows) {
        *c = 0.0;
    }

    let max_iter = 50 * width;
    for _ in 0..max_iter {
        let Some(enter) = (0..n + rows).find(|&j| cost[j] < -PIVOT_EPS) else {
            break;
        };
        let mut leave: Option<(usize, f64)> = None;
        for r in 0..rows {
            let a = tab[r][enter];
            if a > PIVOT_EPS {
                let ratio = tab[r][rhs] / a;
                let better = match leave {
                    None => true,
                    Some((lr, best)) => {
                        ratio < best - PIVOT_EPS
                            || (ratio <= best + PIVOT_EPS && basis[r] < basis[lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let Some((pr, _)) = leave else {
            // Unbounded direction cannot occur for a bounded Phase-I objective.
            break;
        };
        pivot(&mut tab, &mut cost, pr, enter);
        basis[pr] = enter;
    }

    let residual_objective = -cost[rhs];
    if residual_objective > tol {
        return Err(Error::Infeasible(format!(
            "target {target:?} is outside the convex hull (phase-one residual {residual_objective:.3e})"
        )));
    }

    let mut weights = vec![0.0; n];
    for (r, &b) in basis.iter().enumerate() {
        if b < n {
            weights[b] = tab[r][rhs].max(0.0);
        }
    }
    let total: f64 = weights.iter().sum();
    if total <= 0.0 {
        return Err(Error::Infeasible("degenerate solution".into()));
    }
    for w in weights.iter_mut() {
        *w /= total;
    }

    let mut reproduced = [0.0; 3];
    for (w, v) in weights.iter().zip(vertices) {
        for r in 0..3 {
            reproduced[r] += w * v[r];
        }
    }
    let scale = target.iter().fold(1.0_f64, |m, x| m.max(x.abs()));
    let miss = (0..3)
        .map(|r| (reproduced[r] - target[r]).abs())
        .fold(0.0, f64::max);
    if miss > tol * scale {
        return Err(Error::Infeasible(format!(
            "target {target:?} not reproduced (miss {miss:.3e})"
        )));
    }
    Ok(weights)
}

fn pivot(tab: &mut [Vec<f64>], cost: &mut [f64], pr: usize, pc: usize) {
    let p = tab[pr][pc];
    for x in tab[pr].iter_mut() {
        *x /= p;
    }
    let pivot_row = tab[pr].clone();
    for (r, row) in tab.iter_mut().enumerate() {
        if r == pr {
            continue;
        }
        let f = row[pc];
        if f != 0.0 {
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= f * y;
            }
        }
    }
    let f = cost[pc];
    if f != 0.0 {
        for (x, y) in cost.iter_mut().zip(&pivot_row) {
            *x -= f * y;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn target_is_vertex() {
        let w = feasible_combination([1.0, 2.0, 3.0], &[[0.0; 3], [1.0, 2.0, 3.0]], 1e-9).unwrap();
        assert!(w[0].abs() < 1e-12);
        assert!((w[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn midpoint_of_two() {
        let w = feasible_combination([1.0, 0.0, 0.0], &[[1.0, 1.0, 1.0], [1.0, -1.0, -1.0]], 1e-9)
            .unwrap();
        assert!((w[0] - 0.5).abs() < 1e-12);
        assert!((w[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn outside_hull() {
        let r = feasible_combination([2.0, 0.0, 0.0], &[[1.0, 1.0, 1.0], [1.0, -1.0, -1.0]], 1e-9);
        assert!(matches!(r, Err(Error::Infeasible(_))));
    }

    #[test]
    fn deterministic() {
        let verts: Vec<[f64; 3]> = (0..12)
            .map(|k| {
                let t = k as f64;
                [t.sin(), (1.7 * t).cos(), (0.3 * t).sin()]
            })
            .collect();
        let mut target = [0.0; 3];
        for (k, v) in verts.iter().enumerate() {
            let w = (k + 1) as f64 / 78.0;
            for i in 0..3 {
                target[i] += w * v[i];
            }
        }
        let a = feasible_combination(target, &verts, 1e-9).unwrap();
        let b = feasible_combination(target, &verts, 1e-9).unwrap();
        assert_eq!(a, b);
        assert!((a.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }
}
