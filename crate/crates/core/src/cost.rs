//! Interaction cost: the least total interaction time needed to perform a
//! gate with a given coupling and free, instantaneous local unitaries.
//!
//! A gate with canonical vector `λ` is produced by any Hamiltonian
//! `Σ w_k σ_k⊗σ_k` run for unit time with `w = λ + (π/2)·n`, `n ∈ ℤ³`.
//! The pre-cost `c_n` is the overhead of simulating that Hamiltonian with
//! `h`; the cost is the least pre-cost, and only `n = (0,0,0)` and
//! `n = (−1,0,0)` can win.

use std::f64::consts::FRAC_PI_4;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gate::{weyl_reduce, CanonicalGateVector, IntegerShift};
use crate::hamiltonian::{Branch, HamiltonianVector};
use crate::smaj::overhead_unchecked;
use crate::tolerance::DEFAULT_SCALAR_TOL;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PreCost {
    pub shift: IntegerShift,
    pub cost: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CostReport {
    pub lambda: CanonicalGateVector,
    pub h: HamiltonianVector,
    pub feasible: bool,
    /// `f64::INFINITY` when infeasible (serialized as `null`).
    pub cost: f64,
    pub branch: IntegerShift,
    /// The Hamiltonian to simulate for time `cost`.
    pub sim_vector: HamiltonianVector,
    pub pre_costs: Vec<PreCost>,
    pub region_flag: bool,
}

impl CostReport {
    pub fn winning_branch(&self) -> Branch {
        if self.branch == IntegerShift::ZERO {
            Branch::Direct
        } else {
            Branch::Shifted
        }
    }

    pub fn pre_cost(&self, shift: IntegerShift) -> Option<f64> {
        self.pre_costs
            .iter()
            .find(|p| p.shift == shift)
            .map(|p| p.cost)
    }
}

/// Overhead of simulating `U_{λ + (π/2)n}`'s generator with `h`.
pub fn precost(lambda: &CanonicalGateVector, n: IntegerShift, h: &HamiltonianVector) -> f64 {
    let x = weyl_reduce(n.apply(lambda.as_array()));
    overhead_unchecked(x, h.as_array(), DEFAULT_SCALAR_TOL)
}

/// Two-branch minimum; ties go to `n = (0,0,0)`.
pub fn interaction_cost(lambda: &CanonicalGateVector, h: &HamiltonianVector) -> CostReport {
    let direct = precost(lambda, IntegerShift::ZERO, h);
    let shifted = precost(lambda, IntegerShift::MINUS_X, h);
    let branch = if shifted < direct {
        Branch::Shifted
    } else {
        Branch::Direct
    };
    let cost = direct.min(shifted);
    CostReport {
        lambda: *lambda,
        h: *h,
        feasible: cost.is_finite(),
        cost,
        branch: branch.shift(),
        sim_vector: branch.vector(lambda),
        pre_costs: vec![
            PreCost {
                shift: IntegerShift::ZERO,
                cost: direct,
            },
            PreCost {
                shift: IntegerShift::MINUS_X,
                cost: shifted,
            },
        ],
        region_flag: corollary_region(lambda),
    }
}

/// `(λ1 + λ2 + |λ3|)/strength`, the cost under an Ising coupling.
pub fn cost_ising(lambda: &CanonicalGateVector, strength: f64) -> Result<f64> {
    if !(strength > 0.0) {
        return Err(Error::NonPositiveStrength(strength));
    }
    let [l1, l2, l3] = lambda.as_array();
    Ok((l1 + l2 + l3.abs()) / strength)
}

/// Exhaustive minimum of the pre-cost over all shifts with `|n_j| ≤ bound`.
pub fn cost_lemma_oracle(lambda: &CanonicalGateVector, h: &HamiltonianVector, bound: u32) -> f64 {
    let b = bound as i64;
    let mut best = f64::INFINITY;
    for n1 in -b..=b {
        for n2 in -b..=b {
            for n3 in -b..=b {
                best = best.min(precost(lambda, IntegerShift([n1, n2, n3]), h));
            }
        }
    }
    best
}

/// `λ1 + |λ3| ≤ π/4`: the direct branch always wins here.
pub fn corollary_region(lambda: &CanonicalGateVector) -> bool {
    corollary_region_with(lambda, DEFAULT_SCALAR_TOL)
}

pub fn corollary_region_with(lambda: &CanonicalGateVector, tol: f64) -> bool {
    lambda.l1() + lambda.l3().abs() <= FRAC_PI_4 + tol
}
