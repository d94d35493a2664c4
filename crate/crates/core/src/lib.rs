//! Interaction cost of two-qubit gates.
//!
//! Given a two-qubit coupling Hamiltonian and arbitrarily fast single-qubit
//! control, the crate computes the least interaction time needed to perform
//! a gate, the partial order on gates this induces, and explicit schedules
//! that achieve the optimum.

// `!(x <= tol)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Matrix kernels index by row and column.
#![allow(clippy::needless_range_loop)]

pub mod campaign;
pub mod cost;
pub mod error;
pub mod gate;
pub mod hamiltonian;
pub mod io;
pub mod linalg;
pub mod order;
pub mod protocol;
pub mod random;
pub mod smaj;
pub mod tolerance;

pub use campaign::{
    run_order_campaign, run_synthesis_campaign, run_theorem1_campaign, CampaignConfig,
    CampaignReport,
};
pub use cost::{
    corollary_region, cost_ising, cost_lemma_oracle, interaction_cost, precost, CostReport, PreCost,
};
pub use error::{Error, Result};
pub use gate::{
    canonical_vector, exp_canonical, fold_to_cell, kak_full, locally_equivalent, weyl_reduce,
    CanonicalGateVector, IntegerShift, LocalFactorization, LocalGate,
};
pub use hamiltonian::{
    canonical_hamiltonian, natural_interaction, Branch, HamiltonianInput, HamiltonianVector,
};
pub use io::{parse_gate, parse_hamiltonian, NamedGate};
pub use linalg::{Mat2, Mat4, RealMatrix3, C64};
pub use order::{compare_general, compare_in_region, OrderVerdict, Relation, Witness};
pub use protocol::{
    orbit_vertices, simulate_hamiltonian, synthesize_gate, verify_schedule, ScheduleSegment,
    SimulationSchedule,
};
pub use smaj::{minimal_overhead, smaj};
pub use tolerance::Tolerance;
