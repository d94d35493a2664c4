//! Concrete schedules that realize a gate with a given coupling in the
//! optimal time.
//!
//! Every local conjugate of `Σ h_i σ_i⊗σ_i` by the Clifford rotations used
//! here is again of the form `Σ v_i σ_i⊗σ_i`, and all such operators
//! commute. Running the coupling for time `p_k·T` under the conjugation of
//! orbit vertex `v_k` therefore multiplies out exactly to
//! `exp(−i T Σ_k p_k v_k · σσ)`, with no splitting error.

use std::cmp::Ordering;
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

use serde::{Deserialize, Serialize};

use crate::cost::interaction_cost;
use crate::error::{Error, Result};
use crate::gate::{exp_canonical, kak_full_with, weyl_reduce, IntegerShift};
use crate::hamiltonian::{Branch, HamiltonianVector};
use crate::linalg::{feasible_combination, Mat2, Mat4, Pauli};
use crate::smaj::overhead_unchecked;
use crate::tolerance::Tolerance;

const WEIGHT_FLOOR: f64 = 1e-12;

/// A point of the Weyl orbit of `h` and the local pair `(a, b)` with
/// `(a⊗b) H (a⊗b)† = Σ vector_i σ_i⊗σ_i`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrbitVertex {
    pub vector: [f64; 3],
    pub conjugation: (Mat2, Mat2),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ScheduleSegment {
    pub duration: f64,
    pub pre_local_a: Mat2,
    pub pre_local_b: Mat2,
    pub post_local_a: Mat2,
    pub post_local_b: Mat2,
}

impl ScheduleSegment {
    /// `post · e^{−iHt} · pre`.
    pub fn operator(&self, h: &HamiltonianVector) -> Mat4 {
        let evolution = exp_canonical(h.as_array().map(|x| x * self.duration));
        self.post_local_a.kron(&self.post_local_b)
            * evolution
            * self.pre_local_a.kron(&self.pre_local_b)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SimulationSchedule {
    pub total_time: f64,
    pub branch: IntegerShift,
    /// In time order.
    pub segments: Vec<ScheduleSegment>,
    pub outer_pre: (Mat2, Mat2),
    pub outer_post: (Mat2, Mat2),
    pub shift_correction: Mat4,
}

impl SimulationSchedule {
    fn empty() -> Self {
        SimulationSchedule {
            total_time: 0.0,
            branch: IntegerShift::ZERO,
            segments: Vec::new(),
            outer_pre: (Mat2::identity(), Mat2::identity()),
            outer_post: (Mat2::identity(), Mat2::identity()),
            shift_correction: Mat4::identity(),
        }
    }

    /// The full operator, last step leftmost.
    pub fn compose(&self, h: &HamiltonianVector) -> Mat4 {
        let mut w = self.outer_pre.0.kron(&self.outer_pre.1);
        for segment in &self.segments {
            w = segment.operator(h) * w;
        }
        self.outer_post.0.kron(&self.outer_post.1) * self.shift_correction * w
    }

    pub fn duration_sum(&self) -> f64 {
        self.segments.iter().map(|s| s.duration).sum()
    }
}

/// `(σ_i + σ_j)/√2`: swaps axes `i` and `j` under conjugation and flips the
/// third.
fn axis_swap(i: usize, j: usize) -> Mat2 {
    (Pauli::from_index(i).matrix() + Pauli::from_index(j).matrix()) * FRAC_1_SQRT_2
}

// The six axis permutations as products of axis swaps. `perm[k]` is the
// axis that component `k` of `h` moves to.
fn permutations() -> [([usize; 3], Mat2); 6] {
    let id = Mat2::identity();
    let (g01, g12, g02) = (axis_swap(0, 1), axis_swap(1, 2), axis_swap(0, 2));
    [
        ([0, 1, 2], id),
        ([1, 0, 2], g01),
        ([0, 2, 1], g12),
        ([2, 1, 0], g02),
        // g01 applied after g12: 0→0→1, 1→2→2, 2→1→0
        ([1, 2, 0], g01 * g12),
        // g12 applied after g01: 0→1→2, 1→0→0, 2→2→1
        ([2, 0, 1], g12 * g01),
    ]
}

fn lex(a: &[f64; 3], b: &[f64; 3]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// All distinct images of `h` under coordinate permutations and paired sign
/// flips, sorted lexicographically.
pub fn orbit_vertices(h: &HamiltonianVector) -> Vec<OrbitVertex> {
    let h = h.as_array();
    let mut out = Vec::with_capacity(24);
    for (perm, g) in permutations() {
        let mut permuted = [0.0; 3];
        for k in 0..3 {
            permuted[perm[k]] = h[k];
        }
        // σ_m on the first qubit negates the two components other than m.
        for flip in [None, Some(0), Some(1), Some(2)] {
            let (vector, a) = match flip {
                None => (permuted, g),
                Some(m) => {
                    let mut v = permuted.map(|x| -x);
                    v[m] = permuted[m];
                    (v, Pauli::from_index(m).matrix() * g)
                }
            };
            out.push(OrbitVertex {
                vector: vector.map(|x| x + 0.0),
                conjugation: (a, g),
            });
        }
    }
    out.sort_by(|a, b| lex(&a.vector, &b.vector));
    out.dedup_by(|a, b| a.vector == b.vector);
    out
}

/// Time-sharing schedule for `exp(−i·time·Σ target_i σ_i⊗σ_i)` using `h`,
/// of total length `time · c` where `c` is the minimal overhead.
pub fn simulate_hamiltonian(
    target: [f64; 3],
    h: &HamiltonianVector,
    time: f64,
) -> Result<SimulationSchedule> {
    simulate_hamiltonian_with(target, h, time, Tolerance::default().scalar)
}

pub fn simulate_hamiltonian_with(
    target: [f64; 3],
    h: &HamiltonianVector,
    time: f64,
    tol: f64,
) -> Result<SimulationSchedule> {
    let c = overhead_unchecked(weyl_reduce(target), h.as_array(), tol);
    if !c.is_finite() {
        return Err(Error::Infeasible(format!(
            "({}, {}, {}) cannot be simulated with {h}",
            target[0], target[1], target[2]
        )));
    }
    let mut schedule = SimulationSchedule::empty();
    if c == 0.0 || time == 0.0 {
        return Ok(schedule);
    }
    let orbit = orbit_vertices(h);
    let points: Vec<[f64; 3]> = orbit.iter().map(|v| v.vector).collect();
    let mut weights = feasible_combination(target.map(|x| x / c), &points, tol)?;
    // Round-off weights from the simplex would only add empty segments.
    for p in weights.iter_mut() {
        if *p < WEIGHT_FLOOR {
            *p = 0.0;
        }
    }
    let kept: f64 = weights.iter().sum();
    let total = c * time;
    for (vertex, p) in orbit.iter().zip(weights) {
        if p == 0.0 {
            continue;
        }
        let p = p / kept;
        let (a, b) = vertex.conjugation;
        schedule.segments.push(ScheduleSegment {
            duration: p * total,
            pre_local_a: a.adjoint(),
            pre_local_b: b.adjoint(),
            post_local_a: a,
            post_local_b: b,
        });
    }
    schedule.total_time = total;
    Ok(schedule)
}

/// Optimal schedule for `u` with coupling `h`, including the outer local
/// gates, so that it multiplies out to `u` up to global phase.
pub fn synthesize_gate(u: &Mat4, h: &HamiltonianVector) -> Result<SimulationSchedule> {
    synthesize_gate_with(u, h, &Tolerance::default())
}

pub fn synthesize_gate_with(
    u: &Mat4,
    h: &HamiltonianVector,
    tol: &Tolerance,
) -> Result<SimulationSchedule> {
    let f = kak_full_with(u, tol)?;
    let report = interaction_cost(&f.core, h);
    if !report.feasible {
        return Err(Error::Infeasible(format!(
            "{} needs a nonzero interaction, got {h}",
            f.core
        )));
    }
    let branch = report.winning_branch();
    // The shifted branch runs λ − (π/2)e1 and restores the gate with the
    // local factor exp(−i(π/2)σ1⊗σ1) = −iσ1⊗σ1.
    let mut target = f.core.as_array();
    let mut correction = Mat4::identity();
    if branch == Branch::Shifted {
        target[0] -= FRAC_PI_2;
        correction = exp_canonical([FRAC_PI_2, 0.0, 0.0]);
    }
    let mut schedule = simulate_hamiltonian_with(target, h, 1.0, tol.scalar)?;
    schedule.total_time = report.cost;
    schedule.branch = report.branch;
    schedule.outer_pre = (f.u2, f.v2);
    schedule.outer_post = (f.u1, f.v1);
    schedule.shift_correction = correction;
    Ok(schedule)
}

/// Max-norm distance between the schedule's product and `u`, after optimal
/// global-phase alignment.
pub fn verify_schedule(schedule: &SimulationSchedule, u: &Mat4, h: &HamiltonianVector) -> f64 {
    schedule.compose(h).distance_up_to_phase(u)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::FRAC_PI_4;

    use super::*;
    use crate::gate::CanonicalGateVector;
    use crate::linalg::sigma_sigma_coefficients;
    use crate::linalg::sigma_sigma_sum;
    use crate::random::{random_canonical, random_hamiltonian, random_su2, random_unitary4};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn hv(h: [f64; 3]) -> HamiltonianVector {
        HamiltonianVector::new(h, 0.0).unwrap()
    }

    fn cnot() -> Mat4 {
        let mut m = Mat4::zeros();
        for (r, c) in [(0, 0), (1, 1), (2, 3), (3, 2)] {
            m.0[r][c] = crate::linalg::ONE;
        }
        m
    }

    #[test]
    fn conjugations_read_back_exactly() {
        for h in [
            [1.0, 0.0, 0.0],
            [1.0, 0.5, -0.2],
            [0.7, 0.7, 0.3],
            [1.0, 1.0, 1.0],
        ] {
            let ham = sigma_sigma_sum(h);
            for v in orbit_vertices(&hv(h)) {
                let (a, b) = v.conjugation;
                let k = a.kron(&b);
                let got = sigma_sigma_coefficients(&(k * ham * k.adjoint()));
                for i in 0..3 {
                    assert!(
                        (got[i] - v.vector[i]).abs() < 1e-12,
                        "{h:?} -> {:?} vs {got:?}",
                        v.vector
                    );
                }
                assert!(a.is_unitary(1e-14) && b.is_unitary(1e-14));
            }
        }
    }

    #[test]
    fn orbit_sizes() {
        let ising = orbit_vertices(&HamiltonianVector::ISING);
        assert_eq!(ising.len(), 6);
        for v in [
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, 0.0, 1.0],
            [-1.0, 0.0, 0.0],
        ] {
            assert!(ising.iter().any(|x| x.vector == v));
        }
        let heis = orbit_vertices(&HamiltonianVector::HEISENBERG);
        assert_eq!(heis.len(), 4);
        let flip = heis.iter().find(|x| x.vector == [1.0, -1.0, -1.0]).unwrap();
        assert_eq!(flip.conjugation.0, Pauli::X.matrix());
        assert_eq!(orbit_vertices(&hv([1.0, 0.5, 0.2])).len(), 24);
        assert_eq!(orbit_vertices(&HamiltonianVector::ZERO).len(), 1);
    }

    #[test]
    fn simulate_ising_from_heisenberg() {
        let s = simulate_hamiltonian([1.0, 0.0, 0.0], &HamiltonianVector::HEISENBERG, 1.0).unwrap();
        assert_eq!(s.segments.len(), 2);
        for seg in &s.segments {
            assert!((seg.duration - 0.5).abs() < 1e-12);
        }
        assert!((s.total_time - 1.0).abs() < 1e-15);
        let d = s
            .compose(&HamiltonianVector::HEISENBERG)
            .max_abs_diff(&exp_canonical([1.0, 0.0, 0.0]));
        assert!(d < 1e-10, "{d}");
    }

    #[test]
    fn simulate_self_is_one_segment() {
        let h = hv([0.9, 0.4, -0.1]);
        let s = simulate_hamiltonian(h.as_array(), &h, 0.7).unwrap();
        assert_eq!(s.segments.len(), 1);
        assert!((s.segments[0].duration - 0.7).abs() < 1e-12);
    }

    #[test]
    fn simulate_heisenberg_from_ising() {
        let s = simulate_hamiltonian([1.0, 1.0, 1.0], &HamiltonianVector::ISING, 1.0).unwrap();
        assert!((s.total_time - 3.0).abs() < 1e-12);
        assert_eq!(s.segments.len(), 3);
        let d = s
            .compose(&HamiltonianVector::ISING)
            .max_abs_diff(&exp_canonical([1.0, 1.0, 1.0]));
        assert!(d < 1e-10, "{d}");
        assert!(matches!(
            simulate_hamiltonian([1.0, 0.0, 0.0], &HamiltonianVector::ZERO, 1.0),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn cnot_from_ising() {
        let s = synthesize_gate(&cnot(), &HamiltonianVector::ISING).unwrap();
        assert!((s.total_time - FRAC_PI_4).abs() < 1e-12);
        assert_eq!(s.segments.len(), 1);
        assert!(verify_schedule(&s, &cnot(), &HamiltonianVector::ISING) < 1e-6);
    }

    #[test]
    fn perturbed_duration_is_detected() {
        let mut s = synthesize_gate(&cnot(), &HamiltonianVector::ISING).unwrap();
        s.segments[0].duration += 0.01;
        assert!(verify_schedule(&s, &cnot(), &HamiltonianVector::ISING) > 1e-3);
    }

    #[test]
    fn swap_from_heisenberg() {
        let swap = exp_canonical(CanonicalGateVector::SWAP.as_array());
        let s = synthesize_gate(&swap, &HamiltonianVector::HEISENBERG).unwrap();
        assert!((s.total_time - FRAC_PI_4).abs() < 1e-12);
        assert!(verify_schedule(&s, &swap, &HamiltonianVector::HEISENBERG) < 1e-6);
    }

    #[test]
    fn identity_needs_no_interaction() {
        let id = Mat4::identity();
        let s = synthesize_gate(&id, &HamiltonianVector::ZERO).unwrap();
        assert!(s.segments.is_empty());
        assert_eq!(
            verify_schedule(&SimulationSchedule::empty(), &id, &HamiltonianVector::ISING),
            0.0
        );
        assert!(verify_schedule(&s, &id, &HamiltonianVector::ZERO) < 1e-8);
        assert!(matches!(
            synthesize_gate(&cnot(), &HamiltonianVector::ZERO),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn shifted_branch_schedule() {
        let l = CanonicalGateVector::new(FRAC_PI_4, FRAC_PI_4, std::f64::consts::FRAC_PI_8, 0.0)
            .unwrap();
        let h = hv([FRAC_PI_4, FRAC_PI_4, -std::f64::consts::FRAC_PI_8]);
        let u = exp_canonical(l.as_array());
        let s = synthesize_gate(&u, &h).unwrap();
        assert_eq!(s.branch, IntegerShift::MINUS_X);
        assert!((s.total_time - 1.0).abs() < 1e-12);
        assert!(verify_schedule(&s, &u, &h) < 1e-6);
    }

    #[test]
    fn random_dressed_gates() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..100 {
            let l = random_canonical(&mut rng);
            let h = random_hamiltonian(&mut rng);
            let dress = random_su2(&mut rng).kron(&random_su2(&mut rng));
            let u = dress
                * exp_canonical(l.as_array())
                * random_su2(&mut rng).kron(&random_su2(&mut rng));
            let s = synthesize_gate(&u, &h).unwrap();
            assert!(verify_schedule(&s, &u, &h) < 1e-6);
            assert!((s.duration_sum() - s.total_time).abs() < 1e-9);
            assert!((s.total_time - interaction_cost(&l, &h).cost).abs() < 1e-9);
            assert!(s.segments.iter().all(|seg| seg.duration >= 0.0));
        }
        for _ in 0..20 {
            let u = random_unitary4(&mut rng);
            let h = random_hamiltonian(&mut rng);
            let s = synthesize_gate(&u, &h).unwrap();
            assert!(verify_schedule(&s, &u, &h) < 1e-6);
        }
    }

    #[test]
    fn json_roundtrip() {
        let s = synthesize_gate(&cnot(), &HamiltonianVector::XY).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert!(text.starts_with("{\"totalTime\":"));
        let order = [
            "totalTime",
            "branch",
            "segments",
            "outerPre",
            "outerPost",
            "shiftCorrection",
        ];
        let pos: Vec<usize> = order
            .iter()
            .map(|k| text.find(&format!("\"{k}\"")).unwrap())
            .collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
        let back: SimulationSchedule = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
    }
}
