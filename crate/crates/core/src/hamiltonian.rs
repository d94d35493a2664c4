//! Canonical form of two-qubit coupling Hamiltonians.
//!
//! For simulation under fast local unitaries only the nonlocal coupling
//! block `M_ij = (1/4)·Tr[(σ_i⊗σ_j) H]` matters, and local rotations act on
//! it as `M → R_a M R_bᵀ` with `R_a, R_b ∈ SO(3)`. The signed singular
//! values of `M` are therefore a complete invariant.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cost::interaction_cost;
use crate::error::{Error, Result};
use crate::gate::{weyl_reduce, CanonicalGateVector, IntegerShift};
use crate::linalg::{signed_svd3, Mat2, Mat4, Pauli, RealMatrix3};
use crate::tolerance::Tolerance;

/// `h = (h1, h2, h3)` with `h1 ≥ h2 ≥ |h3|`, the coefficients of
/// `Σ h_i σ_i⊗σ_i`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HamiltonianVector([f64; 3]);

impl HamiltonianVector {
    pub const ISING: HamiltonianVector = HamiltonianVector([1.0, 0.0, 0.0]);
    pub const XY: HamiltonianVector = HamiltonianVector([1.0, 1.0, 0.0]);
    pub const HEISENBERG: HamiltonianVector = HamiltonianVector([1.0, 1.0, 1.0]);
    pub const ZERO: HamiltonianVector = HamiltonianVector([0.0, 0.0, 0.0]);

    pub fn new(h: [f64; 3], tol: f64) -> Result<Self> {
        if is_ordered(h, tol) {
            Ok(HamiltonianVector(h))
        } else {
            Err(Error::NotOrdered(h))
        }
    }

    /// Caller guarantees ordering.
    pub fn new_unchecked(h: [f64; 3]) -> Self {
        HamiltonianVector(h)
    }

    /// Weyl-reduces an arbitrary vector.
    pub fn from_any(v: [f64; 3]) -> Self {
        HamiltonianVector(weyl_reduce(v))
    }

    pub fn as_array(&self) -> [f64; 3] {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| *x == 0.0)
    }

    pub fn scaled(&self, s: f64) -> Self {
        HamiltonianVector(self.0.map(|x| s * x))
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

impl fmt::Display for HamiltonianVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

pub(crate) fn is_ordered(x: [f64; 3], tol: f64) -> bool {
    x.iter().all(|v| v.is_finite()) && x[0] >= x[1] - tol && x[1] >= x[2].abs() - tol
}

/// Ways to describe a two-qubit Hamiltonian.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum HamiltonianInput {
    Hermitian(Mat4),
    Coupling(RealMatrix3),
    Vector([f64; 3]),
}

/// Pauli expansion `H = c·I + Σ a_i σ_i⊗I + Σ b_j I⊗σ_j + Σ M_ij σ_i⊗σ_j`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PauliDecomposition {
    pub identity: f64,
    pub local_a: [f64; 3],
    pub local_b: [f64; 3],
    pub coupling: RealMatrix3,
}

impl PauliDecomposition {
    /// Largest magnitude among the local (single-qubit) terms.
    pub fn local_magnitude(&self) -> f64 {
        self.local_a
            .iter()
            .chain(self.local_b.iter())
            .fold(0.0_f64, |m, x| m.max(x.abs()))
    }
}

pub fn pauli_decomposition(h: &Mat4) -> PauliDecomposition {
    let id = Mat2::identity();
    let coeff = |m: Mat4| (m * *h).trace().re / 4.0;
    let mut out = PauliDecomposition {
        identity: coeff(Mat4::identity()),
        local_a: [0.0; 3],
        local_b: [0.0; 3],
        coupling: RealMatrix3::zeros(),
    };
    for p in Pauli::ALL {
        out.local_a[p.index()] = coeff(p.matrix().kron(&id));
        out.local_b[p.index()] = coeff(id.kron(&p.matrix()));
        for q in Pauli::ALL {
            out.coupling.0[p.index()][q.index()] = coeff(p.matrix().kron(&q.matrix()));
        }
    }
    out
}

/// Canonical vector `h` of a Hamiltonian. Identity and local terms are
/// dropped.
pub fn canonical_hamiltonian(input: &HamiltonianInput) -> Result<HamiltonianVector> {
    canonical_hamiltonian_with(input, &Tolerance::default())
}

pub fn canonical_hamiltonian_with(
    input: &HamiltonianInput,
    tol: &Tolerance,
) -> Result<HamiltonianVector> {
    match input {
        HamiltonianInput::Vector(v) => {
            if !v.iter().all(|x| x.is_finite()) {
                return Err(Error::Parse(format!("non-finite coupling vector {v:?}")));
            }
            Ok(HamiltonianVector::from_any(*v))
        }
        HamiltonianInput::Coupling(m) => {
            if !m.is_finite() {
                return Err(Error::Parse("non-finite coupling matrix".into()));
            }
            Ok(HamiltonianVector(signed_svd3(m).d))
        }
        HamiltonianInput::Hermitian(h) => {
            let residual = h.hermiticity_residual();
            if !h.is_finite() || !(residual <= tol.matrix) {
                return Err(Error::NotHermitian { residual });
            }
            let coupling = pauli_decomposition(h).coupling;
            Ok(HamiltonianVector(signed_svd3(&coupling).d))
        }
    }
}

/// Which of the two candidate vectors of the two-branch cost formula a
/// natural interaction follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    /// `λ⁰` itself, shift `(0,0,0)`.
    Direct,
    /// `(π/2 − λ1, λ2, −λ3)`, shift `(−1,0,0)`.
    Shifted,
}

impl Branch {
    pub fn shift(self) -> IntegerShift {
        match self {
            Branch::Direct => IntegerShift::ZERO,
            Branch::Shifted => IntegerShift::MINUS_X,
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Branch::Direct => 1,
            Branch::Shifted => 2,
        }
    }

    /// The Hamiltonian vector this branch simulates for gate `lambda`.
    pub fn vector(self, lambda: &CanonicalGateVector) -> HamiltonianVector {
        HamiltonianVector::from_any(self.shift().apply(lambda.as_array()))
    }
}

/// The interaction that performs the gate in unit time with no simulation
/// overhead.
///
/// Both branch vectors realize the gate when applied for unit time. Where
/// that is also optimal (overhead exactly one) and both qualify, the one
/// with the smaller time per unit coupling strength `‖h‖·C_h(U)` is
/// returned; ties go to the direct branch.
pub fn natural_interaction(lambda: &CanonicalGateVector) -> (HamiltonianVector, Branch) {
    let direct = Branch::Direct.vector(lambda);
    if direct.is_zero() {
        return (direct, Branch::Direct);
    }
    let shifted = Branch::Shifted.vector(lambda);
    let score = |h: &HamiltonianVector| h.norm() * interaction_cost(lambda, h).cost;
    if score(&shifted) < score(&direct) - Tolerance::default().scalar {
        (shifted, Branch::Shifted)
    } else {
        (direct, Branch::Direct)
    }
}
