//! Pauli matrices, the `σ_k ⊗ σ_k` family and the magic basis.
//!
//! Magic basis convention (columns of `Q`, computational basis
//! `|00>, |01>, |10>, |11>`):
//!
//! ```text
//! Φ1 = (|00> + |11>) / √2
//! Φ2 = i(|00> − |11>) / √2
//! Φ3 = i(|01> + |10>) / √2
//! Φ4 = (|01> − |10>) / √2
//! ```
//!
//! In this basis every `σ_k ⊗ σ_k` is diagonal with entries
//! [`MAGIC_SIGNS`]`[j][k]`, and `Q† (a ⊗ b) Q` is real orthogonal for
//! `a, b ∈ SU(2)`.

use std::f64::consts::FRAC_1_SQRT_2;

use super::matrix::{Mat2, Mat4, C64, I, ONE, ZERO};

/// One of the three Pauli matrices `σ_1 = X`, `σ_2 = Y`, `σ_3 = Z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

    /// Zero-based axis index (`X → 0`).
    pub fn index(self) -> usize {
        match self {
            Pauli::X => 0,
            Pauli::Y => 1,
            Pauli::Z => 2,
        }
    }

    pub fn from_index(k: usize) -> Pauli {
        Pauli::ALL[k]
    }

    pub fn matrix(self) -> Mat2 {
        match self {
            Pauli::X => Mat2::new(ZERO, ONE, ONE, ZERO),
            Pauli::Y => Mat2::new(ZERO, -I, I, ZERO),
            Pauli::Z => Mat2::new(ONE, ZERO, ZERO, -ONE),
        }
    }

    /// `σ_k ⊗ σ_k`.
    pub fn doubled(self) -> Mat4 {
        let s = self.matrix();
        s.kron(&s)
    }
}

/// `Σ_k v_k σ_k ⊗ σ_k`.
pub fn sigma_sigma_sum(v: [f64; 3]) -> Mat4 {
    Pauli::ALL
        .iter()
        .fold(Mat4::zeros(), |acc, p| acc + p.doubled() * v[p.index()])
}

/// Coefficients `(1/4)·Tr[(σ_k⊗σ_k) H]` of the `σ_k⊗σ_k` components of `H`.
pub fn sigma_sigma_coefficients(h: &Mat4) -> [f64; 3] {
    let mut out = [0.0; 3];
    for p in Pauli::ALL {
        out[p.index()] = (p.doubled() * *h).trace().re / 4.0;
    }
    out
}

/// Diagonal of `σ_k ⊗ σ_k` in the magic basis: row `j` (basis vector),
/// column `k` (axis).
pub const MAGIC_SIGNS: [[f64; 3]; 4] = [
    [1.0, -1.0, 1.0],
    [-1.0, 1.0, 1.0],
    [1.0, 1.0, -1.0],
    [-1.0, -1.0, -1.0],
];

/// The magic-basis change matrix `Q` (columns are `Φ1..Φ4`).
pub fn magic_basis() -> Mat4 {
    let r = C64::new(FRAC_1_SQRT_2, 0.0);
    let ri = C64::new(0.0, FRAC_1_SQRT_2);
    Mat4([
        [r, ri, ZERO, ZERO],
        [ZERO, ZERO, ri, r],
        [ZERO, ZERO, ri, -r],
        [r, -ri, ZERO, ZERO],
    ])
}

/// `Q† M Q`.
pub fn to_magic_basis(m: &Mat4) -> Mat4 {
    let q = magic_basis();
    q.adjoint() * *m * q
}

/// `Q M Q†`, the inverse of [`to_magic_basis`].
pub fn from_magic_basis(m: &Mat4) -> Mat4 {
    let q = magic_basis();
    q * *m * q.adjoint()
}
