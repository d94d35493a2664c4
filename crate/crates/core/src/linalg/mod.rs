//! Small dense linear algebra: 2×2/4×4 complex matrices, Pauli and
//! magic-basis constants, special eigendecompositions and a tiny LP.

mod eigen;
mod lp;
mod matrix;
mod pauli;

pub use eigen::{eig_unitary_symmetric, signed_svd3, SignedSvd, SymmetricUnitaryEigen};
pub use lp::feasible_combination;
pub use matrix::{Mat2, Mat4, RealMatrix3, C64, I, ONE, ZERO};
pub use pauli::{
    from_magic_basis, magic_basis, sigma_sigma_coefficients, sigma_sigma_sum, to_magic_basis,
    Pauli, MAGIC_SIGNS,
};
