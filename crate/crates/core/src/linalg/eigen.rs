//! Eigendecomposition of complex-symmetric unitaries and the signed 3×3 SVD.

use nalgebra::{Matrix3, Matrix4, SymmetricEigen};

use super::matrix::{Mat4, RealMatrix3, C64};
use crate::error::{Error, Result};

/// `M = B · diag(e^{iφ_j}) · Bᵀ` with `B` real orthogonal and `det B = +1`.
#[derive(Clone, Copy, Debug)]
pub struct SymmetricUnitaryEigen {
    pub phases: [f64; 4],
    /// Columns are the eigenvectors.
    pub basis: [[f64; 4]; 4],
}

impl SymmetricUnitaryEigen {
    pub fn reconstruct(&self) -> Mat4 {
        let d = Mat4::diag(self.phases.map(|p| C64::from_polar(1.0, p)));
        let b = Mat4::from_real(self.basis);
        b * d * b.transpose()
    }
}

// Mixing angles for the real combination cos(t)·Re M + sin(t)·Im M. Distinct
// eigenphases φ_a ≠ φ_b only collide when t ≡ (φ_a + φ_b)/2 (mod π), so a
// handful of unrelated angles always contains a well-separated choice.
const MIXING_ANGLES: [f64; 8] = [
    0.413_872_592_7,
    1.271_503_386_1,
    2.067_302_149_9,
    2.833_176_054_3,
    0.877_140_628_5,
    1.640_955_213_7,
    2.445_081_932_4,
    0.121_094_750_3,
];

/// Eigendecomposition of a unitary, complex-symmetric 4×4 matrix with a
/// real orthogonal eigenbasis.
///
/// `Re M` and `Im M` are commuting real symmetric matrices, so every real
/// combination of them shares the common real eigenbasis. Degenerate
/// eigenvalues are handled by the combination step; the candidate basis is
/// re-orthonormalized and the attempt with the smallest reconstruction error
/// is kept.
pub fn eig_unitary_symmetric(m: &Mat4, tol: f64) -> Result<SymmetricUnitaryEigen> {
    let unitarity = m.unitarity_residual();
    if !(unitarity <= tol) {
        return Err(Error::NotUnitary {
            residual: unitarity,
        });
    }
    let symmetry = m.symmetry_residual();
    if !(symmetry <= tol) {
        return Err(Error::NotSymmetric { residual: symmetry });
    }

    let re = m.real_part();
    let im = m.imag_part();
    let mut best: Option<(f64, SymmetricUnitaryEigen)> = None;
    for &t in &MIXING_ANGLES {
        let (c, s) = (t.cos(), t.sin());
        let mixed = Matrix4::from_fn(|i, j| {
            let a = c * re[i][j] + s * im[i][j];
            let b = c * re[j][i] + s * im[j][i];
            0.5 * (a + b)
        });
        let eig = SymmetricEigen::new(mixed);
        let mut basis = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                basis[i][j] = eig.eigenvectors[(i, j)];
            }
        }
        orthonormalize_columns(&mut basis);
        if det4(&basis) < 0.0 {
            for row in basis.iter_mut() {
                row[3] = -row[3];
            }
        }
        let b = Mat4::from_real(basis);
        let projected = b.transpose() * *m * b;
        let phases = projected.diagonal().map(|z| z.arg());
        let candidate = SymmetricUnitaryEigen { phases, basis };
        let err = candidate.reconstruct().max_abs_diff(m);
        if best.as_ref().is_none_or(|(e, _)| err < *e) {
            best = Some((err, candidate));
        }
        if err < 1e-13 {
            break;
        }
    }
    Ok(best.expect("at least one mixing angle").1)
}

/// Modified Gram–Schmidt on the columns of a 4×4 real matrix.
fn orthonormalize_columns(b: &mut [[f64; 4]; 4]) {
    for j in 0..4 {
        for k in 0..j {
            let dot: f64 = (0..4).map(|i| b[i][j] * b[i][k]).sum();
            for i in 0..4 {
                b[i][j] -= dot * b[i][k];
            }
        }
        let norm = (0..4).map(|i| b[i][j] * b[i][j]).sum::<f64>().sqrt();
        for i in 0..4 {
            b[i][j] /= norm;
        }
    }
}

fn det4(a: &[[f64; 4]; 4]) -> f64 {
    Matrix4::from_fn(|i, j| a[i][j]).determinant()
}

/// `M = L · diag(d) · Rᵀ` with `L, R ∈ SO(3)`.
#[derive(Clone, Copy, Debug)]
pub struct SignedSvd {
    /// `d1 ≥ d2 ≥ |d3|`, `sign(d1·d2·d3) = sign(det M)`.
    pub d: [f64; 3],
    pub left: RealMatrix3,
    pub right: RealMatrix3,
}

impl SignedSvd {
    pub fn reconstruct(&self) -> RealMatrix3 {
        self.left * RealMatrix3::diag(self.d) * self.right.transpose()
    }
}

/// Singular value decomposition with proper rotations; the sign of the
/// determinant is carried by the smallest singular value.
pub fn signed_svd3(m: &RealMatrix3) -> SignedSvd {
    let mat = Matrix3::from_fn(|i, j| m.0[i][j]);
    let svd = mat.svd(true, true);
    let u = svd.u.expect("u requested");
    let v_t = svd.v_t.expect("v_t requested");
    let sv = svd.singular_values;

    let mut order = [0usize, 1, 2];
    order.sort_by(|&a, &b| sv[b].total_cmp(&sv[a]));

    let mut left = RealMatrix3::zeros();
    let mut right = RealMatrix3::zeros();
    let mut d = [0.0; 3];
    for (col, &src) in order.iter().enumerate() {
        d[col] = sv[src];
        for row in 0..3 {
            left.0[row][col] = u[(row, src)];
            right.0[row][col] = v_t[(src, row)];
        }
    }
    let det_l = left.det().signum();
    let det_r = right.det().signum();
    if det_l < 0.0 {
        for row in 0..3 {
            left.0[row][2] = -left.0[row][2];
        }
    }
    if det_r < 0.0 {
        for row in 0..3 {
            right.0[row][2] = -right.0[row][2];
        }
    }
    d[2] *= det_l * det_r;
    SignedSvd { d, left, right }
}
