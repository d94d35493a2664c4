/// Comparison tolerances.
///
/// `scalar` applies to comparisons between real quantities (costs,
/// coordinates, inequality slack); `matrix` to entrywise matrix residuals
/// (unitarity, reconstruction).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub scalar: f64,
    pub matrix: f64,
}

pub const DEFAULT_SCALAR_TOL: f64 = 1e-9;
pub const DEFAULT_MATRIX_TOL: f64 = 1e-8;

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            scalar: DEFAULT_SCALAR_TOL,
            matrix: DEFAULT_MATRIX_TOL,
        }
    }
}

impl Tolerance {
    /// Scalar tolerance `tol`, matrix tolerance ten times looser.
    pub fn from_scalar(tol: f64) -> Self {
        Tolerance {
            scalar: tol,
            matrix: 10.0 * tol,
        }
    }
}
