//! Special majorization `x ≺_s y` on ordered 3-vectors and the minimal
//! simulation overhead it induces.
//!
//! For `x1 ≥ x2 ≥ |x3|` and `y1 ≥ y2 ≥ |y3|`, `x ≺_s y` means
//!
//! ```text
//! x1           ≤ y1
//! x1 + x2 − x3 ≤ y1 + y2 − y3
//! x1 + x2 + x3 ≤ y1 + y2 + y3
//! ```
//!
//! The overhead of simulating `x` with `y` is the least `c ≥ 0` with
//! `x ≺_s c·y`.

use crate::error::{Error, Result};
use crate::hamiltonian::is_ordered;
use crate::tolerance::DEFAULT_SCALAR_TOL;

/// The three linear functionals defining `≺_s`.
pub fn partial_sums(x: [f64; 3]) -> [f64; 3] {
    [x[0], x[0] + x[1] - x[2], x[0] + x[1] + x[2]]
}

fn check_ordered(x: [f64; 3], tol: f64) -> Result<()> {
    if is_ordered(x, tol) {
        Ok(())
    } else {
        Err(Error::NotOrdered(x))
    }
}

/// `x ≺_s y`, each inequality allowed to fail by `tol·max(1, ‖y‖)`.
pub fn smaj(x: [f64; 3], y: [f64; 3]) -> Result<bool> {
    smaj_with(x, y, DEFAULT_SCALAR_TOL)
}

pub fn smaj_with(x: [f64; 3], y: [f64; 3], tol: f64) -> Result<bool> {
    check_ordered(x, tol)?;
    check_ordered(y, tol)?;
    let slack = tol * y.iter().map(|v| v * v).sum::<f64>().sqrt().max(1.0);
    let (px, py) = (partial_sums(x), partial_sums(y));
    Ok((0..3).all(|k| px[k] <= py[k] + slack))
}

/// Least `c ≥ 0` with `x ≺_s c·y`; `f64::INFINITY` when `y = 0` and `x ≠ 0`.
///
/// All six partial sums are nonnegative on ordered inputs and the ones of
/// `y` are bounded below by `y1`, so the answer is the largest of the three
/// ratios.
pub fn minimal_overhead(x: [f64; 3], y: [f64; 3]) -> Result<f64> {
    minimal_overhead_with(x, y, DEFAULT_SCALAR_TOL)
}

pub fn minimal_overhead_with(x: [f64; 3], y: [f64; 3], tol: f64) -> Result<f64> {
    check_ordered(x, tol)?;
    check_ordered(y, tol)?;
    Ok(overhead_unchecked(x, y, tol))
}

pub(crate) fn overhead_unchecked(x: [f64; 3], y: [f64; 3], tol: f64) -> f64 {
    let (px, py) = (partial_sums(x), partial_sums(y));
    let mut c: f64 = 0.0;
    for k in 0..3 {
        let num = px[k].max(0.0);
        let den = py[k].max(0.0);
        let ratio = if den > 0.0 {
            num / den
        } else if num <= tol {
            0.0
        } else {
            f64::INFINITY
        };
        c = c.max(ratio);
    }
    c
}
