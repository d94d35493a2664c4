//! Canonical form of two-qubit gates.
//!
//! Every two-qubit gate factors as
//! `U = e^{iα} (u1 ⊗ v1) · exp(−i Σ_k λ_k σ_k⊗σ_k) · (u2 ⊗ v2)`.
//! The vector `λ` is fixed up to π/2 shifts of any component and the Weyl
//! moves (coordinate permutations, paired sign flips); the representative
//! in the canonical cell
//!
//! ```text
//! λ1 ≥ λ2 ≥ |λ3|,   λ1, λ2 ∈ [0, π/4],   λ3 ∈ (−π/4, π/4]
//! ```
//!
//! with `λ3 ≥ 0` whenever `λ1 = π/4` labels the gate up to local unitaries.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    eig_unitary_symmetric, from_magic_basis, to_magic_basis, Mat2, Mat4, Pauli, C64, I,
    MAGIC_SIGNS, ONE,
};
use crate::tolerance::Tolerance;

/// Canonical-cell vector `λ⁰` of a gate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "[f64; 3]", try_from = "[f64; 3]")]
pub struct CanonicalGateVector([f64; 3]);

impl CanonicalGateVector {
    pub const IDENTITY: CanonicalGateVector = CanonicalGateVector([0.0, 0.0, 0.0]);
    pub const CNOT: CanonicalGateVector = CanonicalGateVector([FRAC_PI_4, 0.0, 0.0]);
    pub const XY: CanonicalGateVector = CanonicalGateVector([FRAC_PI_4, FRAC_PI_4, 0.0]);
    pub const SWAP: CanonicalGateVector = CanonicalGateVector([FRAC_PI_4, FRAC_PI_4, FRAC_PI_4]);

    /// Validates membership in the canonical cell within `tol`.
    pub fn new(l1: f64, l2: f64, l3: f64, tol: f64) -> Result<Self> {
        let v = [l1, l2, l3];
        let ok = v.iter().all(|x| x.is_finite())
            && l1 >= l2 - tol
            && l2 >= l3.abs() - tol
            && l2 >= -tol
            && l1 <= FRAC_PI_4 + tol
            && l3 > -FRAC_PI_4 + tol
            && !((l1 - FRAC_PI_4).abs() <= tol && l3 < -tol);
        if ok {
            Ok(CanonicalGateVector(v))
        } else {
            Err(Error::NotCanonical(v))
        }
    }

    /// The canonical-cell representative of any coupling vector.
    pub fn folded(v: [f64; 3]) -> Self {
        fold_to_cell(v).canonical
    }

    pub fn as_array(&self) -> [f64; 3] {
        self.0
    }

    pub fn l1(&self) -> f64 {
        self.0[0]
    }

    pub fn l2(&self) -> f64 {
        self.0[1]
    }

    pub fn l3(&self) -> f64 {
        self.0[2]
    }

    pub fn scaled(&self, alpha: f64) -> [f64; 3] {
        self.0.map(|x| alpha * x)
    }

    /// Distance in the quotient by local equivalence: the λ1 = π/4 face is
    /// glued to itself under λ3 → −λ3, so compare against both images.
    pub fn distance(&self, other: &CanonicalGateVector) -> f64 {
        let direct = max_abs_diff3(self.0, other.0);
        let mirrored = max_abs_diff3(self.0, [FRAC_PI_2 - other.0[0], other.0[1], -other.0[2]]);
        direct.min(mirrored)
    }
}

impl From<CanonicalGateVector> for [f64; 3] {
    fn from(v: CanonicalGateVector) -> Self {
        v.0
    }
}

impl TryFrom<[f64; 3]> for CanonicalGateVector {
    type Error = Error;
    fn try_from(v: [f64; 3]) -> Result<Self> {
        CanonicalGateVector::new(v[0], v[1], v[2], Tolerance::default().scalar)
    }
}

impl fmt::Display for CanonicalGateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

pub(crate) fn max_abs_diff3(a: [f64; 3], b: [f64; 3]) -> f64 {
    (0..3).map(|k| (a[k] - b[k]).abs()).fold(0.0, f64::max)
}

/// Integer vector `n` of a π/2 shift `λ → λ + (π/2)·n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntegerShift(pub [i64; 3]);

impl IntegerShift {
    pub const ZERO: IntegerShift = IntegerShift([0, 0, 0]);
    /// The second candidate of the two-branch cost formula.
    pub const MINUS_X: IntegerShift = IntegerShift([-1, 0, 0]);

    pub fn apply(&self, v: [f64; 3]) -> [f64; 3] {
        [0, 1, 2].map(|k| v[k] + FRAC_PI_2 * self.0[k] as f64)
    }
}

impl fmt::Display for IntegerShift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

/// A local operator `phase · (a ⊗ b)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalGate {
    pub a: Mat2,
    pub b: Mat2,
    pub phase: C64,
}

impl LocalGate {
    pub fn identity() -> Self {
        LocalGate {
            a: Mat2::identity(),
            b: Mat2::identity(),
            phase: ONE,
        }
    }

    pub fn new(a: Mat2, b: Mat2) -> Self {
        LocalGate { a, b, phase: ONE }
    }

    pub fn matrix(&self) -> Mat4 {
        self.a.kron(&self.b).scale(self.phase)
    }

    pub fn adjoint(&self) -> Self {
        LocalGate {
            a: self.a.adjoint(),
            b: self.b.adjoint(),
            phase: self.phase.conj(),
        }
    }

    /// `self · rhs`.
    pub fn then_right(&self, rhs: &LocalGate) -> Self {
        LocalGate {
            a: self.a * rhs.a,
            b: self.b * rhs.b,
            phase: self.phase * rhs.phase,
        }
    }
}

/// `exp(−i Σ_k λ_k σ_k⊗σ_k)`, exact via the magic basis where the exponent
/// is diagonal.
pub fn exp_canonical(lambda: [f64; 3]) -> Mat4 {
    let mut d = [ONE; 4];
    for (j, z) in d.iter_mut().enumerate() {
        let theta: f64 = (0..3).map(|k| MAGIC_SIGNS[j][k] * lambda[k]).sum();
        *z = C64::from_polar(1.0, -theta);
    }
    from_magic_basis(&Mat4::diag(d))
}

/// Ordered representative of `v` under coordinate permutations and even
/// numbers of sign flips: absolute values sorted descending, the sign of
/// `v1·v2·v3` carried by the smallest entry.
pub fn weyl_reduce(v: [f64; 3]) -> [f64; 3] {
    let mut a = v.map(f64::abs);
    a.sort_by(|x, y| y.total_cmp(x));
    let negative = v.iter().filter(|x| **x < 0.0).count() % 2 == 1;
    if negative && a[2] != 0.0 {
        a[2] = -a[2];
    }
    a
}

/// Result of folding a coupling vector into the canonical cell:
/// `exp_canonical(v) = left · exp_canonical(canonical) · right`, and
/// `weyl_reduce(v − (π/2)·shift)` is `canonical`.
#[derive(Clone, Copy, Debug)]
pub struct Fold {
    pub canonical: CanonicalGateVector,
    pub shift: IntegerShift,
    pub left: LocalGate,
    pub right: LocalGate,
}

impl Fold {
    /// The combined local correction as 4×4 matrices `(left, right)`.
    pub fn local_correction(&self) -> (Mat4, Mat4) {
        (self.left.matrix(), self.right.matrix())
    }
}

/// Single-qubit Clifford exchanging Pauli axes `i` and `j` (up to sign).
fn axis_swap(i: usize, j: usize) -> Mat2 {
    let (p, q) = (Pauli::from_index(i).matrix(), Pauli::from_index(j).matrix());
    (p + q) * FRAC_1_SQRT_2
}

struct Folder {
    w: [f64; 3],
    left: LocalGate,
    right: LocalGate,
    // Current coordinate k holds sign[k]·(v − (π/2)n)[axis[k]].
    axis: [usize; 3],
    sign: [i64; 3],
    shift: [i64; 3],
}

impl Folder {
    fn new(v: [f64; 3]) -> Self {
        Folder {
            w: v,
            left: LocalGate::identity(),
            right: LocalGate::identity(),
            axis: [0, 1, 2],
            sign: [1, 1, 1],
            shift: [0, 0, 0],
        }
    }

    /// `w_k → w_k − m·π/2`, using `U_{(π/2)e_k} = −i σ_k⊗σ_k`.
    fn shift(&mut self, k: usize, m: i64) {
        if m == 0 {
            return;
        }
        self.w[k] -= m as f64 * FRAC_PI_2;
        let s = Pauli::from_index(k).matrix();
        let phase = (-I).powi(m.rem_euclid(4) as i32);
        let factor = if m.rem_euclid(2) == 1 {
            LocalGate { a: s, b: s, phase }
        } else {
            LocalGate {
                a: Mat2::identity(),
                b: Mat2::identity(),
                phase,
            }
        };
        self.right = factor.then_right(&self.right);
        self.shift[self.axis[k]] += self.sign[k] * m;
    }

    /// Negate every component except `keep`, by conjugating with `σ_keep ⊗ I`.
    fn flip(&mut self, keep: usize) {
        let conj = LocalGate::new(Pauli::from_index(keep).matrix(), Mat2::identity());
        for k in 0..3 {
            if k != keep {
                self.w[k] = -self.w[k];
                self.sign[k] = -self.sign[k];
            }
        }
        self.left = self.left.then_right(&conj);
        self.right = conj.then_right(&self.right);
    }

    /// Exchange components `i` and `j`, by conjugating with `g ⊗ g`.
    fn swap(&mut self, i: usize, j: usize) {
        let g = axis_swap(i, j);
        let conj = LocalGate::new(g, g);
        self.w.swap(i, j);
        self.axis.swap(i, j);
        self.sign.swap(i, j);
        self.left = self.left.then_right(&conj.adjoint());
        self.right = conj.then_right(&self.right);
    }

    fn sort_and_sign(&mut self) {
        for _ in 0..3 {
            for k in 0..2 {
                if self.w[k].abs() < self.w[k + 1].abs() {
                    self.swap(k, k + 1);
                }
            }
        }
        match (self.w[0] < 0.0, self.w[1] < 0.0) {
            (true, true) => self.flip(2),
            (true, false) => self.flip(1),
            (false, true) => self.flip(0),
            (false, false) => {}
        }
    }
}

/// Fold an arbitrary coupling vector into the canonical cell, tracking the
/// local unitaries and the integer shift that relate the two gates.
pub fn fold_to_cell(v: [f64; 3]) -> Fold {
    fold_to_cell_with(v, Tolerance::default().scalar)
}

pub fn fold_to_cell_with(v: [f64; 3], tol: f64) -> Fold {
    let mut f = Folder::new(v);
    for k in 0..3 {
        // m = ⌈w/(π/2) − 1/2⌉ puts w − m·π/2 in (−π/4, π/4]; values within
        // rounding of the boundary are sent to the +π/4 side.
        let r = f.w[k] / FRAC_PI_2 - 0.5;
        let m = if (r - r.round()).abs() < 1e-12 {
            r.round()
        } else {
            r.ceil()
        };
        f.shift(k, m as i64);
    }
    for _ in 0..8 {
        f.sort_and_sign();
        if f.w[2] <= -FRAC_PI_4 + tol {
            f.shift(2, -1);
            continue;
        }
        if (f.w[0] - FRAC_PI_4).abs() <= tol && f.w[2] < 0.0 {
            f.shift(0, 1);
            f.flip(1);
            continue;
        }
        break;
    }
    // Clamp rounding overshoot of the cell walls.
    let l1 = f.w[0].clamp(0.0, FRAC_PI_4);
    let l2 = f.w[1].clamp(0.0, l1);
    let l3 = f.w[2].clamp(-l2, l2);
    Fold {
        canonical: CanonicalGateVector([l1, l2, l3]),
        shift: IntegerShift(f.shift),
        left: f.left,
        right: f.right,
    }
}

/// `U = global_phase · (u1⊗v1) · exp_canonical(core) · (u2⊗v2)`.
#[derive(Clone, Copy, Debug)]
pub struct LocalFactorization {
    pub u1: Mat2,
    pub v1: Mat2,
    pub u2: Mat2,
    pub v2: Mat2,
    pub core: CanonicalGateVector,
    pub global_phase: C64,
}

impl LocalFactorization {
    pub fn reconstruct(&self) -> Mat4 {
        (self.u1.kron(&self.v1) * exp_canonical(self.core.as_array()) * self.u2.kron(&self.v2))
            .scale(self.global_phase)
    }
}

/// Split a local 4×4 operator into `phase · (a ⊗ b)` with `a, b ∈ SU(2)`.
pub fn factor_local(k: &Mat4) -> LocalGate {
    let block = |bk: usize, bl: usize| Mat2::from_fn(|i, j| k.0[2 * i + bk][2 * j + bl]);
    let (mut best, mut best_norm) = ((0, 0), -1.0);
    for bk in 0..2 {
        for bl in 0..2 {
            let blk = block(bk, bl);
            let norm: f64 = blk.0.iter().flatten().map(|z| z.norm_sqr()).sum();
            if norm > best_norm {
                best_norm = norm;
                best = (bk, bl);
            }
        }
    }
    let mut a = block(best.0, best.1);
    a = a.scale(ONE / a.det().sqrt());
    let mut b = Mat2::zeros();
    for bk in 0..2 {
        for bl in 0..2 {
            let mut s = C64::new(0.0, 0.0);
            for i in 0..2 {
                for j in 0..2 {
                    s += a.0[i][j].conj() * k.0[2 * i + bk][2 * j + bl];
                }
            }
            b.0[bk][bl] = s / 2.0;
        }
    }
    let phase = b.det().sqrt();
    let b = b.scale(ONE / phase);
    LocalGate { a, b, phase }
}

/// Full local factorization of a two-qubit unitary.
pub fn kak_full(u: &Mat4) -> Result<LocalFactorization> {
    kak_full_with(u, &Tolerance::default())
}

pub fn kak_full_with(u: &Mat4, tol: &Tolerance) -> Result<LocalFactorization> {
    let unitarity = u.unitarity_residual();
    if !(unitarity <= tol.matrix) {
        return Err(Error::NotUnitary {
            residual: unitarity,
        });
    }
    let det_root = u.det().powf(0.25);
    let su = u.scale(ONE / det_root);
    let m = to_magic_basis(&su);
    let mtm = m.transpose() * m;
    let eig = eig_unitary_symmetric(&mtm, tol.matrix)?;

    let mut half = eig.phases.map(|p| C64::from_polar(1.0, p / 2.0));
    let product: C64 = half.iter().product();
    if product.re < 0.0 {
        half[3] = -half[3];
    }
    let basis = Mat4::from_real(eig.basis);
    let half_inv = Mat4::diag(half.map(|z| z.conj()));
    let k1 = from_magic_basis(&(m * basis * half_inv));
    let k2 = from_magic_basis(&basis.transpose());

    // exp(−i Σ λ_k σ_k⊗σ_k) has magic-basis diagonal e^{−iθ_j}, θ = S·λ.
    let mut theta = half.map(|z| -z.arg());
    let total: f64 = theta.iter().sum();
    theta[3] -= std::f64::consts::TAU * (total / std::f64::consts::TAU).round();
    let mut raw = [0.0; 3];
    for (k, r) in raw.iter_mut().enumerate() {
        *r = (0..4).map(|j| MAGIC_SIGNS[j][k] * theta[j]).sum::<f64>() / 4.0;
    }

    let fold = fold_to_cell_with(raw, tol.scalar);
    let outer = factor_local(&k1).then_right(&fold.left);
    let inner = fold.right.then_right(&factor_local(&k2));
    let result = LocalFactorization {
        u1: outer.a,
        v1: outer.b,
        u2: inner.a,
        v2: inner.b,
        core: fold.canonical,
        global_phase: det_root * outer.phase * inner.phase,
    };
    let residual = result.reconstruct().max_abs_diff(u);
    if !(residual <= tol.matrix) {
        return Err(Error::DecompositionFailed { residual });
    }
    Ok(result)
}

/// Canonical-cell vector of a two-qubit unitary.
pub fn canonical_vector(u: &Mat4) -> Result<CanonicalGateVector> {
    Ok(kak_full(u)?.core)
}

pub fn canonical_vector_with(u: &Mat4, tol: &Tolerance) -> Result<CanonicalGateVector> {
    Ok(kak_full_with(u, tol)?.core)
}

/// Whether two gates agree up to single-qubit unitaries and global phase.
pub fn locally_equivalent(u: &Mat4, v: &Mat4) -> Result<bool> {
    locally_equivalent_with(u, v, &Tolerance::default())
}

pub fn locally_equivalent_with(u: &Mat4, v: &Mat4, tol: &Tolerance) -> Result<bool> {
    let a = canonical_vector_with(u, tol)?;
    let b = canonical_vector_with(v, tol)?;
    Ok(a.distance(&b) <= tol.matrix)
}
