//! Fixed-size complex matrices for one- and two-qubit operators.
//!
//! Two-qubit operators use the computational basis ordering
//! `|00>, |01>, |10>, |11>` with the first tensor factor on the left, so
//! `kron(a, b)[2i + k][2j + l] = a[i][j] * b[k][l]`.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// A 2×2 complex matrix (single-qubit operator).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2(pub [[C64; 2]; 2]);

/// A 4×4 complex matrix (two-qubit operator).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat4(pub [[C64; 4]; 4]);

/// A 3×3 real matrix, used for the nonlocal coupling block of a Hamiltonian.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RealMatrix3(pub [[f64; 3]; 3]);

macro_rules! impl_square {
    ($name:ident, $n:expr) => {
        impl $name {
            pub const DIM: usize = $n;

            pub fn zeros() -> Self {
                $name([[ZERO; $n]; $n])
            }

            pub fn identity() -> Self {
                let mut m = Self::zeros();
                for i in 0..$n {
                    m.0[i][i] = ONE;
                }
                m
            }

            pub fn from_fn(mut f: impl FnMut(usize, usize) -> C64) -> Self {
                let mut m = Self::zeros();
                for i in 0..$n {
                    for j in 0..$n {
                        m.0[i][j] = f(i, j);
                    }
                }
                m
            }

            pub fn from_real(re: [[f64; $n]; $n]) -> Self {
                Self::from_fn(|i, j| C64::new(re[i][j], 0.0))
            }

            pub fn adjoint(&self) -> Self {
                Self::from_fn(|i, j| self.0[j][i].conj())
            }

            pub fn transpose(&self) -> Self {
                Self::from_fn(|i, j| self.0[j][i])
            }

            pub fn conj(&self) -> Self {
                Self::from_fn(|i, j| self.0[i][j].conj())
            }

            pub fn scale(&self, s: C64) -> Self {
                Self::from_fn(|i, j| self.0[i][j] * s)
            }

            pub fn trace(&self) -> C64 {
                (0..$n).map(|i| self.0[i][i]).sum()
            }

            /// Largest entrywise modulus.
            pub fn max_abs(&self) -> f64 {
                self.0
                    .iter()
                    .flat_map(|row| row.iter())
                    .map(|z| z.norm())
                    .fold(0.0, f64::max)
            }

            /// `‖self − other‖_max`.
            pub fn max_abs_diff(&self, other: &Self) -> f64 {
                (*self - *other).max_abs()
            }

            /// `‖M†M − I‖_max`.
            pub fn unitarity_residual(&self) -> f64 {
                (self.adjoint() * *self).max_abs_diff(&Self::identity())
            }

            pub fn is_unitary(&self, tol: f64) -> bool {
                self.unitarity_residual() <= tol
            }

            pub fn hermiticity_residual(&self) -> f64 {
                self.max_abs_diff(&self.adjoint())
            }

            pub fn is_finite(&self) -> bool {
                self.0
                    .iter()
                    .flat_map(|row| row.iter())
                    .all(|z| z.re.is_finite() && z.im.is_finite())
            }

            /// Determinant by Gaussian elimination with partial pivoting.
            pub fn det(&self) -> C64 {
                let mut a = self.0;
                let mut det = ONE;
                for col in 0..$n {
                    let pivot = (col..$n)
                        .max_by(|&x, &y| a[x][col].norm().total_cmp(&a[y][col].norm()))
                        .unwrap();
                    if a[pivot][col].norm() == 0.0 {
                        return ZERO;
                    }
                    if pivot != col {
                        a.swap(pivot, col);
                        det = -det;
                    }
                    det *= a[col][col];
                    for row in col + 1..$n {
                        let f = a[row][col] / a[col][col];
                        for k in col..$n {
                            let sub = f * a[col][k];
                            a[row][k] -= sub;
                        }
                    }
                }
                det
            }

            /// Global phase `e^{iφ}` that best aligns `self` with `target`
            /// in the Frobenius sense, i.e. the phase of `Tr(self† target)`.
            pub fn phase_towards(&self, target: &Self) -> C64 {
                let overlap = (self.adjoint() * *target).trace();
                if overlap.norm() < 1e-300 {
                    ONE
                } else {
                    overlap / overlap.norm()
                }
            }

            /// Max-norm distance to `target` after optimal global-phase alignment.
            pub fn distance_up_to_phase(&self, target: &Self) -> f64 {
                let phase = self.phase_towards(target);
                self.scale(phase).max_abs_diff(target)
            }
        }

        impl Index<(usize, usize)> for $name {
            type Output = C64;
            fn index(&self, (i, j): (usize, usize)) -> &C64 {
                &self.0[i][j]
            }
        }

        impl IndexMut<(usize, usize)> for $name {
            fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
                &mut self.0[i][j]
            }
        }

        impl Mul for $name {
            type Output = $name;
            fn mul(self, rhs: $name) -> $name {
                $name::from_fn(|i, j| (0..$n).map(|k| self.0[i][k] * rhs.0[k][j]).sum())
            }
        }

        impl Add for $name {
            type Output = $name;
            fn add(self, rhs: $name) -> $name {
                $name::from_fn(|i, j| self.0[i][j] + rhs.0[i][j])
            }
        }

        impl Sub for $name {
            type Output = $name;
            fn sub(self, rhs: $name) -> $name {
                $name::from_fn(|i, j| self.0[i][j] - rhs.0[i][j])
            }
        }

        impl Neg for $name {
            type Output = $name;
            fn neg(self) -> $name {
                $name::from_fn(|i, j| -self.0[i][j])
            }
        }

        impl Mul<C64> for $name {
            type Output = $name;
            fn mul(self, rhs: C64) -> $name {
                self.scale(rhs)
            }
        }

        impl Mul<f64> for $name {
            type Output = $name;
            fn mul(self, rhs: f64) -> $name {
                self.scale(C64::new(rhs, 0.0))
            }
        }
    };
}

impl_square!(Mat2, 2);
impl_square!(Mat4, 4);

impl Mat2 {
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    /// Tensor product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &Mat2) -> Mat4 {
        Mat4::from_fn(|r, c| self.0[r / 2][c / 2] * rhs.0[r % 2][c % 2])
    }
}

impl Mat4 {
    pub fn diag(d: [C64; 4]) -> Self {
        let mut m = Mat4::zeros();
        for (i, z) in d.into_iter().enumerate() {
            m.0[i][i] = z;
        }
        m
    }

    pub fn diagonal(&self) -> [C64; 4] {
        [self.0[0][0], self.0[1][1], self.0[2][2], self.0[3][3]]
    }

    /// Largest off-diagonal modulus.
    pub fn max_off_diagonal(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    worst = worst.max(self.0[i][j].norm());
                }
            }
        }
        worst
    }

    /// Largest imaginary part over all entries.
    pub fn max_imag(&self) -> f64 {
        self.0
            .iter()
            .flat_map(|row| row.iter())
            .map(|z| z.im.abs())
            .fold(0.0, f64::max)
    }

    pub fn real_part(&self) -> [[f64; 4]; 4] {
        let mut out = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                out[i][j] = self.0[i][j].re;
            }
        }
        out
    }

    pub fn imag_part(&self) -> [[f64; 4]; 4] {
        let mut out = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                out[i][j] = self.0[i][j].im;
            }
        }
        out
    }

    pub fn symmetry_residual(&self) -> f64 {
        self.max_abs_diff(&self.transpose())
    }
}

impl RealMatrix3 {
    pub fn zeros() -> Self {
        RealMatrix3([[0.0; 3]; 3])
    }

    pub fn diag(d: [f64; 3]) -> Self {
        let mut m = Self::zeros();
        for i in 0..3 {
            m.0[i][i] = d[i];
        }
        m
    }

    pub fn det(&self) -> f64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros();
        for i in 0..3 {
            for j in 0..3 {
                t.0[i][j] = self.0[j][i];
            }
        }
        t
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max((self.0[i][j] - other.0[i][j]).abs());
            }
        }
        worst
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_finite())
    }
}

impl Mul for RealMatrix3 {
    type Output = RealMatrix3;
    fn mul(self, rhs: RealMatrix3) -> RealMatrix3 {
        let mut out = RealMatrix3::zeros();
        for i in 0..3 {
            for j in 0..3 {
                out.0[i][j] = (0..3).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        out
    }
}

// Entries read back as `[re, im]` or as a plain real.
#[derive(Deserialize)]
#[serde(untagged)]
enum Entry {
    Complex([f64; 2]),
    Real(f64),
}

impl From<&Entry> for C64 {
    fn from(e: &Entry) -> C64 {
        match *e {
            Entry::Complex([re, im]) => C64::new(re, im),
            Entry::Real(re) => C64::new(re, 0.0),
        }
    }
}

// Matrices serialize as rows of `[re, im]` pairs.
macro_rules! impl_serde {
    ($name:ident, $n:expr) => {
        impl Serialize for $name {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let rows: Vec<Vec<[f64; 2]>> = self
                    .0
                    .iter()
                    .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
                    .collect();
                rows.serialize(s)
            }
        }

        impl<'de> Deserialize<'de> for $name {
            fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                let rows: Vec<Vec<Entry>> = Vec::deserialize(d)?;
                if rows.len() != $n || rows.iter().any(|r| r.len() != $n) {
                    return Err(D::Error::custom(format!(
                        "expected a {}x{} matrix of [re, im] pairs",
                        $n, $n
                    )));
                }
                Ok($name::from_fn(|i, j| C64::from(&rows[i][j])))
            }
        }
    };
}

impl_serde!(Mat2, 2);
impl_serde!(Mat4, 4);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_accepts_real_entries() {
        let m: Mat2 = serde_json::from_str("[[0, [0, -1]], [[0, 1], 0.5]]").unwrap();
        assert_eq!(m[(0, 1)], C64::new(0.0, -1.0));
        assert_eq!(m[(1, 1)], C64::new(0.5, 0.0));
        assert!(serde_json::from_str::<Mat2>("[[0, 1]]").is_err());
    }

    #[test]
    fn kron_layout() {
        let x = Mat2::new(ZERO, ONE, ONE, ZERO);
        let id = Mat2::identity();
        // X ⊗ I maps |00> to |10>
        let m = x.kron(&id);
        assert_eq!(m[(2, 0)], ONE);
        assert_eq!(m[(0, 0)], ZERO);
        // I ⊗ X maps |00> to |01>
        let m = id.kron(&x);
        assert_eq!(m[(1, 0)], ONE);
    }

    #[test]
    fn det_of_permutation_and_diag() {
        let swap = Mat4::from_real([
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ]);
        assert!((swap.det() + ONE).norm() < 1e-15);
        let d = Mat4::diag([I, I, -I, ONE * 2.0]);
        assert!((d.det() - C64::new(0.0, 2.0)).norm() < 1e-15);
    }

    #[test]
    fn phase_alignment() {
        let m = Mat4::identity().scale(C64::from_polar(1.0, 0.7));
        assert!(m.distance_up_to_phase(&Mat4::identity()) < 1e-15);
    }
}
