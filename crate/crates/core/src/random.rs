//! Deterministic samplers for gates, Hamiltonians and local unitaries.

use std::f64::consts::FRAC_PI_4;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::gate::CanonicalGateVector;
use crate::hamiltonian::HamiltonianVector;
use crate::linalg::{Mat2, Mat4, C64};

fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

/// Haar-random element of SU(2), from a uniformly random unit quaternion.
pub fn random_su2<R: Rng + ?Sized>(rng: &mut R) -> Mat2 {
    let mut q = [0.0; 4];
    loop {
        for x in q.iter_mut() {
            *x = normal(rng);
        }
        let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-12 {
            q.iter_mut().for_each(|x| *x /= n);
            break;
        }
    }
    let a = C64::new(q[0], q[3]);
    let b = C64::new(q[2], q[1]);
    Mat2::new(a, b, -b.conj(), a.conj())
}

/// Haar-random element of U(4): Gram–Schmidt on a complex Gaussian matrix.
pub fn random_unitary4<R: Rng + ?Sized>(rng: &mut R) -> Mat4 {
    let mut cols = [[C64::new(0.0, 0.0); 4]; 4];
    for col in cols.iter_mut() {
        for z in col.iter_mut() {
            *z = C64::new(normal(rng), normal(rng));
        }
    }
    for j in 0..4 {
        for k in 0..j {
            let dot: C64 = (0..4).map(|i| cols[k][i].conj() * cols[j][i]).sum();
            for i in 0..4 {
                let sub = dot * cols[k][i];
                cols[j][i] -= sub;
            }
        }
        let n = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in cols[j].iter_mut() {
            *z /= n;
        }
    }
    Mat4::from_fn(|i, j| cols[j][i])
}

/// Uniform sample of the canonical cell.
pub fn random_canonical<R: Rng + ?Sized>(rng: &mut R) -> CanonicalGateVector {
    loop {
        let l1 = rng.random_range(0.0..=FRAC_PI_4);
        let l2 = rng.random_range(0.0..=FRAC_PI_4);
        let l3 = rng.random_range(-FRAC_PI_4..=FRAC_PI_4);
        if l1 >= l2 && l2 >= l3.abs() && l3 > -FRAC_PI_4 {
            return CanonicalGateVector::folded([l1, l2, l3]);
        }
    }
}

/// Canonical-cell sample pushed onto a boundary stratum (λ1 = π/4,
/// λ1 = λ2, λ2 = |λ3|, λ3 = 0, or the region wall λ1 + |λ3| = π/4) with
/// probability `p_boundary`.
pub fn random_canonical_stratified<R: Rng + ?Sized>(
    rng: &mut R,
    p_boundary: f64,
) -> CanonicalGateVector {
    let c = random_canonical(rng).as_array();
    if rng.random::<f64>() >= p_boundary {
        return CanonicalGateVector::folded(c);
    }
    let [l1, l2, l3] = c;
    let snapped = match rng.random_range(0..5) {
        0 => [FRAC_PI_4, l2, l3.abs()],
        1 => [l1, l1, l3],
        2 => [l1, l2, l2 * l3.signum()],
        3 => [l1, l2, 0.0],
        _ => {
            let l3 = l3.abs().min(FRAC_PI_4 - l1).min(l2);
            [FRAC_PI_4 - l3, l2.min(FRAC_PI_4 - l3), l3]
        }
    };
    CanonicalGateVector::folded(snapped)
}

/// Uniform sample of the canonical cell restricted to `λ1 + |λ3| ≤ π/4`.
pub fn random_in_region<R: Rng + ?Sized>(rng: &mut R) -> CanonicalGateVector {
    loop {
        let c = random_canonical(rng);
        if c.l1() + c.l3().abs() <= FRAC_PI_4 {
            return c;
        }
    }
}

/// Uniform sample of the canonical cone slice `{h1 = 1 ≥ h2 ≥ |h3|}`.
pub fn random_hamiltonian_unit<R: Rng + ?Sized>(rng: &mut R) -> HamiltonianVector {
    loop {
        let h2: f64 = rng.random_range(0.0..=1.0);
        let h3: f64 = rng.random_range(-1.0..=1.0);
        if h3.abs() <= h2 {
            return HamiltonianVector::new_unchecked([1.0, h2, h3]);
        }
    }
}

/// Canonical Hamiltonian with a random overall strength in `[0.1, 3]`.
pub fn random_hamiltonian<R: Rng + ?Sized>(rng: &mut R) -> HamiltonianVector {
    let s = rng.random_range(0.1..=3.0);
    let h = random_hamiltonian_unit(rng).as_array();
    HamiltonianVector::new_unchecked(h.map(|x| s * x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samplers_produce_valid_objects() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            assert!(random_su2(&mut rng).is_unitary(1e-12));
            assert!((random_su2(&mut rng).det() - C64::new(1.0, 0.0)).norm() < 1e-12);
            assert!(random_unitary4(&mut rng).is_unitary(1e-12));
            let c = random_canonical_stratified(&mut rng, 0.5).as_array();
            assert!(
                CanonicalGateVector::new(c[0], c[1], c[2], 1e-12).is_ok(),
                "{c:?}"
            );
            let r = random_in_region(&mut rng);
            assert!(r.l1() + r.l3().abs() <= FRAC_PI_4);
            let h = random_hamiltonian(&mut rng).as_array();
            assert!(h[0] >= h[1] && h[1] >= h[2].abs());
        }
    }
}
