use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{GroupPoint, SphericalError};
use crate::heisenberg_model::HeisenbergElement;

/// Haar-distributed unitary matrix: QR of a complex Gaussian matrix with the
/// phases of `diag(R)` moved into `Q`.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<Complex64> {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let z = DMatrix::from_fn(n, n, |_, _| {
        Complex64::new(rng.sample::<f64, _>(StandardNormal) * scale, rng.sample::<f64, _>(StandardNormal) * scale)
    });
    let qr = z.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Haar-distributed element of `SO(n)`.
pub fn haar_orthogonal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<f64> {
    let z = DMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = z.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    // Haar on O(n); flipping one column maps the other coset onto SO(n).
    if q.determinant() < 0.0 {
        q.column_mut(0).neg_mut();
    }
    q
}

/// Deterministic Haar unitary for a seed.
pub fn haar_unitary_sample(n: usize, seed: u64) -> DMatrix<Complex64> {
    haar_unitary(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Deterministic Haar element of `SO(n)` for a seed.
pub fn haar_orthogonal_sample(n: usize, seed: u64) -> DMatrix<f64> {
    haar_orthogonal(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// An element of `K` acting on the normal factor.
#[derive(Debug, Clone, PartialEq)]
pub enum KElement {
    Rotation(DMatrix<f64>),
    Unitary(DMatrix<Complex64>),
}

impl KElement {
    /// `k · g`: `x ↦ kx` on `ℝⁿ`, `(z, w) ↦ (z, kw)` on `H_n`.
    pub fn act(&self, g: &GroupPoint) -> Result<GroupPoint, SphericalError> {
        match (self, g) {
            (Self::Rotation(k), GroupPoint::Euclidean(x)) if k.ncols() == x.len() => {
                Ok(GroupPoint::Euclidean((0..x.len()).map(|i| (0..x.len()).map(|j| k[(i, j)] * x[j]).sum()).collect()))
            }
            (Self::Unitary(k), GroupPoint::Heisenberg(h)) if k.ncols() == h.m() => {
                let n = h.m();
                let w = (0..n).map(|i| (0..n).map(|j| k[(i, j)] * h.w[j]).sum()).collect();
                Ok(GroupPoint::Heisenberg(HeisenbergElement::new(h.z, w)))
            }
            _ => Err(SphericalError::PointMismatch("K element does not act on this point".into())),
        }
    }

    /// Haar sample of the `K` that matches the point type.
    pub fn sample<R: Rng + ?Sized>(like: &GroupPoint, rng: &mut R) -> Self {
        match like {
            GroupPoint::Euclidean(x) => Self::Rotation(haar_orthogonal(x.len(), rng)),
            GroupPoint::Heisenberg(h) => Self::Unitary(haar_unitary(h.m(), rng)),
        }
    }
}
