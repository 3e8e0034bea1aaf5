//! Seeded random sources shared by the optimizers, samplers and test sweeps.
//!
//! Every consumer derives its generator from a `(seed, stream)` pair so that
//! work split across restarts or threads stays reproducible.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Stream offsets for the different consumers of a single user seed.
pub(crate) const STREAM_SUPPORT_SAMPLES: u64 = 1 << 40;
pub(crate) const STREAM_ROOF: u64 = 2 << 40;

/// Deterministic generator for one independent stream of a seed.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// Unit vector drawn uniformly from the complex sphere in `dim` dimensions.
pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..dim).map(|_| complex_gaussian(rng)).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-300 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// Haar-random single-qubit state (uniform on the Bloch sphere).
pub fn random_qubit<R: Rng + ?Sized>(rng: &mut R) -> [Complex64; 2] {
    let v = random_unit_vector(rng, 2);
    [v[0], v[1]]
}

/// Haar-random `dim x dim` unitary (QR of a Ginibre matrix with phase fix).
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> DMatrix<Complex64> {
    let g = DMatrix::from_fn(dim, dim, |_, _| complex_gaussian(rng));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    q
}
