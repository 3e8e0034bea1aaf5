#![allow(dead_code)]

use geoment::rng::{complex_gaussian, random_unit_vector, stream_rng};
use geoment::{DensityMatrix, PureState};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

/// Full-rank density matrix `G G† / Tr(G G†)` from a Ginibre matrix.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DensityMatrix {
    let d = 1 << n;
    let g = DMatrix::from_fn(d, d, |_, _| complex_gaussian(rng));
    let m = &g * g.adjoint();
    let tr = m.trace().re;
    let m = m.map(|z| z / tr);
    let m = (&m + m.adjoint()).scale(0.5);
    DensityMatrix::new(n, m).expect("valid density")
}

pub fn random_pure<R: Rng + ?Sized>(rng: &mut R, n: usize) -> PureState {
    PureState::new(n, random_unit_vector(rng, 1 << n)).expect("normalized")
}

pub fn random_pure_seeded(seed: u64, n: usize) -> PureState {
    random_pure(&mut stream_rng(seed, 0), n)
}

pub fn max_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    geoment::linalg::max_abs_diff(a, b)
}
