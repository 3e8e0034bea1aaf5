//! Library results against independent test-side computations.

mod common;

use std::f64::consts::{FRAC_PI_2, PI};

use geoment::bounds::{f_n, psi_y_closest_product, psi_y_head_weight, smolin_overlap_norm_sq, AngleTuple};
use geoment::distill::{depolarize, ghz_basis};
use geoment::geometric::{lambda_max, GmeOptions, ProductState};
use geoment::linalg::{eig_hermitian, matrix_log2_on_support};
use geoment::rng::stream_rng;
use geoment::state::overlap;
use geoment::zoo::{dur, psi_y, smolin, u_index, x_state, FlipKind, Sign, SmolinForm};
use geoment::PureState;
use nalgebra::DMatrix;
use num_complex::Complex64;

use common::{max_diff, random_density, random_pure_seeded};

fn qubit(theta: f64, phi: f64) -> [Complex64; 2] {
    [Complex64::new(theta.cos(), 0.0), Complex64::from_polar(theta.sin(), phi)]
}

/// Best overlap of a 3-qubit state with products whose last two factors
/// are fixed; the first factor is optimal in closed form.
fn overlap_given_tail(psi: &[Complex64], b: [Complex64; 2], c: [Complex64; 2]) -> f64 {
    let mut env = [Complex64::new(0.0, 0.0); 2];
    for (a, e) in env.iter_mut().enumerate() {
        for j in 0..2 {
            for k in 0..2 {
                *e += psi[a * 4 + j * 2 + k] * (b[j] * c[k]).conj();
            }
        }
    }
    (env[0].norm_sqr() + env[1].norm_sqr()).sqrt()
}

/// Grid over the Bloch angles of parties 1 and 2, then pattern-search
/// refinement from the best grid point.
fn brute_force_lambda(psi: &PureState) -> f64 {
    let a = psi.amplitudes();
    let f = |p: &[f64; 4]| overlap_given_tail(a, qubit(p[0], p[1]), qubit(p[2], p[3]));
    let step = PI / 200.0;
    let mut best = ([0.0; 4], 0.0);
    let nt = 40;
    let np = 80;
    for i in 0..=nt {
        for j in 0..np {
            for k in 0..=nt {
                for l in 0..np {
                    let p = [
                        FRAC_PI_2 * i as f64 / nt as f64,
                        2.0 * PI * j as f64 / np as f64,
                        FRAC_PI_2 * k as f64 / nt as f64,
                        2.0 * PI * l as f64 / np as f64,
                    ];
                    let v = f(&p);
                    if v > best.1 {
                        best = (p, v);
                    }
                }
            }
        }
    }
    let mut h = step;
    while h > 1e-12 {
        let mut improved = false;
        for d in 0..4 {
            for s in [-1.0, 1.0] {
                let mut p = best.0;
                p[d] += s * h;
                let v = f(&p);
                if v > best.1 {
                    best = (p, v);
                    improved = true;
                }
            }
        }
        if !improved {
            h *= 0.5;
        }
    }
    best.1
}

#[test]
fn lambda_matches_brute_force_on_random_three_qubit_states() {
    for seed in 0..3 {
        let psi = random_pure_seeded(100 + seed, 3);
        let oracle = brute_force_lambda(&psi);
        let got = lambda_max(&psi, &GmeOptions::default()).unwrap().lambda_max;
        assert!((got - oracle).abs() < 1e-8, "seed {seed}: {got} vs {oracle}");
    }
}

#[test]
fn depolarized_coefficients_match_basis_expectations() {
    let mut rng = stream_rng(21, 0);
    for n in 2..=5 {
        let basis = ghz_basis(n).unwrap();
        let rho = random_density(&mut rng, n);
        let c = depolarize(&rho).unwrap();
        let e: Vec<f64> = basis.iter().map(|b| rho.expectation(&b.state).unwrap()).collect();
        assert!((c.lambda0_plus - e[0]).abs() < 1e-14);
        assert!((c.lambda0_minus - e[1]).abs() < 1e-14);
        for j in 1..(1 << (n - 1)) {
            assert!((c.lambda(j) - 0.5 * (e[2 * j] + e[2 * j + 1])).abs() < 1e-14);
        }
        assert!((c.normalization() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn smolin_depolarized_by_expectation() {
    let rho = smolin(SmolinForm::BellPairs);
    let basis = ghz_basis(4).unwrap();
    let c = depolarize(&rho).unwrap();
    for (pair, j) in basis.chunks(2).zip(0..) {
        let plus = rho.expectation(&pair[0].state).unwrap();
        let minus = rho.expectation(&pair[1].state).unwrap();
        let expect_plus = if [0, 3, 5, 6].contains(&j) { 0.25 } else { 0.0 };
        assert!((plus - expect_plus).abs() < 1e-14, "j={j}");
        assert!(minus.abs() < 1e-14, "j={j}");
        if j > 0 {
            assert!((c.lambda(j) - plus / 2.0).abs() < 1e-14);
        }
    }
    assert!((c.delta() - 0.25).abs() < 1e-14);
}

#[test]
fn dur_depolarized_by_expectation() {
    for n in 4..=6 {
        let x = 0.3;
        let rho = dur(n, x).unwrap();
        let c = depolarize(&rho).unwrap();
        assert!((c.lambda0_plus - x).abs() < 1e-14);
        assert!(c.lambda0_minus.abs() < 1e-14);
        let dim = 1usize << n;
        let flip_js: Vec<usize> = (1..=n)
            .map(|k| {
                let u = u_index(n, k);
                if u < dim / 2 {
                    u
                } else {
                    dim - 1 - u
                }
            })
            .collect();
        for j in 1..dim / 2 {
            let expect = if flip_js.contains(&j) { (1.0 - x) / (2.0 * n as f64) } else { 0.0 };
            assert!((c.lambda(j) - expect).abs() < 1e-14, "n={n} j={j}");
        }
    }
}

fn real_product(t: &AngleTuple) -> PureState {
    ProductState::from_angles(t.thetas()).unwrap().to_pure_state().unwrap()
}

#[test]
fn overlap_norm_is_sum_of_support_overlaps() {
    let mut rng = stream_rng(22, 0);
    for _ in 0..200 {
        let t = AngleTuple::random(&mut rng, 4);
        let phi = real_product(&t);
        let oracle: f64 = (0..4).map(|i| 2.0 * overlap(&phi, &x_state(i).unwrap()).unwrap().norm_sqr()).sum();
        assert!((smolin_overlap_norm_sq(&t).unwrap() - oracle).abs() < 1e-14);
    }
}

#[test]
fn f_n_from_product_amplitudes() {
    let mut rng = stream_rng(23, 0);
    for n in 4..=8 {
        let t = AngleTuple::random(&mut rng, n);
        let a = real_product(&t);
        let a = a.amplitudes();
        let d = a.len();
        let mut oracle = (a[0].re + a[d - 1].re).powi(2);
        for k in 1..=n {
            let u = u_index(n, k);
            oracle += a[u].re.powi(2) + a[(d - 1) ^ u].re.powi(2);
        }
        assert!((f_n(&t) - oracle).abs() < 1e-14);
    }
}

#[test]
fn psi_y_head_weight_by_golden_section() {
    for y in [0.1f64, 0.4, 0.75] {
        let g = |p: f64| (y / 2.0).sqrt() * p.sqrt() + (1.0 - y).sqrt() * (1.0 - p).sqrt();
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        let r = (5f64.sqrt() - 1.0) / 2.0;
        while hi - lo > 1e-13 {
            let a = hi - r * (hi - lo);
            let b = lo + r * (hi - lo);
            if g(a) < g(b) {
                lo = a;
            } else {
                hi = b;
            }
        }
        let p = 0.5 * (lo + hi);
        assert!((psi_y_head_weight(y).unwrap() - p).abs() < 1e-6, "y={y}");
        let psi = psi_y(5, y, Sign::Plus, FlipKind::U, 1).unwrap();
        let phi = psi_y_closest_product(5, y).unwrap().to_pure_state().unwrap();
        let ov = overlap(&phi, &psi).unwrap().norm();
        assert!((ov - ((2.0 - y) / 2.0).sqrt()).abs() < 1e-12);
    }
}

#[test]
fn smolin_log_is_minus_two_times_support_projector() {
    let rho = smolin(SmolinForm::GhzLike);
    let l = matrix_log2_on_support(&rho, 1e-10).unwrap();
    let mut proj = DMatrix::<Complex64>::zeros(16, 16);
    for i in 0..4 {
        proj += x_state(i).unwrap().projector().matrix();
    }
    assert!(max_diff(&l.log2, &proj.scale(-2.0)) < 1e-12);
    assert!(max_diff(&l.projector, &proj) < 1e-12);
}

#[test]
fn eigensolver_reconstructs_larger_matrices() {
    let mut rng = stream_rng(24, 0);
    let rho = random_density(&mut rng, 8);
    let s = eig_hermitian(rho.matrix()).unwrap();
    assert!(max_diff(&s.reconstruct(), rho.matrix()) <= 1e-10);
}
