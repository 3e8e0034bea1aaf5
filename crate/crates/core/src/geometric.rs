//! Entanglement eigenvalue of pure states.
//!
//! `Λ_max(ψ) = max_φ |⟨φ|ψ⟩|` over fully product states `φ`. The maximizer
//! satisfies a per-party stationarity condition: contracting `χ*` (the
//! conjugated amplitude tensor of `ψ`) against every factor of `φ` except
//! party `i` gives a vector proportional to the conjugate of factor `i`,
//! with `Λ` as the proportionality constant.
//!
//! The search solves that condition by alternating updates (a higher-order
//! power iteration): each party in turn is replaced by the normalized
//! conjugate of its environment vector. Each update can only increase
//! `|⟨φ|ψ⟩|`, so sweeps are monotone. The landscape is nonconvex, so the
//! iteration runs from several seeded starting points and keeps the best.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::eig_hermitian;
use crate::rng::{random_qubit, random_unit_vector, stream_rng, STREAM_SUPPORT_SAMPLES};
use crate::state::{bit_of, tensor_product, DensityMatrix, PureState, NORM_TOL};

type Qubit = [Complex64; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// One normalized single-qubit state per party.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductState {
    factors: Vec<Qubit>,
}

impl ProductState {
    pub fn new(factors: Vec<Qubit>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::EmptyProduct);
        }
        for f in &factors {
            let n = (f[0].norm_sqr() + f[1].norm_sqr()).sqrt();
            if (n - 1.0).abs() > NORM_TOL {
                return Err(Error::NotNormalized(n));
            }
        }
        Ok(Self { factors })
    }

    /// `⊗_i (cos θ_i |0⟩ + sin θ_i |1⟩)`.
    pub fn from_angles(thetas: &[f64]) -> Result<Self> {
        Self::new(
            thetas
                .iter()
                .map(|t| [Complex64::new(t.cos(), 0.0), Complex64::new(t.sin(), 0.0)])
                .collect(),
        )
    }

    pub fn n_parties(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[Qubit] {
        &self.factors
    }

    pub fn to_pure_state(&self) -> Result<PureState> {
        let singles: Vec<PureState> = self
            .factors
            .iter()
            .map(|f| PureState::from_parts_unchecked(1, f.to_vec()))
            .collect();
        tensor_product(&singles)
    }
}

/// Controls for the multistart fixed-point search.
#[derive(Clone, Debug, PartialEq)]
pub struct GmeOptions {
    pub restarts: usize,
    /// Maximum number of full party sweeps per restart.
    pub max_iters: usize,
    /// Convergence threshold on the change of `Λ` over one sweep.
    pub tol: f64,
    pub seed: u64,
}

impl Default for GmeOptions {
    fn default() -> Self {
        Self { restarts: 32, max_iters: 10_000, tol: 1e-12, seed: 0 }
    }
}

impl GmeOptions {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::OutOfRange("restarts must be at least 1".into()));
        }
        if !(self.tol > 0.0) {
            return Err(Error::OutOfRange("tol must be positive".into()));
        }
        Ok(())
    }
}

/// Outcome of [`lambda_max`].
#[derive(Clone, Debug)]
pub struct LambdaResult {
    pub lambda_max: f64,
    pub closest_product: ProductState,
    /// Stationarity residual of `closest_product`, see [`stationarity_residual`].
    pub residual: f64,
    pub restarts_used: usize,
    pub converged: bool,
}

/// Contract the conjugated amplitudes against every factor except `party`.
///
/// Parties below `party` in significance are folded in from the low bits
/// first, then the leading parties from the top, so the work per call is
/// about twice the state dimension.
fn environment(conj_amps: &[Complex64], factors: &[Qubit], party: usize, scratch: &mut Vec<Complex64>) -> Qubit {
    let n = factors.len();
    scratch.clear();
    scratch.extend_from_slice(conj_amps);
    let mut len = scratch.len();
    for p in (party + 1..n).rev() {
        let c = factors[p];
        let half = len / 2;
        for r in 0..half {
            scratch[r] = scratch[2 * r] * c[0] + scratch[2 * r + 1] * c[1];
        }
        len = half;
    }
    for c in factors.iter().take(party) {
        let half = len / 2;
        for r in 0..half {
            scratch[r] = scratch[r] * c[0] + scratch[r + half] * c[1];
        }
        len = half;
    }
    debug_assert_eq!(len, 2);
    [scratch[0], scratch[1]]
}

pub(crate) struct Ascent {
    pub lambda: f64,
    pub converged: bool,
}

/// Alternating updates from `factors` (modified in place). Works on
/// unnormalized vectors too, returning `|⟨φ|v⟩|`.
pub(crate) fn ascend(
    conj_amps: &[Complex64],
    factors: &mut [Qubit],
    max_iters: usize,
    tol: f64,
    history: Option<&mut Vec<f64>>,
) -> Ascent {
    let n = factors.len();
    let mut scratch = Vec::with_capacity(conj_amps.len());
    let start = {
        let e = environment(conj_amps, factors, 0, &mut scratch);
        (factors[0][0] * e[0] + factors[0][1] * e[1]).norm()
    };
    let mut hist = history;
    if let Some(h) = hist.as_deref_mut() {
        h.push(start);
    }
    let mut prev = start;
    let mut lambda = start;
    for _ in 0..max_iters.max(1) {
        for i in 0..n {
            let e = environment(conj_amps, factors, i, &mut scratch);
            let nrm = (e[0].norm_sqr() + e[1].norm_sqr()).sqrt();
            if nrm > 1e-300 {
                factors[i] = [e[0].conj() / nrm, e[1].conj() / nrm];
            }
            lambda = nrm;
        }
        if let Some(h) = hist.as_deref_mut() {
            h.push(lambda);
        }
        if (lambda - prev).abs() < tol {
            return Ascent { lambda, converged: true };
        }
        prev = lambda;
    }
    Ascent { lambda, converged: false }
}

/// Dominant eigenvector of each party's single-qubit reduced state.
pub(crate) fn reduced_state_start(amps: &[Complex64], n: usize) -> Vec<Qubit> {
    (0..n)
        .map(|p| {
            let bit = 1usize << bit_of(n, p);
            let (mut a, mut d, mut b) = (0.0, 0.0, ZERO);
            for idx in 0..amps.len() {
                if idx & bit == 0 {
                    a += amps[idx].norm_sqr();
                    d += amps[idx | bit].norm_sqr();
                    b += amps[idx] * amps[idx | bit].conj();
                }
            }
            let gap = 0.5 * (a - d);
            let top = 0.5 * (a + d) + (gap * gap + b.norm_sqr()).sqrt();
            let v = if b.norm() > 1e-14 {
                [b, Complex64::new(top - a, 0.0)]
            } else if a >= d {
                [Complex64::new(1.0, 0.0), ZERO]
            } else {
                [ZERO, Complex64::new(1.0, 0.0)]
            };
            let nv = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
            [v[0] / nv, v[1] / nv]
        })
        .collect()
}

pub(crate) struct Search {
    pub lambda: f64,
    pub factors: Vec<Qubit>,
    pub converged: bool,
}

/// Multistart search on raw amplitudes. Restart 0 starts from the reduced
/// state eigenvectors; restart `r` draws Haar-random factors from stream `r`.
/// Ties resolve to the lowest restart index.
pub(crate) fn search(amps: &[Complex64], n: usize, opts: &GmeOptions) -> Search {
    let conj: Vec<Complex64> = amps.iter().map(|a| a.conj()).collect();
    let runs: Vec<(f64, Vec<Qubit>, bool)> = (0..opts.restarts)
        .into_par_iter()
        .map(|r| {
            let mut factors = if r == 0 {
                reduced_state_start(amps, n)
            } else {
                let mut rng = stream_rng(opts.seed, r as u64);
                (0..n).map(|_| random_qubit(&mut rng)).collect()
            };
            let a = ascend(&conj, &mut factors, opts.max_iters, opts.tol, None);
            (a.lambda, factors, a.converged)
        })
        .collect();
    let mut best = 0;
    for (i, run) in runs.iter().enumerate() {
        if run.0 > runs[best].0 {
            best = i;
        }
    }
    let (lambda, factors, converged) = runs.into_iter().nth(best).expect("at least one restart");
    Search { lambda, factors, converged }
}

/// Entanglement eigenvalue of `psi` with its closest product state.
pub fn lambda_max(psi: &PureState, opts: &GmeOptions) -> Result<LambdaResult> {
    opts.validate()?;
    let norm = psi.norm();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::NotNormalized(norm));
    }
    let s = search(psi.amplitudes(), psi.n_parties(), opts);
    let closest_product = ProductState { factors: s.factors };
    let (lambda, residual) = stationarity_residual(psi, &closest_product)?;
    Ok(LambdaResult {
        lambda_max: lambda.min(1.0),
        closest_product,
        residual,
        restarts_used: opts.restarts,
        converged: s.converged,
    })
}

/// Returns `(|⟨φ|ψ⟩|, r)` where `r` is the largest, over parties, norm of
/// the part of the environment vector orthogonal to the conjugated factor.
/// `r = 0` exactly at stationary points.
pub fn stationarity_residual(psi: &PureState, phi: &ProductState) -> Result<(f64, f64)> {
    if psi.n_parties() != phi.n_parties() {
        return Err(Error::DimensionMismatch(format!(
            "{}-party state vs {}-party product",
            psi.n_parties(),
            phi.n_parties()
        )));
    }
    let conj: Vec<Complex64> = psi.amplitudes().iter().map(|a| a.conj()).collect();
    let mut scratch = Vec::with_capacity(conj.len());
    let mut lambda = 0.0;
    let mut residual = 0.0f64;
    for (i, c) in phi.factors.iter().enumerate() {
        let e = environment(&conj, &phi.factors, i, &mut scratch);
        let along = c[0] * e[0] + c[1] * e[1];
        lambda = along.norm();
        let r0 = e[0] - along * c[0].conj();
        let r1 = e[1] - along * c[1].conj();
        residual = residual.max((r0.norm_sqr() + r1.norm_sqr()).sqrt());
    }
    Ok((lambda, residual))
}

/// Pure-state measures derived from `Λ_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PureMeasure {
    /// `1 - Λ²`.
    Sin2,
    /// `-2 log₂ Λ`.
    Log2,
}

impl PureMeasure {
    pub fn from_lambda(self, lambda: f64) -> f64 {
        let lambda = lambda.clamp(0.0, 1.0);
        match self {
            PureMeasure::Sin2 => (1.0 - lambda * lambda).max(0.0),
            PureMeasure::Log2 => (-2.0 * lambda.log2()).max(0.0),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PureMeasure::Sin2 => "sin2",
            PureMeasure::Log2 => "log2",
        }
    }
}

impl std::str::FromStr for PureMeasure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sin2" => Ok(PureMeasure::Sin2),
            "log2" => Ok(PureMeasure::Log2),
            other => Err(Error::Parse { token: other.to_string(), reason: "expected sin2 or log2".into() }),
        }
    }
}

pub fn pure_measure(psi: &PureState, kind: PureMeasure, opts: &GmeOptions) -> Result<f64> {
    Ok(kind.from_lambda(lambda_max(psi, opts)?.lambda_max))
}

/// `E_{sin²}(ψ) = 1 - Λ²_max` with default search options.
pub fn e_sin2_pure(psi: &PureState) -> Result<f64> {
    pure_measure(psi, PureMeasure::Sin2, &GmeOptions::default())
}

/// `ℰ_log₂(ψ) = -2 log₂ Λ_max` with default search options.
pub fn e_log2_pure(psi: &PureState) -> Result<f64> {
    pure_measure(psi, PureMeasure::Log2, &GmeOptions::default())
}

/// One random state drawn from the support of a density matrix.
#[derive(Clone, Debug)]
pub struct SupportSample {
    /// Coefficients in the eigenbasis of the support (descending eigenvalue order).
    pub coefficients: Vec<Complex64>,
    pub state: PureState,
    /// `|⟨reference|ψ⟩|²` when a reference state was supplied.
    pub y: Option<f64>,
    pub lambda: f64,
    pub e_sin2: f64,
}

/// Draws `samples` uniformly random unit vectors from the eigen-support of
/// `rho` and evaluates `Λ_max` and `E_{sin²}` on each. Every pure state in
/// any decomposition of `rho` lies in this support, so the extremes over
/// the samples probe the bounds available to decompositions.
pub fn support_lambda_profile(
    rho: &DensityMatrix,
    samples: usize,
    opts: &GmeOptions,
    reference: Option<&PureState>,
) -> Result<Vec<SupportSample>> {
    if samples == 0 {
        return Err(Error::OutOfRange("samples must be at least 1".into()));
    }
    opts.validate()?;
    if let Some(r) = reference {
        if r.n_parties() != rho.n_parties() {
            return Err(Error::DimensionMismatch("reference state size".into()));
        }
    }
    let spec = eig_hermitian(rho.matrix())?;
    let support: Vec<usize> = spec.support(crate::linalg::DEFAULT_SUPPORT_EPS).into_iter().rev().collect();
    if support.is_empty() {
        return Err(Error::RankZero);
    }
    let basis: Vec<Vec<Complex64>> = support.iter().map(|&j| spec.vector(j)).collect();
    let n = rho.n_parties();
    (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(opts.seed, STREAM_SUPPORT_SAMPLES + i as u64);
            let coefficients = random_unit_vector(&mut rng, basis.len());
            let mut amps = vec![ZERO; rho.dim()];
            for (z, v) in coefficients.iter().zip(&basis) {
                for (a, x) in amps.iter_mut().zip(v) {
                    *a += z * x;
                }
            }
            let state = PureState::normalized(n, amps)?;
            let lr = lambda_max(&state, opts)?;
            let y = reference.map(|r| crate::state::inner(r.amplitudes(), state.amplitudes()).norm_sqr());
            Ok(SupportSample {
                coefficients,
                y,
                lambda: lr.lambda_max,
                e_sin2: PureMeasure::Sin2.from_lambda(lr.lambda_max),
                state,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo::{bell, ghz};
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn product_states_have_unit_lambda() {
        let phi = ProductState::from_angles(&[0.3, 1.1, 0.7]).unwrap();
        let psi = phi.to_pure_state().unwrap();
        let r = lambda_max(&psi, &GmeOptions::default()).unwrap();
        assert!((r.lambda_max - 1.0).abs() < 1e-12);
        assert!(PureMeasure::Sin2.from_lambda(r.lambda_max) < 1e-12);
        assert!(r.converged);
    }

    #[test]
    fn ghz_is_one_over_root_two() {
        for n in 3..=6 {
            let r = lambda_max(&ghz(n, 0.0).unwrap(), &GmeOptions::default()).unwrap();
            assert!((r.lambda_max - FRAC_1_SQRT_2).abs() < 1e-10, "n={n}: {}", r.lambda_max);
        }
    }

    #[test]
    fn ghz_measures() {
        let g = ghz(4, 0.0).unwrap();
        assert!((e_sin2_pure(&g).unwrap() - 0.5).abs() < 1e-10);
        assert!((e_log2_pure(&g).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn residual_at_known_stationary_points() {
        let g = ghz(4, 0.0).unwrap();
        let zeros = ProductState::from_angles(&[0.0; 4]).unwrap();
        let (l, r) = stationarity_residual(&g, &zeros).unwrap();
        assert!((l - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(r <= 1e-12);

        let plus = ProductState::from_angles(&[std::f64::consts::FRAC_PI_4; 2]).unwrap();
        let (l, r) = stationarity_residual(&bell(0).unwrap(), &plus).unwrap();
        assert!((l - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(r <= 1e-12);
    }

    #[test]
    fn residual_detects_non_stationary_points() {
        let g = ghz(3, 0.0).unwrap();
        let tilted = ProductState::from_angles(&[0.2, 0.4, 0.1]).unwrap();
        let (_, r) = stationarity_residual(&g, &tilted).unwrap();
        assert!(r > 1e-3);
    }

    #[test]
    fn sweeps_are_monotone() {
        let mut rng = stream_rng(99, 0);
        for n in 2..=6 {
            let amps = random_unit_vector(&mut rng, 1 << n);
            let conj: Vec<Complex64> = amps.iter().map(|a| a.conj()).collect();
            let mut f: Vec<Qubit> = (0..n).map(|_| random_qubit(&mut rng)).collect();
            let mut hist = Vec::new();
            ascend(&conj, &mut f, 200, 1e-15, Some(&mut hist));
            for w in hist.windows(2) {
                assert!(w[1] >= w[0] - 1e-13, "{} -> {}", w[0], w[1]);
            }
        }
    }

    #[test]
    fn environment_matches_direct_sum() {
        let mut rng = stream_rng(3, 0);
        let n = 4;
        let amps = random_unit_vector(&mut rng, 16);
        let conj: Vec<Complex64> = amps.iter().map(|a| a.conj()).collect();
        let f: Vec<Qubit> = (0..n).map(|_| random_qubit(&mut rng)).collect();
        let mut scratch = Vec::new();
        for party in 0..n {
            let e = environment(&conj, &f, party, &mut scratch);
            let mut direct = [c(0.0), c(0.0)];
            for idx in 0..16usize {
                let mut w = conj[idx];
                for (q, fq) in f.iter().enumerate() {
                    if q != party {
                        w *= fq[(idx >> (n - 1 - q)) & 1];
                    }
                }
                direct[(idx >> (n - 1 - party)) & 1] += w;
            }
            assert!((e[0] - direct[0]).norm() < 1e-14 && (e[1] - direct[1]).norm() < 1e-14);
        }
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let mut rng = stream_rng(8, 0);
        let psi = PureState::new(4, random_unit_vector(&mut rng, 16)).unwrap();
        let opts = GmeOptions::default().with_seed(17);
        let a = lambda_max(&psi, &opts).unwrap();
        let b = lambda_max(&psi, &opts).unwrap();
        assert_eq!(a.lambda_max.to_bits(), b.lambda_max.to_bits());
        assert_eq!(a.closest_product, b.closest_product);
    }

    #[test]
    fn rejects_bad_options() {
        let g = ghz(3, 0.0).unwrap();
        let opts = GmeOptions { restarts: 0, ..GmeOptions::default() };
        assert!(lambda_max(&g, &opts).is_err());
        let opts = GmeOptions { tol: 0.0, ..GmeOptions::default() };
        assert!(lambda_max(&g, &opts).is_err());
    }

    #[test]
    fn profile_of_pure_input_is_the_state() {
        let g = ghz(4, 0.0).unwrap();
        let opts = GmeOptions::default().with_restarts(4);
        let prof = support_lambda_profile(&g.projector(), 5, &opts, Some(&g)).unwrap();
        for s in prof {
            assert!((s.lambda - FRAC_1_SQRT_2).abs() < 1e-10);
            assert!((s.y.unwrap() - 1.0).abs() < 1e-12);
        }
    }
}
