//! Convex-roof extension of the pure-state measures.
//!
//! Every pure-state decomposition of a rank-`n` density matrix with `M`
//! members arises from its eigendecomposition `ρ = Σ λ_i |ξ_i⟩⟨ξ_i|` through
//! an `M × n` matrix `U` with orthonormal columns:
//! `|φ̃_k⟩ = Σ_i U_ki √λ_i |ξ_i⟩`, `p_k = ⟨φ̃_k|φ̃_k⟩`, `|φ_k⟩ = |φ̃_k⟩/√p_k`.
//!
//! [`optimize_roof`] takes `U` as the first `n` columns of an `M × M`
//! unitary `W` and runs Riemannian gradient descent with `W ← W exp(−tΞ)`,
//! `Ξ` anti-Hermitian, so the column constraint holds at every step. The
//! member objective is a maximum over product states; by the envelope
//! theorem its gradient is that of the overlap with the current closest
//! product state, which is tracked by warm-started alternating updates.
//! The result is an upper bound on the roof.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{out_of_range, Error, Result};
use crate::geometric::{ascend, lambda_max, search, GmeOptions, PureMeasure};
use crate::linalg::{column_orthonormality_error, eig_hermitian, expm_anti_hermitian, DEFAULT_SUPPORT_EPS};
use crate::rng::{haar_unitary, stream_rng, STREAM_ROOF};
use crate::state::{bit_of, DensityMatrix, PureState};
use crate::zoo::{psi_y, x_state, FlipKind, Sign};

type Qubit = [Complex64; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Members lighter than this are dropped from reported decompositions.
pub const MIN_MEMBER_WEIGHT: f64 = 1e-12;

/// Weighted pure states `ρ = Σ p_k |φ_k⟩⟨φ_k|`, optionally with the
/// `M × n` isometry that produced them from the eigenbasis.
#[derive(Clone, Debug)]
pub struct Decomposition {
    weights: Vec<f64>,
    states: Vec<PureState>,
    isometry: Option<DMatrix<Complex64>>,
}

impl Decomposition {
    pub fn new(weights: Vec<f64>, states: Vec<PureState>) -> Result<Self> {
        if weights.len() != states.len() {
            return Err(Error::InvalidDecomposition(format!(
                "{} weights for {} states",
                weights.len(),
                states.len()
            )));
        }
        let first = states.first().ok_or_else(|| Error::InvalidDecomposition("no members".into()))?;
        let n = first.n_parties();
        if states.iter().any(|s| s.n_parties() != n) {
            return Err(Error::InvalidDecomposition("members have different party counts".into()));
        }
        if let Some(w) = weights.iter().find(|w| !(**w > 0.0)) {
            return Err(Error::InvalidDecomposition(format!("non-positive weight {w}")));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidDecomposition(format!("weights sum to {total}")));
        }
        for s in &states {
            if (s.norm() - 1.0).abs() > 1e-12 {
                return Err(Error::NotNormalized(s.norm()));
            }
        }
        Ok(Self { weights, states, isometry: None })
    }

    /// Attach the generating isometry after checking `U†U = I` within `1e−10`.
    pub fn with_isometry(mut self, u: DMatrix<Complex64>) -> Result<Self> {
        let err = column_orthonormality_error(&u);
        if err > 1e-10 {
            return Err(Error::InvalidDecomposition(format!("isometry columns off by {err:e}")));
        }
        self.isometry = Some(u);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn n_parties(&self) -> usize {
        self.states[0].n_parties()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn states(&self) -> &[PureState] {
        &self.states
    }

    pub fn isometry(&self) -> Option<&DMatrix<Complex64>> {
        self.isometry.as_ref()
    }

    pub fn reconstruct(&self) -> DensityMatrix {
        let terms: Vec<(f64, &PureState)> = self.weights.iter().copied().zip(&self.states).collect();
        DensityMatrix::mixture(&terms).expect("validated decomposition")
    }
}

/// `Σ_k p_k E(φ_k)` with each `Λ_max` found by [`lambda_max`].
pub fn average_entanglement(dec: &Decomposition, kind: PureMeasure, opts: &GmeOptions) -> Result<f64> {
    let per: Vec<f64> = dec
        .states
        .par_iter()
        .map(|s| lambda_max(s, opts).map(|r| kind.from_lambda(r.lambda_max)))
        .collect::<Result<_>>()?;
    Ok(dec.weights.iter().zip(per).map(|(p, e)| p * e).sum())
}

/// The four GHZ-like states `|X_i⟩` with weight `1/4` each.
pub fn certificate_smolin() -> Decomposition {
    let states = (0..4).map(|i| x_state(i).expect("valid index")).collect();
    Decomposition::new(vec![0.25; 4], states).expect("valid certificate")
}

/// `ρ_N(x) = (1/4N) Σ_k Σ_± Σ_{u,v} |ψ(x)⟩⟨ψ(x)|` with
/// `|ψ(x)⟩ = √x|Ψ_G⟩ ± √(1−x)|u_k⟩` and the `v_k` variants.
pub fn certificate_dur(n: usize, x: f64) -> Result<Decomposition> {
    if n < 4 {
        return Err(out_of_range(format!("N = {n} < 4")));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(out_of_range(format!("x = {x} not in [0, 1]")));
    }
    let mut states = Vec::with_capacity(4 * n);
    for k in 1..=n {
        for sign in Sign::BOTH {
            for kind in [FlipKind::U, FlipKind::V] {
                states.push(psi_y(n, x, sign, kind, k)?);
            }
        }
    }
    Decomposition::new(vec![1.0 / (4 * n) as f64; 4 * n], states)
}

/// Controls for [`optimize_roof`].
#[derive(Clone, Debug, PartialEq)]
pub struct RoofOptions {
    /// Number of members `M`; defaults to `2n` for rank `n`.
    pub ensemble_size: Option<usize>,
    /// Seeded random starting isometries, in addition to the eigenbasis start.
    pub outer_restarts: usize,
    /// Gradient steps per start.
    pub max_steps: usize,
    /// A full multistart search refreshes every member's product state
    /// after this many steps.
    pub refresh_every: usize,
    pub seed: u64,
    /// Search options for the full `Λ_max` evaluations.
    pub inner: GmeOptions,
}

impl Default for RoofOptions {
    fn default() -> Self {
        Self {
            ensemble_size: None,
            outer_restarts: 8,
            max_steps: 400,
            refresh_every: 50,
            seed: 0,
            inner: GmeOptions { restarts: 8, ..GmeOptions::default() },
        }
    }
}

impl RoofOptions {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self.inner.seed = seed;
        self
    }

    pub fn with_ensemble_size(mut self, m: usize) -> Self {
        self.ensemble_size = Some(m);
        self
    }

    pub fn with_restarts(mut self, r: usize) -> Self {
        self.outer_restarts = r;
        self
    }

    /// Effective `M` for a state of rank `rank`.
    pub fn members_for_rank(&self, rank: usize) -> usize {
        self.ensemble_size.unwrap_or(2 * rank)
    }
}

/// Outcome of [`optimize_roof`].
#[derive(Clone, Debug)]
pub struct RoofResult {
    pub value: f64,
    pub best: Decomposition,
    /// Average entanglement of the eigendecomposition.
    pub start_value: f64,
    /// Final value of each seeded start, in restart order. Start 0 is the
    /// eigenbasis padded with empty members.
    pub restart_values: Vec<f64>,
    /// Largest column orthonormality error seen across all accepted steps.
    pub max_isometry_error: f64,
}

/// Fixed data shared by every objective evaluation.
struct Problem {
    n_parties: usize,
    dim: usize,
    rank: usize,
    /// Columns `√λ_i ξ_i`.
    basis: DMatrix<Complex64>,
    lambdas: Vec<f64>,
    kind: PureMeasure,
}

/// Objective value with the data needed for its gradient.
struct Eval {
    value: f64,
    factors: Vec<Vec<Qubit>>,
    /// `⟨Φ_k|φ̃_k⟩`.
    g: Vec<Complex64>,
    /// `⟨Φ_k|√λ_i ξ_i⟩`, row `k`.
    b: DMatrix<Complex64>,
    p: Vec<f64>,
}

fn product_amplitudes(factors: &[Qubit], dim: usize) -> Vec<Complex64> {
    let n = factors.len();
    (0..dim)
        .map(|idx| {
            factors
                .iter()
                .enumerate()
                .map(|(p, f)| f[(idx >> bit_of(n, p)) & 1])
                .product()
        })
        .collect()
}

impl Problem {
    fn members(&self, u: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        &self.basis * u.transpose()
    }

    fn member_value(&self, p: f64, g2: f64) -> f64 {
        if p <= 0.0 {
            return 0.0;
        }
        let lam2 = (g2 / p).clamp(0.0, 1.0);
        match self.kind {
            PureMeasure::Sin2 => p * (1.0 - lam2),
            PureMeasure::Log2 => {
                if lam2 <= 0.0 {
                    f64::INFINITY
                } else {
                    -p * lam2.log2()
                }
            }
        }
    }

    /// Evaluate at `u`, improving each member's product state from
    /// `factors` by alternating updates.
    fn evaluate(&self, u: &DMatrix<Complex64>, mut factors: Vec<Vec<Qubit>>, sweeps: usize) -> Eval {
        let phi = self.members(u);
        let m = u.nrows();
        let mut g = vec![ZERO; m];
        let mut p = vec![0.0; m];
        let mut b = DMatrix::<Complex64>::zeros(m, self.rank);
        let mut value = 0.0;
        for k in 0..m {
            let col: Vec<Complex64> = phi.column(k).iter().copied().collect();
            p[k] = col.iter().map(|z| z.norm_sqr()).sum();
            if p[k] < 1e-300 {
                continue;
            }
            let conj: Vec<Complex64> = col.iter().map(|z| z.conj()).collect();
            if sweeps > 0 {
                ascend(&conj, &mut factors[k], sweeps, 1e-15, None);
            }
            let prod = product_amplitudes(&factors[k], self.dim);
            for i in 0..self.rank {
                b[(k, i)] = prod.iter().zip(self.basis.column(i).iter()).map(|(a, x)| a.conj() * x).sum();
            }
            g[k] = (0..self.rank).map(|i| u[(k, i)] * b[(k, i)]).sum();
            value += self.member_value(p[k], g[k].norm_sqr());
        }
        Eval { value, factors, g, b, p }
    }

    /// Replace each member's product state by a full multistart search
    /// result when that is better.
    fn refresh(&self, u: &DMatrix<Complex64>, factors: &mut [Vec<Qubit>], opts: &GmeOptions) {
        let phi = self.members(u);
        for (k, f) in factors.iter_mut().enumerate() {
            let col: Vec<Complex64> = phi.column(k).iter().copied().collect();
            let p: f64 = col.iter().map(|z| z.norm_sqr()).sum();
            if p < 1e-24 {
                continue;
            }
            let conj: Vec<Complex64> = col.iter().map(|z| z.conj()).collect();
            let current = ascend(&conj, &mut f.clone(), 1, 1.0, None).lambda;
            let s = search(&col, self.n_parties, opts);
            if s.lambda > current {
                *f = s.factors;
            }
        }
    }

    /// Wirtinger gradient `∂f/∂Ū`, an `M × n` matrix.
    fn gradient(&self, u: &DMatrix<Complex64>, e: &Eval) -> DMatrix<Complex64> {
        let (m, n) = (u.nrows(), self.rank);
        let mut grad = DMatrix::<Complex64>::zeros(m, n);
        for k in 0..m {
            let (p, g) = (e.p[k], e.g[k]);
            let g2 = g.norm_sqr();
            if p < 1e-300 || g2 < 1e-300 {
                continue;
            }
            for i in 0..n {
                let ul = u[(k, i)] * self.lambdas[i];
                let gb = g * e.b[(k, i)].conj();
                grad[(k, i)] = match self.kind {
                    PureMeasure::Sin2 => ul - gb,
                    PureMeasure::Log2 => {
                        let ln2 = std::f64::consts::LN_2;
                        ul * ((p / g2).log2() + 1.0 / ln2) - gb * (p / (g2 * ln2))
                    }
                };
            }
        }
        grad
    }
}

struct Descent {
    w: DMatrix<Complex64>,
    factors: Vec<Vec<Qubit>>,
    max_isometry_error: f64,
}

const WARM_SWEEPS: usize = 60;

fn descend(prob: &Problem, mut w: DMatrix<Complex64>, opts: &RoofOptions) -> Result<Descent> {
    let m = w.nrows();
    let n = prob.rank;
    let mut u = w.columns(0, n).into_owned();
    let mut factors: Vec<Vec<Qubit>> = vec![vec![[Complex64::new(1.0, 0.0), ZERO]; prob.n_parties]; m];
    prob.refresh(&u, &mut factors, &opts.inner);
    let mut cur = prob.evaluate(&u, factors, WARM_SWEEPS);
    let mut t = 1.0;
    let mut stalled = 0;
    let mut max_err = column_orthonormality_error(&u);
    for step in 1..=opts.max_steps {
        let grad = prob.gradient(&u, &cur);
        let mut full = DMatrix::<Complex64>::zeros(m, m);
        full.columns_mut(0, n).copy_from(&grad);
        let a = w.adjoint() * full;
        let xi = &a - a.adjoint();
        let slope = xi.norm_squared();
        if !(slope > 1e-24) || !cur.value.is_finite() {
            break;
        }
        let mut accepted = None;
        let mut trial = t;
        for _ in 0..40 {
            let w_new = &w * expm_anti_hermitian(&xi.scale(-trial))?;
            let u_new = w_new.columns(0, n).into_owned();
            let e = prob.evaluate(&u_new, cur.factors.clone(), WARM_SWEEPS);
            if e.value <= cur.value - 1e-4 * trial * slope {
                accepted = Some((w_new, u_new, e));
                break;
            }
            trial *= 0.5;
        }
        let Some((w_new, u_new, e)) = accepted else { break };
        let gain = cur.value - e.value;
        w = w_new;
        u = u_new;
        cur = e;
        max_err = max_err.max(column_orthonormality_error(&u));
        t = if trial == t { 2.0 * t } else { trial };
        stalled = if gain < 1e-13 { stalled + 1 } else { 0 };
        if stalled >= 10 {
            break;
        }
        if opts.refresh_every > 0 && step % opts.refresh_every == 0 {
            let mut f = cur.factors.clone();
            prob.refresh(&u, &mut f, &opts.inner);
            cur = prob.evaluate(&u, f, WARM_SWEEPS);
        }
    }
    Ok(Descent { w, factors: cur.factors, max_isometry_error: max_err })
}

/// Build the decomposition for `u`, evaluating every member with a full
/// search and keeping the better of that and the tracked product state.
fn finish(prob: &Problem, u: &DMatrix<Complex64>, factors: &[Vec<Qubit>], inner: &GmeOptions) -> Result<(f64, Decomposition)> {
    let phi = prob.members(u);
    let mut weights = Vec::new();
    let mut states = Vec::new();
    let mut lambdas = Vec::new();
    for k in 0..u.nrows() {
        let col: Vec<Complex64> = phi.column(k).iter().copied().collect();
        let p: f64 = col.iter().map(|z| z.norm_sqr()).sum();
        if p < MIN_MEMBER_WEIGHT {
            continue;
        }
        let state = PureState::normalized(prob.n_parties, col)?;
        let full = lambda_max(&state, inner)?.lambda_max;
        let conj: Vec<Complex64> = state.amplitudes().iter().map(|z| z.conj()).collect();
        let tracked = ascend(&conj, &mut factors[k].clone(), 1, 1.0, None).lambda;
        weights.push(p);
        states.push(state);
        lambdas.push(full.max(tracked).min(1.0));
    }
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    let value = weights.iter().zip(&lambdas).map(|(p, l)| p * prob.kind.from_lambda(*l)).sum();
    let dec = Decomposition::new(weights, states)?.with_isometry(u.clone())?;
    Ok((value, dec))
}

/// Minimize the average entanglement over decompositions with `M` members.
///
/// Start 0 is the eigendecomposition; starts `1..=outer_restarts` draw Haar
/// random unitaries from the seed. The returned value never exceeds the
/// eigendecomposition's average.
pub fn optimize_roof(rho: &DensityMatrix, kind: PureMeasure, opts: &RoofOptions) -> Result<RoofResult> {
    let spec = eig_hermitian(rho.matrix())?;
    let support: Vec<usize> = spec.support(DEFAULT_SUPPORT_EPS).into_iter().rev().collect();
    let rank = support.len();
    if rank == 0 {
        return Err(Error::RankZero);
    }
    let m = opts.members_for_rank(rank);
    if m < rank {
        return Err(out_of_range(format!("ensemble size {m} is below the rank {rank}")));
    }
    let lambdas: Vec<f64> = support.iter().map(|&j| spec.eigenvalues[j]).collect();
    let mut basis = DMatrix::<Complex64>::zeros(rho.dim(), rank);
    for (c, &j) in support.iter().enumerate() {
        basis.set_column(c, &spec.eigenvectors.column(j).scale(lambdas[c].sqrt()));
    }
    let prob = Problem { n_parties: rho.n_parties(), dim: rho.dim(), rank, basis, lambdas, kind };

    let identity = DMatrix::<Complex64>::identity(m, m);
    let eig_u = identity.columns(0, rank).into_owned();
    let eig_factors = vec![vec![[Complex64::new(1.0, 0.0), ZERO]; prob.n_parties]; m];
    let (start_value, start_dec) = finish(&prob, &eig_u, &eig_factors, &opts.inner)?;
    if rank == 1 {
        return Ok(RoofResult {
            value: start_value,
            best: start_dec,
            start_value,
            restart_values: vec![start_value],
            max_isometry_error: 0.0,
        });
    }

    let runs: Vec<Result<(f64, Decomposition, f64)>> = (0..=opts.outer_restarts)
        .into_par_iter()
        .map(|r| {
            let w0 = if r == 0 {
                identity.clone()
            } else {
                haar_unitary(&mut stream_rng(opts.seed, STREAM_ROOF + r as u64), m)
            };
            let d = descend(&prob, w0, opts)?;
            let u = d.w.columns(0, rank).into_owned();
            let (value, dec) = finish(&prob, &u, &d.factors, &opts.inner)?;
            Ok((value, dec, d.max_isometry_error))
        })
        .collect();

    let mut best = (start_value, start_dec);
    let mut restart_values = Vec::with_capacity(runs.len());
    let mut max_isometry_error = 0.0f64;
    for run in runs {
        let (value, dec, err) = run?;
        restart_values.push(value);
        max_isometry_error = max_isometry_error.max(err);
        if value < best.0 {
            best = (value, dec);
        }
    }
    Ok(RoofResult { value: best.0, best: best.1, start_value, restart_values, max_isometry_error })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;
    use crate::zoo::{dur, ghz, smolin, SmolinForm};

    #[test]
    fn smolin_certificate_reconstructs() {
        let dec = certificate_smolin();
        assert_eq!(dec.len(), 4);
        let d = max_abs_diff(dec.reconstruct().matrix(), smolin(SmolinForm::BellPairs).matrix());
        assert!(d <= 1e-12);
    }

    #[test]
    fn dur_certificate_reconstructs() {
        for (n, x) in [(4, 0.2), (5, 0.7), (6, 0.0)] {
            let dec = certificate_dur(n, x).unwrap();
            assert_eq!(dec.len(), 4 * n);
            let d = max_abs_diff(dec.reconstruct().matrix(), dur(n, x).unwrap().matrix());
            assert!(d <= 1e-12, "n={n} x={x}: {d}");
        }
        assert!(certificate_dur(3, 0.2).is_err());
    }

    #[test]
    fn certificate_averages() {
        let o = GmeOptions::default();
        let dec = certificate_smolin();
        assert!((average_entanglement(&dec, PureMeasure::Sin2, &o).unwrap() - 0.5).abs() < 1e-9);
        assert!((average_entanglement(&dec, PureMeasure::Log2, &o).unwrap() - 1.0).abs() < 1e-9);
        let dec = certificate_dur(4, 0.2).unwrap();
        assert!((average_entanglement(&dec, PureMeasure::Sin2, &o).unwrap() - 0.1).abs() < 1e-9);
    }

    #[test]
    fn decomposition_validation() {
        let s = ghz(3, 0.0).unwrap();
        assert!(Decomposition::new(vec![0.5], vec![s.clone()]).is_err());
        assert!(Decomposition::new(vec![1.0, 0.0], vec![s.clone(), s.clone()]).is_err());
        assert!(Decomposition::new(vec![], vec![]).is_err());
        let dec = Decomposition::new(vec![1.0], vec![s.clone()]).unwrap();
        assert!(max_abs_diff(dec.reconstruct().matrix(), s.projector().matrix()) < 1e-15);
        let bad = DMatrix::<Complex64>::from_element(2, 1, Complex64::new(1.0, 0.0));
        assert!(dec.with_isometry(bad).is_err());
    }

    #[test]
    fn pure_input_is_trivial() {
        let psi = ghz(4, 0.0).unwrap();
        let r = optimize_roof(&psi.projector(), PureMeasure::Sin2, &RoofOptions::default()).unwrap();
        assert!((r.value - 0.5).abs() < 1e-12);
        assert_eq!(r.best.len(), 1);
    }

    #[test]
    fn separable_mixture_reaches_zero() {
        let rho = DensityMatrix::diagonal(3, &[0.5, 0.0, 0.25, 0.0, 0.0, 0.25, 0.0, 0.0]).unwrap();
        let r = optimize_roof(&rho, PureMeasure::Sin2, &RoofOptions::default().with_restarts(1)).unwrap();
        assert!(r.value.abs() < 1e-12);
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let rho = smolin(SmolinForm::GhzLike);
        let spec = eig_hermitian(rho.matrix()).unwrap();
        let support: Vec<usize> = spec.support(1e-10);
        let lambdas: Vec<f64> = support.iter().map(|&j| spec.eigenvalues[j]).collect();
        let mut basis = DMatrix::<Complex64>::zeros(16, 4);
        for (c, &j) in support.iter().enumerate() {
            basis.set_column(c, &spec.eigenvectors.column(j).scale(lambdas[c].sqrt()));
        }
        for kind in [PureMeasure::Sin2, PureMeasure::Log2] {
            let prob = Problem { n_parties: 4, dim: 16, rank: 4, basis: basis.clone(), lambdas: lambdas.clone(), kind };
            let w = haar_unitary(&mut stream_rng(3, 0), 6);
            let u = w.columns(0, 4).into_owned();
            let mut f = vec![vec![[Complex64::new(1.0, 0.0), ZERO]; 4]; 6];
            prob.refresh(&u, &mut f, &GmeOptions::default());
            let e = prob.evaluate(&u, f, 200);
            let grad = prob.gradient(&u, &e);
            // directional derivative along a random perturbation with frozen product states
            let dir = haar_unitary(&mut stream_rng(4, 0), 6).columns(0, 4).into_owned();
            let h = 1e-6;
            let frozen = |uu: &DMatrix<Complex64>| prob.evaluate(uu, e.factors.clone(), 0).value;
            let fd = (frozen(&(&u + dir.scale(h))) - frozen(&(&u - dir.scale(h)))) / (2.0 * h);
            let analytic: f64 = 2.0 * grad.iter().zip(dir.iter()).map(|(g, d)| (g.conj() * d).re).sum::<f64>();
            assert!((fd - analytic).abs() < 1e-6, "{kind:?}: {fd} vs {analytic}");
        }
    }
}
