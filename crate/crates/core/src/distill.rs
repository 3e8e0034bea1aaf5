//! GHZ-diagonal normal form reached by local depolarization, and the
//! per-bipartition nondistillability test.
//!
//! Basis convention: `|Ψ±_j⟩ = (|b_j⟩ ± |b̄_j⟩)/√2` where `b_j` has party 0
//! set to `0` and the remaining `N − 1` bits spelling `j` (party 1 most
//! significant). With party 0 as the leading bit of a basis index, `b_j`
//! is simply index `j` and `b̄_j` is `2^N − 1 − j`.
//!
//! The bipartition `P_j` attached to index `j ≥ 1` places party `p ≥ 1` on
//! the far side from party 0 exactly when bit `p` of `b_j` is set. This is
//! the split across which the `(b_j, b̄_j)` block of the partial transpose
//! picks up the GHZ coherence, so `𝒩(P_j) = max(0, Δ − 2λ_j)`.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{out_of_range, Error, Result};
use crate::state::{DensityMatrix, PartyLabel, PartySplit, PureState};
use crate::zoo::Sign;

/// Largest party count for which the GHZ basis is built.
pub const MAX_DISTILL_PARTIES: usize = 12;

fn check_n(n: usize) -> Result<()> {
    if !(2..=MAX_DISTILL_PARTIES).contains(&n) {
        return Err(out_of_range(format!("N = {n} not in 2..={MAX_DISTILL_PARTIES}")));
    }
    Ok(())
}

/// One element `|Ψ±_j⟩` of the GHZ basis.
#[derive(Clone, Debug)]
pub struct GhzBasisState {
    pub j: usize,
    pub sign: Sign,
    pub state: PureState,
}

/// All `2^N` GHZ-basis states, ordered by `j` and then `+` before `−`.
pub fn ghz_basis(n: usize) -> Result<Vec<GhzBasisState>> {
    check_n(n)?;
    let dim = 1usize << n;
    let amp = std::f64::consts::FRAC_1_SQRT_2;
    let mut out = Vec::with_capacity(dim);
    for j in 0..dim / 2 {
        for sign in Sign::BOTH {
            let mut amps = vec![Complex64::new(0.0, 0.0); dim];
            amps[j] = Complex64::new(amp, 0.0);
            amps[dim - 1 - j] = Complex64::new(sign.value() * amp, 0.0);
            out.push(GhzBasisState { j, sign, state: PureState::new(n, amps)? });
        }
    }
    Ok(out)
}

/// Bipartition `P_j` for `1 ≤ j < 2^{N−1}`.
pub fn split_for_index(n: usize, j: usize) -> Result<PartySplit> {
    check_n(n)?;
    if j == 0 || j >= 1 << (n - 1) {
        return Err(out_of_range(format!("j = {j} not in 1..{}", 1usize << (n - 1))));
    }
    let (mut a, mut b): (Vec<PartyLabel>, Vec<PartyLabel>) = (vec![0], vec![]);
    for p in 1..n {
        if (j >> (n - 1 - p)) & 1 == 1 {
            b.push(p);
        } else {
            a.push(p);
        }
    }
    PartySplit::new(n, &a, &b)
}

/// Coefficients of the GHZ-diagonal normal form
/// `λ₀⁺ Ψ₀⁺ + λ₀⁻ Ψ₀⁻ + Σ_j λ_j (Ψ_j⁺ + Ψ_j⁻)`.
///
/// `lambdas[j − 1]` holds `λ_j`, the weight carried by each state of the
/// `±` pair, so the normalization reads `λ₀⁺ + λ₀⁻ + 2Σλ_j = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct DepolarizedCoeffs {
    pub n_parties: usize,
    pub lambda0_plus: f64,
    pub lambda0_minus: f64,
    pub lambdas: Vec<f64>,
}

impl DepolarizedCoeffs {
    pub fn new(n_parties: usize, lambda0_plus: f64, lambda0_minus: f64, lambdas: Vec<f64>) -> Result<Self> {
        check_n(n_parties)?;
        let expected = (1usize << (n_parties - 1)) - 1;
        if lambdas.len() != expected {
            return Err(Error::DimensionMismatch(format!(
                "expected {expected} coefficients λ_j, got {}",
                lambdas.len()
            )));
        }
        let c = Self { n_parties, lambda0_plus, lambda0_minus, lambdas };
        if c.min_coefficient() < -1e-12 {
            return Err(out_of_range(format!("negative coefficient {}", c.min_coefficient())));
        }
        let total = c.normalization();
        if (total - 1.0).abs() > 1e-10 {
            return Err(Error::NotNormalized(total));
        }
        Ok(c)
    }

    /// Equal weight `(1 − Δ)/(2(2^{N−1} − 1))` on every `λ_j`, with
    /// `λ₀⁻ = 0` and `λ₀⁺ = Δ`.
    pub fn uniform(n_parties: usize, delta: f64) -> Result<Self> {
        check_n(n_parties)?;
        if !(0.0..=1.0).contains(&delta) {
            return Err(out_of_range(format!("Δ = {delta} not in [0, 1]")));
        }
        let m = (1usize << (n_parties - 1)) - 1;
        let each = (1.0 - delta) / (2.0 * m as f64);
        Self::new(n_parties, delta, 0.0, vec![each; m])
    }

    fn min_coefficient(&self) -> f64 {
        self.lambdas.iter().copied().fold(self.lambda0_plus.min(self.lambda0_minus), f64::min)
    }

    /// `λ₀⁺ + λ₀⁻ + 2Σλ_j`.
    pub fn normalization(&self) -> f64 {
        self.lambda0_plus + self.lambda0_minus + 2.0 * self.lambdas.iter().sum::<f64>()
    }

    /// `λ_j` for `1 ≤ j < 2^{N−1}`.
    pub fn lambda(&self, j: usize) -> f64 {
        self.lambdas[j - 1]
    }

    /// `Δ = λ₀⁺ − λ₀⁻`, possibly negative.
    pub fn delta(&self) -> f64 {
        self.lambda0_plus - self.lambda0_minus
    }

    /// Swap `λ₀⁺ ↔ λ₀⁻` if needed so that `Δ ≥ 0`.
    pub fn oriented(&self) -> Self {
        let mut c = self.clone();
        if c.delta() < 0.0 {
            std::mem::swap(&mut c.lambda0_plus, &mut c.lambda0_minus);
        }
        c
    }

    /// Closed-form negativity across `P_j`: `max(0, |Δ| − 2λ_j)`.
    pub fn negativity_closed(&self, j: usize) -> f64 {
        (self.delta().abs() - 2.0 * self.lambda(j)).max(0.0)
    }

    /// Rebuild the GHZ-diagonal density matrix.
    pub fn to_density(&self) -> DensityMatrix {
        let n = self.n_parties;
        let dim = 1usize << n;
        let mut m = DMatrix::<Complex64>::zeros(dim, dim);
        let half = 0.5 * (self.lambda0_plus + self.lambda0_minus);
        let coh = 0.5 * (self.lambda0_plus - self.lambda0_minus);
        m[(0, 0)] = half.into();
        m[(dim - 1, dim - 1)] = half.into();
        m[(0, dim - 1)] = coh.into();
        m[(dim - 1, 0)] = coh.into();
        for (k, &l) in self.lambdas.iter().enumerate() {
            let j = k + 1;
            m[(j, j)] = l.into();
            m[(dim - 1 - j, dim - 1 - j)] = l.into();
        }
        DensityMatrix::from_matrix_unchecked(n, m)
    }
}

/// Project onto the normal form: `λ₀± = ⟨Ψ₀±|ρ|Ψ₀±⟩` and
/// `λ_j = (⟨Ψ_j⁺|ρ|Ψ_j⁺⟩ + ⟨Ψ_j⁻|ρ|Ψ_j⁻⟩)/2`.
pub fn depolarize(rho: &DensityMatrix) -> Result<DepolarizedCoeffs> {
    let n = rho.n_parties();
    check_n(n)?;
    let m = rho.matrix();
    let dim = 1usize << n;
    let pair = |j: usize| {
        let (b, c) = (j, dim - 1 - j);
        let diag = 0.5 * (m[(b, b)].re + m[(c, c)].re);
        let coh = 0.5 * (m[(b, c)].re + m[(c, b)].re);
        (diag, coh)
    };
    let (d0, c0) = pair(0);
    let lambdas = (1..dim / 2).map(|j| pair(j).0).collect();
    Ok(DepolarizedCoeffs { n_parties: n, lambda0_plus: d0 + c0, lambda0_minus: d0 - c0, lambdas })
}

/// Outcome of [`nondistillable_all_partitions`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NondistillReport {
    pub holds: bool,
    /// Least `j` with `2λ_j < Δ`, if any.
    pub violating_j: Option<usize>,
}

/// Check `2λ_j ≥ Δ − 1e−12` for every `j`, after orienting `Δ ≥ 0`.
pub fn nondistillable_all_partitions(c: &DepolarizedCoeffs) -> NondistillReport {
    let c = c.oriented();
    let delta = c.delta();
    let violating_j = (1..=c.lambdas.len()).find(|&j| 2.0 * c.lambda(j) < delta - 1e-12);
    NondistillReport { holds: violating_j.is_none(), violating_j }
}

/// Largest `Δ` compatible with nondistillability across every `P_j`:
/// `2^{−(N−1)}`.
pub fn max_delta_nondistillable(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(out_of_range(format!("N = {n} < 2")));
    }
    Ok((0.5f64).powi(n as i32 - 1))
}

/// Bell inequalities whose violation forces `Δ` above a threshold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BellInequalityKind {
    TwoSetting,
    ThreeSetting,
    Functional,
}

impl BellInequalityKind {
    pub const ALL: [BellInequalityKind; 3] =
        [BellInequalityKind::TwoSetting, BellInequalityKind::ThreeSetting, BellInequalityKind::Functional];

    pub fn name(self) -> &'static str {
        match self {
            BellInequalityKind::TwoSetting => "two_setting",
            BellInequalityKind::ThreeSetting => "three_setting",
            BellInequalityKind::Functional => "functional",
        }
    }
}

impl fmt::Display for BellInequalityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BellInequalityKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse { token: s.to_string(), reason: "unknown inequality kind".into() })
    }
}

/// Minimum `Δ` implied by a violation: `2^{−(N−1)/2}`, `√3 (2/3)^N`, or
/// `2 (2/π)^N`.
pub fn bell_violation_threshold(n: usize, kind: BellInequalityKind) -> Result<f64> {
    if n < 2 {
        return Err(out_of_range(format!("N = {n} < 2")));
    }
    let nf = n as f64;
    Ok(match kind {
        BellInequalityKind::TwoSetting => 2f64.powf(-(nf - 1.0) / 2.0),
        BellInequalityKind::ThreeSetting => 3f64.sqrt() * (2.0f64 / 3.0).powf(nf),
        BellInequalityKind::Functional => 2.0 * (2.0 / std::f64::consts::PI).powf(nf),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConsistencyRow {
    pub n: usize,
    pub kind: BellInequalityKind,
    pub threshold: f64,
    pub bound: f64,
    /// `threshold > bound`: a violation is incompatible with
    /// nondistillability across every bipartition.
    pub exceeds: bool,
}

/// Threshold against `2^{−(N−1)}` for every `N` in the range and every kind.
pub fn consistency_report(range: std::ops::RangeInclusive<usize>) -> Result<Vec<ConsistencyRow>> {
    if *range.start() < 4 {
        return Err(out_of_range(format!("N = {} < 4", range.start())));
    }
    let mut rows = Vec::new();
    for n in range {
        let bound = max_delta_nondistillable(n)?;
        for kind in BellInequalityKind::ALL {
            let threshold = bell_violation_threshold(n, kind)?;
            rows.push(ConsistencyRow { n, kind, threshold, bound, exceeds: threshold > bound });
        }
    }
    Ok(rows)
}
