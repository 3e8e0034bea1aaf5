//! Trigonometric overlap bounds used to certify closest product states,
//! and the closest product state of `√y|Ψ_G⟩ + √(1−y)|u_1⟩`.
//!
//! Angles parameterize real product states `⊗(c_i|0⟩ + s_i|1⟩)` with
//! `c_i = cos θ_i`, `s_i = sin θ_i`, `θ_i ∈ [0, π/2]`. Sums go through
//! Neumaier compensation so that a slack of `1e−12` is meaningful.

use std::f64::consts::{FRAC_PI_2, LOG2_E};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::error::{out_of_range, Error, Result};
use crate::geometric::ProductState;
use crate::rng::stream_rng;

/// Angles `θ_i ∈ [0, π/2]`.
#[derive(Clone, Debug, PartialEq)]
pub struct AngleTuple {
    thetas: Vec<f64>,
}

impl AngleTuple {
    pub fn new(thetas: Vec<f64>) -> Result<Self> {
        if thetas.is_empty() {
            return Err(out_of_range("no angles"));
        }
        if let Some(t) = thetas.iter().find(|t| !(0.0..=FRAC_PI_2).contains(*t)) {
            return Err(out_of_range(format!("θ = {t} not in [0, π/2]")));
        }
        Ok(Self { thetas })
    }

    pub fn uniform(n: usize, theta: f64) -> Result<Self> {
        Self::new(vec![theta; n])
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Self {
        Self { thetas: (0..n).map(|_| rng.random_range(0.0..=FRAC_PI_2)).collect() }
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    /// Append one more angle.
    pub fn extended(&self, theta: f64) -> Result<Self> {
        let mut t = self.thetas.clone();
        t.push(theta);
        Self::new(t)
    }

    fn cs(&self) -> (Vec<f64>, Vec<f64>) {
        (self.thetas.iter().map(|t| t.cos()).collect(), self.thetas.iter().map(|t| t.sin()).collect())
    }

    fn four(&self) -> Result<([f64; 4], [f64; 4])> {
        if self.len() != 4 {
            return Err(Error::DimensionMismatch(format!("expected 4 angles, got {}", self.len())));
        }
        let (c, s) = self.cs();
        Ok(([c[0], c[1], c[2], c[3]], [s[0], s[1], s[2], s[3]]))
    }
}

/// Neumaier compensated summation.
pub fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Squared norm of the coefficient vector of the overlap between a real
/// product state and the Smolin support:
/// `(c₁c₂c₃c₄+s₁s₂s₃s₄)² + (c₁c₂s₃s₄+s₁s₂c₃c₄)² + (c₁s₂c₃s₄+s₁c₂s₃c₄)²
/// + (c₁s₂s₃c₄+s₁c₂c₃s₄)²`.
pub fn smolin_overlap_norm_sq(t: &AngleTuple) -> Result<f64> {
    let ([c1, c2, c3, c4], [s1, s2, s3, s4]) = t.four()?;
    Ok(compensated_sum([
        (c1 * c2 * c3 * c4 + s1 * s2 * s3 * s4).powi(2),
        (c1 * c2 * s3 * s4 + s1 * s2 * c3 * c4).powi(2),
        (c1 * s2 * c3 * s4 + s1 * c2 * s3 * c4).powi(2),
        (c1 * s2 * s3 * c4 + s1 * c2 * c3 * s4).powi(2),
    ]))
}

/// Variant whose third pairing reads `(c₁s₂c₃s₄+s₁c₂s₃s₄)²`.
pub fn smolin_overlap_norm_sq_variant(t: &AngleTuple) -> Result<f64> {
    let ([c1, c2, c3, c4], [s1, s2, s3, s4]) = t.four()?;
    Ok(compensated_sum([
        (c1 * c2 * c3 * c4 + s1 * s2 * s3 * s4).powi(2),
        (c1 * c2 * s3 * s4 + s1 * s2 * c3 * c4).powi(2),
        (c1 * s2 * c3 * s4 + s1 * c2 * s3 * s4).powi(2),
        (c1 * s2 * s3 * c4 + s1 * c2 * c3 * s4).powi(2),
    ]))
}

/// `(c₁c₂c₃s₄−s₁s₂s₃c₄)² + (c₁c₂s₃s₄−s₁s₂c₃s₄)² + (c₁s₂c₃c₄−s₁c₂s₃s₄)²
/// + (s₁c₂c₃c₄−c₁s₂s₃s₄)²`. Non-negative, but does not in general equal
/// `1 − smolin_overlap_norm_sq`; see [`smolin_remainder_symmetric`].
pub fn smolin_remainder(t: &AngleTuple) -> Result<f64> {
    let ([c1, c2, c3, c4], [s1, s2, s3, s4]) = t.four()?;
    Ok(compensated_sum([
        (c1 * c2 * c3 * s4 - s1 * s2 * s3 * c4).powi(2),
        (c1 * c2 * s3 * s4 - s1 * s2 * c3 * s4).powi(2),
        (c1 * s2 * c3 * c4 - s1 * c2 * s3 * s4).powi(2),
        (s1 * c2 * c3 * c4 - c1 * s2 * s3 * s4).powi(2),
    ]))
}

/// Remainder with the second term `(c₁c₂s₃c₄−s₁s₂c₃s₄)²`, which makes
/// `smolin_overlap_norm_sq + smolin_remainder_symmetric = 1` an identity.
pub fn smolin_remainder_symmetric(t: &AngleTuple) -> Result<f64> {
    let ([c1, c2, c3, c4], [s1, s2, s3, s4]) = t.four()?;
    Ok(compensated_sum([
        (c1 * c2 * c3 * s4 - s1 * s2 * s3 * c4).powi(2),
        (c1 * c2 * s3 * c4 - s1 * s2 * c3 * s4).powi(2),
        (c1 * s2 * c3 * c4 - s1 * c2 * s3 * s4).powi(2),
        (s1 * c2 * c3 * c4 - c1 * s2 * s3 * s4).powi(2),
    ]))
}

/// `f_N = (c₁⋯c_N + s₁⋯s_N)² + Σ_k [(c₁⋯s_k⋯c_N)² + (s₁⋯c_k⋯s_N)²]`.
pub fn f_n(t: &AngleTuple) -> f64 {
    let (c, s) = t.cs();
    let n = t.len();
    let pc: f64 = c.iter().product();
    let ps: f64 = s.iter().product();
    let mut terms = Vec::with_capacity(2 * n + 1);
    terms.push((pc + ps).powi(2));
    for k in 0..n {
        let (mut a, mut b) = (1.0, 1.0);
        for i in 0..n {
            if i == k {
                a *= s[i];
                b *= c[i];
            } else {
                a *= c[i];
                b *= s[i];
            }
        }
        terms.push(a * a);
        terms.push(b * b);
    }
    compensated_sum(terms)
}

fn check_y(y: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&y) {
        return Err(out_of_range(format!("y = {y} not in [0, 1]")));
    }
    Ok(())
}

/// `Λ_max = √((2 − y)/2)` for `√y|Ψ_G⟩ ± √(1−y)|u_k⟩` and the `v_k` variants.
pub fn psi_y_lambda_closed(y: f64) -> Result<f64> {
    check_y(y)?;
    Ok(((2.0 - y) / 2.0).sqrt())
}

/// Head weight `p = y/(2 − y)` of the closest product state.
pub fn psi_y_head_weight(y: f64) -> Result<f64> {
    check_y(y)?;
    Ok(y / (2.0 - y))
}

/// `(√p|0⟩ + √(1−p)|1⟩) ⊗ |0⟩^{⊗(N−1)}`, the closest product state to
/// `√y|Ψ_G⟩ + √(1−y)|u_1⟩` (with `u_1` flipping party 0).
pub fn psi_y_closest_product(n: usize, y: f64) -> Result<ProductState> {
    let p = psi_y_head_weight(y)?;
    if n < 2 {
        return Err(out_of_range(format!("N = {n} < 2")));
    }
    let zero = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
    let mut factors = vec![zero; n];
    factors[0] = [Complex64::new(p.sqrt(), 0.0), Complex64::new((1.0 - p).sqrt(), 0.0)];
    ProductState::new(factors)
}

/// Best overlap on the branch with the tail fixed to `|1⟩^{⊗(N−1)}`: `√(y/2)`.
pub fn psi_y_alternative_branch(y: f64) -> Result<f64> {
    check_y(y)?;
    Ok((y / 2.0).sqrt())
}

/// `−2 log₂ x − (1 − x²) log₂ e`, non-negative on `(0, 1]`.
pub fn log_chain_slack(x: f64) -> f64 {
    -2.0 * x.log2() - (1.0 - x * x) * LOG2_E
}

/// Inequality families that can be swept over random angle tuples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Inequality {
    /// `1 − smolin_overlap_norm_sq`.
    SmolinOverlap,
    /// `1 − norm_sq − remainder` with [`smolin_remainder`].
    RemainderPlain,
    /// `1 − norm_sq − remainder` with the symmetric remainder.
    RemainderSymmetric,
    /// `1 − f_4`.
    F4,
    /// `f_N − f_{N+1}` for `N = 4..=10` on extended tuples.
    FMonotone,
    /// [`log_chain_slack`] on a uniform grid of `(0, 1]`.
    LogChain,
}

impl Inequality {
    pub const ALL: [Inequality; 6] = [
        Inequality::SmolinOverlap,
        Inequality::RemainderPlain,
        Inequality::RemainderSymmetric,
        Inequality::F4,
        Inequality::FMonotone,
        Inequality::LogChain,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Inequality::SmolinOverlap => "smolin-overlap",
            Inequality::RemainderPlain => "remainder-plain",
            Inequality::RemainderSymmetric => "remainder-symmetric",
            Inequality::F4 => "f4",
            Inequality::FMonotone => "f-monotone",
            Inequality::LogChain => "log-chain",
        }
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Inequality {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse { token: s.to_string(), reason: "unknown inequality".into() })
    }
}

/// Extremes of the slack over a sweep. An inequality holds when
/// `min_slack ≥ 0` (up to rounding); an identity holds when both extremes
/// are near zero.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepSummary {
    pub inequality: Inequality,
    pub samples: usize,
    pub min_slack: f64,
    pub max_slack: f64,
}

/// Evaluate the slack of `which` on `samples` seeded random points.
pub fn sweep(which: Inequality, samples: usize, seed: u64) -> Result<SweepSummary> {
    if samples == 0 {
        return Err(out_of_range("samples must be at least 1"));
    }
    let stream = Inequality::ALL.iter().position(|&k| k == which).unwrap_or(0) as u64;
    let mut rng = stream_rng(seed, stream);
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut record = |v: f64| {
        lo = lo.min(v);
        hi = hi.max(v);
    };
    for i in 0..samples {
        match which {
            Inequality::LogChain => record(log_chain_slack((i + 1) as f64 / samples as f64)),
            Inequality::FMonotone => {
                let mut t = AngleTuple::random(&mut rng, 4);
                for _ in 4..=10 {
                    let next = t.extended(rng.random_range(0.0..=FRAC_PI_2))?;
                    record(f_n(&t) - f_n(&next));
                    t = next;
                }
            }
            _ => {
                let t = AngleTuple::random(&mut rng, 4);
                let ns = smolin_overlap_norm_sq(&t)?;
                record(match which {
                    Inequality::SmolinOverlap => 1.0 - ns,
                    Inequality::RemainderPlain => 1.0 - ns - smolin_remainder(&t)?,
                    Inequality::RemainderSymmetric => 1.0 - ns - smolin_remainder_symmetric(&t)?,
                    _ => 1.0 - f_n(&t),
                });
            }
        }
    }
    Ok(SweepSummary { inequality: which, samples, min_slack: lo, max_slack: hi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn norm_sq_special_points() {
        assert!((smolin_overlap_norm_sq(&AngleTuple::uniform(4, 0.0).unwrap()).unwrap() - 1.0).abs() < 1e-15);
        assert!((smolin_overlap_norm_sq(&AngleTuple::uniform(4, FRAC_PI_4).unwrap()).unwrap() - 1.0).abs() < 1e-15);
        let t = AngleTuple::new(vec![FRAC_PI_2, 0.0, 0.0, 0.0]).unwrap();
        assert!(smolin_overlap_norm_sq(&t).unwrap().abs() < 1e-15);
        assert!(smolin_remainder(&AngleTuple::uniform(4, 0.0).unwrap()).unwrap().abs() < 1e-15);
    }

    #[test]
    fn arity_and_range_errors() {
        assert!(smolin_overlap_norm_sq(&AngleTuple::uniform(3, 0.1).unwrap()).is_err());
        assert!(AngleTuple::new(vec![-0.1]).is_err());
        assert!(AngleTuple::new(vec![]).is_err());
        assert!(psi_y_lambda_closed(1.5).is_err());
    }

    #[test]
    fn symmetric_remainder_is_exact() {
        let t = AngleTuple::new(vec![0.3, 0.7, 1.1, 0.2]).unwrap();
        let ns = smolin_overlap_norm_sq(&t).unwrap();
        assert!((ns + smolin_remainder_symmetric(&t).unwrap() - 1.0).abs() < 1e-14);
        assert!(ns <= 1.0);
    }

    #[test]
    fn f_n_points() {
        assert!((f_n(&AngleTuple::uniform(7, 0.0).unwrap()) - 1.0).abs() < 1e-15);
        assert!((f_n(&AngleTuple::uniform(4, FRAC_PI_4).unwrap()) - 0.75).abs() < 1e-15);
    }

    #[test]
    fn psi_y_values() {
        assert!((psi_y_lambda_closed(1.0).unwrap() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert_eq!(psi_y_lambda_closed(0.0).unwrap(), 1.0);
        assert!((psi_y_lambda_closed(0.4).unwrap() - 0.8f64.sqrt()).abs() < 1e-15);
        assert!((psi_y_head_weight(0.4).unwrap() - 0.25).abs() < 1e-15);
        assert!((psi_y_head_weight(1.0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        assert_eq!(compensated_sum([1.0, 1e100, 1.0, -1e100]), 2.0);
    }

    #[test]
    fn log_chain() {
        assert!(log_chain_slack(1.0).abs() < 1e-15);
        assert!(log_chain_slack(0.5) > 0.0);
    }

    #[test]
    fn sweeps_are_deterministic() {
        let a = sweep(Inequality::SmolinOverlap, 200, 3).unwrap();
        let b = sweep(Inequality::SmolinOverlap, 200, 3).unwrap();
        assert_eq!(a, b);
        assert!(a.min_slack >= -1e-12);
        assert!(sweep(Inequality::F4, 0, 3).is_err());
    }
}
