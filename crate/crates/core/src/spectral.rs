//! Spectral measures: negativity across a bipartition and the quantum
//! relative entropy `S(ρ‖σ)` in bits.

use crate::error::{out_of_range, Error, Result};
use crate::linalg::{eig_hermitian, DEFAULT_SUPPORT_EPS};
use crate::state::{quadratic_form, DensityMatrix, PartySplit};

/// Twice the absolute sum of the negative eigenvalues of the partial
/// transpose of `rho` over `split.side_b`.
pub fn negativity(rho: &DensityMatrix, split: &PartySplit) -> Result<f64> {
    Ok(2.0 * pt_negative_mass(rho, split)?)
}

/// Smallest eigenvalue of the partial transpose over `split.side_b`.
pub fn min_pt_eigenvalue(rho: &DensityMatrix, split: &PartySplit) -> Result<f64> {
    let spec = pt_spectrum(rho, split)?;
    Ok(spec[0])
}

fn pt_spectrum(rho: &DensityMatrix, split: &PartySplit) -> Result<Vec<f64>> {
    if split.n_parties() != rho.n_parties() {
        return Err(Error::InvalidParties(format!(
            "split is over {} parties, state has {}",
            split.n_parties(),
            rho.n_parties()
        )));
    }
    let pt = crate::state::partial_transpose(rho, &split.side_b())?;
    Ok(eig_hermitian(&pt)?.eigenvalues)
}

fn pt_negative_mass(rho: &DensityMatrix, split: &PartySplit) -> Result<f64> {
    Ok(pt_spectrum(rho, split)?.iter().filter(|&&l| l < 0.0).fold(0.0, |acc, l| acc - l))
}

/// Bipartitions of the Dür family with known negativity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DurPartition {
    /// Party 1 against parties 2..N.
    OneVsRest,
    /// Parties 1, 2 against parties 3..N.
    TwoVsRest,
}

impl DurPartition {
    pub fn split(self, n: usize) -> Result<PartySplit> {
        match self {
            DurPartition::OneVsRest => PartySplit::first_vs_rest(n),
            DurPartition::TwoVsRest => PartySplit::first_two_vs_rest(n),
        }
    }
}

/// Closed-form negativity of `ρ_N(x)`: `max{0, ((N+1)x - 1)/N}` across
/// `1 : 2…N`, and `x` across `12 : 3…N`.
pub fn dur_negativity_closed(n: usize, x: f64, partition: DurPartition) -> Result<f64> {
    if n < 4 {
        return Err(out_of_range(format!("N = {n} < 4")));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(out_of_range(format!("x = {x} not in [0, 1]")));
    }
    let nf = n as f64;
    Ok(match partition {
        DurPartition::OneVsRest => (((nf + 1.0) * x - 1.0) / nf).max(0.0),
        DurPartition::TwoVsRest => x,
    })
}

/// Mass of `ρ` outside the support of `σ` above which `S(ρ‖σ)` is infinite.
pub const SUPPORT_LEAK_TOL: f64 = 1e-10;

/// `S(ρ‖σ) = Tr ρ log₂ρ − Tr ρ log₂σ` in bits, or `+∞` when the support of
/// `ρ` is not contained in the support of `σ`.
///
/// Support test: every eigenvector of `ρ` with eigenvalue above `1e-10`
/// must have `σ`-expectation above `1e-12`, and the weight `Tr[ρ(1 − P_σ)]`
/// that `ρ` places outside the support projector of `σ` must not exceed
/// [`SUPPORT_LEAK_TOL`].
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.n_parties() != sigma.n_parties() {
        return Err(Error::DimensionMismatch(format!(
            "ρ has {} parties, σ has {}",
            rho.n_parties(),
            sigma.n_parties()
        )));
    }
    let eps = DEFAULT_SUPPORT_EPS;
    let rs = eig_hermitian(rho.matrix())?;
    let ss = eig_hermitian(sigma.matrix())?;

    for j in rs.support(eps) {
        let v = rs.vector(j);
        if quadratic_form(sigma.matrix(), &v) <= 1e-12 {
            return Ok(f64::INFINITY);
        }
    }

    let mut neg_entropy = 0.0;
    for &l in &rs.eigenvalues {
        if l > eps {
            neg_entropy += l * l.log2();
        }
    }

    let mut cross = 0.0;
    let mut inside = 0.0;
    for j in ss.support(eps) {
        let w = ss.vector(j);
        let weight = quadratic_form(rho.matrix(), &w);
        cross += weight * ss.eigenvalues[j].log2();
        inside += weight;
    }
    if rho.trace() - inside > SUPPORT_LEAK_TOL {
        return Ok(f64::INFINITY);
    }
    let s = neg_entropy - cross;
    Ok(if s < 0.0 && s > -1e-12 { 0.0 } else { s })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::PureState;
    use crate::zoo::{bell, dur, sigma_conjectured, smolin, SigmaTarget, SmolinForm};

    #[test]
    fn bell_state_negativity_is_one() {
        let rho = bell(0).unwrap().projector();
        let split = PartySplit::new(2, &[0], &[1]).unwrap();
        assert!((negativity(&rho, &split).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn product_state_has_zero_negativity() {
        let rho = PureState::basis(3, 5).unwrap().projector();
        for spec in ["0:1,2", "0,1:2", "1:0,2"] {
            let split = PartySplit::parse(spec, 3).unwrap();
            assert!(negativity(&rho, &split).unwrap().abs() < 1e-14);
        }
    }

    #[test]
    fn smolin_partitions() {
        let rho = smolin(SmolinForm::GhzLike);
        let one = PartySplit::parse("0:1,2,3", 4).unwrap();
        let two = PartySplit::parse("0,1:2,3", 4).unwrap();
        assert!((negativity(&rho, &one).unwrap() - 1.0).abs() < 1e-9);
        assert!(negativity(&rho, &two).unwrap().abs() < 1e-9);
        assert!(min_pt_eigenvalue(&rho, &PartySplit::parse("0,1:2,3", 4).unwrap()).unwrap() >= -1e-10);
    }

    #[test]
    fn dur_closed_forms() {
        assert!((dur_negativity_closed(5, 0.2, DurPartition::OneVsRest).unwrap() - 0.04).abs() < 1e-15);
        assert_eq!(dur_negativity_closed(5, 1.0 / 6.0, DurPartition::OneVsRest).unwrap(), 0.0);
        assert_eq!(dur_negativity_closed(7, 0.3, DurPartition::TwoVsRest).unwrap(), 0.3);
        assert!(dur_negativity_closed(3, 0.3, DurPartition::TwoVsRest).is_err());
        assert!(dur_negativity_closed(4, -0.1, DurPartition::TwoVsRest).is_err());
    }

    #[test]
    fn dur_numeric_matches_closed() {
        for n in 4..=5 {
            for x in [0.0, 0.3, 0.7] {
                let rho = dur(n, x).unwrap();
                for part in [DurPartition::OneVsRest, DurPartition::TwoVsRest] {
                    let num = negativity(&rho, &part.split(n).unwrap()).unwrap();
                    let cf = dur_negativity_closed(n, x, part).unwrap();
                    assert!((num - cf).abs() < 1e-9, "n={n} x={x} {part:?}: {num} vs {cf}");
                }
            }
        }
    }

    #[test]
    fn relative_entropy_cases() {
        let rho = smolin(SmolinForm::GhzLike);
        assert!(relative_entropy(&rho, &rho).unwrap().abs() < 1e-12);
        let sigma = sigma_conjectured(SigmaTarget::Smolin).unwrap();
        assert!((relative_entropy(&rho, &sigma).unwrap() - 1.0).abs() < 1e-9);
        let zero = PureState::basis(4, 0).unwrap().projector();
        assert_eq!(relative_entropy(&rho, &zero).unwrap(), f64::INFINITY);
        let small = PureState::basis(2, 0).unwrap().projector();
        assert!(relative_entropy(&rho, &small).is_err());
    }

    #[test]
    fn support_leak_is_infinite() {
        // |+⟩ against |0⟩: positive σ-expectation, but ρ leaks outside supp σ
        let plus = PureState::normalized(1, vec![1.0.into(), 1.0.into()]).unwrap().projector();
        let zero = PureState::basis(1, 0).unwrap().projector();
        assert_eq!(relative_entropy(&plus, &zero).unwrap(), f64::INFINITY);
    }
}
