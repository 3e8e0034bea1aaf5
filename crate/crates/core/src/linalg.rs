//! Dense Hermitian linear algebra: eigendecomposition, support-restricted
//! matrix logarithm, and the unitary exponential used by the roof optimizer.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::DensityMatrix;

/// Hermiticity gate applied before symmetrizing an input.
pub const HERMITIAN_GATE: f64 = 1e-10;

/// Default eigenvalue cutoff below which an eigenvector is out of support.
pub const DEFAULT_SUPPORT_EPS: f64 = 1e-10;

/// Eigenvalues in ascending order with matching orthonormal eigenvectors
/// stored as columns.
#[derive(Clone, Debug)]
pub struct HermitianSpectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: DMatrix<Complex64>,
}

impl HermitianSpectrum {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `V diag(f(λ)) V†`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> DMatrix<Complex64> {
        let v = &self.eigenvectors;
        let mut scaled = v.clone();
        for (j, &lam) in self.eigenvalues.iter().enumerate() {
            let s = f(lam);
            scaled.column_mut(j).scale_mut(s);
        }
        scaled * v.adjoint()
    }

    pub fn reconstruct(&self) -> DMatrix<Complex64> {
        self.map(|x| x)
    }

    /// Eigenvector `j` as a plain vector.
    pub fn vector(&self, j: usize) -> Vec<Complex64> {
        self.eigenvectors.column(j).iter().copied().collect()
    }

    /// Indices of eigenvalues strictly above `eps`.
    pub fn support(&self, eps: f64) -> Vec<usize> {
        (0..self.dim()).filter(|&j| self.eigenvalues[j] > eps).collect()
    }
}

/// Largest entrywise modulus of `m - m†`.
pub fn hermiticity_error(m: &DMatrix<Complex64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

pub fn max_abs_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Decompose a Hermitian matrix. The input is symmetrized as `(M + M†)/2`
/// after passing the Hermiticity gate.
pub fn eig_hermitian(m: &DMatrix<Complex64>) -> Result<HermitianSpectrum> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "expected a square matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    let dev = hermiticity_error(m);
    if dev > HERMITIAN_GATE {
        return Err(Error::NotHermitian(dev));
    }
    let sym = (m + m.adjoint()).scale(0.5);
    let eig = nalgebra::linalg::SymmetricEigen::new(sym);
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues = order.iter().map(|&j| eig.eigenvalues[j]).collect();
    let eigenvectors = DMatrix::from_fn(n, n, |i, k| eig.eigenvectors[(i, order[k])]);
    Ok(HermitianSpectrum { eigenvalues, eigenvectors })
}

/// Base-2 logarithm of a density matrix restricted to its support.
#[derive(Clone, Debug)]
pub struct SupportLog {
    /// `V log2(Λ) V†` over eigenvalues above the cutoff.
    pub log2: DMatrix<Complex64>,
    /// Orthogonal projector onto the same eigenvectors.
    pub projector: DMatrix<Complex64>,
    pub spectrum: HermitianSpectrum,
}

pub fn matrix_log2_on_support(rho: &DensityMatrix, eps: f64) -> Result<SupportLog> {
    let spectrum = eig_hermitian(rho.matrix())?;
    let log2 = spectrum.map(|l| if l > eps { l.log2() } else { 0.0 });
    let projector = spectrum.map(|l| if l > eps { 1.0 } else { 0.0 });
    Ok(SupportLog { log2, projector, spectrum })
}

/// `exp(Ω)` for anti-Hermitian `Ω`, computed from the spectrum of `iΩ`.
pub fn expm_anti_hermitian(omega: &DMatrix<Complex64>) -> Result<DMatrix<Complex64>> {
    let h = omega.scale(1.0) * Complex64::new(0.0, 1.0);
    let spec = eig_hermitian(&h)?;
    // Ω = -iH, so exp(Ω) = V exp(-iλ) V†.
    let v = &spec.eigenvectors;
    let mut scaled = v.clone();
    for (j, &lam) in spec.eigenvalues.iter().enumerate() {
        let phase = Complex64::new(0.0, -lam).exp();
        for z in scaled.column_mut(j).iter_mut() {
            *z *= phase;
        }
    }
    Ok(scaled * v.adjoint())
}

/// Largest entrywise deviation of `U†U` from the identity.
pub fn column_orthonormality_error(u: &DMatrix<Complex64>) -> f64 {
    let g = u.adjoint() * u;
    let id = DMatrix::<Complex64>::identity(g.nrows(), g.ncols());
    max_abs_diff(&g, &id)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{complex_gaussian, stream_rng};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn identity_spectrum() {
        let s = eig_hermitian(&DMatrix::identity(2, 2)).unwrap();
        assert_eq!(s.eigenvalues.len(), 2);
        for l in s.eigenvalues {
            assert!((l - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn diagonal_sorted_ascending() {
        let m = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(3.0), c(-1.0)]));
        let s = eig_hermitian(&m).unwrap();
        assert!((s.eigenvalues[0] + 1.0).abs() < 1e-15);
        assert!((s.eigenvalues[1] - 3.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = DMatrix::<Complex64>::identity(2, 2);
        m[(0, 1)] = c(1e-6);
        assert!(matches!(eig_hermitian(&m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn random_reconstruction() {
        let mut rng = stream_rng(11, 0);
        for dim in [1usize, 3, 16, 64, 128] {
            let g = DMatrix::from_fn(dim, dim, |_, _| complex_gaussian(&mut rng));
            let h = (&g + g.adjoint()).scale(0.5);
            let s = eig_hermitian(&h).unwrap();
            assert!(max_abs_diff(&s.reconstruct(), &h) <= 1e-10);
            assert!(column_orthonormality_error(&s.eigenvectors) <= 1e-10);
            assert!(s.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn log_of_maximally_mixed() {
        let rho = DensityMatrix::maximally_mixed(1);
        let l = matrix_log2_on_support(&rho, DEFAULT_SUPPORT_EPS).unwrap();
        let expected = DMatrix::<Complex64>::identity(2, 2).scale(-1.0);
        assert!(max_abs_diff(&l.log2, &expected) < 1e-14);

        let rho = DensityMatrix::maximally_mixed(2);
        let l = matrix_log2_on_support(&rho, DEFAULT_SUPPORT_EPS).unwrap();
        let expected = DMatrix::<Complex64>::identity(4, 4).scale(-2.0);
        assert!(max_abs_diff(&l.log2, &expected) < 1e-14);
        assert!(max_abs_diff(&l.projector, &DMatrix::identity(4, 4)) < 1e-14);
    }

    #[test]
    fn exponential_is_unitary() {
        let mut rng = stream_rng(5, 1);
        let g = DMatrix::from_fn(6, 6, |_, _| complex_gaussian(&mut rng));
        let omega = (&g - g.adjoint()).scale(0.5);
        let u = expm_anti_hermitian(&omega).unwrap();
        assert!(column_orthonormality_error(&u) < 1e-13);
        // first-order agreement for a small generator
        let small = omega.scale(1e-6);
        let u = expm_anti_hermitian(&small).unwrap();
        let approx = DMatrix::<Complex64>::identity(6, 6) + &small;
        assert!(max_abs_diff(&u, &approx) < 1e-11);
    }
}
