//! Qubit state containers and the basic tensor operations on them.
//!
//! Basis convention: party 0 is the most significant bit of a
//! computational-basis index. For `n` parties, party `p` occupies bit
//! `n - 1 - p`. Every module and file format in the crate uses this order.

use std::collections::BTreeSet;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, hermiticity_error};

/// Index of a qubit party; party "A" (or "1") is index 0.
pub type PartyLabel = usize;

pub const NORM_TOL: f64 = 1e-12;
pub const HERMITIAN_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
pub const PSD_TOL: f64 = 1e-10;

/// Largest number of parties the dense representation accepts.
pub const MAX_PARTIES: usize = 14;

pub(crate) fn bit_of(n_parties: usize, party: PartyLabel) -> usize {
    n_parties - 1 - party
}

/// Bitmask selecting the given parties in a basis index.
pub fn party_mask(n_parties: usize, parties: &[PartyLabel]) -> usize {
    parties.iter().fold(0, |m, &p| m | (1 << bit_of(n_parties, p)))
}

fn check_parties(n_parties: usize, parties: &[PartyLabel]) -> Result<BTreeSet<PartyLabel>> {
    let mut set = BTreeSet::new();
    for &p in parties {
        if p >= n_parties {
            return Err(Error::InvalidParties(format!(
                "party {p} does not exist in a {n_parties}-party system"
            )));
        }
        if !set.insert(p) {
            return Err(Error::InvalidParties(format!("party {p} listed twice")));
        }
    }
    Ok(set)
}

fn check_n_parties(n_parties: usize) -> Result<()> {
    if n_parties == 0 || n_parties > MAX_PARTIES {
        return Err(Error::OutOfRange(format!(
            "number of parties must be in 1..={MAX_PARTIES}, got {n_parties}"
        )));
    }
    Ok(())
}

/// Normalized amplitude vector over `n_parties` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    n_parties: usize,
    amps: Vec<Complex64>,
}

impl PureState {
    /// Wraps amplitudes that are already normalized to within `1e-12`.
    pub fn new(n_parties: usize, amps: Vec<Complex64>) -> Result<Self> {
        check_n_parties(n_parties)?;
        if amps.len() != 1 << n_parties {
            return Err(Error::DimensionMismatch(format!(
                "{} amplitudes for {} parties (expected {})",
                amps.len(),
                n_parties,
                1usize << n_parties
            )));
        }
        let norm = norm(&amps);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { n_parties, amps })
    }

    /// Scales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(n_parties: usize, mut amps: Vec<Complex64>) -> Result<Self> {
        let nrm = norm(&amps);
        if nrm < 1e-300 {
            return Err(Error::NotNormalized(nrm));
        }
        for a in &mut amps {
            *a /= nrm;
        }
        Self::new(n_parties, amps)
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(n_parties: usize, index: usize) -> Result<Self> {
        check_n_parties(n_parties)?;
        let dim = 1usize << n_parties;
        if index >= dim {
            return Err(Error::OutOfRange(format!("basis index {index} >= {dim}")));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { n_parties, amps })
    }

    pub(crate) fn from_parts_unchecked(n_parties: usize, amps: Vec<Complex64>) -> Self {
        debug_assert_eq!(amps.len(), 1 << n_parties);
        Self { n_parties, amps }
    }

    pub fn n_parties(&self) -> usize {
        self.n_parties
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        norm(&self.amps)
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn projector(&self) -> DensityMatrix {
        let d = self.dim();
        let m = DMatrix::from_fn(d, d, |i, j| self.amps[i] * self.amps[j].conj());
        DensityMatrix::from_matrix_unchecked(self.n_parties, m)
    }

    /// Multiplies every amplitude by `e^{iθ}`.
    pub fn with_global_phase(&self, theta: f64) -> Self {
        let ph = Complex64::from_polar(1.0, theta);
        Self::from_parts_unchecked(self.n_parties, self.amps.iter().map(|a| a * ph).collect())
    }

    /// Applies one 2x2 unitary per party, `(U_0 ⊗ ... ⊗ U_{n-1}) |ψ⟩`.
    pub fn apply_local(&self, unitaries: &[[[Complex64; 2]; 2]]) -> Result<Self> {
        if unitaries.len() != self.n_parties {
            return Err(Error::DimensionMismatch(format!(
                "{} local operators for {} parties",
                unitaries.len(),
                self.n_parties
            )));
        }
        let mut amps = self.amps.clone();
        for (p, u) in unitaries.iter().enumerate() {
            let bit = 1usize << bit_of(self.n_parties, p);
            for idx in 0..amps.len() {
                if idx & bit == 0 {
                    let a0 = amps[idx];
                    let a1 = amps[idx | bit];
                    amps[idx] = u[0][0] * a0 + u[0][1] * a1;
                    amps[idx | bit] = u[1][0] * a0 + u[1][1] * a1;
                }
            }
        }
        Ok(Self::from_parts_unchecked(self.n_parties, amps))
    }

    /// Reorders parties: party `p` of the result is party `perm[p]` of `self`.
    pub fn permute_parties(&self, perm: &[PartyLabel]) -> Result<Self> {
        let n = self.n_parties;
        if perm.len() != n || check_parties(n, perm).is_err() {
            return Err(Error::InvalidParties(format!("{perm:?} is not a permutation of 0..{n}")));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); self.dim()];
        for (new_idx, slot) in amps.iter_mut().enumerate() {
            let mut old_idx = 0;
            for (p, &src) in perm.iter().enumerate() {
                if new_idx >> bit_of(n, p) & 1 == 1 {
                    old_idx |= 1 << bit_of(n, src);
                }
            }
            *slot = self.amps[old_idx];
        }
        Ok(Self::from_parts_unchecked(n, amps))
    }
}

pub(crate) fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Hermitian, positive semidefinite, unit-trace matrix over qubit parties.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    n_parties: usize,
    m: DMatrix<Complex64>,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(n_parties: usize, m: DMatrix<Complex64>) -> Result<Self> {
        check_n_parties(n_parties)?;
        let dim = 1usize << n_parties;
        if m.nrows() != dim || m.ncols() != dim {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix for {} parties",
                m.nrows(),
                m.ncols(),
                n_parties
            )));
        }
        let herm = hermiticity_error(&m);
        if herm > HERMITIAN_TOL {
            return Err(Error::InvalidDensity(format!("not Hermitian (deviation {herm:e})")));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidDensity(format!("trace is {tr}")));
        }
        let spec = eig_hermitian(&m)?;
        if spec.eigenvalues[0] < -PSD_TOL {
            return Err(Error::InvalidDensity(format!(
                "negative eigenvalue {:e}",
                spec.eigenvalues[0]
            )));
        }
        Ok(Self { n_parties, m })
    }

    pub(crate) fn from_matrix_unchecked(n_parties: usize, m: DMatrix<Complex64>) -> Self {
        debug_assert_eq!(m.nrows(), 1 << n_parties);
        Self { n_parties, m }
    }

    /// Builds `Σ w_k |ψ_k⟩⟨ψ_k|`; weights must be non-negative and sum to 1.
    pub fn mixture(terms: &[(f64, &PureState)]) -> Result<Self> {
        let first = terms.first().ok_or(Error::EmptyProduct)?;
        let n = first.1.n_parties();
        let dim = first.1.dim();
        let mut m = DMatrix::<Complex64>::zeros(dim, dim);
        let mut total = 0.0;
        for &(w, psi) in terms {
            if psi.n_parties() != n {
                return Err(Error::DimensionMismatch("mixed party counts".into()));
            }
            if w < 0.0 {
                return Err(Error::OutOfRange(format!("negative weight {w}")));
            }
            total += w;
            let a = psi.amplitudes();
            for j in 0..dim {
                let cj = a[j].conj() * w;
                if cj == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for i in 0..dim {
                    m[(i, j)] += a[i] * cj;
                }
            }
        }
        if (total - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidDensity(format!("weights sum to {total}")));
        }
        Ok(Self::from_matrix_unchecked(n, m))
    }

    /// Convex combination of density matrices on the same parties.
    pub fn convex_combination(terms: &[(f64, &DensityMatrix)]) -> Result<Self> {
        let first = terms.first().ok_or(Error::EmptyProduct)?;
        let n = first.1.n_parties();
        let mut m = DMatrix::<Complex64>::zeros(first.1.dim(), first.1.dim());
        let mut total = 0.0;
        for &(w, rho) in terms {
            if rho.n_parties() != n {
                return Err(Error::DimensionMismatch("mixed party counts".into()));
            }
            if w < 0.0 {
                return Err(Error::OutOfRange(format!("negative weight {w}")));
            }
            total += w;
            m += rho.matrix().scale(w);
        }
        if (total - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidDensity(format!("weights sum to {total}")));
        }
        Ok(Self::from_matrix_unchecked(n, m))
    }

    pub fn maximally_mixed(n_parties: usize) -> Self {
        let d = 1usize << n_parties;
        Self::from_matrix_unchecked(n_parties, DMatrix::identity(d, d).scale(1.0 / d as f64))
    }

    /// Diagonal state with the given basis-state probabilities.
    pub fn diagonal(n_parties: usize, probs: &[f64]) -> Result<Self> {
        check_n_parties(n_parties)?;
        let d = 1usize << n_parties;
        if probs.len() != d {
            return Err(Error::DimensionMismatch(format!("{} probabilities for dim {d}", probs.len())));
        }
        let m = DMatrix::from_fn(d, d, |i, j| {
            if i == j {
                Complex64::new(probs[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        Self::new(n_parties, m)
    }

    pub fn n_parties(&self) -> usize {
        self.n_parties
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.m
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.m
    }

    pub fn trace(&self) -> f64 {
        self.m.trace().re
    }

    /// `⟨ψ|ρ|ψ⟩`.
    pub fn expectation(&self, psi: &PureState) -> Result<f64> {
        if psi.dim() != self.dim() {
            return Err(Error::DimensionMismatch("state and density differ in size".into()));
        }
        Ok(quadratic_form(&self.m, psi.amplitudes()))
    }
}

pub(crate) fn quadratic_form(m: &DMatrix<Complex64>, v: &[Complex64]) -> f64 {
    let d = v.len();
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..d {
        if v[j] == Complex64::new(0.0, 0.0) {
            continue;
        }
        let mut col = Complex64::new(0.0, 0.0);
        for i in 0..d {
            col += v[i].conj() * m[(i, j)];
        }
        acc += col * v[j];
    }
    acc.re
}

/// Two-sided split of the parties of a system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartySplit {
    n_parties: usize,
    side_a: BTreeSet<PartyLabel>,
    side_b: BTreeSet<PartyLabel>,
}

impl PartySplit {
    pub fn new(n_parties: usize, side_a: &[PartyLabel], side_b: &[PartyLabel]) -> Result<Self> {
        let a = check_parties(n_parties, side_a)?;
        let b = check_parties(n_parties, side_b)?;
        if a.is_empty() || b.is_empty() {
            return Err(Error::InvalidParties("both sides of a split must be non-empty".into()));
        }
        if !a.is_disjoint(&b) {
            return Err(Error::InvalidParties("split sides overlap".into()));
        }
        if a.len() + b.len() != n_parties {
            return Err(Error::InvalidParties(format!(
                "split does not cover all {n_parties} parties"
            )));
        }
        Ok(Self { n_parties, side_a: a, side_b: b })
    }

    /// Parses `a,b,...:c,d,...` over party indices.
    pub fn parse(spec: &str, n_parties: usize) -> Result<Self> {
        let (left, right) = spec.split_once(':').ok_or_else(|| Error::Parse {
            token: spec.to_string(),
            reason: "expected `parties:parties`".into(),
        })?;
        let parse_side = |s: &str| -> Result<Vec<PartyLabel>> {
            s.split(',')
                .map(|t| {
                    t.trim().parse::<PartyLabel>().map_err(|_| Error::Parse {
                        token: t.to_string(),
                        reason: "not a party index".into(),
                    })
                })
                .collect()
        };
        Self::new(n_parties, &parse_side(left)?, &parse_side(right)?)
    }

    /// Party 0 against everyone else.
    pub fn first_vs_rest(n_parties: usize) -> Result<Self> {
        let rest: Vec<_> = (1..n_parties).collect();
        Self::new(n_parties, &[0], &rest)
    }

    /// Parties {0, 1} against everyone else.
    pub fn first_two_vs_rest(n_parties: usize) -> Result<Self> {
        let rest: Vec<_> = (2..n_parties).collect();
        Self::new(n_parties, &[0, 1], &rest)
    }

    pub fn n_parties(&self) -> usize {
        self.n_parties
    }

    pub fn side_a(&self) -> Vec<PartyLabel> {
        self.side_a.iter().copied().collect()
    }

    pub fn side_b(&self) -> Vec<PartyLabel> {
        self.side_b.iter().copied().collect()
    }

    pub fn swapped(&self) -> Self {
        Self {
            n_parties: self.n_parties,
            side_a: self.side_b.clone(),
            side_b: self.side_a.clone(),
        }
    }
}

/// Amplitudes of a two-party state `C^{dim_a} ⊗ C^{dim_b}`, used for grouped
/// views such as one qubit against a fused block of qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct BipartiteState {
    dim_a: usize,
    dim_b: usize,
    amps: Vec<Complex64>,
}

impl BipartiteState {
    pub fn new(dim_a: usize, dim_b: usize, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != dim_a * dim_b || dim_a == 0 || dim_b == 0 {
            return Err(Error::DimensionMismatch(format!(
                "{} amplitudes for {dim_a}x{dim_b}",
                amps.len()
            )));
        }
        let nrm = norm(&amps);
        if (nrm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(nrm));
        }
        Ok(Self { dim_a, dim_b, amps })
    }

    /// Fuses parties `1..n` of a qubit state into one `2^{n-1}`-level party.
    pub fn group_first_vs_rest(psi: &PureState) -> Result<Self> {
        if psi.n_parties() < 2 {
            return Err(Error::InvalidParties("need at least two parties to group".into()));
        }
        Ok(Self {
            dim_a: 2,
            dim_b: psi.dim() / 2,
            amps: psi.amplitudes().to_vec(),
        })
    }

    /// Unfolds into qubits when both dimensions are powers of two.
    pub fn to_qubits(&self) -> Result<PureState> {
        if !self.dim_a.is_power_of_two() || !self.dim_b.is_power_of_two() {
            return Err(Error::DimensionMismatch("grouped dimensions are not powers of two".into()));
        }
        let n = (self.dim_a * self.dim_b).trailing_zeros() as usize;
        PureState::new(n, self.amps.clone())
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.dim_a, self.dim_b)
    }

    pub fn amplitude(&self, a: usize, b: usize) -> Complex64 {
        self.amps[a * self.dim_b + b]
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.dims() != other.dims() {
            return Err(Error::DimensionMismatch("grouped dimensions differ".into()));
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    /// Reduced state of the first party (row-major `dim_a x dim_a`).
    pub fn reduced_first(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.dim_a, self.dim_a, |i, j| {
            (0..self.dim_b).map(|b| self.amplitude(i, b) * self.amplitude(j, b).conj()).sum()
        })
    }
}

/// Tensor product of normalized factors in order; party counts add.
pub fn tensor_product(factors: &[PureState]) -> Result<PureState> {
    let (first, rest) = factors.split_first().ok_or(Error::EmptyProduct)?;
    let mut n = first.n_parties();
    let mut amps = first.amplitudes().to_vec();
    for f in rest {
        n += f.n_parties();
        check_n_parties(n)?;
        let mut next = Vec::with_capacity(amps.len() * f.dim());
        for a in &amps {
            next.extend(f.amplitudes().iter().map(|b| a * b));
        }
        amps = next;
    }
    PureState::normalized(n, amps)
}

/// `⟨a|b⟩`, conjugate-linear in `a`.
pub fn overlap(a: &PureState, b: &PureState) -> Result<Complex64> {
    if a.n_parties() != b.n_parties() {
        return Err(Error::DimensionMismatch(format!(
            "{} vs {} parties",
            a.n_parties(),
            b.n_parties()
        )));
    }
    Ok(inner(a.amplitudes(), b.amplitudes()))
}

pub(crate) fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Traces out every party not listed in `keep`.
pub fn partial_trace(rho: &DensityMatrix, keep: &[PartyLabel]) -> Result<DensityMatrix> {
    let n = rho.n_parties();
    let keep_set = check_parties(n, keep)?;
    if keep_set.is_empty() || keep_set.len() == n {
        return Err(Error::InvalidParties(
            "kept parties must be a non-empty proper subset".into(),
        ));
    }
    let kept: Vec<PartyLabel> = keep_set.iter().copied().collect();
    let traced: Vec<PartyLabel> = (0..n).filter(|p| !keep_set.contains(p)).collect();
    let compose = |k_idx: usize, t_idx: usize| -> usize {
        let mut full = 0;
        for (pos, &p) in kept.iter().enumerate() {
            if k_idx >> (kept.len() - 1 - pos) & 1 == 1 {
                full |= 1 << bit_of(n, p);
            }
        }
        for (pos, &p) in traced.iter().enumerate() {
            if t_idx >> (traced.len() - 1 - pos) & 1 == 1 {
                full |= 1 << bit_of(n, p);
            }
        }
        full
    };
    let dk = 1usize << kept.len();
    let dt = 1usize << traced.len();
    let m = rho.matrix();
    let mut out = DMatrix::<Complex64>::zeros(dk, dk);
    for a in 0..dk {
        for b in 0..dk {
            let mut acc = Complex64::new(0.0, 0.0);
            for t in 0..dt {
                acc += m[(compose(a, t), compose(b, t))];
            }
            out[(a, b)] = acc;
        }
    }
    Ok(DensityMatrix::from_matrix_unchecked(kept.len(), out))
}

/// Transposes the listed parties. Element swap only, so applying it twice
/// with the same subset is exactly the identity.
pub fn partial_transpose(rho: &DensityMatrix, subset: &[PartyLabel]) -> Result<DMatrix<Complex64>> {
    let n = rho.n_parties();
    let set = check_parties(n, subset)?;
    if set.is_empty() {
        return Err(Error::InvalidParties("partial transpose needs at least one party".into()));
    }
    Ok(partial_transpose_matrix(rho.matrix(), n, subset))
}

/// Partial transpose of a raw `2^n × 2^n` matrix, used when the operand is
/// not itself a state (for example an already transposed matrix).
pub fn partial_transpose_matrix(
    m: &DMatrix<Complex64>,
    n_parties: usize,
    subset: &[PartyLabel],
) -> DMatrix<Complex64> {
    let mask = party_mask(n_parties, subset);
    let d = m.nrows();
    DMatrix::from_fn(d, d, |r, c| {
        let r0 = (r & !mask) | (c & mask);
        let c0 = (c & !mask) | (r & mask);
        m[(r0, c0)]
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn ket(n: usize, amps: &[f64]) -> PureState {
        PureState::normalized(n, amps.iter().map(|&a| c(a)).collect()).unwrap()
    }

    #[test]
    fn product_of_basis_states() {
        let z = PureState::basis(1, 0).unwrap();
        let p = tensor_product(&[z.clone(), z]).unwrap();
        assert_eq!(p.amplitudes(), &[c(1.0), c(0.0), c(0.0), c(0.0)]);
    }

    #[test]
    fn product_with_superposition() {
        let plus = ket(1, &[1.0, 1.0]);
        let one = PureState::basis(1, 1).unwrap();
        let p = tensor_product(&[plus, one]).unwrap();
        let expected = [0.0, FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2];
        for (a, e) in p.amplitudes().iter().zip(expected) {
            assert!((a - c(e)).norm() < 1e-15);
        }
    }

    #[test]
    fn product_of_four_rotated_qubits() {
        let t: f64 = 0.3;
        let q = ket(1, &[t.cos(), t.sin()]);
        let p = tensor_product(&[q.clone(), q.clone(), q.clone(), q]).unwrap();
        assert_eq!(p.n_parties(), 4);
        // cos^4(0.3) computed directly
        let expected = 0.3f64.cos() * 0.3f64.cos() * 0.3f64.cos() * 0.3f64.cos();
        assert!((p.amplitudes()[0].re - expected).abs() < 1e-15);
        assert!((expected - 0.832_963).abs() < 1e-6);
    }

    #[test]
    fn empty_product_is_an_error() {
        assert!(matches!(tensor_product(&[]), Err(Error::EmptyProduct)));
    }

    #[test]
    fn overlap_checks_dimensions() {
        let a = PureState::basis(2, 0).unwrap();
        let b = PureState::basis(3, 0).unwrap();
        assert!(overlap(&a, &b).is_err());
        assert!((overlap(&a, &a).unwrap() - c(1.0)).norm() < 1e-15);
    }

    #[test]
    fn partial_trace_of_product() {
        let rho = PureState::basis(2, 0).unwrap().projector();
        let red = partial_trace(&rho, &[0]).unwrap();
        let expected = PureState::basis(1, 0).unwrap().projector();
        assert!(max_abs_diff(red.matrix(), expected.matrix()) < 1e-15);
    }

    #[test]
    fn partial_trace_rejects_bad_keep() {
        let rho = PureState::basis(2, 0).unwrap().projector();
        assert!(partial_trace(&rho, &[]).is_err());
        assert!(partial_trace(&rho, &[0, 1]).is_err());
        assert!(partial_trace(&rho, &[2]).is_err());
    }

    #[test]
    fn partial_trace_keeps_order_of_parties() {
        // |01⟩ on parties (0,1) of a 3-qubit |010⟩ state
        let rho = PureState::basis(3, 0b010).unwrap().projector();
        let red = partial_trace(&rho, &[0, 1]).unwrap();
        assert!((red.matrix()[(0b01, 0b01)] - c(1.0)).norm() < 1e-15);
        let red = partial_trace(&rho, &[1, 2]).unwrap();
        assert!((red.matrix()[(0b10, 0b10)] - c(1.0)).norm() < 1e-15);
    }

    #[test]
    fn partial_transpose_of_product_is_local_transpose() {
        let a = PureState::normalized(1, vec![c(1.0), Complex64::new(0.3, 0.7)]).unwrap();
        let b = PureState::normalized(1, vec![Complex64::new(0.2, -0.5), c(0.9)]).unwrap();
        let rho = tensor_product(&[a.clone(), b.clone()]).unwrap().projector();
        let pt = partial_transpose(&rho, &[1]).unwrap();
        let sa = a.projector().into_matrix();
        let sb = b.projector().into_matrix().transpose();
        let expected = sa.kronecker(&sb);
        assert!(max_abs_diff(&pt, &expected) < 1e-15);
        let spec = eig_hermitian(&pt).unwrap();
        assert!(spec.eigenvalues[0] > -1e-12);
    }

    #[test]
    fn partial_transpose_of_bell_state() {
        let bell = ket(2, &[0.0, 1.0, 1.0, 0.0]);
        let pt = partial_transpose(&bell.projector(), &[1]).unwrap();
        let spec = eig_hermitian(&pt).unwrap();
        let expected = [-0.5, 0.5, 0.5, 0.5];
        for (l, e) in spec.eigenvalues.iter().zip(expected) {
            assert!((l - e).abs() < 1e-12);
        }
    }

    #[test]
    fn full_transpose_is_allowed() {
        let bell = ket(2, &[1.0, 0.0, 0.0, 1.0]);
        let rho = bell.projector();
        let pt = partial_transpose(&rho, &[0, 1]).unwrap();
        assert!(max_abs_diff(&pt, &rho.matrix().transpose()) == 0.0);
    }

    #[test]
    fn density_validation() {
        let bad = DMatrix::<Complex64>::identity(2, 2);
        assert!(DensityMatrix::new(1, bad).is_err());
        let neg = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(1.5), c(-0.5)]));
        assert!(DensityMatrix::new(1, neg).is_err());
        let ok = DMatrix::<Complex64>::identity(2, 2).scale(0.5);
        assert!(DensityMatrix::new(1, ok).is_ok());
    }

    #[test]
    fn split_parsing() {
        let s = PartySplit::parse("0:1,2,3", 4).unwrap();
        assert_eq!(s.side_a(), vec![0]);
        assert_eq!(s.side_b(), vec![1, 2, 3]);
        assert!(PartySplit::parse("0:1,2", 4).is_err());
        assert!(PartySplit::parse("0,1:1,2,3", 4).is_err());
        assert!(PartySplit::parse("0;1", 2).is_err());
        match PartySplit::parse("0:x", 2) {
            Err(Error::Parse { token, .. }) => assert_eq!(token, "x"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn permutation_moves_amplitudes() {
        let psi = PureState::basis(3, 0b100).unwrap();
        let moved = psi.permute_parties(&[2, 0, 1]).unwrap();
        // old party 0 is now party 1
        assert!((moved.amplitudes()[0b010] - c(1.0)).norm() < 1e-15);
    }
}
