//! JSON interchange for states and decompositions.
//!
//! A state is `{"kind":"pure"|"density","n_parties":N,"re":[...],"im":[...]}`
//! with `2^N` amplitudes or a row-major `2^N × 2^N` matrix. A decomposition
//! is `{"weights":[...],"states":[...],"isometry_re":[...],"isometry_im":[...],
//! "isometry_shape":[M,n]}`, the isometry fields being optional and row-major.

use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roof::Decomposition;
use crate::state::{DensityMatrix, PureState, MAX_PARTIES};
use crate::zoo::ZooState;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateKind {
    Pure,
    Density,
}

/// Serialized form of a state.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub kind: StateKind,
    pub n_parties: usize,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

fn split_parts<'a>(values: impl Iterator<Item = &'a Complex64>) -> (Vec<f64>, Vec<f64>) {
    values.map(|z| (z.re, z.im)).unzip()
}

fn join_parts(re: &[f64], im: &[f64]) -> Result<Vec<Complex64>> {
    if re.len() != im.len() {
        return Err(Error::Format(format!("re has {} entries, im has {}", re.len(), im.len())));
    }
    Ok(re.iter().zip(im).map(|(&a, &b)| Complex64::new(a, b)).collect())
}

fn row_major(m: &DMatrix<Complex64>) -> Vec<Complex64> {
    m.transpose().iter().copied().collect()
}

impl StateFile {
    pub fn from_pure(psi: &PureState) -> Self {
        let (re, im) = split_parts(psi.amplitudes().iter());
        Self { kind: StateKind::Pure, n_parties: psi.n_parties(), re, im }
    }

    pub fn from_density(rho: &DensityMatrix) -> Self {
        let (re, im) = split_parts(row_major(rho.matrix()).iter());
        Self { kind: StateKind::Density, n_parties: rho.n_parties(), re, im }
    }

    pub fn from_state(state: &ZooState) -> Self {
        match state {
            ZooState::Pure(p) => Self::from_pure(p),
            ZooState::Density(d) => Self::from_density(d),
        }
    }

    /// Validate and build the state.
    pub fn to_state(&self) -> Result<ZooState> {
        if self.n_parties == 0 || self.n_parties > MAX_PARTIES {
            return Err(Error::Format(format!("n_parties = {} out of range", self.n_parties)));
        }
        let dim = 1usize << self.n_parties;
        let values = join_parts(&self.re, &self.im)?;
        match self.kind {
            StateKind::Pure => {
                if values.len() != dim {
                    return Err(Error::Format(format!("expected {dim} amplitudes, got {}", values.len())));
                }
                Ok(ZooState::Pure(PureState::new(self.n_parties, values)?))
            }
            StateKind::Density => {
                if values.len() != dim * dim {
                    return Err(Error::Format(format!("expected {} matrix entries, got {}", dim * dim, values.len())));
                }
                let m = DMatrix::from_row_slice(dim, dim, &values);
                Ok(ZooState::Density(DensityMatrix::new(self.n_parties, m)?))
            }
        }
    }
}

pub fn state_to_json(state: &ZooState) -> Result<String> {
    Ok(serde_json::to_string(&StateFile::from_state(state))?)
}

pub fn state_from_json(text: &str) -> Result<ZooState> {
    serde_json::from_str::<StateFile>(text)?.to_state()
}

pub fn write_state(path: impl AsRef<Path>, state: &ZooState) -> Result<()> {
    std::fs::write(path, state_to_json(state)?)?;
    Ok(())
}

pub fn read_state(path: impl AsRef<Path>) -> Result<ZooState> {
    state_from_json(&std::fs::read_to_string(path)?)
}

/// Serialized form of a [`Decomposition`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionFile {
    pub weights: Vec<f64>,
    pub states: Vec<StateFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub isometry_re: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub isometry_im: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub isometry_shape: Option<[usize; 2]>,
}

impl DecompositionFile {
    pub fn from_decomposition(dec: &Decomposition) -> Self {
        let (mut isometry_re, mut isometry_im, mut isometry_shape) = (None, None, None);
        if let Some(u) = dec.isometry() {
            let (re, im) = split_parts(row_major(u).iter());
            isometry_re = Some(re);
            isometry_im = Some(im);
            isometry_shape = Some([u.nrows(), u.ncols()]);
        }
        Self {
            weights: dec.weights().to_vec(),
            states: dec.states().iter().map(StateFile::from_pure).collect(),
            isometry_re,
            isometry_im,
            isometry_shape,
        }
    }

    pub fn to_decomposition(&self) -> Result<Decomposition> {
        let states = self
            .states
            .iter()
            .map(|s| match s.to_state()? {
                ZooState::Pure(p) => Ok(p),
                ZooState::Density(_) => Err(Error::Format("decomposition members must be pure".into())),
            })
            .collect::<Result<Vec<_>>>()?;
        let dec = Decomposition::new(self.weights.clone(), states)?;
        match (&self.isometry_re, &self.isometry_im, self.isometry_shape) {
            (None, None, None) => Ok(dec),
            (Some(re), Some(im), Some([rows, cols])) => {
                let values = join_parts(re, im)?;
                if values.len() != rows * cols {
                    return Err(Error::Format(format!("isometry has {} entries, shape {rows}x{cols}", values.len())));
                }
                dec.with_isometry(DMatrix::from_row_slice(rows, cols, &values))
            }
            _ => Err(Error::Format("isometry_re, isometry_im and isometry_shape must appear together".into())),
        }
    }
}

pub fn decomposition_to_json(dec: &Decomposition) -> Result<String> {
    Ok(serde_json::to_string(&DecompositionFile::from_decomposition(dec))?)
}

pub fn decomposition_from_json(text: &str) -> Result<Decomposition> {
    serde_json::from_str::<DecompositionFile>(text)?.to_decomposition()
}
