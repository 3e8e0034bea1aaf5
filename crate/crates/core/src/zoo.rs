//! Constructors for the named states: Bell and GHZ states, the four-qubit
//! Smolin state and its GHZ-like constituents, the Dür family `ρ_N(x)`,
//! the `ψ(y)` members of its optimal decomposition, the grouped one-qubit
//! versus `2m`-level Bell-like states, and the conjectured closest
//! separable states.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{out_of_range, Error, Result};
use crate::state::{BipartiteState, DensityMatrix, PureState};

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn two_term(n_parties: usize, i: usize, a: Complex64, j: usize, b: Complex64) -> PureState {
    let mut amps = vec![re(0.0); 1 << n_parties];
    amps[i] += a;
    amps[j] += b;
    PureState::from_parts_unchecked(n_parties, amps)
}

/// Sign of the relative amplitude in two-term superpositions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];
}

/// Which flip-string family a `ψ(y)` state mixes with the GHZ state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FlipKind {
    /// `|u_k⟩`: a single 1 at party `k` among 0s.
    U,
    /// `|v_k⟩`: a single 0 at party `k` among 1s.
    V,
}

/// Bell state `i`: `(|00⟩ ± |11⟩)/√2` for `i = 0, 1` and
/// `(|01⟩ ± |10⟩)/√2` for `i = 2, 3`.
pub fn bell(i: usize) -> Result<PureState> {
    let h = FRAC_1_SQRT_2;
    Ok(match i {
        0 => two_term(2, 0b00, re(h), 0b11, re(h)),
        1 => two_term(2, 0b00, re(h), 0b11, re(-h)),
        2 => two_term(2, 0b01, re(h), 0b10, re(h)),
        3 => two_term(2, 0b01, re(h), 0b10, re(-h)),
        _ => return Err(out_of_range(format!("Bell index {i} not in 0..=3"))),
    })
}

/// `(|0…0⟩ + e^{iα}|1…1⟩)/√2` on `n ≥ 2` qubits.
pub fn ghz(n: usize, alpha: f64) -> Result<PureState> {
    if !(2..=crate::state::MAX_PARTIES).contains(&n) {
        return Err(out_of_range(format!("GHZ needs 2..={} parties, got {n}", crate::state::MAX_PARTIES)));
    }
    let all = (1 << n) - 1;
    Ok(two_term(n, 0, re(FRAC_1_SQRT_2), all, Complex64::from_polar(FRAC_1_SQRT_2, alpha)))
}

/// Basis index of `|b⟩` for the GHZ-like pair `(|b⟩ + |b̄⟩)/√2` making up `|X_i⟩`.
const X_STRINGS: [usize; 4] = [0b0000, 0b0011, 0b0101, 0b0110];

/// The four orthogonal GHZ-like states `|X_i⟩` that span the Smolin state.
pub fn x_state(i: usize) -> Result<PureState> {
    let b = *X_STRINGS
        .get(i)
        .ok_or_else(|| out_of_range(format!("X index {i} not in 0..=3")))?;
    Ok(two_term(4, b, re(FRAC_1_SQRT_2), 0b1111 ^ b, re(FRAC_1_SQRT_2)))
}

/// `|X̄_i⟩`: `|X_i⟩` with parties B, C, D fused into one 8-level party.
pub fn xbar_view(i: usize) -> Result<BipartiteState> {
    BipartiteState::group_first_vs_rest(&x_state(i)?)
}

/// Construction of the Smolin state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmolinForm {
    /// `¼ Σ_i (|Ψ_i⟩⟨Ψ_i|)_AB ⊗ (|Ψ_i⟩⟨Ψ_i|)_CD` over the Bell states.
    BellPairs,
    /// `¼ Σ_i |X_i⟩⟨X_i|`.
    GhzLike,
}

/// Smolin's four-qubit unlockable bound entangled state.
pub fn smolin(form: SmolinForm) -> DensityMatrix {
    let members: Vec<PureState> = match form {
        SmolinForm::BellPairs => (0..4)
            .map(|i| {
                let b = bell(i).expect("valid index");
                crate::state::tensor_product(&[b.clone(), b]).expect("two qubits")
            })
            .collect(),
        SmolinForm::GhzLike => (0..4).map(|i| x_state(i).expect("valid index")).collect(),
    };
    let terms: Vec<(f64, &PureState)> = members.iter().map(|m| (0.25, m)).collect();
    DensityMatrix::mixture(&terms).expect("weights sum to one")
}

fn check_flip_args(n: usize, k: usize) -> Result<()> {
    if !(2..=crate::state::MAX_PARTIES).contains(&n) {
        return Err(out_of_range(format!("party count {n} out of range")));
    }
    if k == 0 || k > n {
        return Err(out_of_range(format!("k = {k} must be in 1..={n}")));
    }
    Ok(())
}

/// Basis index of `|u_k⟩` (1-based `k`; party `k-1` carries the 1).
pub fn u_index(n: usize, k: usize) -> usize {
    1 << (n - k)
}

/// `|u_k⟩ = |0⟩_1 … |1⟩_k … |0⟩_N`, with `k` 1-based.
pub fn u_state(n: usize, k: usize) -> Result<PureState> {
    check_flip_args(n, k)?;
    PureState::basis(n, u_index(n, k))
}

/// `|v_k⟩ = |1⟩_1 … |0⟩_k … |1⟩_N`, with `k` 1-based.
pub fn v_state(n: usize, k: usize) -> Result<PureState> {
    check_flip_args(n, k)?;
    PureState::basis(n, ((1 << n) - 1) ^ u_index(n, k))
}

fn check_dur(n: usize, x: f64) -> Result<()> {
    if n < 4 {
        return Err(out_of_range(format!(
            "Dür states need N >= 4 for the bound entangled structure, got N = {n}"
        )));
    }
    if n > crate::state::MAX_PARTIES {
        return Err(out_of_range(format!("N = {n} exceeds the dense limit")));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(out_of_range(format!("x = {x} not in [0, 1]")));
    }
    Ok(())
}

/// `ρ_N(x) = x|Ψ_G⟩⟨Ψ_G| + (1-x)/(2N) Σ_k (P_k + P̄_k)` with `α = 0`.
pub fn dur(n: usize, x: f64) -> Result<DensityMatrix> {
    check_dur(n, x)?;
    let g = ghz(n, 0.0)?;
    let flips = flip_states(n)?;
    let w = (1.0 - x) / (2.0 * n as f64);
    let mut terms: Vec<(f64, &PureState)> = vec![(x, &g)];
    terms.extend(flips.iter().map(|s| (w, s)));
    DensityMatrix::mixture(&terms)
}

/// Dür's original bound entangled state, written as
/// `(|Ψ_G⟩⟨Ψ_G| + ½ Σ_k (P_k + P̄_k)) / (N + 1)`.
pub fn dur_original(n: usize) -> Result<DensityMatrix> {
    check_dur(n, 0.0)?;
    let g = ghz(n, 0.0)?.projector();
    let d = g.dim();
    let mut m = g.into_matrix();
    for k in 1..=n {
        let ui = u_index(n, k);
        let vi = (d - 1) ^ ui;
        m[(ui, ui)] += re(0.5);
        m[(vi, vi)] += re(0.5);
    }
    m.scale_mut(1.0 / (n as f64 + 1.0));
    DensityMatrix::new(n, m)
}

fn flip_states(n: usize) -> Result<Vec<PureState>> {
    let mut out = Vec::with_capacity(2 * n);
    for k in 1..=n {
        out.push(u_state(n, k)?);
        out.push(v_state(n, k)?);
    }
    Ok(out)
}

/// `|ψ_{±,u/v,k}(y)⟩ = √y |Ψ_G⟩ ± √(1-y) |u_k⟩ (or |v_k⟩)`.
pub fn psi_y(n: usize, y: f64, sign: Sign, kind: FlipKind, k: usize) -> Result<PureState> {
    check_dur(n, 0.0)?;
    if !(0.0..=1.0).contains(&y) {
        return Err(out_of_range(format!("y = {y} not in [0, 1]")));
    }
    check_flip_args(n, k)?;
    let flip = match kind {
        FlipKind::U => u_index(n, k),
        FlipKind::V => ((1 << n) - 1) ^ u_index(n, k),
    };
    let g = y.sqrt() * FRAC_1_SQRT_2;
    let mut amps = vec![re(0.0); 1 << n];
    amps[0] = re(g);
    amps[(1 << n) - 1] = re(g);
    amps[flip] = re(sign.value() * (1.0 - y).sqrt());
    PureState::normalized(n, amps)
}

/// `|Ψ^±_k⟩ = (|0, k⟩ ± |1, 2m-k-1⟩)/√2` on a qubit times a `2m`-level party.
pub fn bell_like(m: usize, k: usize, sign: Sign) -> Result<BipartiteState> {
    if m == 0 {
        return Err(out_of_range("m must be at least 1"));
    }
    if k >= m {
        return Err(out_of_range(format!("k = {k} must be in 0..{m}")));
    }
    let dim_b = 2 * m;
    let mut amps = vec![re(0.0); 2 * dim_b];
    amps[k] = re(FRAC_1_SQRT_2);
    amps[dim_b + (dim_b - k - 1)] = re(sign.value() * FRAC_1_SQRT_2);
    BipartiteState::new(2, dim_b, amps)
}

/// Target of the conjectured closest separable state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SigmaTarget {
    Smolin,
    Dur { n: usize, x: f64 },
}

/// Conjectured closest separable (diagonal, mixture of product states)
/// state for the Smolin state or `ρ_N(x)`.
pub fn sigma_conjectured(which: SigmaTarget) -> Result<DensityMatrix> {
    match which {
        SigmaTarget::Smolin => {
            let mut probs = vec![0.0; 16];
            for b in X_STRINGS {
                probs[b] = 0.125;
                probs[0b1111 ^ b] = 0.125;
            }
            DensityMatrix::diagonal(4, &probs)
        }
        SigmaTarget::Dur { n, x } => {
            check_dur(n, x)?;
            let d = 1usize << n;
            let mut probs = vec![0.0; d];
            probs[0] = x / 2.0;
            probs[d - 1] = x / 2.0;
            let w = (1.0 - x) / (2.0 * n as f64);
            for k in 1..=n {
                let ui = u_index(n, k);
                probs[ui] += w;
                probs[(d - 1) ^ ui] += w;
            }
            DensityMatrix::diagonal(n, &probs)
        }
    }
}

/// A constructed state: either pure or mixed.
#[derive(Clone, Debug, PartialEq)]
pub enum ZooState {
    Pure(PureState),
    Density(DensityMatrix),
}

impl ZooState {
    pub fn n_parties(&self) -> usize {
        match self {
            ZooState::Pure(p) => p.n_parties(),
            ZooState::Density(d) => d.n_parties(),
        }
    }

    /// Density matrix view (projector for pure states).
    pub fn to_density(&self) -> DensityMatrix {
        match self {
            ZooState::Pure(p) => p.projector(),
            ZooState::Density(d) => d.clone(),
        }
    }
}

/// Parsed state name, e.g. `ghz:4`, `dur:5:0.2`, `psiy:5:0.4:+:u:2`.
#[derive(Clone, Debug, PartialEq)]
pub enum StateName {
    Bell(usize),
    Ghz { n: usize, alpha: f64 },
    X(usize),
    Smolin,
    SmolinPairs,
    U { n: usize, k: usize },
    V { n: usize, k: usize },
    Dur { n: usize, x: f64 },
    PsiY { n: usize, y: f64, sign: Sign, kind: FlipKind, k: usize },
    SigmaSmolin,
    SigmaDur { n: usize, x: f64 },
}

impl StateName {
    pub fn build(&self) -> Result<ZooState> {
        Ok(match *self {
            StateName::Bell(i) => ZooState::Pure(bell(i)?),
            StateName::Ghz { n, alpha } => ZooState::Pure(ghz(n, alpha)?),
            StateName::X(i) => ZooState::Pure(x_state(i)?),
            StateName::Smolin => ZooState::Density(smolin(SmolinForm::GhzLike)),
            StateName::SmolinPairs => ZooState::Density(smolin(SmolinForm::BellPairs)),
            StateName::U { n, k } => ZooState::Pure(u_state(n, k)?),
            StateName::V { n, k } => ZooState::Pure(v_state(n, k)?),
            StateName::Dur { n, x } => ZooState::Density(dur(n, x)?),
            StateName::PsiY { n, y, sign, kind, k } => ZooState::Pure(psi_y(n, y, sign, kind, k)?),
            StateName::SigmaSmolin => ZooState::Density(sigma_conjectured(SigmaTarget::Smolin)?),
            StateName::SigmaDur { n, x } => {
                ZooState::Density(sigma_conjectured(SigmaTarget::Dur { n, x })?)
            }
        })
    }

    /// Closest-separable candidate paired with this state, if one is known.
    pub fn conjectured_sigma(&self) -> Option<SigmaTarget> {
        match *self {
            StateName::Smolin | StateName::SmolinPairs => Some(SigmaTarget::Smolin),
            StateName::Dur { n, x } => Some(SigmaTarget::Dur { n, x }),
            _ => None,
        }
    }
}

fn bad(token: &str, reason: &str) -> Error {
    Error::Parse { token: token.to_string(), reason: reason.to_string() }
}

fn parse_num<T: FromStr>(token: &str, what: &str) -> Result<T> {
    token.parse().map_err(|_| bad(token, &format!("expected {what}")))
}

impl FromStr for StateName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let arity = |want: &[usize]| -> Result<()> {
            if want.contains(&(parts.len() - 1)) {
                Ok(())
            } else {
                Err(bad(s, &format!("`{}` takes {:?} arguments", parts[0], want)))
            }
        };
        let name = match parts[0] {
            "smolin" => {
                arity(&[0])?;
                StateName::Smolin
            }
            "smolin-pairs" => {
                arity(&[0])?;
                StateName::SmolinPairs
            }
            "sigma-smolin" => {
                arity(&[0])?;
                StateName::SigmaSmolin
            }
            "bell" => {
                arity(&[1])?;
                StateName::Bell(parse_num(parts[1], "a Bell index")?)
            }
            "x" => {
                arity(&[1])?;
                StateName::X(parse_num(parts[1], "an X index")?)
            }
            "ghz" => {
                arity(&[1, 2])?;
                let n = parse_num(parts[1], "a party count")?;
                let alpha = match parts.get(2) {
                    Some(t) => parse_num(t, "a phase")?,
                    None => 0.0,
                };
                StateName::Ghz { n, alpha }
            }
            "dur" | "sigma-dur" => {
                arity(&[2])?;
                let n = parse_num(parts[1], "a party count")?;
                let x = parse_num(parts[2], "a mixing weight")?;
                if parts[0] == "dur" {
                    StateName::Dur { n, x }
                } else {
                    StateName::SigmaDur { n, x }
                }
            }
            "u" | "v" => {
                arity(&[2])?;
                let n = parse_num(parts[1], "a party count")?;
                let k = parse_num(parts[2], "a 1-based party index")?;
                if parts[0] == "u" {
                    StateName::U { n, k }
                } else {
                    StateName::V { n, k }
                }
            }
            "psiy" => {
                arity(&[5])?;
                let n = parse_num(parts[1], "a party count")?;
                let y = parse_num(parts[2], "a GHZ weight")?;
                let sign = match parts[3] {
                    "+" | "plus" => Sign::Plus,
                    "-" | "minus" => Sign::Minus,
                    t => return Err(bad(t, "expected `+` or `-`")),
                };
                let kind = match parts[4] {
                    "u" => FlipKind::U,
                    "v" => FlipKind::V,
                    t => return Err(bad(t, "expected `u` or `v`")),
                };
                let k = parse_num(parts[5], "a 1-based party index")?;
                StateName::PsiY { n, y, sign, kind, k }
            }
            other => return Err(bad(other, "unknown state name")),
        };
        Ok(name)
    }
}

impl fmt::Display for StateName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateName::Bell(i) => write!(f, "bell:{i}"),
            StateName::Ghz { n, alpha } => write!(f, "ghz:{n}:{alpha}"),
            StateName::X(i) => write!(f, "x:{i}"),
            StateName::Smolin => write!(f, "smolin"),
            StateName::SmolinPairs => write!(f, "smolin-pairs"),
            StateName::U { n, k } => write!(f, "u:{n}:{k}"),
            StateName::V { n, k } => write!(f, "v:{n}:{k}"),
            StateName::Dur { n, x } => write!(f, "dur:{n}:{x}"),
            StateName::PsiY { n, y, sign, kind, k } => {
                let s = if *sign == Sign::Plus { "+" } else { "-" };
                let t = if *kind == FlipKind::U { "u" } else { "v" };
                write!(f, "psiy:{n}:{y}:{s}:{t}:{k}")
            }
            StateName::SigmaSmolin => write!(f, "sigma-smolin"),
            StateName::SigmaDur { n, x } => write!(f, "sigma-dur:{n}:{x}"),
        }
    }
}

/// Elementwise tolerance used by [`recognize`].
pub const RECOGNIZE_TOL: f64 = 1e-10;

/// Identify a density matrix as the Smolin state or some `ρ_N(x)`, so that
/// a state read from a file can be paired with its conjectured closest
/// separable state. `x` is read off `2⟨0…0|ρ|0…0⟩` and then confirmed
/// elementwise.
pub fn recognize(rho: &DensityMatrix) -> Option<StateName> {
    let n = rho.n_parties();
    let close = |other: &DensityMatrix| crate::linalg::max_abs_diff(rho.matrix(), other.matrix()) <= RECOGNIZE_TOL;
    if n == 4 && close(&smolin(SmolinForm::GhzLike)) {
        return Some(StateName::Smolin);
    }
    if n >= 4 {
        let x = (2.0 * rho.matrix()[(0, 0)].re).clamp(0.0, 1.0);
        if dur(n, x).is_ok_and(|d| close(&d)) {
            return Some(StateName::Dur { n, x });
        }
    }
    None
}
