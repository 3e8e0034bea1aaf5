//! Geometric measure of entanglement for multiqubit states, with the
//! supporting machinery for bound entangled examples.
//!
//! The crate covers
//!
//! - dense pure and mixed qubit states with partial trace and partial
//!   transpose ([`state`]), and a catalogue of named states ([`zoo`]);
//! - the entanglement eigenvalue `Λ_max` and the pure-state measures
//!   `E_{sin²} = 1 − Λ²` and `ℰ_log₂ = −2 log₂ Λ` ([`geometric`]);
//! - their convex roofs over pure-state decompositions ([`roof`]);
//! - negativity and relative entropy ([`spectral`]);
//! - the GHZ-diagonal normal form and bipartite nondistillability
//!   ([`distill`]);
//! - trigonometric overlap bounds that certify closest product states
//!   ([`bounds`]).
//!
//! Basis index convention: party 0 is the most significant bit.
//!
//! ```
//! use geoment::geometric::{lambda_max, GmeOptions};
//! use geoment::zoo::ghz;
//!
//! let r = lambda_max(&ghz(4, 0.0)?, &GmeOptions::default())?;
//! assert!((r.lambda_max - 0.5f64.sqrt()).abs() < 1e-12);
//! # Ok::<(), geoment::Error>(())
//! ```

pub mod bounds;
pub mod distill;
pub mod error;
pub mod geometric;
pub mod io;
pub mod linalg;
pub mod rng;
pub mod roof;
pub mod spectral;
pub mod state;
pub mod zoo;

pub use error::{Error, Result};
pub use geometric::{lambda_max, GmeOptions, LambdaResult, ProductState, PureMeasure};
pub use roof::{optimize_roof, Decomposition, RoofOptions, RoofResult};
pub use state::{DensityMatrix, PartySplit, PureState};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/states.md")]
    mod states {}
    #[doc = include_str!("../../../book/src/geometric.md")]
    mod geometric {}
    #[doc = include_str!("../../../book/src/roof.md")]
    mod roof {}
    #[doc = include_str!("../../../book/src/spectral.md")]
    mod spectral {}
    #[doc = include_str!("../../../book/src/distill.md")]
    mod distill {}
    #[doc = include_str!("../../../book/src/inequalities.md")]
    mod inequalities {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
