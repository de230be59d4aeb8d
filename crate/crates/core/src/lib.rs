//! Symmetric multipartite Bell inequalities for the GHZ state measured with
//! regular polygons in the XY plane.
//!
//! Correlation tensors invariant under the symmetry group live in a space
//! of dimension `⌈m/2⌉` ([`symcorr`]). Local bounds are computed by
//! enumerating multisets of strategy orbits ([`necklaces`], [`localbound`]),
//! and critical visibilities by conditional-gradient separation with exact
//! certification ([`fwsolver`]).

pub mod derived;
pub mod error;
pub mod fwsolver;
pub mod linalg;
pub mod localbound;
pub mod lucas4;
pub mod necklaces;
pub mod reference;
pub mod symcorr;
pub mod sympoly;

pub use error::{Error, Result};
pub use fwsolver::{FWConfig, FacetCertificate, LmoMode, LocalModel};
pub use localbound::{BoundMode, BoundOptions, BoundResult, ConvolutionState};
pub use necklaces::Necklace;
pub use symcorr::{
    AntiperiodicProfile, ExactVector, FloatVector, IndexClass, ReducedVector, ScenarioParams,
    Strategy,
};
