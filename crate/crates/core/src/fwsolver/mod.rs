//! Separation from the symmetrised local polytope by conditional gradients.
//!
//! [`fw_minimize`] projects a target onto the polytope with a lazified
//! blended pairwise Frank-Wolfe method; [`visibility_search`] lowers the
//! target's visibility round by round until the active set spans a facet,
//! which is then certified in exact arithmetic.

mod certify;
mod fw;
mod lmo;
mod visibility;

pub use certify::{certify, extract_facet, quantum_value, FacetCertificate};
pub use fw::{fw_minimize, FwResult};
pub use lmo::{lmo, uses_exact_lmo};
pub use visibility::{visibility_search, LocalModel, VisibilityResult};

use crate::error::{Error, Result};
use crate::necklaces::MULTISET_BUDGET;
use crate::symcorr::{ExactVector, ScenarioParams, Strategy};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LmoMode {
    Exact,
    Heuristic,
    Auto,
}

impl std::str::FromStr for LmoMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "exact" => Ok(Self::Exact),
            "heuristic" => Ok(Self::Heuristic),
            "auto" => Ok(Self::Auto),
            other => Err(Error::InvalidInput(format!("unknown LMO mode {other:?}"))),
        }
    }
}

impl std::fmt::Display for LmoMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Exact => "exact",
            Self::Heuristic => "heuristic",
            Self::Auto => "auto",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FWConfig {
    /// Stopping gap for [`fw_minimize`].
    pub gap_tolerance: f64,
    pub max_iterations: usize,
    pub lmo_mode: LmoMode,
    pub heuristic_restarts: usize,
    pub seed: u64,
    /// `Auto` uses the exact oracle from this many parties on.
    pub exact_lmo_party_threshold: usize,
    /// `Auto` also uses the exact oracle when it enumerates at most this many multisets.
    pub auto_exact_budget: u128,
    /// Hard cap on multisets for any exact enumeration.
    pub exact_budget: u128,
    pub max_rounds: usize,
    /// Factor by which each new visibility overshoots the separating hyperplane.
    pub overshoot: f64,
    /// Per-round stopping gap of the visibility search, relative to twice the objective.
    pub round_relative_gap: f64,
}

impl Default for FWConfig {
    fn default() -> Self {
        Self {
            gap_tolerance: 1e-10,
            max_iterations: 1_000_000,
            lmo_mode: LmoMode::Auto,
            heuristic_restarts: 10,
            seed: 0,
            exact_lmo_party_threshold: 8,
            auto_exact_budget: 2_000_000,
            exact_budget: MULTISET_BUDGET,
            max_rounds: 200,
            overshoot: 1e-6,
            round_relative_gap: 1e-6,
        }
    }
}

impl FWConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("gap_tolerance", self.gap_tolerance),
            ("overshoot", self.overshoot),
            ("round_relative_gap", self.round_relative_gap),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParams(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        if self.max_iterations == 0 || self.max_rounds == 0 {
            return Err(Error::InvalidParams(
                "iteration limits must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// A vertex of the symmetrised polytope in the active set.
#[derive(Clone, Debug, PartialEq)]
pub struct ActiveAtom {
    pub vertex: ExactVector,
    /// A strategy tuple projecting onto `vertex`.
    pub witness: Vec<Strategy>,
    pub weight: f64,
    point: Vec<f64>,
}

impl ActiveAtom {
    pub fn new(vertex: ExactVector, witness: Vec<Strategy>, weight: f64) -> Self {
        let point = vertex.to_f64().into_entries();
        Self {
            vertex,
            witness,
            weight,
            point,
        }
    }

    /// `vertex` as doubles.
    pub fn point(&self) -> &[f64] {
        &self.point
    }

    pub fn params(&self) -> &ScenarioParams {
        self.vertex.params()
    }
}
