use num_bigint::BigInt;

use super::{ActiveAtom, FWConfig, LmoMode};
use crate::error::Result;
use crate::localbound::{exact_local_bound, heuristic_local_bound, BoundOptions};
use crate::necklaces::{multichoose, necklace_count};
use crate::symcorr::{project_strategy, FloatVector, ReducedVector, ScenarioParams};

/// Largest integer coefficient after scaling a gradient.
const GRADIENT_SCALE: f64 = 1e12;

pub fn uses_exact_lmo(params: &ScenarioParams, config: &FWConfig) -> bool {
    match config.lmo_mode {
        LmoMode::Exact => true,
        LmoMode::Heuristic => false,
        LmoMode::Auto => {
            if params.parties() >= config.exact_lmo_party_threshold {
                return true;
            }
            let u = necklace_count(params.inputs());
            match u64::try_from(u) {
                Ok(u) => multichoose(u as usize, params.parties() - 1) <= config.auto_exact_budget,
                Err(_) => false,
            }
        }
    }
}

/// `-g` rescaled so its largest entry is about `GRADIENT_SCALE`, rounded.
fn integer_direction(gradient: &[f64]) -> Vec<BigInt> {
    let max = gradient.iter().fold(0.0f64, |acc, g| acc.max(g.abs()));
    if max == 0.0 || !max.is_finite() {
        return vec![BigInt::from(0); gradient.len()];
    }
    let scale = GRADIENT_SCALE / max;
    gradient
        .iter()
        .map(|g| BigInt::from((-g * scale).round() as i64))
        .collect()
}

pub(crate) fn lmo_indexed(
    gradient: &FloatVector,
    config: &FWConfig,
    call: u64,
) -> Result<ActiveAtom> {
    let params = *gradient.params();
    let f = ReducedVector::new(params, integer_direction(gradient.entries()))?;
    let res = if uses_exact_lmo(&params, config) {
        exact_local_bound(
            &f,
            &BoundOptions {
                budget: config.exact_budget,
                refine_reflection: false,
            },
        )?
    } else {
        let seed = config
            .seed
            .wrapping_add(call.wrapping_mul(0x2545_F491_4F6C_DD1D));
        heuristic_local_bound(&f, seed, config.heuristic_restarts)?
    };
    let witness = res.witnesses.into_iter().next().expect("one witness");
    let vertex = project_strategy(&witness, &params)?;
    Ok(ActiveAtom::new(vertex, witness, 1.0))
}

/// Vertex minimizing `⟨gradient, ·⟩` over the symmetrised polytope.
pub fn lmo(gradient: &FloatVector, config: &FWConfig) -> Result<ActiveAtom> {
    lmo_indexed(gradient, config, 0)
}
