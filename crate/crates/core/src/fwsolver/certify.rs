use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::FWConfig;
use crate::error::{Error, Result};
use crate::linalg::RowBasis;
use crate::localbound::{
    exact_local_bound, heuristic_local_bound, saturating_witnesses, BoundMode, BoundOptions,
};
use crate::symcorr::{
    class_weights, project_strategy, quantum_value_rational, quantum_value_symbolic, ExactVector,
    ReducedVector,
};
use crate::sympoly::hyperplane_through;

/// Cap on saturating tuples collected for the facet check.
const SATURATING_CAP: usize = 4096;

#[derive(Clone, Debug, PartialEq)]
pub struct FacetCertificate {
    pub coeffs: ReducedVector<BigInt>,
    pub local_bound: BigInt,
    pub bound_mode: BoundMode,
    pub quantum_value: f64,
    /// `Σ_j w_j f_j cos(π j / m)`.
    pub quantum_symbolic: String,
    pub visibility: f64,
    pub visibility_exact: String,
    /// `L / Q` when `Q` is rational.
    pub visibility_fraction: Option<BigRational>,
    /// Saturating vertices spanning the facet (at most `D`).
    pub active_vertices: Vec<ExactVector>,
    /// Whether the saturating vertices span the dimension.
    pub is_facet: bool,
    /// Set only when `local_bound` comes from exact enumeration.
    pub certified: bool,
}

/// Quantum value `⟨f, r⟩` with the GHZ correlations.
pub fn quantum_value(f: &ReducedVector<BigInt>) -> f64 {
    let m = f.params().inputs() as f64;
    class_weights(f.params())
        .iter()
        .zip(f.entries())
        .enumerate()
        .map(|(j, (w, c))| {
            let wc = (w * c).to_f64().unwrap_or(f64::NAN);
            wc * (std::f64::consts::PI * j as f64 / m).cos()
        })
        .sum()
}

/// Primitive integer inequality through `D` vertices, oriented so that the
/// GHZ correlations score positive.
pub fn extract_facet(vertices: &[ExactVector]) -> Result<ReducedVector<BigInt>> {
    let (f, _) = hyperplane_through(vertices)?;
    if quantum_value(&f) < 0.0 {
        Ok(f.map(|x| -x))
    } else {
        Ok(f)
    }
}

fn visibility_strings(l: &BigInt, f: &ReducedVector<BigInt>) -> (String, Option<BigRational>) {
    match quantum_value_rational(f) {
        Some(q) if !q.is_zero() => {
            let v = BigRational::from_integer(l.clone()) / q;
            (v.to_string(), Some(v))
        }
        _ => (format!("{l} / ({})", quantum_value_symbolic(f)), None),
    }
}

/// Local bound, quantum value and facet check of `f`.
///
/// Falls back to the heuristic bound (uncertified) when exact enumeration
/// exceeds the configured budget.
pub fn certify(f: &ReducedVector<BigInt>, config: &FWConfig) -> Result<FacetCertificate> {
    let opts = BoundOptions {
        budget: config.exact_budget,
        refine_reflection: false,
    };
    let exact = match exact_local_bound(f, &opts) {
        Ok(r) => Some(r),
        Err(Error::BudgetExceeded { .. }) | Err(Error::CapExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    let (bound, mode) = match exact {
        Some(r) => (r.bound, BoundMode::Exact),
        None => (
            heuristic_local_bound(f, config.seed, config.heuristic_restarts)?.bound,
            BoundMode::HeuristicLower,
        ),
    };
    let mut active = Vec::new();
    let mut is_facet = false;
    if mode == BoundMode::Exact && !bound.is_zero() {
        let mut basis = RowBasis::new();
        for w in saturating_witnesses(f, &bound, &opts, SATURATING_CAP)? {
            let v = project_strategy(&w, f.params())?;
            if basis.insert(v.entries()) {
                active.push(v);
            }
        }
        is_facet = basis.rank() == f.params().dim();
    }
    Ok(finish(f.clone(), bound, mode, active, is_facet))
}

pub(crate) fn finish(
    coeffs: ReducedVector<BigInt>,
    bound: BigInt,
    mode: BoundMode,
    active_vertices: Vec<ExactVector>,
    is_facet: bool,
) -> FacetCertificate {
    let q = quantum_value(&coeffs);
    let (visibility_exact, visibility_fraction) = visibility_strings(&bound, &coeffs);
    let visibility = match &visibility_fraction {
        Some(v) => crate::symcorr::rational_to_f64(v),
        None => bound.to_f64().unwrap_or(f64::NAN) / q,
    };
    FacetCertificate {
        quantum_symbolic: quantum_value_symbolic(&coeffs),
        coeffs,
        local_bound: bound,
        bound_mode: mode,
        quantum_value: q,
        visibility,
        visibility_exact,
        visibility_fraction,
        active_vertices,
        is_facet,
        certified: mode == BoundMode::Exact,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localbound::int_functional;
    use crate::symcorr::ScenarioParams;

    fn p(n: usize, m: usize) -> ScenarioParams {
        ScenarioParams::new(n, m).unwrap()
    }

    fn q(params: ScenarioParams, v: &[(i64, i64)]) -> ExactVector {
        ReducedVector::new(
            params,
            v.iter()
                .map(|&(a, b)| BigRational::new(a.into(), b.into()))
                .collect(),
        )
        .unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn extraction_examples() {
        let params = p(2, 3);
        let a = q(params, &[(1, 1), (1, 3)]);
        let b = q(params, &[(-1, 1), (1, 1)]);
        let c = q(params, &[(1, 1), (-1, 1)]);
        assert_eq!(
            extract_facet(&[a.clone(), b]).unwrap().entries(),
            ints(&[2, 3]).as_slice()
        );
        // The other facet through `a` is the `[1, 0]` bound of 3.
        assert_eq!(
            extract_facet(&[a.clone(), c.clone()]).unwrap().entries(),
            ints(&[1, 0]).as_slice()
        );
        let na = q(params, &[(-1, 1), (-1, 3)]);
        assert_eq!(
            extract_facet(&[na, c]).unwrap().entries(),
            ints(&[2, 3]).as_slice()
        );
        assert!(matches!(
            extract_facet(&[a.clone(), a]),
            Err(Error::Singular(_))
        ));
    }

    #[test]
    fn certificates() {
        let cfg = FWConfig::default();
        let c = certify(&int_functional(p(2, 3), &[2, 3]).unwrap(), &cfg).unwrap();
        assert_eq!(c.local_bound, BigInt::from(12));
        assert!((c.quantum_value - 15.0).abs() < 1e-12);
        assert_eq!(c.visibility_exact, "4/5");
        assert!(c.is_facet && c.certified);

        let c = certify(&int_functional(p(3, 4), &[1, 0]).unwrap(), &cfg).unwrap();
        assert_eq!(c.local_bound, BigInt::from(8));
        assert!((c.quantum_value - 16.0).abs() < 1e-12);
        assert!((c.visibility - 0.5).abs() < 1e-15);

        let c = certify(&int_functional(p(4, 4), &[0, 1]).unwrap(), &cfg).unwrap();
        assert_eq!(c.local_bound, BigInt::from(32));
        assert!((c.quantum_value - 64.0 * 2f64.sqrt()).abs() < 1e-9);
        assert!((c.visibility - 0.35355).abs() < 5e-6);
        assert!(c.visibility_fraction.is_none());
    }

    #[test]
    fn non_facet_is_flagged() {
        // [1, 1] at m = 3 is a valid inequality touching a single vertex pair.
        let c = certify(
            &int_functional(p(2, 3), &[1, 1]).unwrap(),
            &FWConfig::default(),
        )
        .unwrap();
        assert!(c.certified);
        assert!(!c.is_facet);
    }
}
