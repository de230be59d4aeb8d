//! The symmetrised local polytope in low dimension: all vertices, extreme
//! points and facets, in exact arithmetic.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{in_convex_hull, solve};
use crate::localbound::ConvolutionState;
use crate::necklaces::{multichoose, split_range, OrbitTuples};
use crate::symcorr::{
    class_weights, project_counts, weighted_dot, ExactVector, ReducedVector, ScenarioParams,
    Strategy,
};

/// Default cap on projected strategy tuples.
pub const VERTEX_BUDGET: u128 = 100_000_000;
pub const EXTREME_CAP: usize = 5000;
pub const EXTREME_DIM_CAP: usize = 5;
pub const FACET_DIM_CAP: usize = 4;
pub const FACET_POINT_CAP: usize = 500;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymVertexSet {
    params: ScenarioParams,
    vertices: Vec<ExactVector>,
    witnesses: Vec<Vec<Strategy>>,
}

impl SymVertexSet {
    /// Build from explicit points; duplicates are merged, order is lexicographic.
    pub fn from_points(
        params: ScenarioParams,
        points: impl IntoIterator<Item = (ExactVector, Vec<Strategy>)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (v, w) in points {
            if *v.params() != params {
                return Err(Error::ParamsMismatch(format!("{} vs {params}", v.params())));
            }
            insert_min(&mut map, v.into_entries(), w);
        }
        Ok(Self::from_map(params, map))
    }

    fn from_map(params: ScenarioParams, map: BTreeMap<Vec<BigRational>, Vec<Strategy>>) -> Self {
        let (vertices, witnesses) = map
            .into_iter()
            .map(|(k, w)| (ReducedVector::new(params, k).expect("dimension"), w))
            .unzip();
        Self {
            params,
            vertices,
            witnesses,
        }
    }

    pub fn params(&self) -> &ScenarioParams {
        &self.params
    }

    pub fn vertices(&self) -> &[ExactVector] {
        &self.vertices
    }

    /// One strategy tuple per vertex projecting onto it.
    pub fn witnesses(&self) -> &[Vec<Strategy>] {
        &self.witnesses
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

type VertexMap = BTreeMap<Vec<BigRational>, Vec<Strategy>>;

fn insert_min(map: &mut VertexMap, key: Vec<BigRational>, witness: Vec<Strategy>) {
    match map.get_mut(&key) {
        Some(w) if witness < *w => *w = witness,
        Some(_) => {}
        None => {
            map.insert(key, witness);
        }
    }
}

/// Distinct projections of all deterministic strategies.
///
/// Shifting one party and counter-shifting another leaves the projection
/// unchanged, so the first `N - 1` parties range over multisets of necklace
/// representatives and the last one over all `2^m` strategies.
pub fn enumerate_sym_vertices(params: &ScenarioParams, budget: u128) -> Result<SymVertexSet> {
    let (n, m) = (params.parties(), params.inputs());
    if m > 63 {
        return Err(Error::CapExceeded {
            what: "vertex enumeration inputs",
            requested: m.to_string(),
            cap: "63".into(),
        });
    }
    let tuples = OrbitTuples::new(m, n, budget)?;
    let cost = multichoose(tuples.necklaces().len(), n - 1).saturating_mul(1u128 << m);
    if cost > budget {
        return Err(Error::BudgetExceeded {
            requested: cost,
            budget,
        });
    }
    let total = tuples.space().count();
    let parts = (rayon::current_num_threads() * 4).max(1);
    let maps: Vec<VertexMap> = split_range(total, parts)
        .into_par_iter()
        .map(|range| {
            let mut map = VertexMap::new();
            for tuple in tuples.space().cursor(range) {
                let prefix = tuples.strategies(&tuple);
                let mut state = ConvolutionState::neutral(m);
                for s in &prefix {
                    state = state.convolve_party(s).expect("length m");
                }
                for word in 0..(1u64 << m) {
                    let last = Strategy::from_word(word, m);
                    let full = state.convolve_party(&last).expect("length m");
                    let v = project_counts(full.counts(), params);
                    let mut witness = prefix.clone();
                    witness.push(last);
                    insert_min(&mut map, v.into_entries(), witness);
                }
            }
            map
        })
        .collect();
    let mut merged = VertexMap::new();
    for map in maps {
        for (k, w) in map {
            insert_min(&mut merged, k, w);
        }
    }
    Ok(SymVertexSet::from_map(*params, merged))
}

/// Points of `set` that are not convex combinations of the others.
pub fn extreme_points(set: &SymVertexSet) -> Result<SymVertexSet> {
    if set.len() > EXTREME_CAP {
        return Err(Error::CapExceeded {
            what: "points for extreme-point filtering",
            requested: set.len().to_string(),
            cap: EXTREME_CAP.to_string(),
        });
    }
    if set.params.dim() > EXTREME_DIM_CAP {
        return Err(Error::CapExceeded {
            what: "dimension for extreme-point filtering",
            requested: set.params.dim().to_string(),
            cap: EXTREME_DIM_CAP.to_string(),
        });
    }
    let keep: Vec<bool> = (0..set.len())
        .into_par_iter()
        .map(|i| {
            let others: Vec<&[BigRational]> = set
                .vertices
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, v)| v.entries())
                .collect();
            !in_convex_hull(set.vertices[i].entries(), &others)
        })
        .collect();
    let points = set
        .vertices
        .iter()
        .zip(&set.witnesses)
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|((v, w), _)| (v.clone(), w.clone()));
    SymVertexSet::from_points(set.params, points)
}

/// Primitive integer normal `f̂` of the hyperplane through `vertices` (which
/// must not contain the origin), oriented so that `weighted_dot(f̂, v) > 0`
/// on them. Returns `f̂` and its common value on the vertices.
pub fn hyperplane_through(vertices: &[ExactVector]) -> Result<(ReducedVector<BigInt>, BigInt)> {
    let Some(first) = vertices.first() else {
        return Err(Error::InvalidInput("no vertices".into()));
    };
    let params = *first.params();
    let d = params.dim();
    if vertices.len() != d {
        return Err(Error::InvalidInput(format!(
            "{} vertices for dimension {d}",
            vertices.len()
        )));
    }
    let weights = class_weights(&params);
    let mut a = Vec::with_capacity(d);
    for v in vertices {
        if *v.params() != params {
            return Err(Error::ParamsMismatch(format!("{} vs {params}", v.params())));
        }
        a.push(
            v.entries()
                .iter()
                .zip(&weights)
                .map(|(x, w)| x * BigRational::from_integer(w.clone()))
                .collect::<Vec<_>>(),
        );
    }
    let f = solve(&a, &vec![BigRational::one(); d])?;
    let lcm = f.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = f
        .iter()
        .map(|q| (q * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let ints: Vec<BigInt> = ints.into_iter().map(|x| x / &gcd).collect();
    let normal = ReducedVector::new(params, ints)?;
    let exact = normal.map(|x| BigRational::from_integer(x.clone()));
    let value = weighted_dot(&exact, first)?;
    debug_assert!(value.is_integer() && value.is_positive());
    Ok((normal, value.to_integer()))
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Facet {
    /// Primitive integer coefficients; valid inequality is `⟨normal, x⟩ ≤ bound`.
    pub normal: ReducedVector<BigInt>,
    pub bound: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetList {
    pub facets: Vec<Facet>,
    /// Whether the facet count is `2^D`, as for a cross-polytope.
    pub cross_polytope_count: bool,
}

/// All facets, by testing every `D`-subset of extreme points.
pub fn enumerate_facets(set: &SymVertexSet) -> Result<FacetList> {
    let d = set.params.dim();
    if d > FACET_DIM_CAP {
        return Err(Error::CapExceeded {
            what: "dimension for facet enumeration",
            requested: d.to_string(),
            cap: FACET_DIM_CAP.to_string(),
        });
    }
    let ext = extreme_points(set)?;
    if ext.len() > FACET_POINT_CAP {
        return Err(Error::CapExceeded {
            what: "extreme points for facet enumeration",
            requested: ext.len().to_string(),
            cap: FACET_POINT_CAP.to_string(),
        });
    }
    let pts = ext.vertices();
    let exact_of = |f: &ReducedVector<BigInt>| f.map(|x| BigRational::from_integer(x.clone()));
    let mut found = BTreeSet::new();
    for subset in combinations(pts.len(), d) {
        let chosen: Vec<ExactVector> = subset.iter().map(|&i| pts[i].clone()).collect();
        let Ok((normal, bound)) = hyperplane_through(&chosen) else {
            continue;
        };
        let fq = exact_of(&normal);
        let bq = BigRational::from_integer(bound.clone());
        let valid = pts
            .iter()
            .all(|p| weighted_dot(&fq, p).expect("same params") <= bq);
        if valid {
            found.insert(Facet { normal, bound });
        }
    }
    let facets: Vec<Facet> = found.into_iter().collect();
    let cross_polytope_count = facets.len() == 1usize << d;
    Ok(FacetList {
        facets,
        cross_polytope_count,
    })
}

/// `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = if k <= n { Some((0..k).collect()) } else { None };
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let c = cur.as_mut().expect("present");
        let mut i = k;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if c[i] < n - k + i {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}
