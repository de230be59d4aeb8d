use std::collections::{BTreeMap, BTreeSet};

use minilp::{ComparisonOp, OptimizationDirection, Problem, Variable};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use super::certify::{finish, quantum_value, FacetCertificate};
use super::fw::Solver;
use super::{lmo, ActiveAtom, FWConfig};
use crate::error::{Error, Result};
use crate::linalg::{nnls, null_vector, solve_f64, RowBasis};
use crate::localbound::{
    exact_local_bound, heuristic_local_bound, saturating_witnesses, BoundMode, BoundOptions,
};
use crate::symcorr::{
    class_weights, ghz_reduced, normalized_dot, normalized_weight, project_strategy, ReducedVector,
    ScenarioParams, Strategy,
};
use crate::sympoly::hyperplane_through;

/// Convex decomposition of `visibility · r` into symmetrised vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalModel {
    pub visibility: f64,
    /// Vertices with their convex weights.
    pub atoms: Vec<ActiveAtom>,
    /// Norm of `Σ λ_i v_i − visibility · r`.
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VisibilityResult {
    pub certificate: FacetCertificate,
    /// Present when the facet was confirmed optimal along the GHZ direction.
    pub local_model: Option<LocalModel>,
    pub converged: bool,
    pub rounds: usize,
    pub lmo_calls: u64,
    /// Target visibility of every round.
    pub visibility_trace: Vec<f64>,
}

/// Tolerance on convex weights when accepting a local model.
const WEIGHT_TOLERANCE: f64 = 1e-9;
/// Saturating tuples collected when the ray meets a lower-dimensional face.
const FACE_VERTEX_CAP: usize = 4096;
/// Residual, relative to `‖v r‖`, below which a face combination counts as a
/// local model. The bound itself is exact; this only limits how far the
/// crossing point may sit outside the facet's vertex hull in floating point.
const FACE_RESIDUAL: f64 = 1e-6;
/// Column-generation steps per round.
const CANDIDATE_REFINEMENTS: usize = 64;

#[allow(clippy::large_enum_variant)]
enum Confirm {
    Accepted(FacetCertificate, Box<LocalModel>),
    /// A violating vertex was added to the seen set.
    Extended,
    Rejected,
}

struct Search<'a> {
    params: ScenarioParams,
    config: &'a FWConfig,
    r: Vec<f64>,
    tested: BTreeSet<Vec<BigInt>>,
    /// Valid inequality with the smallest visibility so far.
    best: Option<FacetCertificate>,
}

impl Search<'_> {
    fn bound(&self, f: &ReducedVector<BigInt>) -> Result<(BigInt, BoundMode, Vec<Strategy>)> {
        let res = match exact_local_bound(f, &self.bound_options()) {
            Ok(r) => r,
            Err(Error::BudgetExceeded { .. }) | Err(Error::CapExceeded { .. }) => {
                heuristic_local_bound(f, self.config.seed, self.config.heuristic_restarts)?
            }
            Err(e) => return Err(e),
        };
        let w = res.witnesses.into_iter().next().expect("one witness");
        Ok((res.bound, res.mode, w))
    }

    fn offer(&mut self, cert: FacetCertificate) {
        let better = self
            .best
            .as_ref()
            .is_none_or(|b| cert.visibility < b.visibility);
        if better {
            self.best = Some(cert);
        }
    }

    fn face_model(
        &self,
        f: &ReducedVector<BigInt>,
        bound: &BigInt,
        chosen: Vec<ActiveAtom>,
        target: &[f64],
    ) -> Result<Option<Vec<ActiveAtom>>> {
        let witnesses = match saturating_witnesses(f, bound, &self.bound_options(), FACE_VERTEX_CAP)
        {
            Ok(w) => w,
            Err(Error::BudgetExceeded { .. }) | Err(Error::CapExceeded { .. }) => return Ok(None),
            Err(e) => return Err(e),
        };
        let mut face: BTreeMap<Vec<BigRational>, ActiveAtom> = chosen
            .into_iter()
            .map(|a| (a.vertex.entries().to_vec(), a))
            .collect();
        for w in witnesses {
            let v = project_strategy(&w, &self.params)?;
            face.entry(v.entries().to_vec())
                .or_insert_with(|| ActiveAtom::new(v, w, 0.0));
        }
        let scale: Vec<f64> = (0..self.params.dim())
            .map(|j| normalized_weight(j).sqrt())
            .collect();
        let atoms: Vec<ActiveAtom> = face.into_values().collect();
        let columns: Vec<Vec<f64>> = atoms
            .iter()
            .map(|a| a.point().iter().zip(&scale).map(|(p, s)| p * s).collect())
            .collect();
        let b: Vec<f64> = target.iter().zip(&scale).map(|(t, s)| t * s).collect();
        let (weights, residual) = nnls(&columns, &b);
        let norm = b.iter().map(|x| x * x).sum::<f64>().sqrt();
        if residual > FACE_RESIDUAL * norm {
            return Ok(None);
        }
        Ok(Some(
            atoms
                .into_iter()
                .zip(weights)
                .filter(|(_, w)| *w > 0.0)
                .map(|(a, w)| ActiveAtom { weight: w, ..a })
                .collect(),
        ))
    }

    fn bound_options(&self) -> BoundOptions {
        BoundOptions {
            budget: self.config.exact_budget,
            refine_reflection: false,
        }
    }

    /// Adds oracle vertices along directions orthogonal to the seen set
    /// until it spans the reduced space.
    fn complete_span(&self, solver: &mut Solver) -> Result<()> {
        let d = self.params.dim();
        let weights: Vec<BigRational> = class_weights(&self.params)
            .into_iter()
            .map(BigRational::from_integer)
            .collect();
        let mut basis = RowBasis::new();
        let mut rows: Vec<Vec<BigRational>> = Vec::new();
        for a in solver.seen.values() {
            if basis.insert(a.vertex.entries()) {
                rows.push(
                    a.vertex
                        .entries()
                        .iter()
                        .zip(&weights)
                        .map(|(y, w)| y * w)
                        .collect(),
                );
            }
        }
        while rows.len() < d {
            let Some(c) = null_vector(&rows, d) else {
                break;
            };
            let max = c.iter().map(|x| x.abs()).max().expect("nonempty");
            let g: Vec<f64> = c
                .iter()
                .map(|x| -(x / &max).to_f64().unwrap_or(0.0))
                .collect();
            let atom = lmo(&ReducedVector::new(self.params, g)?, self.config)?;
            solver.lmo_calls += 1;
            if !basis.insert(atom.vertex.entries()) {
                break;
            }
            rows.push(
                atom.vertex
                    .entries()
                    .iter()
                    .zip(&weights)
                    .map(|(y, w)| y * w)
                    .collect(),
            );
            solver
                .seen
                .entry(atom.vertex.entries().to_vec())
                .or_insert(atom);
        }
        Ok(())
    }

    /// `D` independent seen vertices tight for the best inequality over
    /// the seen set: `min z` subject to `⟨y, a⟩ ≤ z` on every seen `a` and
    /// `⟨y, r⟩ = 1`. The optimum `z` is the visibility `conv(seen)` allows.
    fn lp_face(&self, seen: &[&ActiveAtom]) -> Option<Vec<ActiveAtom>> {
        let d = self.params.dim();
        let w: Vec<f64> = (0..d).map(normalized_weight).collect();
        let mut lp = Problem::new(OptimizationDirection::Minimize);
        let y: Vec<Variable> = (0..d)
            .map(|_| lp.add_var(0.0, (f64::NEG_INFINITY, f64::INFINITY)))
            .collect();
        let z = lp.add_var(1.0, (f64::NEG_INFINITY, f64::INFINITY));
        for a in seen {
            let mut row: Vec<(Variable, f64)> =
                (0..d).map(|j| (y[j], w[j] * a.point()[j])).collect();
            row.push((z, -1.0));
            lp.add_constraint(row.as_slice(), ComparisonOp::Le, 0.0);
        }
        let ray: Vec<(Variable, f64)> = (0..d).map(|j| (y[j], w[j] * self.r[j])).collect();
        lp.add_constraint(ray.as_slice(), ComparisonOp::Eq, 1.0);
        let sol = lp.solve().ok()?;
        let yv: Vec<f64> = y.iter().map(|&v| sol[v]).collect();
        let slack = |a: &ActiveAtom| sol[z] - normalized_dot(&yv, a.point());
        let mut order: Vec<&ActiveAtom> = seen.to_vec();
        order.sort_by(|a, b| slack(a).total_cmp(&slack(b)));
        let mut basis = RowBasis::new();
        let mut chosen = Vec::with_capacity(d);
        for a in order {
            if basis.insert(a.vertex.entries()) {
                chosen.push((*a).clone());
                if chosen.len() == d {
                    return Some(chosen);
                }
            }
        }
        None
    }

    /// Facet through the vertices that limit the visibility of the seen
    /// set, refined by adding violating vertices until its bound is
    /// confirmed; returns it with a local model.
    fn candidate(&mut self, solver: &mut Solver) -> Result<Option<(FacetCertificate, LocalModel)>> {
        self.complete_span(solver)?;
        for _ in 0..CANDIDATE_REFINEMENTS {
            let seen: Vec<&ActiveAtom> = solver.seen.values().collect();
            let Some(chosen) = self.lp_face(&seen) else {
                return Ok(None);
            };
            match self.confirm(solver, chosen)? {
                Confirm::Accepted(c, m) => return Ok(Some((c, *m))),
                Confirm::Extended => continue,
                Confirm::Rejected => return Ok(None),
            }
        }
        Ok(None)
    }

    fn confirm(&mut self, solver: &mut Solver, chosen: Vec<ActiveAtom>) -> Result<Confirm> {
        let d = self.params.dim();
        let verts: Vec<_> = chosen.iter().map(|a| a.vertex.clone()).collect();
        let (f, value) = match hyperplane_through(&verts) {
            Ok(x) => x,
            Err(Error::Singular(_)) => return Ok(Confirm::Rejected),
            Err(e) => return Err(e),
        };
        let q = quantum_value(&f);
        if q <= 0.0 || !self.tested.insert(f.entries().to_vec()) {
            return Ok(Confirm::Rejected);
        }
        let (l, mode, witness) = self.bound(&f)?;
        if l != value {
            // The maximizer lies beyond the hyperplane; remember it.
            let v = project_strategy(&witness, &self.params)?;
            solver
                .seen
                .entry(v.entries().to_vec())
                .or_insert_with(|| ActiveAtom::new(v, witness, 0.0));
            self.offer(finish(f, l, mode, Vec::new(), false));
            return Ok(Confirm::Extended);
        }
        let cert = finish(f.clone(), l.clone(), mode, verts, true);
        let vis = cert.visibility;
        let a: Vec<Vec<f64>> = (0..d)
            .map(|i| chosen.iter().map(|c| c.point()[i]).collect())
            .collect();
        let rhs: Vec<f64> = self.r.iter().map(|x| vis * x).collect();
        self.offer(cert.clone());
        let simplex =
            solve_f64(a, rhs.clone()).filter(|l| l.iter().all(|&w| w >= -WEIGHT_TOLERANCE));
        let atoms: Vec<ActiveAtom> = match simplex {
            Some(lambda) => chosen
                .into_iter()
                .zip(&lambda)
                .map(|(a, &w)| ActiveAtom { weight: w, ..a })
                .collect(),
            // The ray may cross a lower-dimensional face shared by several
            // facets; then look for weights on every saturating vertex.
            None => match self.face_model(&f, &l, chosen, &rhs)? {
                Some(atoms) => atoms,
                None => return Ok(Confirm::Rejected),
            },
        };
        let mut diff: Vec<f64> = self.r.iter().map(|x| -vis * x).collect();
        for a in &atoms {
            for (di, pi) in diff.iter_mut().zip(a.point()) {
                *di += a.weight * pi;
            }
        }
        let residual = normalized_dot(&diff, &diff).sqrt();
        Ok(Confirm::Accepted(
            cert,
            Box::new(LocalModel {
                visibility: vis,
                atoms,
                residual,
            }),
        ))
    }
}

/// Critical visibility of the GHZ correlations for `params`, with the facet
/// that attains it.
///
/// Starts from visibility 1 and, after each projection, moves to where the
/// separating hyperplane meets the GHZ ray (slightly beyond it). The active
/// set is kept between rounds. A facet through `D` independent vertices is
/// accepted once its local bound is confirmed and the ray's crossing point
/// is a convex combination of those vertices.
pub fn visibility_search(params: &ScenarioParams, config: &FWConfig) -> Result<VisibilityResult> {
    config.validate()?;
    let r = ghz_reduced(params).into_entries();
    let rr = normalized_dot(&r, &r);
    let mut solver = Solver::new(*params, config.clone());
    let mut search = Search {
        params: *params,
        config,
        r: r.clone(),
        tested: BTreeSet::new(),
        best: None,
    };
    let mut v = 1.0f64;
    let mut v_outside: Option<f64> = None;
    let mut rel = config.round_relative_gap;
    let mut trace = Vec::new();
    let floor = 1e-20 * rr;
    for round in 0..config.max_rounds {
        trace.push(v);
        solver.set_target(r.iter().map(|x| v * x).collect());
        let stats = solver.run(|obj| (rel * 2.0 * obj).max(floor), config.max_iterations)?;
        if let Some((certificate, model)) = search.candidate(&mut solver)? {
            return Ok(VisibilityResult {
                certificate,
                local_model: Some(model),
                converged: true,
                rounds: round + 1,
                lmo_calls: solver.lmo_calls,
                visibility_trace: trace,
            });
        }
        let g = solver.gradient();
        let gg = normalized_dot(&g, &g);
        let gr = normalized_dot(&g, &r);
        let previous = v;
        if gg > stats.gap && gr < 0.0 {
            // Every vertex y has ⟨g, y⟩ ≥ ⟨g, x⟩ − gap.
            let separated = (normalized_dot(&g, &solver.x) - stats.gap) / gr;
            v_outside = Some(v_outside.map_or(v, |o| o.min(v)));
            v = v.min(separated * (1.0 + config.overshoot));
        } else if let Some(hi) = v_outside {
            v = 0.5 * (v + hi);
        } else {
            break;
        }
        if let Some(b) = &search.best {
            v = v.min(b.visibility * (1.0 + config.overshoot));
        }
        if v >= previous {
            rel /= 100.0;
        }
    }
    // Out of rounds: report the best inequality found, uncertified.
    let mut certificate = match search.best.clone() {
        Some(c) => c,
        None => {
            let g = solver.gradient();
            let max = g
                .iter()
                .fold(0.0f64, |a, x| a.max(x.abs()))
                .max(f64::MIN_POSITIVE);
            let coeffs: Vec<BigInt> = g
                .iter()
                .map(|x| BigInt::from((-x / max * 1e6).round().to_i64().unwrap_or(0)))
                .collect();
            let f = ReducedVector::new(*params, coeffs)?;
            let (l, mode, _) = search.bound(&f)?;
            finish(f, l, mode, Vec::new(), false)
        }
    };
    certificate.certified = false;
    Ok(VisibilityResult {
        certificate,
        local_model: None,
        converged: false,
        rounds: config.max_rounds,
        lmo_calls: solver.lmo_calls,
        visibility_trace: trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn run(n: usize, m: usize) -> VisibilityResult {
        visibility_search(&ScenarioParams::new(n, m).unwrap(), &FWConfig::default()).unwrap()
    }

    #[test]
    fn worked_example() {
        let res = run(2, 3);
        assert!(res.converged);
        let c = &res.certificate;
        assert_eq!(c.coeffs.entries(), &[BigInt::from(2), BigInt::from(3)]);
        assert_eq!(c.local_bound, BigInt::from(12));
        assert_eq!(
            c.visibility_fraction,
            Some(BigRational::new(4.into(), 5.into()))
        );
        let model = res.local_model.unwrap();
        let mut w: Vec<f64> = model.atoms.iter().map(|a| a.weight).collect();
        w.sort_by(|a, b| b.total_cmp(a));
        assert!((w[0] - 0.9).abs() < 1e-9 && (w[1] - 0.1).abs() < 1e-9);
        assert!(model.residual < 1e-12);
    }

    #[test]
    fn three_parties() {
        let res = run(3, 3);
        assert!(res.converged);
        assert!((res.certificate.visibility - 0.57143).abs() < 5e-6);
        let res = run(3, 4);
        assert!((res.certificate.visibility - 0.5).abs() < 5e-6);
    }
}
