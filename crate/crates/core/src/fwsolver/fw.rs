use std::collections::BTreeMap;

use num_rational::BigRational;

use super::lmo::lmo_indexed;
use super::{ActiveAtom, FWConfig};
use crate::error::{Error, Result};
use crate::symcorr::{normalized_dot, FloatVector, ReducedVector, ScenarioParams};

#[derive(Clone, Debug, PartialEq)]
pub struct FwResult {
    pub iterate: FloatVector,
    pub atoms: Vec<ActiveAtom>,
    /// Frank-Wolfe gap at `iterate`; bounds the distance to the optimal objective.
    pub gap: f64,
    pub objective: f64,
    pub iterations: usize,
    pub lmo_calls: usize,
    /// Objective before every step.
    pub objective_trace: Vec<f64>,
}

/// Minimize `½‖x − target‖²` over the symmetrised polytope.
///
/// The norm is the one induced by the full tensors (class weights `1, 2, 2, …`).
pub fn fw_minimize(target: &FloatVector, config: &FWConfig) -> Result<FwResult> {
    config.validate()?;
    let mut solver = Solver::new(*target.params(), config.clone());
    solver.set_target(target.entries().to_vec());
    let tol = config.gap_tolerance;
    let stats = solver.run(|_| tol, config.max_iterations)?;
    Ok(FwResult {
        iterate: ReducedVector::new(*target.params(), solver.x.clone())?,
        atoms: solver.atoms.clone(),
        gap: stats.gap,
        objective: solver.objective(),
        iterations: stats.iterations,
        lmo_calls: stats.lmo_calls,
        objective_trace: stats.trace,
    })
}

pub(crate) struct RoundStats {
    pub gap: f64,
    pub iterations: usize,
    pub lmo_calls: usize,
    pub trace: Vec<f64>,
}

/// Active-set state that survives target changes.
pub(crate) struct Solver {
    pub params: ScenarioParams,
    pub config: FWConfig,
    pub target: Vec<f64>,
    pub atoms: Vec<ActiveAtom>,
    pub x: Vec<f64>,
    /// Every vertex returned by the oracle so far.
    pub seen: BTreeMap<Vec<BigRational>, ActiveAtom>,
    pub lmo_calls: u64,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    normalized_dot(a, b)
}

fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl Solver {
    pub fn new(params: ScenarioParams, config: FWConfig) -> Self {
        let d = params.dim();
        Self {
            params,
            config,
            target: vec![0.0; d],
            atoms: Vec::new(),
            x: vec![0.0; d],
            seen: BTreeMap::new(),
            lmo_calls: 0,
        }
    }

    pub fn set_target(&mut self, target: Vec<f64>) {
        self.target = target;
    }

    pub fn gradient(&self) -> Vec<f64> {
        sub(&self.x, &self.target)
    }

    pub fn objective(&self) -> f64 {
        let r = self.gradient();
        0.5 * dot(&r, &r)
    }

    fn call_lmo(&mut self, g: &[f64]) -> Result<ActiveAtom> {
        let grad = ReducedVector::new(self.params, g.to_vec())?;
        let atom = lmo_indexed(&grad, &self.config, self.lmo_calls)?;
        self.lmo_calls += 1;
        self.seen
            .entry(atom.vertex.entries().to_vec())
            .or_insert_with(|| atom.clone());
        Ok(atom)
    }

    fn recompute_x(&mut self) {
        let total: f64 = self.atoms.iter().map(|a| a.weight).sum();
        for a in self.atoms.iter_mut() {
            a.weight /= total;
        }
        let mut x = vec![0.0; self.params.dim()];
        for a in &self.atoms {
            for (xi, pi) in x.iter_mut().zip(a.point()) {
                *xi += a.weight * pi;
            }
        }
        self.x = x;
    }

    /// Step from `x` along `d`, with the exact line search clipped to `[0, max]`.
    fn step_size(&self, g: &[f64], d: &[f64], max: f64) -> f64 {
        let dd = dot(d, d);
        if dd <= 0.0 {
            return 0.0;
        }
        (-dot(g, d) / dd).clamp(0.0, max)
    }

    fn frank_wolfe_step(&mut self, g: &[f64], v: ActiveAtom) {
        let d = sub(v.point(), &self.x);
        let gamma = self.step_size(g, &d, 1.0);
        if gamma == 0.0 {
            return;
        }
        if gamma >= 1.0 {
            self.atoms = vec![ActiveAtom { weight: 1.0, ..v }];
        } else {
            for a in self.atoms.iter_mut() {
                a.weight *= 1.0 - gamma;
            }
            match self.atoms.iter_mut().find(|a| a.vertex == v.vertex) {
                Some(a) => a.weight += gamma,
                None => self.atoms.push(ActiveAtom { weight: gamma, ..v }),
            }
        }
        self.recompute_x();
    }

    fn pairwise_step(&mut self, g: &[f64], toward: usize, away: usize) {
        let d = sub(self.atoms[toward].point(), self.atoms[away].point());
        let max = self.atoms[away].weight;
        let gamma = self.step_size(g, &d, max);
        if gamma == 0.0 {
            return;
        }
        self.atoms[toward].weight += gamma;
        if gamma >= max {
            self.atoms.remove(away);
        } else {
            self.atoms[away].weight -= gamma;
        }
        self.recompute_x();
    }

    /// Active atoms with the smallest and largest `⟨g, a⟩`.
    fn local_pair(&self, g: &[f64]) -> (usize, usize, f64) {
        let scores: Vec<f64> = self.atoms.iter().map(|a| dot(g, a.point())).collect();
        let mut best = 0;
        let mut worst = 0;
        for (i, &s) in scores.iter().enumerate() {
            if s < scores[best] {
                best = i;
            }
            if s > scores[worst] {
                worst = i;
            }
        }
        (best, worst, scores[worst] - scores[best])
    }

    /// Iterate until the Frank-Wolfe gap drops to `stop_gap(objective)`.
    pub fn run(
        &mut self,
        stop_gap: impl Fn(f64) -> f64,
        max_iterations: usize,
    ) -> Result<RoundStats> {
        if self.target.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidInput("non-finite target".into()));
        }
        let calls_before = self.lmo_calls;
        if self.atoms.is_empty() {
            let g: Vec<f64> = self.target.iter().map(|t| -t).collect();
            let v = self.call_lmo(&g)?;
            self.atoms.push(ActiveAtom { weight: 1.0, ..v });
            self.recompute_x();
        }
        let mut trace = Vec::new();
        let mut phi = f64::INFINITY;
        let mut iterations = 0;
        let mut gap;
        loop {
            let g = self.gradient();
            trace.push(0.5 * dot(&g, &g));
            let (best, worst, local) = self.local_pair(&g);
            if iterations >= max_iterations {
                let v = self.call_lmo(&g)?;
                gap = dot(&g, &self.x) - dot(&g, v.point());
                break;
            }
            if self.atoms.len() > 1 && local >= phi {
                self.pairwise_step(&g, best, worst);
                iterations += 1;
                continue;
            }
            let v = self.call_lmo(&g)?;
            gap = dot(&g, &self.x) - dot(&g, v.point());
            if gap <= stop_gap(trace[trace.len() - 1]) {
                break;
            }
            if gap < phi {
                phi = gap / 2.0;
            }
            if self.atoms.len() > 1 && local >= gap {
                self.pairwise_step(&g, best, worst);
            } else {
                self.frank_wolfe_step(&g, v);
            }
            iterations += 1;
        }
        Ok(RoundStats {
            gap: gap.max(0.0),
            iterations,
            lmo_calls: (self.lmo_calls - calls_before) as usize,
            trace,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcorr::ghz_reduced;

    fn target(n: usize, m: usize, v: f64) -> FloatVector {
        ghz_reduced(&ScenarioParams::new(n, m).unwrap()).map(|x| v * x)
    }

    #[test]
    fn interior_point() {
        let res = fw_minimize(&target(2, 3, 0.5), &FWConfig::default()).unwrap();
        assert!(res.objective < 1e-10);
        assert!(res.gap <= 1e-10);
        let total: f64 = res.atoms.iter().map(|a| a.weight).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn exterior_point() {
        let res = fw_minimize(&target(2, 3, 1.0), &FWConfig::default()).unwrap();
        assert!(res.objective > 1e-3);
        assert!(res.gap <= 1e-10);
    }

    #[test]
    fn point_on_facet() {
        let res = fw_minimize(&target(2, 3, 0.8), &FWConfig::default()).unwrap();
        assert!(res.objective < 1e-10);
        let mut w: Vec<(String, f64)> = res
            .atoms
            .iter()
            .filter(|a| a.weight > 1e-6)
            .map(|a| (format!("{:?}", a.point()), a.weight))
            .collect();
        w.sort_by(|a, b| b.1.total_cmp(&a.1));
        assert_eq!(w.len(), 2);
        assert!((w[0].1 - 0.9).abs() < 1e-4, "{w:?}");
        assert!((w[1].1 - 0.1).abs() < 1e-4);
    }

    #[test]
    fn objective_never_increases() {
        for (n, m, v) in [(3, 5, 1.0), (4, 6, 0.7), (3, 7, 0.45)] {
            let res = fw_minimize(&target(n, m, v), &FWConfig::default()).unwrap();
            for w in res.objective_trace.windows(2) {
                assert!(w[1] <= w[0] * (1.0 + 1e-12) + 1e-18, "{w:?}");
            }
        }
    }
}
