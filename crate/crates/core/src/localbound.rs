//! Local bounds of symmetric Bell functionals.
//!
//! The value of a deterministic strategy tuple depends only on how many
//! index tuples land on each residue of `Σ x_n` modulo `2m`, weighted by the
//! sign products. Those residue counts are a convolution of the parties'
//! sign vectors, so a functional is contracted party by party in `O(m²)`
//! per step. Since the profile is antiperiodic, the hot path folds the
//! counts onto `Z_m` with a negacyclic wrap.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::necklaces::{split_range, OrbitTuples, MULTISET_BUDGET};
use crate::symcorr::{
    antiperiodic_profile, AntiperiodicProfile, ExactVector, ReducedVector, ScenarioParams, Strategy,
};

/// Signed counts over `Z_{2m}` after convolving some parties' sign vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvolutionState {
    counts: Vec<BigInt>,
}

impl ConvolutionState {
    /// Delta at residue 0.
    pub fn neutral(m: usize) -> Self {
        let mut counts = vec![BigInt::zero(); 2 * m];
        counts[0] = BigInt::one();
        Self { counts }
    }

    pub fn counts(&self) -> &[BigInt] {
        &self.counts
    }

    pub fn m(&self) -> usize {
        self.counts.len() / 2
    }

    pub fn convolve_party(&self, s: &Strategy) -> Result<Self> {
        let two_m = self.counts.len();
        let m = two_m / 2;
        if s.len() != m {
            return Err(Error::ParamsMismatch(format!(
                "strategy of length {} for m = {m}",
                s.len()
            )));
        }
        let mut counts = vec![BigInt::zero(); two_m];
        for (t, c) in self.counts.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (x, &sign) in s.signs().iter().enumerate() {
                let idx = (t + x) % two_m;
                if sign > 0 {
                    counts[idx] += c;
                } else {
                    counts[idx] -= c;
                }
            }
        }
        Ok(Self { counts })
    }
}

/// Best response of the last party against `state`, scored against `profile`.
///
/// `value(y) = Σ_t counts[t] F[(t + y) mod 2m]`; the last party answers
/// `sign(value(y))` with `sign(0) = +1`, and the score is `Σ_y |value(y)|`.
pub fn score_with_last_party(
    profile: &AntiperiodicProfile<BigInt>,
    state: &ConvolutionState,
) -> Result<(BigInt, Strategy)> {
    let two_m = profile.values().len();
    if state.counts.len() != two_m {
        return Err(Error::ParamsMismatch(format!(
            "profile over Z_{two_m} with state over Z_{}",
            state.counts.len()
        )));
    }
    let m = two_m / 2;
    let f = profile.values();
    let mut score = BigInt::zero();
    let mut signs = Vec::with_capacity(m);
    for y in 0..m {
        let mut value = BigInt::zero();
        for (t, c) in state.counts.iter().enumerate() {
            value += c * &f[(t + y) % two_m];
        }
        signs.push(if value.is_negative() { -1 } else { 1 });
        score += value.abs();
    }
    Ok((score, Strategy::new(signs)?))
}

/// Value `⟨f, d⟩` of a full strategy tuple, through residue counts.
pub fn evaluate_strategies(f: &ReducedVector<BigInt>, strategies: &[Strategy]) -> Result<BigInt> {
    let params = f.params();
    if strategies.len() != params.parties() {
        return Err(Error::ParamsMismatch(format!(
            "expected {} strategies, got {}",
            params.parties(),
            strategies.len()
        )));
    }
    let profile = antiperiodic_profile(f);
    let mut state = ConvolutionState::neutral(params.inputs());
    for s in strategies {
        state = state.convolve_party(s)?;
    }
    Ok(state
        .counts
        .iter()
        .zip(profile.values())
        .fold(BigInt::zero(), |acc, (c, v)| acc + c * v))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundMode {
    Exact,
    HeuristicLower,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundResult {
    pub bound: BigInt,
    /// Full `N`-party tuples attaining `bound`.
    pub witnesses: Vec<Vec<Strategy>>,
    pub mode: BoundMode,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundOptions {
    pub budget: u128,
    pub refine_reflection: bool,
}

impl Default for BoundOptions {
    fn default() -> Self {
        Self {
            budget: MULTISET_BUDGET,
            refine_reflection: false,
        }
    }
}

/// Integer types the contraction kernel runs on. Chosen per instance from a
/// magnitude bound so the common case stays in machine words.
trait Acc: Clone + Ord + Signed + From<i64> + Send + Sync {}
impl<T: Clone + Ord + Signed + From<i64> + Send + Sync> Acc for T {}

struct Kernel<T> {
    m: usize,
    /// Antiperiodic profile over `[0, 2m)`.
    profile: Vec<T>,
}

impl<T: Acc> Kernel<T> {
    fn new(profile: &AntiperiodicProfile<BigInt>) -> Self {
        Self {
            m: profile.m(),
            profile: profile.values().iter().map(to_acc::<T>).collect(),
        }
    }

    fn neutral(&self) -> Vec<T> {
        let mut c = vec![T::zero(); self.m];
        c[0] = T::one();
        c
    }

    /// Negacyclic convolution of folded counts with a sign vector.
    fn convolve(&self, c: &[T], signs: &[i8], out: &mut [T]) {
        let m = self.m;
        for o in out.iter_mut() {
            *o = T::zero();
        }
        for (t, ct) in c.iter().enumerate() {
            if ct.is_zero() {
                continue;
            }
            for (x, &s) in signs.iter().enumerate() {
                let idx = t + x;
                let add = (s > 0) == (idx < m);
                let slot = if idx < m { idx } else { idx - m };
                out[slot] = if add {
                    out[slot].clone() + ct.clone()
                } else {
                    out[slot].clone() - ct.clone()
                };
            }
        }
    }

    fn value(&self, c: &[T], y: usize) -> T {
        c.iter()
            .zip(&self.profile[y..y + self.m])
            .fold(T::zero(), |acc, (a, b)| {
                if a.is_zero() {
                    acc
                } else {
                    acc + a.clone() * b.clone()
                }
            })
    }

    fn score(&self, c: &[T]) -> T {
        (0..self.m).fold(T::zero(), |acc, y| acc + self.value(c, y).abs())
    }

    fn last_party(&self, c: &[T]) -> Vec<i8> {
        (0..self.m)
            .map(|y| {
                if self.value(c, y).is_negative() {
                    -1
                } else {
                    1
                }
            })
            .collect()
    }

    /// Visit every tuple of `range`, with the folded counts of its `N-1`
    /// parties. Consecutive tuples share a prefix of partial convolutions.
    fn scan(
        &self,
        tuples: &OrbitTuples,
        signs: &[Vec<i8>],
        range: std::ops::Range<u128>,
        refine: bool,
        mut visit: impl FnMut(&[usize], &[T]),
    ) {
        let mut cursor = tuples.space().cursor(range);
        let k = tuples.space().size();
        let mut stack: Vec<Vec<T>> = vec![self.neutral(); k + 1];
        let mut from = 0;
        while let Some(tuple) = cursor.peek() {
            for i in from..k {
                let (lo, hi) = stack.split_at_mut(i + 1);
                self.convolve(&lo[i], &signs[tuple[i]], &mut hi[0]);
            }
            if !(refine && tuples.reflection_redundant(tuple)) {
                visit(tuple, &stack[k]);
            }
            cursor.advance();
            from = cursor.changed_from();
        }
    }
}

fn to_acc<T: From<i64> + Signed + Clone>(v: &BigInt) -> T {
    // Only called after the magnitude bound has selected a type wide enough.
    let neg = v.is_negative();
    let mut mag = v.abs();
    let chunk = BigInt::from(1i64 << 62);
    let mut out = T::zero();
    let mut scale = T::one();
    while !mag.is_zero() {
        let digit = (&mag % &chunk).to_i64().expect("digit fits");
        out = out + scale.clone() * T::from(digit);
        mag /= &chunk;
        if !mag.is_zero() {
            scale = scale * T::from(1i64 << 62);
        }
    }
    if neg {
        -out
    } else {
        out
    }
}

fn from_acc<T: Acc + ToString>(v: &T) -> BigInt {
    v.to_string()
        .parse()
        .expect("integer formatting round trips")
}

enum Width {
    I64,
    I128,
    Big,
}

/// Pick an accumulator wide enough for scores up to `m^N · max|F|`.
fn width_for(profile: &AntiperiodicProfile<BigInt>, parties: usize) -> Width {
    let max_f = profile
        .values()
        .iter()
        .map(|v| v.abs())
        .max()
        .unwrap_or_default();
    let m = BigInt::from(profile.m());
    let bound = num_traits::pow(m, parties) * max_f * 4;
    if bound < BigInt::from(i64::MAX) {
        Width::I64
    } else if bound < BigInt::from(i128::MAX) {
        Width::I128
    } else {
        Width::Big
    }
}

fn check_params(f: &ReducedVector<BigInt>) -> Result<()> {
    if f.params().inputs() > 63 {
        return Err(Error::CapExceeded {
            what: "exact enumeration inputs",
            requested: f.params().inputs().to_string(),
            cap: "63".into(),
        });
    }
    Ok(())
}

fn chunk_count(total: u128) -> usize {
    let threads = rayon::current_num_threads().max(1);
    ((total / 256).max(1) as usize).min(threads * 16)
}

/// Best `(score, tuple)` over all multisets; ties go to the smallest tuple.
fn best_tuple<T: Acc + ToString>(
    f: &ReducedVector<BigInt>,
    opts: &BoundOptions,
) -> Result<(BigInt, Vec<Strategy>)> {
    let params = f.params();
    let tuples = OrbitTuples::new(params.inputs(), params.parties(), opts.budget)?;
    let profile = antiperiodic_profile(f);
    let kernel = Kernel::<T>::new(&profile);
    let signs: Vec<Vec<i8>> = tuples
        .necklaces()
        .iter()
        .map(|n| n.rep().signs().to_vec())
        .collect();
    let ranges = split_range(tuples.space().count(), chunk_count(tuples.space().count()));
    let best = ranges
        .into_par_iter()
        .map(|range| {
            let mut best: Option<(T, Vec<usize>, Vec<i8>)> = None;
            kernel.scan(
                &tuples,
                &signs,
                range,
                opts.refine_reflection,
                |tuple, state| {
                    let score = kernel.score(state);
                    if best.as_ref().is_none_or(|(b, _, _)| score > *b) {
                        best = Some((score, tuple.to_vec(), kernel.last_party(state)));
                    }
                },
            );
            best
        })
        .reduce(
            || None,
            |a, b| match (a, b) {
                (None, x) | (x, None) => x,
                (Some(a), Some(b)) => {
                    if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                        Some(b)
                    } else {
                        Some(a)
                    }
                }
            },
        )
        .expect("at least one multiset");
    let (score, tuple, last) = best;
    let mut witness = tuples.strategies(&tuple);
    witness.push(Strategy::new(last)?);
    Ok((from_acc(&score), witness))
}

/// Exact maximum of `⟨f, d⟩` over deterministic strategies.
///
/// The first `N-1` parties run over multisets of necklace representatives;
/// the last party plays its best response. The result does not depend on
/// the number of worker threads.
pub fn exact_local_bound(f: &ReducedVector<BigInt>, opts: &BoundOptions) -> Result<BoundResult> {
    check_params(f)?;
    let profile = antiperiodic_profile(f);
    let (bound, witness) = match width_for(&profile, f.params().parties()) {
        Width::I64 => best_tuple::<i64>(f, opts)?,
        Width::I128 => best_tuple::<i128>(f, opts)?,
        Width::Big => best_tuple::<BigInt>(f, opts)?,
    };
    Ok(BoundResult {
        bound,
        witnesses: vec![witness],
        mode: BoundMode::Exact,
    })
}

/// Scale rational coefficients to coprime integers; returns the integer
/// functional and the common denominator.
pub fn integerize(f: &ExactVector) -> (ReducedVector<BigInt>, BigInt) {
    let lcm = f.entries().iter().fold(BigInt::one(), |acc, q| {
        num_integer::lcm(acc, q.denom().clone())
    });
    let ints = f.map(|q| (q * BigRational::from_integer(lcm.clone())).to_integer());
    (ints, lcm)
}

/// [`exact_local_bound`] for rational coefficients.
pub fn exact_local_bound_rational(
    f: &ExactVector,
    opts: &BoundOptions,
) -> Result<(BigRational, BoundResult)> {
    let (ints, denom) = integerize(f);
    let res = exact_local_bound(&ints, opts)?;
    Ok((BigRational::new(res.bound.clone(), denom), res))
}

fn collect_saturating<T: Acc + ToString>(
    f: &ReducedVector<BigInt>,
    target: &BigInt,
    opts: &BoundOptions,
    cap: usize,
) -> Result<Vec<Vec<Strategy>>> {
    let params = f.params();
    let tuples = OrbitTuples::new(params.inputs(), params.parties(), opts.budget)?;
    let profile = antiperiodic_profile(f);
    let kernel = Kernel::<T>::new(&profile);
    let target_t = to_acc::<T>(target);
    let signs: Vec<Vec<i8>> = tuples
        .necklaces()
        .iter()
        .map(|n| n.rep().signs().to_vec())
        .collect();
    let ranges = split_range(tuples.space().count(), chunk_count(tuples.space().count()));
    let found: Vec<Vec<(Vec<usize>, Vec<i8>)>> = ranges
        .into_par_iter()
        .map(|range| {
            let mut out = Vec::new();
            kernel.scan(&tuples, &signs, range, false, |tuple, state| {
                if out.len() >= cap || kernel.score(state) != target_t {
                    return;
                }
                // Inputs with zero value admit either answer.
                let values: Vec<T> = (0..kernel.m).map(|y| kernel.value(state, y)).collect();
                let free: Vec<usize> = (0..kernel.m).filter(|&y| values[y].is_zero()).collect();
                let variants = 1usize << free.len().min(6);
                for bits in 0..variants {
                    let mut last: Vec<i8> = values
                        .iter()
                        .map(|v| if v.is_negative() { -1 } else { 1 })
                        .collect();
                    for (i, &y) in free.iter().take(6).enumerate() {
                        if bits >> i & 1 == 1 {
                            last[y] = -1;
                        }
                    }
                    out.push((tuple.to_vec(), last));
                }
            });
            out
        })
        .collect();
    let mut res = Vec::new();
    for (tuple, last) in found.into_iter().flatten().take(cap) {
        let mut w = tuples.strategies(&tuple);
        w.push(Strategy::new(last)?);
        res.push(w);
    }
    Ok(res)
}

/// All enumerated tuples (up to `cap`) whose value equals `bound`, including
/// the alternative last-party answers on zero-valued inputs.
pub fn saturating_witnesses(
    f: &ReducedVector<BigInt>,
    bound: &BigInt,
    opts: &BoundOptions,
    cap: usize,
) -> Result<Vec<Vec<Strategy>>> {
    check_params(f)?;
    let profile = antiperiodic_profile(f);
    match width_for(&profile, f.params().parties()) {
        Width::I64 => collect_saturating::<i64>(f, bound, opts, cap),
        Width::I128 => collect_saturating::<i128>(f, bound, opts, cap),
        Width::Big => collect_saturating::<BigInt>(f, bound, opts, cap),
    }
}

fn restart_seed(seed: u64, restart: usize) -> u64 {
    // splitmix64 of the pair, so restarts draw independent streams.
    let mut z = seed ^ (restart as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn alternate<T: Acc>(
    kernel: &Kernel<T>,
    parties: usize,
    rng: &mut ChaCha8Rng,
) -> (T, Vec<Vec<i8>>) {
    let m = kernel.m;
    let mut strategies: Vec<Vec<i8>> = (0..parties)
        .map(|_| {
            (0..m)
                .map(|_| if rng.gen::<bool>() { 1 } else { -1 })
                .collect()
        })
        .collect();
    let mut others = kernel.neutral();
    let mut scratch = kernel.neutral();
    let max_passes = 100 + 10 * parties;
    for _ in 0..max_passes {
        let mut changed = false;
        for n in 0..parties {
            others.clone_from(&kernel.neutral());
            for (i, s) in strategies.iter().enumerate() {
                if i != n {
                    kernel.convolve(&others, s, &mut scratch);
                    std::mem::swap(&mut others, &mut scratch);
                }
            }
            let best = kernel.last_party(&others);
            if best != strategies[n] {
                strategies[n] = best;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    // Score the final tuple with the last party's best response.
    let mut state = kernel.neutral();
    for s in &strategies[..parties - 1] {
        kernel.convolve(&state, s, &mut scratch);
        std::mem::swap(&mut state, &mut scratch);
    }
    strategies[parties - 1] = kernel.last_party(&state);
    (kernel.score(&state), strategies)
}

fn heuristic_typed<T: Acc + ToString>(
    f: &ReducedVector<BigInt>,
    seed: u64,
    restarts: usize,
) -> Result<(BigInt, Vec<Strategy>)> {
    let profile = antiperiodic_profile(f);
    let kernel = Kernel::<T>::new(&profile);
    let parties = f.params().parties();
    let best = (0..restarts.max(1))
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(restart_seed(seed, r));
            let (score, strategies) = alternate(&kernel, parties, &mut rng);
            (score, r, strategies)
        })
        .reduce_with(|a, b| {
            if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                b
            } else {
                a
            }
        })
        .expect("at least one restart");
    let witness = best
        .2
        .into_iter()
        .map(Strategy::new)
        .collect::<Result<Vec<_>>>()?;
    Ok((from_acc(&best.0), witness))
}

/// Alternating best responses from random starts. Returns a value attained
/// by an explicit strategy tuple, hence a lower bound on the local bound.
/// Fully determined by `(seed, restarts)`.
pub fn heuristic_local_bound(
    f: &ReducedVector<BigInt>,
    seed: u64,
    restarts: usize,
) -> Result<BoundResult> {
    let profile = antiperiodic_profile(f);
    let (bound, witness) = match width_for(&profile, f.params().parties()) {
        Width::I64 => heuristic_typed::<i64>(f, seed, restarts)?,
        Width::I128 => heuristic_typed::<i128>(f, seed, restarts)?,
        Width::Big => heuristic_typed::<BigInt>(f, seed, restarts)?,
    };
    Ok(BoundResult {
        bound,
        witnesses: vec![witness],
        mode: BoundMode::HeuristicLower,
    })
}

/// Integer functional from small integers, for tests and examples.
pub fn int_functional(params: ScenarioParams, coeffs: &[i64]) -> Result<ReducedVector<BigInt>> {
    ReducedVector::new(params, coeffs.iter().map(|&c| BigInt::from(c)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcorr::expand_full;

    fn p(n: usize, m: usize) -> ScenarioParams {
        ScenarioParams::new(n, m).unwrap()
    }

    fn s(v: &[i8]) -> Strategy {
        Strategy::new(v.to_vec()).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn convolution_examples() {
        let minus = s(&[-1, -1, -1]);
        let one = ConvolutionState::neutral(3).convolve_party(&minus).unwrap();
        assert_eq!(one.counts(), ints(&[-1, -1, -1, 0, 0, 0]).as_slice());
        let two = one.convolve_party(&minus).unwrap();
        assert_eq!(two.counts(), ints(&[1, 2, 3, 2, 1, 0]).as_slice());

        let a = s(&[1, -1, -1, 1]);
        let b = s(&[-1, 1, 1, 1]);
        let ab = ConvolutionState::neutral(4)
            .convolve_party(&a)
            .unwrap()
            .convolve_party(&b)
            .unwrap();
        let ba = ConvolutionState::neutral(4)
            .convolve_party(&b)
            .unwrap()
            .convolve_party(&a)
            .unwrap();
        assert_eq!(ab, ba);
        assert!(ConvolutionState::neutral(4).convolve_party(&minus).is_err());
    }

    #[test]
    fn last_party_rule() {
        let params = p(2, 3);
        let f = int_functional(params, &[2, 3]).unwrap();
        let profile = antiperiodic_profile(&f);
        let state = ConvolutionState::neutral(3)
            .convolve_party(&s(&[-1, -1, -1]))
            .unwrap();
        let (score, last) = score_with_last_party(&profile, &state).unwrap();
        assert_eq!(score, BigInt::from(12));
        assert_eq!(last, s(&[-1, 1, 1]));

        let state = ConvolutionState::neutral(3)
            .convolve_party(&s(&[-1, 1, -1]))
            .unwrap();
        let (score, last) = score_with_last_party(&profile, &state).unwrap();
        assert_eq!(score, BigInt::from(12));
        assert_eq!(last, s(&[1, -1, 1]));

        let zero = antiperiodic_profile(&int_functional(params, &[0, 0]).unwrap());
        let (score, last) = score_with_last_party(&zero, &state).unwrap();
        assert!(score.is_zero());
        assert_eq!(last, Strategy::constant(3, 1));
    }

    #[test]
    fn exact_bounds() {
        let opts = BoundOptions::default();
        let cases: [(usize, usize, &[i64], i64); 4] = [
            (2, 3, &[2, 3], 12),
            (2, 3, &[1, 0], 3),
            (3, 4, &[1, 0], 8),
            (5, 10, &[988, 0, 575, 0, -575], 3_280_000),
        ];
        for (n, m, coeffs, expected) in cases {
            let f = int_functional(p(n, m), coeffs).unwrap();
            let res = exact_local_bound(&f, &opts).unwrap();
            assert_eq!(res.bound, BigInt::from(expected), "N={n} m={m}");
            assert_eq!(res.mode, BoundMode::Exact);
            for w in &res.witnesses {
                assert_eq!(evaluate_strategies(&f, w).unwrap(), res.bound);
            }
        }
    }

    #[test]
    fn refinement_does_not_change_bound() {
        let f = int_functional(p(4, 7), &[5, -2, 3, 1]).unwrap();
        let plain = exact_local_bound(&f, &BoundOptions::default()).unwrap();
        let refined = exact_local_bound(
            &f,
            &BoundOptions {
                refine_reflection: true,
                ..BoundOptions::default()
            },
        )
        .unwrap();
        assert_eq!(plain.bound, refined.bound);
    }

    #[test]
    fn wide_accumulators_agree() {
        let f = int_functional(p(3, 5), &[7, -3, 2]).unwrap();
        let (a, wa) = best_tuple::<i64>(&f, &BoundOptions::default()).unwrap();
        let (b, wb) = best_tuple::<i128>(&f, &BoundOptions::default()).unwrap();
        let (c, wc) = best_tuple::<BigInt>(&f, &BoundOptions::default()).unwrap();
        assert_eq!(a, b);
        assert_eq!(b, c);
        assert_eq!(wa, wb);
        assert_eq!(wb, wc);

        let huge = ReducedVector::new(
            p(3, 5),
            vec![
                BigInt::from(7) << 140,
                BigInt::from(-3) << 140,
                BigInt::from(2) << 140,
            ],
        )
        .unwrap();
        let res = exact_local_bound(&huge, &BoundOptions::default()).unwrap();
        assert_eq!(res.bound, a << 140);
    }

    #[test]
    fn rational_coefficients() {
        let params = p(2, 3);
        let f = ExactVector::new(
            params,
            vec![
                BigRational::new(1.into(), 3.into()),
                BigRational::new(1.into(), 2.into()),
            ],
        )
        .unwrap();
        let (bound, _) = exact_local_bound_rational(&f, &BoundOptions::default()).unwrap();
        assert_eq!(bound, BigRational::from_integer(2.into()));
    }

    #[test]
    fn heuristic_examples() {
        let f = int_functional(p(2, 3), &[2, 3]).unwrap();
        for seed in 0..5 {
            let res = heuristic_local_bound(&f, seed, 4).unwrap();
            assert_eq!(res.bound, BigInt::from(12));
            assert_eq!(res.mode, BoundMode::HeuristicLower);
        }
        let f = int_functional(p(5, 4), &[1, 0]).unwrap();
        assert_eq!(
            heuristic_local_bound(&f, 7, 10).unwrap().bound,
            BigInt::from(56)
        );
        let z = int_functional(p(3, 5), &[0, 0, 0]).unwrap();
        assert!(heuristic_local_bound(&z, 1, 3).unwrap().bound.is_zero());
    }

    #[test]
    fn heuristic_is_reproducible_and_sound() {
        let f = int_functional(p(4, 6), &[3, -1, 2]).unwrap();
        let a = heuristic_local_bound(&f, 42, 6).unwrap();
        let b = heuristic_local_bound(&f, 42, 6).unwrap();
        assert_eq!(a, b);
        let exact = exact_local_bound(&f, &BoundOptions::default()).unwrap();
        assert!(a.bound <= exact.bound);
        assert_eq!(evaluate_strategies(&f, &a.witnesses[0]).unwrap(), a.bound);
    }

    #[test]
    fn saturating_set_for_worked_example() {
        let f = int_functional(p(2, 3), &[2, 3]).unwrap();
        let w = saturating_witnesses(&f, &BigInt::from(12), &BoundOptions::default(), 100).unwrap();
        assert!(!w.is_empty());
        for t in &w {
            assert_eq!(evaluate_strategies(&f, t).unwrap(), BigInt::from(12));
        }
    }

    #[test]
    fn kernel_matches_full_tensor() {
        let params = p(3, 4);
        let f = int_functional(params, &[2, -1]).unwrap();
        let full = expand_full(&f).unwrap();
        let st = [s(&[1, -1, 1, 1]), s(&[-1, -1, 1, -1]), s(&[1, 1, -1, 1])];
        let mut direct = BigInt::zero();
        for (i, c) in full.iter().enumerate() {
            let x = [i / 16, (i / 4) % 4, i % 4];
            let prod: i8 = (0..3).map(|n| st[n].signs()[x[n]]).product();
            direct += c * BigInt::from(prod);
        }
        assert_eq!(evaluate_strategies(&f, &st).unwrap(), direct);
    }
}
