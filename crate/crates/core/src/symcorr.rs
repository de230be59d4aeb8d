//! Symmetry-adapted representation of correlation tensors.
//!
//! A tensor invariant under the signed cyclic, reflection and party
//! permutation action is determined by `⌈m/2⌉` numbers, one per class of
//! index sums. Entry `j` of a [`ReducedVector`] is the value of the tensor at
//! any index tuple whose sum `s` satisfies `s mod m = j` with an even quotient;
//! every other tuple is recovered with a sign through [`class_of_index`].

use std::fmt;
use std::ops::{Add, Mul, Neg};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::localbound::ConvolutionState;

/// Default cap on the number of entries [`expand_full`] will materialize.
pub const EXPAND_CAP: usize = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ScenarioParams {
    n_parties: usize,
    n_inputs: usize,
}

impl ScenarioParams {
    pub fn new(n_parties: usize, n_inputs: usize) -> Result<Self> {
        if n_parties < 2 {
            return Err(Error::InvalidParams(format!(
                "need at least 2 parties, got {n_parties}"
            )));
        }
        if n_inputs < 2 {
            return Err(Error::InvalidParams(format!(
                "need at least 2 inputs, got {n_inputs}"
            )));
        }
        assert!(
            weight_formula_validated(),
            "class weight closed form disagrees with brute-force tuple count"
        );
        Ok(Self {
            n_parties,
            n_inputs,
        })
    }

    /// Number of parties `N`.
    pub fn parties(&self) -> usize {
        self.n_parties
    }

    /// Number of inputs per party `m`.
    pub fn inputs(&self) -> usize {
        self.n_inputs
    }

    /// Dimension `⌈m/2⌉` of the invariant subspace.
    pub fn dim(&self) -> usize {
        self.n_inputs.div_ceil(2)
    }
}

impl fmt::Display for ScenarioParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N={}, m={}", self.n_parties, self.n_inputs)
    }
}

/// Which reduced coordinate an index tuple reads, and with which sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexClass {
    Class {
        class: usize,
        sign: i8,
    },
    /// Only for even `m`: the index sum is `m/2` modulo `m`, forcing the entry to 0.
    Zero,
}

/// Classification of a residue `s` of the index sum modulo `2m`.
pub(crate) fn class_of_sum(sum: usize, m: usize) -> IndexClass {
    let q = sum / m;
    let r = sum % m;
    let parity = if q.is_multiple_of(2) { 1 } else { -1 };
    if 2 * r < m {
        IndexClass::Class {
            class: r,
            sign: parity,
        }
    } else if 2 * r > m {
        IndexClass::Class {
            class: m - r,
            sign: -parity,
        }
    } else {
        IndexClass::Zero
    }
}

pub fn class_of_index(indices: &[usize], params: &ScenarioParams) -> Result<IndexClass> {
    let m = params.inputs();
    if indices.len() != params.parties() {
        return Err(Error::ParamsMismatch(format!(
            "expected {} indices, got {}",
            params.parties(),
            indices.len()
        )));
    }
    let mut sum = 0usize;
    for &x in indices {
        if x >= m {
            return Err(Error::IndexOutOfRange { index: x, m });
        }
        sum += x;
    }
    Ok(class_of_sum(sum, m))
}

/// Number of index tuples that read class `j`: `m^(N-1)` for `j = 0` and
/// `2 m^(N-1)` otherwise.
pub fn class_weight(params: &ScenarioParams, j: usize) -> Result<BigInt> {
    let dim = params.dim();
    if j >= dim {
        return Err(Error::ClassOutOfRange { class: j, dim });
    }
    let base = Pow::pow(BigInt::from(params.inputs()), params.parties() - 1);
    Ok(if j == 0 { base } else { base * 2 })
}

pub fn class_weights(params: &ScenarioParams) -> Vec<BigInt> {
    (0..params.dim())
        .map(|j| class_weight(params, j).expect("class in range"))
        .collect()
}

/// Class weights divided by `m^(N-1)`. Proportional to the exact weights,
/// so they define the same geometry up to a global scale.
pub fn normalized_weight(j: usize) -> f64 {
    if j == 0 {
        1.0
    } else {
        2.0
    }
}

fn brute_force_class_sizes(params: &ScenarioParams) -> (Vec<u64>, u64) {
    let (n, m) = (params.parties(), params.inputs());
    let mut sizes = vec![0u64; params.dim()];
    let mut zero = 0u64;
    let mut idx = vec![0usize; n];
    loop {
        match class_of_index(&idx, params).expect("indices in range") {
            IndexClass::Class { class, .. } => sizes[class] += 1,
            IndexClass::Zero => zero += 1,
        }
        let mut k = 0;
        loop {
            if k == n {
                return (sizes, zero);
            }
            idx[k] += 1;
            if idx[k] < m {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn weight_formula_validated() -> bool {
    static VALID: OnceLock<bool> = OnceLock::new();
    *VALID.get_or_init(|| {
        for n in 2..=3 {
            for m in 2..=6 {
                let params = ScenarioParams {
                    n_parties: n,
                    n_inputs: m,
                };
                let (sizes, _) = brute_force_class_sizes(&params);
                for (j, &size) in sizes.iter().enumerate() {
                    if class_weight(&params, j).ok() != Some(BigInt::from(size)) {
                        return false;
                    }
                }
            }
        }
        true
    })
}

/// Scalars a reduced vector may carry: exact rationals or doubles.
pub trait Scalar:
    Clone + fmt::Debug + PartialEq + Zero + Add<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn from_bigint(value: &BigInt) -> Self;
}

impl Scalar for f64 {
    fn from_bigint(value: &BigInt) -> Self {
        value.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for BigRational {
    fn from_bigint(value: &BigInt) -> Self {
        BigRational::from_integer(value.clone())
    }
}

impl Scalar for BigInt {
    fn from_bigint(value: &BigInt) -> Self {
        value.clone()
    }
}

/// A point or functional in the invariant subspace.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedVector<T> {
    params: ScenarioParams,
    entries: Vec<T>,
}

pub type ExactVector = ReducedVector<BigRational>;
pub type FloatVector = ReducedVector<f64>;

impl<T> ReducedVector<T> {
    pub fn new(params: ScenarioParams, entries: Vec<T>) -> Result<Self> {
        if entries.len() != params.dim() {
            return Err(Error::ParamsMismatch(format!(
                "reduced vector for {params} needs {} entries, got {}",
                params.dim(),
                entries.len()
            )));
        }
        Ok(Self { params, entries })
    }

    pub fn params(&self) -> &ScenarioParams {
        &self.params
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<T> {
        self.entries
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> ReducedVector<U> {
        ReducedVector {
            params: self.params,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

impl<T: Scalar> ReducedVector<T> {
    pub fn zeros(params: ScenarioParams) -> Self {
        Self {
            params,
            entries: vec![T::zero(); params.dim()],
        }
    }
}

impl ExactVector {
    pub fn to_f64(&self) -> FloatVector {
        self.map(rational_to_f64)
    }

    pub fn from_integers(params: ScenarioParams, entries: &[i64]) -> Result<Self> {
        Self::new(
            params,
            entries
                .iter()
                .map(|&e| BigRational::from_integer(BigInt::from(e)))
                .collect(),
        )
    }
}

pub(crate) fn rational_to_f64(q: &BigRational) -> f64 {
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Scale down both sides until they fit.
            let bits = q.numer().bits().max(q.denom().bits()) as i64 - 900;
            let shift = bits.max(0) as usize;
            let n = (q.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (q.denom() >> shift).to_f64().unwrap_or(1.0);
            n / d
        }
    }
}

/// A deterministic strategy of one party: a sign for each input.
///
/// Ordering is lexicographic with `-1 < +1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Strategy {
    signs: Vec<i8>,
}

impl Strategy {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if signs.is_empty() {
            return Err(Error::InvalidInput("empty strategy".into()));
        }
        if let Some(bad) = signs.iter().find(|&&s| s != 1 && s != -1) {
            return Err(Error::InvalidInput(format!(
                "strategy entry {bad} is not ±1"
            )));
        }
        Ok(Self { signs })
    }

    pub fn constant(m: usize, sign: i8) -> Self {
        Self {
            signs: vec![if sign < 0 { -1 } else { 1 }; m],
        }
    }

    /// Word encoding with `a_0` in the most significant of `m` bits and a set
    /// bit for `+1`, so numeric order equals lexicographic order.
    pub fn from_word(word: u64, m: usize) -> Self {
        debug_assert!(m <= 64);
        let signs = (0..m)
            .map(|x| {
                if (word >> (m - 1 - x)) & 1 == 1 {
                    1
                } else {
                    -1
                }
            })
            .collect();
        Self { signs }
    }

    pub fn to_word(&self) -> u64 {
        debug_assert!(self.signs.len() <= 64);
        self.signs
            .iter()
            .fold(0u64, |w, &s| (w << 1) | u64::from(s > 0))
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn negated(&self) -> Self {
        Self {
            signs: self.signs.iter().map(|s| -s).collect(),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.signs {
            f.write_str(if *s > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

/// A symmetric coefficient tensor lifted to `Z_{2m}`: the tensor entry at
/// `x` is `values[(Σ x_n) mod 2m]`.
#[derive(Clone, Debug, PartialEq)]
pub struct AntiperiodicProfile<T> {
    values: Vec<T>,
}

impl<T: Scalar> AntiperiodicProfile<T> {
    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn m(&self) -> usize {
        self.values.len() / 2
    }

    /// Recover the reduced coordinates `f_j = F[j]`.
    pub fn to_reduced(&self, params: ScenarioParams) -> Result<ReducedVector<T>> {
        if params.inputs() != self.m() {
            return Err(Error::ParamsMismatch(format!(
                "profile over Z_{} used with {params}",
                self.values.len()
            )));
        }
        ReducedVector::new(params, self.values[..params.dim()].to_vec())
    }
}

pub fn antiperiodic_profile<T: Scalar>(f: &ReducedVector<T>) -> AntiperiodicProfile<T> {
    let m = f.params().inputs();
    let mut values = Vec::with_capacity(2 * m);
    for s in 0..2 * m {
        values.push(match class_of_sum(s, m) {
            IndexClass::Class { class, sign } => {
                let v = f.entries()[class].clone();
                if sign > 0 {
                    v
                } else {
                    -v
                }
            }
            IndexClass::Zero => T::zero(),
        });
    }
    AntiperiodicProfile { values }
}

/// The GHZ correlation tensor under regular-polygon measurements,
/// `cos(π Σx / m)`, in reduced coordinates.
pub fn ghz_reduced(params: &ScenarioParams) -> FloatVector {
    let m = params.inputs() as f64;
    let entries = (0..params.dim())
        .map(|j| (std::f64::consts::PI * j as f64 / m).cos())
        .collect();
    ReducedVector {
        params: *params,
        entries,
    }
}

/// Weighted inner product, equal to the Euclidean inner product of the two
/// full symmetric tensors.
pub fn weighted_dot<T: Scalar>(f: &ReducedVector<T>, v: &ReducedVector<T>) -> Result<T> {
    check_same(f.params(), v.params())?;
    let weights = class_weights(f.params());
    Ok(f.entries()
        .iter()
        .zip(v.entries())
        .zip(&weights)
        .fold(T::zero(), |acc, ((a, b), w)| {
            acc + T::from_bigint(w) * a.clone() * b.clone()
        }))
}

/// Inner product with weights divided by `m^(N-1)`.
pub fn normalized_dot(f: &[f64], v: &[f64]) -> f64 {
    f.iter()
        .zip(v)
        .enumerate()
        .map(|(j, (a, b))| normalized_weight(j) * a * b)
        .sum()
}

pub(crate) fn check_same(a: &ScenarioParams, b: &ScenarioParams) -> Result<()> {
    if a != b {
        return Err(Error::ParamsMismatch(format!("{a} vs {b}")));
    }
    Ok(())
}

/// Reynolds projection of the deterministic tensor of `strategies`.
///
/// Uses the residue counts of the index sums, so the `m^N` tensor is never
/// formed.
pub fn project_strategy(strategies: &[Strategy], params: &ScenarioParams) -> Result<ExactVector> {
    if strategies.len() != params.parties() {
        return Err(Error::ParamsMismatch(format!(
            "expected {} strategies, got {}",
            params.parties(),
            strategies.len()
        )));
    }
    let m = params.inputs();
    let mut state = ConvolutionState::neutral(m);
    for s in strategies {
        if s.len() != m {
            return Err(Error::ParamsMismatch(format!(
                "strategy of length {} for m = {m}",
                s.len()
            )));
        }
        state = state.convolve_party(s)?;
    }
    Ok(project_counts(state.counts(), params))
}

/// Projection from complete residue counts over `Z_{2m}`.
pub(crate) fn project_counts(counts: &[BigInt], params: &ScenarioParams) -> ExactVector {
    let m = params.inputs();
    let mut raw = vec![BigInt::zero(); params.dim()];
    for (t, c) in counts.iter().enumerate() {
        if let IndexClass::Class { class, sign } = class_of_sum(t, m) {
            if sign > 0 {
                raw[class] += c;
            } else {
                raw[class] -= c;
            }
        }
    }
    let weights = class_weights(params);
    let entries = raw
        .into_iter()
        .zip(weights)
        .map(|(r, w)| BigRational::new(r, w))
        .collect();
    ReducedVector {
        params: *params,
        entries,
    }
}

/// Materialize the full symmetric tensor, row-major with the first party's
/// index most significant. Test oracle only.
pub fn expand_full<T: Scalar>(f: &ReducedVector<T>) -> Result<Vec<T>> {
    expand_full_capped(f, EXPAND_CAP)
}

pub fn expand_full_capped<T: Scalar>(f: &ReducedVector<T>, cap: usize) -> Result<Vec<T>> {
    let (n, m) = (f.params().parties(), f.params().inputs());
    let size = (m as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > cap as u128 {
        return Err(Error::CapExceeded {
            what: "full tensor size",
            requested: size.to_string(),
            cap: cap.to_string(),
        });
    }
    let profile = antiperiodic_profile(f);
    let mut out = Vec::with_capacity(size as usize);
    let mut idx = vec![0usize; n];
    for _ in 0..size {
        let sum: usize = idx.iter().sum();
        out.push(profile.values[sum % (2 * m)].clone());
        for k in (0..n).rev() {
            idx[k] += 1;
            if idx[k] < m {
                break;
            }
            idx[k] = 0;
        }
    }
    Ok(out)
}

/// Symbolic form of the quantum value `Σ_j w_j f_j cos(π j / m)`.
pub fn quantum_value_symbolic(f: &ReducedVector<BigInt>) -> String {
    let m = f.params().inputs();
    let weights = class_weights(f.params());
    let terms: Vec<String> = f
        .entries()
        .iter()
        .zip(&weights)
        .enumerate()
        .filter(|(_, (c, _))| !c.is_zero())
        .map(|(j, (c, w))| {
            let coeff = c * w;
            if j == 0 {
                format!("{coeff}")
            } else {
                format!("{coeff}*cos(pi*{j}/{m})")
            }
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ").replace("+ -", "- ")
    }
}

/// Exact quantum value when every cosine involved is rational
/// (`j = 0` or `3j = m`), otherwise `None`.
pub fn quantum_value_rational(f: &ReducedVector<BigInt>) -> Option<BigRational> {
    let m = f.params().inputs();
    let weights = class_weights(f.params());
    let mut q = BigRational::zero();
    for (j, (c, w)) in f.entries().iter().zip(&weights).enumerate() {
        if c.is_zero() {
            continue;
        }
        let cos = if j == 0 {
            BigRational::one()
        } else if 3 * j == m {
            BigRational::new(BigInt::one(), BigInt::from(2))
        } else {
            return None;
        };
        q += BigRational::from_integer(c * w) * cos;
    }
    Some(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, m: usize) -> ScenarioParams {
        ScenarioParams::new(n, m).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rejects_small_scenarios() {
        assert!(ScenarioParams::new(1, 3).is_err());
        assert!(ScenarioParams::new(3, 1).is_err());
        assert_eq!(p(5, 10).dim(), 5);
        assert_eq!(p(3, 7).dim(), 4);
    }

    #[test]
    fn index_classes() {
        assert_eq!(
            class_of_index(&[0, 0], &p(2, 3)).unwrap(),
            IndexClass::Class { class: 0, sign: 1 }
        );
        assert_eq!(
            class_of_index(&[2, 2], &p(2, 3)).unwrap(),
            IndexClass::Class { class: 1, sign: -1 }
        );
        assert_eq!(class_of_index(&[1, 1], &p(2, 4)).unwrap(), IndexClass::Zero);
        assert_eq!(
            class_of_index(&[3, 0], &p(2, 3)),
            Err(Error::IndexOutOfRange { index: 3, m: 3 })
        );
    }

    #[test]
    fn weights_match_counts() {
        assert_eq!(class_weight(&p(2, 3), 0).unwrap(), BigInt::from(3));
        assert_eq!(class_weight(&p(2, 3), 1).unwrap(), BigInt::from(6));
        assert_eq!(class_weight(&p(5, 10), 2).unwrap(), BigInt::from(20000));
        assert!(class_weight(&p(2, 3), 2).is_err());
        for n in 2..=4 {
            for m in 2..=7 {
                let params = p(n, m);
                let (sizes, zero) = brute_force_class_sizes(&params);
                let total: u64 = sizes.iter().sum::<u64>() + zero;
                assert_eq!(total, (m as u64).pow(n as u32));
                for (j, s) in sizes.iter().enumerate() {
                    assert_eq!(class_weight(&params, j).unwrap(), BigInt::from(*s));
                }
            }
        }
    }

    #[test]
    fn ghz_entries() {
        let r = ghz_reduced(&p(2, 3));
        assert!((r.entries()[0] - 1.0).abs() < 1e-15);
        assert!((r.entries()[1] - 0.5).abs() < 1e-15);
        let r4 = ghz_reduced(&p(3, 4));
        assert!((r4.entries()[1] - 2f64.sqrt() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn projection_examples() {
        let minus = Strategy::constant(3, -1);
        let v = project_strategy(&[minus.clone(), minus], &p(2, 3)).unwrap();
        assert_eq!(v.entries(), &[q(-1, 3), q(-1, 3)]);
    }

    #[test]
    fn projection_witness_for_extreme_point() {
        // Brute force over all 64 pairs for the [1, 1/3] vertex.
        let params = p(2, 3);
        let target = vec![q(1, 1), q(1, 3)];
        let mut found = false;
        for a in 0..8u64 {
            for b in 0..8u64 {
                let v = project_strategy(
                    &[Strategy::from_word(a, 3), Strategy::from_word(b, 3)],
                    &params,
                )
                .unwrap();
                found |= v.entries() == target.as_slice();
            }
        }
        assert!(found);
    }

    #[test]
    fn projection_all_plus_matches_tensor_oracle() {
        let params = p(3, 4);
        let plus = Strategy::constant(4, 1);
        let v = project_strategy(&[plus.clone(), plus.clone(), plus], &params).unwrap();
        // Class 0 entry: (count of +1 tuples − count of −1 tuples) / 16.
        let mut plus_count = 0i64;
        let mut minus_count = 0i64;
        for x in 0..64usize {
            let idx = [x / 16, (x / 4) % 4, x % 4];
            if let IndexClass::Class { class: 0, sign } = class_of_index(&idx, &params).unwrap() {
                if sign > 0 {
                    plus_count += 1
                } else {
                    minus_count += 1
                }
            }
        }
        assert_eq!(v.entries()[0], q(plus_count - minus_count, 16));
    }

    #[test]
    fn weighted_dot_examples() {
        let params = p(2, 3);
        let f = ExactVector::from_integers(params, &[2, 3]).unwrap();
        let v = ExactVector::new(params, vec![q(1, 1), q(1, 3)]).unwrap();
        assert_eq!(weighted_dot(&f, &v).unwrap(), q(12, 1));
        let w = ExactVector::from_integers(params, &[-1, 1]).unwrap();
        assert_eq!(weighted_dot(&f, &w).unwrap(), q(12, 1));
        let ff = f.to_f64();
        assert!((weighted_dot(&ff, &ghz_reduced(&params)).unwrap() - 15.0).abs() < 1e-12);
        let other = ExactVector::from_integers(p(3, 3), &[1, 1]).unwrap();
        assert!(weighted_dot(&f, &other).is_err());
    }

    #[test]
    fn expansion_examples() {
        let params = p(2, 3);
        let f = ReducedVector::new(params, vec![BigInt::from(7), BigInt::from(5)]).unwrap();
        let full = expand_full(&f).unwrap();
        let (a, b) = (BigInt::from(7), BigInt::from(5));
        let expected = vec![
            a.clone(),
            b.clone(),
            -b.clone(),
            b.clone(),
            -b.clone(),
            -a.clone(),
            -b.clone(),
            -a,
            -b,
        ];
        assert_eq!(full, expected);

        let p4 = p(2, 4);
        let e0 = ReducedVector::new(p4, vec![1i64, 0].into_iter().map(BigInt::from).collect());
        assert_eq!(
            expand_full(&e0.unwrap()).unwrap()[..4],
            [1, 0, 0, 0].map(BigInt::from)
        );
        let e1 = ReducedVector::new(p4, vec![0i64, 1].into_iter().map(BigInt::from).collect());
        assert_eq!(
            expand_full(&e1.unwrap()).unwrap()[..4],
            [0, 1, 0, -1].map(BigInt::from)
        );
        let big = ReducedVector::new(p(8, 10), vec![0.0; 5]).unwrap();
        assert!(matches!(expand_full(&big), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn profile_examples() {
        let f = ReducedVector::new(p(2, 3), vec![2.0, 3.0]).unwrap();
        assert_eq!(
            antiperiodic_profile(&f).values(),
            &[2.0, 3.0, -3.0, -2.0, -3.0, 3.0]
        );
        let g = antiperiodic_profile(&ghz_reduced(&p(2, 3)));
        let expected = [1.0, 0.5, -0.5, -1.0, -0.5, 0.5];
        for (a, b) in g.values().iter().zip(expected) {
            assert!((a - b).abs() < 1e-15);
        }
        let e = ReducedVector::new(p(2, 4), vec![1.0, 0.0]).unwrap();
        assert_eq!(
            antiperiodic_profile(&e).values(),
            &[1.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0]
        );
    }

    #[test]
    fn quantum_value_forms() {
        let params = p(2, 3);
        let f = ReducedVector::new(params, vec![BigInt::from(2), BigInt::from(3)]).unwrap();
        assert_eq!(quantum_value_rational(&f), Some(q(15, 1)));
        assert_eq!(quantum_value_symbolic(&f), "6 + 18*cos(pi*1/3)");
        let g = ReducedVector::new(p(4, 4), vec![BigInt::zero(), BigInt::one()]).unwrap();
        assert_eq!(quantum_value_rational(&g), None);
    }
}
