//! Orbits of single-party strategies under signed cyclic shifts.
//!
//! Shifting a strategy by one input moves `a_0` to the end with its sign
//! flipped. The group generated by this move has order `2m` and contains the
//! global sign flip (shift by `m`). Its orbits are the signed binary
//! necklaces counted by `u_m`.

use std::ops::Range;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::symcorr::Strategy;

/// Largest `m` for which necklaces are enumerated by default.
pub const NECKLACE_CAP: usize = 26;

/// Default cap on the number of multisets an enumeration may visit.
pub const MULTISET_BUDGET: u128 = 1_000_000_000;

/// Canonical representative of a strategy orbit: the lexicographically
/// smallest element (with `-1 < +1`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Necklace {
    rep: Strategy,
}

impl Necklace {
    pub fn rep(&self) -> &Strategy {
        &self.rep
    }

    pub fn into_rep(self) -> Strategy {
        self.rep
    }
}

fn euler_phi(mut n: usize) -> usize {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// `u_m = (1/2m) Σ_{d | m, d odd} φ(d) 2^{m/d}`.
pub fn necklace_count(m: usize) -> BigUint {
    assert!(m >= 1, "necklace_count needs m >= 1");
    let mut sum = BigUint::zero();
    for d in (1..=m).step_by(2) {
        if m.is_multiple_of(d) {
            sum += BigUint::from(euler_phi(d)) << (m / d);
        }
    }
    let denom = BigUint::from(2 * m);
    debug_assert!((&sum % &denom).is_zero());
    sum / denom
}

#[inline]
fn shift_word(w: u64, m: usize, mask: u64) -> u64 {
    ((w << 1) & mask) | (!(w >> (m - 1)) & 1)
}

#[inline]
fn word_mask(m: usize) -> u64 {
    if m == 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

fn canonical_word(w: u64, m: usize) -> u64 {
    let mask = word_mask(m);
    let mut best = w;
    let mut cur = w;
    // 2m shifts; the second half are the global flips of the first.
    for _ in 1..2 * m {
        cur = shift_word(cur, m, mask);
        best = best.min(cur);
    }
    best
}

fn is_canonical_word(w: u64, m: usize) -> bool {
    let mask = word_mask(m);
    let mut cur = w;
    for _ in 1..2 * m {
        cur = shift_word(cur, m, mask);
        if cur < w {
            return false;
        }
    }
    true
}

fn signed_shift(signs: &[i8]) -> Vec<i8> {
    let mut out = signs[1..].to_vec();
    out.push(-signs[0]);
    out
}

/// Apply `k` signed cyclic shifts.
pub fn shift_strategy(s: &Strategy, k: usize) -> Strategy {
    let mut signs = s.signs().to_vec();
    for _ in 0..k % (2 * s.len()) {
        signs = signed_shift(&signs);
    }
    Strategy::new(signs).expect("shift preserves signs")
}

/// Reflection `a'_0 = a_0`, `a'_x = -a_{m-x}`.
pub fn reflect_strategy(s: &Strategy) -> Strategy {
    let a = s.signs();
    let m = a.len();
    let signs = (0..m)
        .map(|x| if x == 0 { a[0] } else { -a[m - x] })
        .collect();
    Strategy::new(signs).expect("reflection preserves signs")
}

pub fn canonical_necklace(s: &Strategy) -> Necklace {
    let m = s.len();
    if m <= 64 {
        return Necklace {
            rep: Strategy::from_word(canonical_word(s.to_word(), m), m),
        };
    }
    let mut best = s.clone();
    let mut cur = s.signs().to_vec();
    for _ in 1..2 * m {
        cur = signed_shift(&cur);
        let cand = Strategy::new(cur.clone()).expect("valid signs");
        best = best.min(cand.clone()).min(cand.negated());
    }
    Necklace { rep: best }
}

/// All canonical representatives for `m`, sorted.
pub fn enumerate_necklaces(m: usize) -> Result<Vec<Necklace>> {
    enumerate_necklaces_capped(m, NECKLACE_CAP)
}

pub fn enumerate_necklaces_capped(m: usize, cap: usize) -> Result<Vec<Necklace>> {
    if m == 0 || m > cap.min(63) {
        return Err(Error::CapExceeded {
            what: "necklace length",
            requested: m.to_string(),
            cap: cap.min(63).to_string(),
        });
    }
    // A canonical word starts with -1, i.e. its top bit is clear.
    let half = 1u64 << (m - 1);
    let words: Vec<u64> = if m <= 14 {
        (0..half).filter(|&w| is_canonical_word(w, m)).collect()
    } else {
        let chunk = 1u64 << 12;
        (0..half.div_ceil(chunk))
            .into_par_iter()
            .flat_map_iter(|c| {
                (c * chunk..((c + 1) * chunk).min(half)).filter(move |&w| is_canonical_word(w, m))
            })
            .collect()
    };
    Ok(words
        .into_iter()
        .map(|w| Necklace {
            rep: Strategy::from_word(w, m),
        })
        .collect())
}

/// `C(n, k)` in `u128`, saturating on overflow.
pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by i + 1 at every step.
        match acc.checked_mul(n - i) {
            Some(v) => acc = v / (i + 1),
            None => return u128::MAX,
        }
    }
    acc
}

/// Number of size-`k` multisets over `u` symbols.
pub fn multichoose(u: usize, k: usize) -> u128 {
    if k == 0 {
        return 1;
    }
    if u == 0 {
        return 0;
    }
    match u.checked_add(k - 1) {
        Some(n) => binomial(n as u128, k as u128),
        None => u128::MAX,
    }
}

/// The non-decreasing `k`-tuples over `u` symbols in lexicographic order,
/// addressable by rank so that contiguous rank ranges can be consumed
/// independently.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MultisetSpace {
    u: usize,
    k: usize,
}

impl MultisetSpace {
    pub fn new(u: usize, k: usize) -> Self {
        Self { u, k }
    }

    pub fn symbols(&self) -> usize {
        self.u
    }

    pub fn size(&self) -> usize {
        self.k
    }

    pub fn count(&self) -> u128 {
        multichoose(self.u, self.k)
    }

    pub fn unrank(&self, mut rank: u128) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.k);
        let mut lo = 0usize;
        for pos in 0..self.k {
            let rest = self.k - pos - 1;
            let mut c = lo;
            loop {
                let block = multichoose(self.u - c, rest);
                if rank < block {
                    break;
                }
                rank -= block;
                c += 1;
            }
            out.push(c);
            lo = c;
        }
        out
    }

    pub fn cursor(&self, range: Range<u128>) -> MultisetCursor {
        let remaining = range.end.saturating_sub(range.start);
        let current = if remaining > 0 {
            self.unrank(range.start)
        } else {
            Vec::new()
        };
        MultisetCursor {
            u: self.u,
            current,
            remaining,
            changed_from: 0,
        }
    }

    pub fn iter(&self) -> MultisetCursor {
        self.cursor(0..self.count())
    }

    /// Split `[0, count)` into at most `parts` contiguous ranges.
    pub fn split(&self, parts: usize) -> Vec<Range<u128>> {
        split_range(self.count(), parts)
    }
}

pub(crate) fn split_range(total: u128, parts: usize) -> Vec<Range<u128>> {
    let parts = (parts.max(1) as u128).min(total.max(1));
    let base = total / parts;
    let extra = total % parts;
    let mut out = Vec::with_capacity(parts as usize);
    let mut start = 0;
    for i in 0..parts {
        let len = base + u128::from(i < extra);
        out.push(start..start + len);
        start += len;
    }
    out
}

/// Cursor over a contiguous rank range of a [`MultisetSpace`].
#[derive(Clone, Debug)]
pub struct MultisetCursor {
    u: usize,
    current: Vec<usize>,
    remaining: u128,
    changed_from: usize,
}

impl MultisetCursor {
    /// Current tuple without advancing; `None` once exhausted.
    pub fn peek(&self) -> Option<&[usize]> {
        (self.remaining > 0).then_some(self.current.as_slice())
    }

    /// First position that differs from the previously yielded tuple.
    pub fn changed_from(&self) -> usize {
        self.changed_from
    }

    /// Advance in place; returns false once the range is exhausted.
    pub fn advance(&mut self) -> bool {
        if self.remaining == 0 {
            return false;
        }
        self.remaining -= 1;
        if self.remaining == 0 {
            return false;
        }
        let k = self.current.len();
        let mut i = k;
        while i > 0 && self.current[i - 1] == self.u - 1 {
            i -= 1;
        }
        debug_assert!(i > 0, "range extends past the last multiset");
        let v = self.current[i - 1] + 1;
        for c in &mut self.current[i - 1..] {
            *c = v;
        }
        self.changed_from = i - 1;
        true
    }
}

impl Iterator for MultisetCursor {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.peek()?.to_vec();
        self.advance();
        Some(out)
    }
}

/// The enumeration domain of the first `N-1` parties: necklace
/// representatives and the multiset space over them.
#[derive(Clone, Debug)]
pub struct OrbitTuples {
    m: usize,
    necklaces: Vec<Necklace>,
    space: MultisetSpace,
    reflected: Vec<usize>,
}

impl OrbitTuples {
    pub fn new(m: usize, parties: usize, budget: u128) -> Result<Self> {
        if parties < 2 {
            return Err(Error::InvalidParams("need at least 2 parties".into()));
        }
        let u = necklace_count(m).to_u64().unwrap_or(u64::MAX);
        let count = multichoose(u.min(usize::MAX as u64) as usize, parties - 1);
        if count > budget {
            return Err(Error::BudgetExceeded {
                requested: count,
                budget,
            });
        }
        let necklaces = enumerate_necklaces(m)?;
        let words: Vec<u64> = necklaces.iter().map(|n| n.rep.to_word()).collect();
        let reflected = necklaces
            .iter()
            .map(|n| {
                let r = canonical_necklace(&reflect_strategy(&n.rep)).rep.to_word();
                words
                    .binary_search(&r)
                    .expect("reflection maps orbits to orbits")
            })
            .collect();
        Ok(Self {
            m,
            space: MultisetSpace::new(necklaces.len(), parties - 1),
            necklaces,
            reflected,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn necklaces(&self) -> &[Necklace] {
        &self.necklaces
    }

    pub fn space(&self) -> &MultisetSpace {
        &self.space
    }

    /// True when reflecting every party yields a strictly smaller tuple, in
    /// which case the tuple's reflection is enumerated instead.
    pub fn reflection_redundant(&self, tuple: &[usize]) -> bool {
        let mut r: Vec<usize> = tuple.iter().map(|&i| self.reflected[i]).collect();
        r.sort_unstable();
        r.as_slice() < tuple
    }

    pub fn strategies(&self, tuple: &[usize]) -> Vec<Strategy> {
        tuple
            .iter()
            .map(|&i| self.necklaces[i].rep.clone())
            .collect()
    }
}

/// Stream of `(N-1)`-multisets of necklaces, optionally thinned by the
/// reflection symmetry.
pub fn multiset_iterator(
    m: usize,
    parties: usize,
    budget: u128,
    refine_reflection: bool,
) -> Result<impl Iterator<Item = Vec<Necklace>>> {
    let tuples = OrbitTuples::new(m, parties, budget)?;
    let necklaces = tuples.necklaces.clone();
    let it = tuples.space.iter();
    Ok(it
        .filter(move |t| !refine_reflection || !tuples.reflection_redundant(t))
        .map(move |t| t.iter().map(|&i| necklaces[i].clone()).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{BTreeSet, HashSet, VecDeque};

    #[test]
    fn counts_small() {
        assert_eq!(necklace_count(1), BigUint::from(1u32));
        assert_eq!(necklace_count(4), BigUint::from(2u32));
        assert_eq!(necklace_count(9), BigUint::from(30u32));
        assert_eq!(necklace_count(21), BigUint::from(49940u32));
    }

    #[test]
    fn enumeration_matches_count() {
        for m in 1..=20 {
            let n = enumerate_necklaces(m).unwrap();
            assert_eq!(BigUint::from(n.len()), necklace_count(m), "m = {m}");
            assert!(n.windows(2).all(|w| w[0] < w[1]));
        }
        assert!(enumerate_necklaces(27).is_err());
    }

    #[test]
    fn m3_representatives() {
        let n = enumerate_necklaces(3).unwrap();
        let reps: Vec<_> = n.iter().map(|k| k.rep().signs().to_vec()).collect();
        assert_eq!(reps, vec![vec![-1, -1, -1], vec![-1, 1, -1]]);
        let a = canonical_necklace(&Strategy::new(vec![1, -1, 1]).unwrap());
        let b = canonical_necklace(&Strategy::new(vec![-1, 1, -1]).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn distinct_canonical_forms() {
        for (m, u) in [(4usize, 2usize), (5, 4)] {
            let forms: HashSet<_> = (0..1u64 << m)
                .map(|w| canonical_necklace(&Strategy::from_word(w, m)))
                .collect();
            assert_eq!(forms.len(), u);
        }
    }

    #[test]
    fn canonical_form_is_orbit_invariant() {
        for m in 1..=8 {
            for w in 0..1u64 << m {
                let s = Strategy::from_word(w, m);
                let c = canonical_necklace(&s);
                assert_eq!(canonical_necklace(c.rep()), c);
                for k in 0..2 * m {
                    let g = shift_strategy(&s, k);
                    assert_eq!(canonical_necklace(&g), c);
                    assert_eq!(canonical_necklace(&g.negated()), c);
                }
            }
        }
    }

    #[test]
    fn long_strategies_use_vector_path() {
        let mut signs = vec![1i8; 70];
        signs[3] = -1;
        let s = Strategy::new(signs).unwrap();
        let c = canonical_necklace(&s);
        assert_eq!(canonical_necklace(&shift_strategy(&s, 11)), c);
        assert_eq!(c.rep().signs()[0], -1);
    }

    #[test]
    fn multiset_counts() {
        assert_eq!(MultisetSpace::new(52, 4).count(), 341_055);
        for n in 2..=8 {
            assert_eq!(MultisetSpace::new(2, n - 1).count(), n as u128);
        }
        assert_eq!(MultisetSpace::new(2, 1).iter().count(), 2);
    }

    #[test]
    fn unrank_matches_iteration() {
        let space = MultisetSpace::new(5, 3);
        let all: Vec<_> = space.iter().collect();
        assert_eq!(all.len() as u128, space.count());
        for (r, t) in all.iter().enumerate() {
            assert_eq!(&space.unrank(r as u128), t);
            assert!(t.windows(2).all(|w| w[0] <= w[1]));
        }
        let uniq: BTreeSet<_> = all.iter().collect();
        assert_eq!(uniq.len(), all.len());
    }

    #[test]
    fn splitting_is_deterministic() {
        let space = MultisetSpace::new(7, 4);
        let whole: Vec<_> = space.iter().collect();
        for parts in [1, 2, 3, 8, 50, 1000] {
            let joined: Vec<_> = space
                .split(parts)
                .into_iter()
                .flat_map(|r| space.cursor(r))
                .collect();
            assert_eq!(joined, whole, "parts = {parts}");
        }
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            OrbitTuples::new(10, 5, 1000),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn reflection_refinement_only_prunes() {
        let full = multiset_iterator(10, 5, MULTISET_BUDGET, false)
            .unwrap()
            .count();
        let refined = multiset_iterator(10, 5, MULTISET_BUDGET, true)
            .unwrap()
            .count();
        assert_eq!(full, 341_055);
        assert!(refined <= full);
        assert!(refined > full / 2);
    }

    /// Orbit of an `(N-1)`-tuple under per-party signed shifts and party
    /// permutations, by breadth-first search over generators.
    fn orbit(tuple: Vec<Strategy>) -> HashSet<Vec<Strategy>> {
        let mut seen = HashSet::new();
        let mut queue = VecDeque::from([tuple]);
        while let Some(t) = queue.pop_front() {
            if !seen.insert(t.clone()) {
                continue;
            }
            for i in 0..t.len() {
                let mut s = t.clone();
                s[i] = shift_strategy(&s[i], 1);
                queue.push_back(s);
                if i + 1 < t.len() {
                    let mut p = t.clone();
                    p.swap(i, i + 1);
                    queue.push_back(p);
                }
            }
        }
        seen
    }

    #[test]
    fn multisets_cover_all_tuples() {
        for m in 2..=4 {
            for parties in 2..=4 {
                let k = parties - 1;
                let emitted: Vec<Vec<Strategy>> = multiset_iterator(m, parties, 1 << 20, false)
                    .unwrap()
                    .map(|t| t.into_iter().map(Necklace::into_rep).collect())
                    .collect();
                let mut covered = HashSet::new();
                for t in &emitted {
                    covered.extend(orbit(t.clone()));
                }
                let total = 1usize << (m * k);
                for code in 0..total {
                    let tuple: Vec<Strategy> = (0..k)
                        .map(|i| {
                            Strategy::from_word(((code >> (i * m)) & ((1 << m) - 1)) as u64, m)
                        })
                        .collect();
                    assert!(covered.contains(&tuple), "m={m} N={parties}");
                }
            }
        }
    }

    #[test]
    fn binomial_edges() {
        assert_eq!(binomial(55, 4), 341_055);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(300, 150), u128::MAX);
        assert_eq!(multichoose(0, 0), 1);
    }
}
