//! Closed forms for four measurements per party.
//!
//! With `m = 4` there are two necklaces, `(+,+,+,+)` and `(+,+,-,+)`. A
//! party playing them acts on folded residue counts as the negacyclic
//! matrices `R = 1 + A + A² + A³` and `S = 1 + A − A² + A³`, where `A` is the
//! signed shift (`A⁴ = −1`). Local bounds are induced 1-norms of products of
//! these matrices.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// 4×4 integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat4(pub [[BigInt; 4]; 4]);

impl Mat4 {
    pub fn identity() -> Self {
        Self::from_fn(|i, j| i64::from(i == j))
    }

    fn from_fn(f: impl Fn(usize, usize) -> i64) -> Self {
        Self(std::array::from_fn(|i| {
            std::array::from_fn(|j| BigInt::from(f(i, j)))
        }))
    }

    /// Signed cyclic shift: `A e_{k+1} = e_k`, with `−1` on the wrap.
    pub fn shift() -> Self {
        Self::from_fn(|i, j| {
            if j == i + 1 {
                1
            } else if i == 3 && j == 0 {
                -1
            } else {
                0
            }
        })
    }

    /// `Σ_x s_x A^x` for a strategy on four inputs.
    pub fn of_signs(signs: [i64; 4]) -> Self {
        let a = Self::shift();
        let mut power = Self::identity();
        let mut out = Self::zero();
        for s in signs {
            out = &out + &power.scale(s);
            power = &power * &a;
        }
        out
    }

    pub fn r() -> Self {
        Self::of_signs([1, 1, 1, 1])
    }

    pub fn s() -> Self {
        Self::of_signs([1, 1, -1, 1])
    }

    fn zero() -> Self {
        Self::from_fn(|_, _| 0)
    }

    fn scale(&self, k: i64) -> Self {
        let k = BigInt::from(k);
        Self(std::array::from_fn(|i| {
            std::array::from_fn(|j| &self.0[i][j] * &k)
        }))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Induced 1-norm: largest absolute column sum.
    pub fn norm1(&self) -> BigInt {
        (0..4)
            .map(|j| (0..4).map(|i| self.0[i][j].abs()).sum::<BigInt>())
            .max()
            .expect("four columns")
    }

    pub fn det(&self) -> BigInt {
        let m = &self.0;
        let minor = |skip: usize| -> BigInt {
            let cols: Vec<usize> = (0..4).filter(|&c| c != skip).collect();
            let e = |r: usize, c: usize| &m[r][cols[c]];
            e(1, 0) * (e(2, 1) * e(3, 2) - e(2, 2) * e(3, 1))
                - e(1, 1) * (e(2, 0) * e(3, 2) - e(2, 2) * e(3, 0))
                + e(1, 2) * (e(2, 0) * e(3, 1) - e(2, 1) * e(3, 0))
        };
        (0..4).fold(BigInt::zero(), |acc, c| {
            let term = &m[0][c] * minor(c);
            if c % 2 == 0 {
                acc + term
            } else {
                acc - term
            }
        })
    }
}

impl Add for &Mat4 {
    type Output = Mat4;

    fn add(self, rhs: &Mat4) -> Mat4 {
        Mat4(std::array::from_fn(|i| {
            std::array::from_fn(|j| &self.0[i][j] + &rhs.0[i][j])
        }))
    }
}

impl Mul for &Mat4 {
    type Output = Mat4;

    fn mul(self, rhs: &Mat4) -> Mat4 {
        Mat4(std::array::from_fn(|i| {
            std::array::from_fn(|j| (0..4).map(|k| &self.0[i][k] * &rhs.0[k][j]).sum())
        }))
    }
}

/// `(a + b√2) / 2^k`, kept with the smallest `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootTwoScalar {
    a: BigInt,
    b: BigInt,
    k: u32,
}

impl RootTwoScalar {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, k: u32) -> Self {
        let mut x = Self {
            a: a.into(),
            b: b.into(),
            k,
        };
        x.normalize();
        x
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Self::new(n, 0, 0)
    }

    pub fn sqrt2() -> Self {
        Self::new(0, 1, 0)
    }

    fn normalize(&mut self) {
        let two = BigInt::from(2);
        while self.k > 0 && self.a.is_even() && self.b.is_even() {
            self.a /= &two;
            self.b /= &two;
            self.k -= 1;
        }
        if self.a.is_zero() && self.b.is_zero() {
            self.k = 0;
        }
    }

    pub fn parts(&self) -> (&BigInt, &BigInt, u32) {
        (&self.a, &self.b, self.k)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.a.clone(), -&self.b, self.k)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::integer(1), |acc, _| &acc * self)
    }

    /// Exact division by `√2`.
    pub fn div_sqrt2(&self) -> Self {
        Self::new(&self.b * 2, self.a.clone(), self.k + 1)
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        (self.b.is_zero() && self.k == 0).then(|| self.a.clone())
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        (a + b * std::f64::consts::SQRT_2) / 2f64.powi(self.k as i32)
    }
}

impl Add for &RootTwoScalar {
    type Output = RootTwoScalar;

    fn add(self, rhs: &RootTwoScalar) -> RootTwoScalar {
        let k = self.k.max(rhs.k);
        let up = |x: &RootTwoScalar| (x.a.clone() << (k - x.k), x.b.clone() << (k - x.k));
        let (a1, b1) = up(self);
        let (a2, b2) = up(rhs);
        RootTwoScalar::new(a1 + a2, b1 + b2, k)
    }
}

impl Neg for &RootTwoScalar {
    type Output = RootTwoScalar;

    fn neg(self) -> RootTwoScalar {
        RootTwoScalar::new(-&self.a, -&self.b, self.k)
    }
}

impl Sub for &RootTwoScalar {
    type Output = RootTwoScalar;

    fn sub(self, rhs: &RootTwoScalar) -> RootTwoScalar {
        self + &(-rhs)
    }
}

impl Mul for &RootTwoScalar {
    type Output = RootTwoScalar;

    fn mul(self, rhs: &RootTwoScalar) -> RootTwoScalar {
        RootTwoScalar::new(
            &self.a * &rhs.a + (&self.b * &rhs.b) * 2,
            &self.a * &rhs.b + &self.b * &rhs.a,
            self.k + rhs.k,
        )
    }
}

impl fmt::Display for RootTwoScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => self.a.to_string(),
            (true, false) if self.b.is_one() => "sqrt(2)".to_string(),
            (true, false) => format!("{}*sqrt(2)", self.b),
            (false, false) => {
                let sign = if self.b.is_negative() { "-" } else { "+" };
                format!("({} {sign} {}*sqrt(2))", self.a, self.b.abs())
            }
        };
        if self.k == 0 {
            f.write_str(&num)
        } else {
            write!(f, "{num}/{}", BigInt::one() << self.k)
        }
    }
}

/// `L_{i,j} = ‖R^i S^j‖₁`: the best value of `[1, 0]` when `i` parties play
/// `(+,+,+,+)`, `j` play `(+,+,-,+)` and one more party answers optimally.
pub fn lij(i: u32, j: u32) -> BigInt {
    (&Mat4::r().pow(i) * &Mat4::s().pow(j)).norm1()
}

/// Same scenario scored with `[0, 1]`, whose matrix is `A − A³`.
pub fn lij_even(i: u32, j: u32) -> BigInt {
    let f = Mat4::of_signs([0, 1, 0, -1]);
    (&f * &(&Mat4::r().pow(i) * &Mat4::s().pow(j))).norm1()
}

/// `L_{i,j}` from the eigenvalues `α_{±±} = 1 ± (√2 ± 1) i` of `R` and `S`.
pub fn lij_spectral(i: u32, j: u32) -> f64 {
    let alpha = |s1: f64, s2: f64| Complex64::new(1.0, s1 * (std::f64::consts::SQRT_2 + s2));
    let (mp, pp, mm, pm) = (
        alpha(-1.0, 1.0),
        alpha(1.0, 1.0),
        alpha(-1.0, -1.0),
        alpha(1.0, -1.0),
    );
    let (i, j) = (i as i32, j as i32);
    let a = mp.powi(i) * mm.powi(j);
    let b = pp.powi(i) * pm.powi(j);
    let c = mm.powi(i) * mp.powi(j);
    let d = pm.powi(i) * pp.powi(j);
    let im = Complex64::i();
    0.25 * ((a + b + c + d).norm()
        + (a - b - c + d).norm()
        + (a + im * b - im * c - d).norm()
        + (a - im * b + im * c - d).norm())
}

fn check_parties(n: usize) -> Result<u32> {
    if n < 3 {
        return Err(Error::InvalidParams(format!("need N >= 3, got {n}")));
    }
    u32::try_from(n).map_err(|_| Error::InvalidParams(format!("N = {n} too large")))
}

/// Seeds computed from the matrices: `[1, 0]` for odd `N`, `[0, 1]` for even `N`,
/// with all parties on the trivial necklace.
fn seed(n: u32) -> BigInt {
    if n % 2 == 1 {
        lij(n - 1, 0)
    } else {
        lij_even(n - 1, 0)
    }
}

/// Local bound `L_N` of `[1, 0]` (odd `N`) or `[0, 1]` (even `N`) at `m = 4`,
/// from `L_{N+4} = 8 (L_{N+2} − L_N)`.
pub fn local_bound_m4(n: usize) -> Result<BigInt> {
    let n = check_parties(n)?;
    if n <= 6 {
        return Ok(seed(n));
    }
    let start = if n % 2 == 1 { 3 } else { 4 };
    let (mut prev, mut cur) = (seed(start), seed(start + 2));
    let mut k = start + 2;
    while k < n {
        let next = (&cur - &prev) * 8;
        prev = cur;
        cur = next;
        k += 2;
    }
    Ok(cur)
}

/// `l_n = (1 + 1/√2)^n − (1 − 1/√2)^n`.
pub fn lucas_l(n: u32) -> RootTwoScalar {
    let p = RootTwoScalar::new(2, 1, 1);
    &p.pow(n) - &p.conj().pow(n)
}

/// `L_{2n−1} = 4^{n−1} l_n / √2` and `L_{2n} = 4^n l_n / √2`.
pub fn local_bound_m4_closed(n: usize) -> Result<RootTwoScalar> {
    let n = check_parties(n)?;
    let half = n.div_ceil(2);
    let four = if n % 2 == 1 { half - 1 } else { half };
    let power = RootTwoScalar::integer(BigInt::one() << (2 * four));
    Ok((&power * &lucas_l(half)).div_sqrt2())
}

#[derive(Clone, Debug, PartialEq)]
pub struct VisibilityM4 {
    pub local_bound: BigInt,
    /// `4^{N−1}` or `4^{N−1} √2`.
    pub quantum_value: RootTwoScalar,
    pub visibility: RootTwoScalar,
    /// `L/Q` as written, e.g. `56/256` or `32/(64*sqrt(2))`.
    pub expression: String,
    pub value: f64,
}

pub fn visibility_m4(n: usize) -> Result<VisibilityM4> {
    let l = local_bound_m4(n)?;
    let q_int = BigInt::one() << (2 * (n - 1));
    let (quantum_value, visibility, expression) = if n % 2 == 1 {
        let v = RootTwoScalar::new(l.clone(), 0, 2 * (n as u32 - 1));
        (
            RootTwoScalar::integer(q_int.clone()),
            v,
            format!("{l}/{q_int}"),
        )
    } else {
        // L / (Q √2) = L √2 / (2 Q)
        let v = RootTwoScalar::new(0, l.clone(), 2 * (n as u32 - 1) + 1);
        (
            &RootTwoScalar::integer(q_int.clone()) * &RootTwoScalar::sqrt2(),
            v,
            format!("{l}/({q_int}*sqrt(2))"),
        )
    };
    let value = visibility.to_f64();
    Ok(VisibilityM4 {
        local_bound: l,
        quantum_value,
        visibility,
        expression,
        value,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AntidiagonalReport {
    pub n_max: usize,
    pub checks: usize,
    pub violations: Vec<String>,
    /// `(i, j)` with `j < i` where `L_{i,j+4} = 8 (L_{i,j+2} − L_{i,j})`
    /// does not hold; the identity is only used for `j ≥ i`.
    pub lower_exceptions: Vec<(u32, u32)>,
}

impl AntidiagonalReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verify `L_{i+2,j+2} = 8 L_{i,j}`, `L_{i,j+4} = 8 (L_{i,j+2} − L_{i,j})` for
/// `j ≥ i` (the table is symmetric), and that each antidiagonal
/// `i + j = N − 1` peaks at both edges, for all `N ≤ n_max`.
pub fn antidiagonal_check(n_max: usize) -> AntidiagonalReport {
    let n = n_max as u32;
    let table: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n - i).map(|j| lij(i, j)).collect())
        .collect();
    let at = |i: u32, j: u32| &table[i as usize][j as usize];
    let mut report = AntidiagonalReport {
        n_max,
        ..Default::default()
    };
    for i in 0..n {
        for j in 0..n - i {
            if i + j + 5 <= n {
                report.checks += 1;
                if *at(i + 2, j + 2) != at(i, j) * 8 {
                    report
                        .violations
                        .push(format!("L({},{}) != 8 L({i},{j})", i + 2, j + 2));
                }
                let holds = *at(i, j + 4) == (at(i, j + 2) - at(i, j)) * 8;
                if j >= i {
                    report.checks += 1;
                    if !holds {
                        report.violations.push(format!(
                            "L({i},{}) != 8 (L({i},{}) - L({i},{j}))",
                            j + 4,
                            j + 2
                        ));
                    }
                } else if !holds {
                    report.lower_exceptions.push((i, j));
                }
            }
        }
    }
    for parties in 2..=n {
        let d = parties - 1;
        let max = (0..=d).map(|i| at(i, d - i)).max().expect("nonempty");
        report.checks += 1;
        if at(d, 0) != max || at(0, d) != max {
            report.violations.push(format!(
                "antidiagonal N={parties} peaks away from the edges"
            ));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrices_match_definition() {
        let r = Mat4::r();
        let expect = [[1, 1, 1, 1], [-1, 1, 1, 1], [-1, -1, 1, 1], [-1, -1, -1, 1]];
        assert_eq!(r, Mat4::from_fn(|i, j| expect[i][j]));
        let s = Mat4::s();
        let expect = [[1, 1, -1, 1], [-1, 1, 1, -1], [1, -1, 1, 1], [-1, 1, -1, 1]];
        assert_eq!(s, Mat4::from_fn(|i, j| expect[i][j]));
        assert_eq!(Mat4::shift().pow(4), Mat4::identity().scale(-1));
        assert_eq!(&r * &s, &s * &r);
        assert_eq!(&r.pow(2) * &s.pow(2), Mat4::identity().scale(-8));
    }

    #[test]
    fn small_values() {
        assert_eq!(lij(0, 0), BigInt::from(1));
        assert_eq!(lij(1, 0), BigInt::from(4));
        assert_eq!(lij(4, 4), BigInt::from(64));
        assert_eq!(lij(0, 8), BigInt::from(2624));
        assert_eq!(lij(2, 2), BigInt::from(8));
        assert_eq!(lij(0, 4), BigInt::from(56));
    }

    #[test]
    fn recursion_and_closed_form_agree() {
        for n in 3..=30 {
            let rec = local_bound_m4(n).unwrap();
            let closed = local_bound_m4_closed(n).unwrap();
            assert_eq!(closed.to_integer(), Some(rec.clone()), "N={n}");
            let direct = if n % 2 == 1 {
                lij(n as u32 - 1, 0)
            } else {
                lij_even(n as u32 - 1, 0)
            };
            assert_eq!(direct, rec, "N={n}");
        }
        assert!(local_bound_m4(2).is_err());
    }

    #[test]
    fn visibilities() {
        let v = visibility_m4(5).unwrap();
        assert_eq!(v.expression, "56/256");
        assert!((v.value - 0.21875).abs() < 1e-15);
        let v = visibility_m4(4).unwrap();
        assert!((v.value - 0.353553).abs() < 1e-6);
        assert_eq!(v.visibility, RootTwoScalar::new(0, 1, 2));
        assert!((visibility_m4(10).unwrap().value - 0.028312).abs() < 1e-6);
    }

    #[test]
    fn spectral_form() {
        assert_eq!(Mat4::r().det().abs(), BigInt::from(8));
        for i in 0..=10 {
            for j in 0..=10 - i {
                let exact = lij(i, j).to_f64().unwrap();
                assert!(
                    (lij_spectral(i, j) - exact).abs() <= 1e-6 * exact,
                    "({i},{j})"
                );
            }
        }
    }

    #[test]
    fn antidiagonals() {
        let rep = antidiagonal_check(20);
        assert!(rep.passed(), "{:?}", rep.violations);
        assert!(rep.checks > 100);
        assert!(rep.lower_exceptions.contains(&(1, 0)));
        assert!(rep.lower_exceptions.iter().all(|&(i, j)| j < i));
    }

    #[test]
    fn scalar_display() {
        assert_eq!(RootTwoScalar::new(4, 2, 2).to_string(), "(2 + 1*sqrt(2))/2");
        assert_eq!(RootTwoScalar::new(0, 1, 0).to_string(), "sqrt(2)");
        assert_eq!(RootTwoScalar::new(6, 0, 1).to_string(), "3");
        assert_eq!(
            RootTwoScalar::new(1, -3, 3).to_string(),
            "(1 - 3*sqrt(2))/8"
        );
    }
}
