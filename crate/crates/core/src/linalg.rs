//! Exact rational linear algebra for small systems.

#![allow(clippy::needless_range_loop)]

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

type Q = BigRational;

/// Solve the square system `a x = b`.
pub fn solve(a: &[Vec<Q>], b: &[Q]) -> Result<Vec<Q>> {
    let n = a.len();
    if b.len() != n || a.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidInput("system is not square".into()));
    }
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .ok_or_else(|| Error::Singular(format!("no pivot in column {col}")))?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for v in m[col].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..=n {
                    let delta = &factor * &m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
    }
    Ok(m.into_iter()
        .map(|mut r| r.pop().expect("augmented"))
        .collect())
}

/// Rows kept in reduced echelon form, for incremental rank tests.
#[derive(Clone, Debug, Default)]
pub struct RowBasis {
    rows: Vec<(usize, Vec<Q>)>,
}

impl RowBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, row: &[Q]) -> Vec<Q> {
        let mut r = row.to_vec();
        for (pivot, basis) in &self.rows {
            if !r[*pivot].is_zero() {
                let factor = r[*pivot].clone();
                for (x, y) in r.iter_mut().zip(basis) {
                    *x -= &factor * y;
                }
            }
        }
        r
    }

    /// Whether `row` lies in the span of the stored rows.
    pub fn contains(&self, row: &[Q]) -> bool {
        self.reduce(row).iter().all(Zero::is_zero)
    }

    /// Adds `row` if it is independent; returns whether it was added.
    pub fn insert(&mut self, row: &[Q]) -> bool {
        let mut r = self.reduce(row);
        let Some(pivot) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[pivot].recip();
        for x in r.iter_mut() {
            *x = &*x * &inv;
        }
        for (_, basis) in self.rows.iter_mut() {
            if !basis[pivot].is_zero() {
                let factor = basis[pivot].clone();
                for (x, y) in basis.iter_mut().zip(&r) {
                    *x -= &factor * y;
                }
            }
        }
        self.rows.push((pivot, r));
        true
    }
}

pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut basis = RowBasis::new();
    for r in rows {
        basis.insert(r);
    }
    basis.rank()
}

/// A nonzero `x` with `rows · x = 0`, or `None` if the rows have full
/// column rank. Picks the first free column of the reduced echelon form.
pub fn null_vector(rows: &[Vec<Q>], dim: usize) -> Option<Vec<Q>> {
    let mut a: Vec<Vec<Q>> = rows.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..dim {
        let Some(p) = (row..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..a.len() {
            if r != row && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in 0..dim {
                    let delta = &factor * &a[row][c];
                    a[r][c] -= delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free = (0..dim).find(|c| !pivots.contains(c))?;
    let mut x = vec![Q::zero(); dim];
    x[free] = Q::one();
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = -a[r][free].clone();
    }
    Some(x)
}

/// Whether `point` is a convex combination of `points`.
///
/// Phase-one simplex on `Σ λ_i p_i = point, Σ λ_i = 1, λ ≥ 0` with Bland's
/// rule, so it terminates on degenerate inputs.
pub fn in_convex_hull(point: &[Q], points: &[&[Q]]) -> bool {
    if points.is_empty() {
        return false;
    }
    let d = point.len();
    let rows = d + 1;
    let n = points.len();
    // Columns: n structural, then `rows` artificial, then the right-hand side.
    let width = n + rows + 1;
    let mut t: Vec<Vec<Q>> = Vec::with_capacity(rows + 1);
    for i in 0..rows {
        let mut row = vec![Q::zero(); width];
        let rhs = if i < d { point[i].clone() } else { Q::one() };
        let flip = rhs.is_negative();
        for (j, p) in points.iter().enumerate() {
            let v = if i < d { p[i].clone() } else { Q::one() };
            row[j] = if flip { -v } else { v };
        }
        row[n + i] = Q::one();
        row[width - 1] = if flip { -rhs } else { rhs };
        t.push(row);
    }
    // Objective row: minimize the sum of artificials, written in reduced form.
    let mut obj = vec![Q::zero(); width];
    for row in &t {
        for (c, v) in row.iter().enumerate() {
            if c < n || c == width - 1 {
                obj[c] -= v;
            }
        }
    }
    t.push(obj);
    let mut basis: Vec<usize> = (n..n + rows).collect();
    loop {
        let obj = &t[rows];
        let Some(enter) = (0..width - 1).find(|&c| obj[c].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Q)> = None;
        for (r, row) in t.iter().take(rows).enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[width - 1] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let Some((pr, _)) = leave else {
            // Unbounded cannot happen for a nonnegative objective.
            break;
        };
        let inv = t[pr][enter].recip();
        for v in t[pr].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot_row = t[pr].clone();
        for (r, row) in t.iter_mut().enumerate() {
            if r != pr && !row[enter].is_zero() {
                let factor = row[enter].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &factor * y;
                }
            }
        }
        basis[pr] = enter;
    }
    t[rows][width - 1].is_zero()
}

/// Floating-point solve with partial pivoting; `None` if numerically singular.
pub fn solve_f64(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    let scale = a
        .iter()
        .flatten()
        .fold(0.0f64, |acc, x| acc.max(x.abs()))
        .max(f64::MIN_POSITIVE);
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() <= 1e-13 * scale {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for r in col + 1..n {
            let factor = a[r][col] / a[col][col];
            if factor != 0.0 {
                for c in col..n {
                    a[r][c] -= factor * a[col][c];
                }
                b[r] -= factor * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let tail: f64 = (r + 1..n).map(|c| a[r][c] * x[c]).sum();
        x[r] = (b[r] - tail) / a[r][r];
    }
    Some(x)
}

/// Non-negative least squares `min ‖A x − b‖, x ≥ 0` (Lawson-Hanson), with
/// `A` given by columns. Returns `x` and the residual norm.
pub fn nnls(columns: &[Vec<f64>], b: &[f64]) -> (Vec<f64>, f64) {
    let n = columns.len();
    let dot = |u: &[f64], v: &[f64]| u.iter().zip(v).map(|(a, c)| a * c).sum::<f64>();
    let residual = |x: &[f64]| -> Vec<f64> {
        let mut r = b.to_vec();
        for (col, &xj) in columns.iter().zip(x) {
            if xj != 0.0 {
                for (ri, ci) in r.iter_mut().zip(col) {
                    *ri -= xj * ci;
                }
            }
        }
        r
    };
    let scale = columns
        .iter()
        .map(|c| dot(c, c))
        .fold(dot(b, b), f64::max)
        .max(f64::MIN_POSITIVE);
    let tol = 1e-12 * scale;
    let mut x = vec![0.0; n];
    let mut passive = vec![false; n];
    // Columns dependent on the passive set at the time they were tried.
    let mut excluded = vec![false; n];
    // Least squares restricted to the passive columns.
    let restricted = |passive: &[bool]| -> Option<Vec<f64>> {
        let idx: Vec<usize> = (0..n).filter(|&j| passive[j]).collect();
        let gram: Vec<Vec<f64>> = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| dot(&columns[i], &columns[j])).collect())
            .collect();
        let rhs: Vec<f64> = idx.iter().map(|&i| dot(&columns[i], b)).collect();
        let sol = solve_f64(gram, rhs)?;
        let mut z = vec![0.0; n];
        for (&i, v) in idx.iter().zip(sol) {
            z[i] = v;
        }
        Some(z)
    };
    for _ in 0..3 * n.max(1) {
        let r = residual(&x);
        let Some(j) = (0..n)
            .filter(|&j| !passive[j] && !excluded[j])
            .map(|j| (j, dot(&columns[j], &r)))
            .filter(|&(_, w)| w > tol)
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(j, _)| j)
        else {
            break;
        };
        passive[j] = true;
        loop {
            let Some(z) = restricted(&passive) else {
                passive[j] = false;
                excluded[j] = true;
                break;
            };
            if (0..n).all(|i| !passive[i] || z[i] > 0.0) {
                x = z;
                break;
            }
            let alpha = (0..n)
                .filter(|&i| passive[i] && z[i] <= 0.0)
                .map(|i| x[i] / (x[i] - z[i]))
                .fold(f64::INFINITY, f64::min);
            for i in 0..n {
                x[i] += alpha * (z[i] - x[i]);
                if passive[i] && x[i] <= 1e-15 {
                    passive[i] = false;
                    x[i] = 0.0;
                }
            }
        }
    }
    let r = residual(&x);
    (x, dot(&r, &r).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> Q {
        Q::new(BigInt::from(n), BigInt::from(d))
    }

    fn v(xs: &[(i64, i64)]) -> Vec<Q> {
        xs.iter().map(|&(n, d)| q(n, d)).collect()
    }

    #[test]
    fn solves_small_system() {
        let a = vec![v(&[(3, 1), (2, 1)]), v(&[(-3, 1), (6, 1)])];
        let b = v(&[(1, 1), (1, 1)]);
        assert_eq!(solve(&a, &b).unwrap(), v(&[(1, 6), (1, 4)]));
        let sing = vec![v(&[(1, 1), (2, 1)]), v(&[(2, 1), (4, 1)])];
        assert!(matches!(solve(&sing, &b), Err(Error::Singular(_))));
    }

    #[test]
    fn rank_tracking() {
        let mut b = RowBasis::new();
        assert!(b.insert(&v(&[(1, 1), (1, 3), (0, 1)])));
        assert!(!b.insert(&v(&[(3, 1), (1, 1), (0, 1)])));
        assert!(b.insert(&v(&[(0, 1), (0, 1), (5, 2)])));
        assert!(b.contains(&v(&[(2, 1), (2, 3), (7, 1)])));
        assert_eq!(b.rank(), 2);
        assert_eq!(rank(&[v(&[(0, 1)]), v(&[(0, 1)])]), 0);
    }

    #[test]
    fn hull_membership() {
        let a = v(&[(1, 1), (1, 3)]);
        let b = v(&[(-1, 1), (1, 1)]);
        let c = v(&[(1, 1), (-1, 1)]);
        let mid = v(&[(0, 1), (2, 3)]);
        assert!(in_convex_hull(&mid, &[&a, &b]));
        assert!(!in_convex_hull(&a, &[&b, &c]));
        assert!(in_convex_hull(&a, &[&a]));
        let inside = v(&[(1, 3), (1, 9)]);
        assert!(in_convex_hull(&inside, &[&a, &b, &c]));
        let outside = v(&[(2, 1), (0, 1)]);
        assert!(!in_convex_hull(&outside, &[&a, &b, &c]));
        assert!(!in_convex_hull(&outside, &[]));
    }

    #[test]
    fn float_solve() {
        let x = solve_f64(vec![vec![0.0, 2.0], vec![4.0, 1.0]], vec![2.0, 9.0]).unwrap();
        assert!((x[0] - 2.0).abs() < 1e-15 && (x[1] - 1.0).abs() < 1e-15);
        assert!(solve_f64(vec![vec![1.0, 2.0], vec![2.0, 4.0]], vec![1.0, 1.0]).is_none());
    }

    #[test]
    fn nnls_recovers_nonnegative_combination() {
        let cols = vec![
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            vec![1.0, 1.0],
            vec![-1.0, 0.0],
        ];
        let (x, res) = nnls(&cols, &[0.5, 0.7]);
        assert!(res < 1e-12);
        assert!(x.iter().all(|&v| v >= 0.0));
        let (_, res) = nnls(&cols[..3], &[-1.0, 0.0]);
        assert!((res - 1.0).abs() < 1e-12);
    }

    #[test]
    fn null_vector_is_orthogonal_to_rows() {
        let rows = vec![
            vec![q(1, 1), q(2, 1), q(3, 1)],
            vec![q(0, 1), q(1, 1), q(1, 2)],
        ];
        let x = null_vector(&rows, 3).unwrap();
        for r in &rows {
            let dot: Q = r.iter().zip(&x).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
        assert!(x.iter().any(|v| !v.is_zero()));
        let full = vec![vec![q(1, 1), q(0, 1)], vec![q(0, 1), q(1, 1)]];
        assert!(null_vector(&full, 2).is_none());
    }
}
