//! Exact integer linear algebra at desk scale.
//!
//! Everything here is fraction-free: row echelon forms use the Bareiss
//! division-exact recurrence, so all intermediate values are integers (in
//! fact minors of the input matrix). The routines are generic over a checked
//! `i128` fast path and an arbitrary-precision `BigInt` fallback.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Minimal integer interface for the fraction-free elimination.
///
/// `checked_*` returns `None` on overflow so an `i128` run can abort and get
/// retried with `BigInt`, whose implementation never fails.
pub trait ExactInt: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn checked_mul(&self, other: &Self) -> Option<Self>;
    fn checked_sub(&self, other: &Self) -> Option<Self>;
    /// Division known to be exact (Bareiss guarantees divisibility).
    fn exact_div(&self, other: &Self) -> Self;
    fn to_decimal(&self) -> String;
}

impl ExactInt for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        i128::checked_mul(*self, *other)
    }
    fn checked_sub(&self, other: &Self) -> Option<Self> {
        i128::checked_sub(*self, *other)
    }
    fn exact_div(&self, other: &Self) -> Self {
        debug_assert!(*other != 0 && self % other == 0);
        self / other
    }
    fn to_decimal(&self) -> String {
        self.to_string()
    }
}

impl ExactInt for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn checked_sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn exact_div(&self, other: &Self) -> Self {
        debug_assert!(!Zero::is_zero(other) && Zero::is_zero(&(self % other)));
        self / other
    }
    fn to_decimal(&self) -> String {
        self.to_string()
    }
}

/// Result of a fraction-free row echelon reduction.
pub struct Echelon<T> {
    pub mat: Vec<Vec<T>>,
    pub pivot_cols: Vec<usize>,
    /// Sign of the row permutation applied during pivoting.
    pub sign: i32,
}

impl<T: ExactInt> Echelon<T> {
    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }

    /// Determinant of the leading square block, valid when the pivots
    /// occupy the columns `0..r` (the Bareiss invariant: the last pivot is
    /// the corresponding minor, up to the permutation sign).
    pub fn leading_det(&self) -> Option<T> {
        let r = self.pivot_cols.len();
        if r == 0 {
            return Some(T::one());
        }
        if self.pivot_cols.iter().enumerate().any(|(i, &c)| i != c) {
            return None;
        }
        let pivot = self.mat[r - 1][r - 1].clone();
        Some(if self.sign < 0 {
            T::zero().checked_sub(&pivot).expect("negation")
        } else {
            pivot
        })
    }
}

/// Bareiss fraction-free row echelon form; `None` signals overflow.
pub fn bareiss_echelon<T: ExactInt>(mut mat: Vec<Vec<T>>) -> Option<Echelon<T>> {
    let rows = mat.len();
    let cols = if rows == 0 { 0 } else { mat[0].len() };
    let mut pivot_cols = Vec::new();
    let mut sign = 1i32;
    let mut prev = T::one();
    let mut r = 0usize;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        let pivot_row = (r..rows).find(|&i| !mat[i][c].is_zero());
        let Some(pr) = pivot_row else { continue };
        if pr != r {
            mat.swap(pr, r);
            sign = -sign;
        }
        for i in (r + 1)..rows {
            for j in (c + 1)..cols {
                let t1 = mat[i][j].checked_mul(&mat[r][c])?;
                let t2 = mat[i][c].checked_mul(&mat[r][j])?;
                mat[i][j] = t1.checked_sub(&t2)?.exact_div(&prev);
            }
            mat[i][c] = T::zero();
        }
        prev = mat[r][c].clone();
        pivot_cols.push(c);
        r += 1;
    }
    Some(Echelon {
        mat,
        pivot_cols,
        sign,
    })
}

/// Exact determinant of a small square integer matrix.
pub fn det_i64(mat: &[Vec<i64>]) -> i128 {
    let n = mat.len();
    let wide: Vec<Vec<i128>> = mat
        .iter()
        .map(|row| row.iter().map(|&v| v as i128).collect())
        .collect();
    debug_assert!(wide.iter().all(|row| row.len() == n));
    let ech = bareiss_echelon(wide).expect("i128 overflow on a desk-scale determinant");
    if ech.rank() < n {
        0
    } else {
        ech.leading_det().expect("full-rank square echelon")
    }
}

/// Inverse of a unimodular integer matrix (determinant +-1), by cofactors.
pub fn unimodular_inverse(mat: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let n = mat.len();
    let det = det_i64(mat);
    if det != 1 && det != -1 {
        return None;
    }
    let mut inv = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i64>> = mat
                .iter()
                .enumerate()
                .filter(|&(r, _)| r != i)
                .map(|(_, row)| {
                    row.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, &v)| v)
                        .collect()
                })
                .collect();
            let cof = if (i + j) % 2 == 0 {
                det_i64(&minor)
            } else {
                -det_i64(&minor)
            };
            inv[j][i] = (cof * det) as i64; // det is +-1, so this is cof/det
        }
    }
    Some(inv)
}

/// Row-style Hermite reduction by unimodular row operations: pivots made
/// positive, entries above each pivot reduced. Used only to canonicalize
/// small form bases, so no overflow handling.
pub fn hermite_reduce(mut mat: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    let rows = mat.len();
    let cols = if rows == 0 { 0 } else { mat[0].len() };
    let mut r = 0usize;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..rows {
                if mat[i][c] != 0
                    && best.map_or(true, |b| mat[i][c].abs() < mat[b][c].abs())
                {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            mat.swap(r, b);
            let mut finished = true;
            for i in (r + 1)..rows {
                if mat[i][c] != 0 {
                    let q = mat[i][c] / mat[r][c];
                    for j in 0..cols {
                        mat[i][j] -= q * mat[r][j];
                    }
                    if mat[i][c] != 0 {
                        finished = false;
                    }
                }
            }
            if finished {
                break;
            }
        }
        if mat[r][c] == 0 {
            continue;
        }
        if mat[r][c] < 0 {
            for j in 0..cols {
                mat[r][j] = -mat[r][j];
            }
        }
        for i in 0..r {
            let q = mat[i][c].div_euclid(mat[r][c]);
            if q != 0 {
                for j in 0..cols {
                    mat[i][j] -= q * mat[r][j];
                }
            }
        }
        r += 1;
    }
    mat
}

/// Extended gcd: returns `(g, x, y)` with `a*x + b*y = g` and `g >= 0`.
pub fn extended_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn echelon_rank_and_det() {
        let mat: Vec<Vec<i128>> = vec![vec![1, 2, 1], vec![1, 1, 0]];
        let ech = bareiss_echelon(mat).unwrap();
        assert_eq!(ech.pivot_cols, vec![0, 1]);
        assert_eq!(ech.leading_det(), Some(-1));
    }

    #[test]
    fn echelon_detects_rank_deficiency() {
        let mat: Vec<Vec<i128>> = vec![vec![1, 2], vec![2, 4]];
        let ech = bareiss_echelon(mat).unwrap();
        assert_eq!(ech.rank(), 1);
    }

    #[test]
    fn bigint_route_agrees_with_i128() {
        let rows = vec![vec![3i64, 1, 4], vec![1, 5, 9], vec![2, 6, 5]];
        let as_i128: Vec<Vec<i128>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| v as i128).collect())
            .collect();
        let as_big: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        let d1 = bareiss_echelon(as_i128).unwrap().leading_det().unwrap();
        let d2 = bareiss_echelon(as_big).unwrap().leading_det().unwrap();
        assert_eq!(d2, BigInt::from(d1));
        assert_eq!(d1, det_i64(&rows));
    }

    #[test]
    fn unimodular_inverse_round_trip() {
        let u = vec![vec![1i64, 0, 0], vec![1, 1, 0], vec![1, 0, 1]];
        let inv = unimodular_inverse(&u).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let prod: i64 = (0..3).map(|k| u[i][k] * inv[k][j]).sum();
                assert_eq!(prod, if i == j { 1 } else { 0 });
            }
        }
    }

    #[test]
    fn extended_gcd_bezout() {
        for &(a, b) in &[(12, 18), (-5, 3), (0, 7), (1, -1), (270, -192)] {
            let (g, x, y) = extended_gcd(a, b);
            assert_eq!(a * x + b * y, g);
            assert!(g >= 0);
        }
    }

    #[test]
    fn hermite_reduce_canonicalizes() {
        let m = hermite_reduce(vec![vec![1, 1, 0], vec![1, 0, 1]]);
        assert_eq!(m, vec![vec![1, 0, 1], vec![0, 1, -1]]);
    }
}
