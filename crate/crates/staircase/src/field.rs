//! Prime-field arithmetic and dense exact rank over `F_p`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};

/// Default oracle modulus: the Mersenne prime `2^61 - 1`.
pub const DEFAULT_MODULUS: u64 = (1u64 << 61) - 1;

/// Deterministic Miller-Rabin over the full `u64` range.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// The field `F_p` for a prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Result<Fp> {
        if is_prime_u64(p) {
            Ok(Fp { p })
        } else {
            Err(Error::CompositeModulus(p))
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b; // both < p <= 2^61-1, no overflow
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.p)
    }

    pub fn pow(&self, base: u64, exp: u64) -> u64 {
        pow_mod(base, exp, self.p)
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    pub fn reduce_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    pub fn reduce_big(&self, v: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        let mut r = v % &m;
        if r.is_negative() {
            r += &m;
        }
        r.to_u64().expect("reduced residue fits u64")
    }

    /// Rank of a dense matrix by in-place Gaussian elimination.
    pub fn rank(&self, mut rows: Vec<Vec<u64>>) -> usize {
        let n = rows.len();
        let cols = rows.first().map_or(0, Vec::len);
        let mut rank = 0usize;
        for c in 0..cols {
            if rank >= n {
                break;
            }
            let Some(pivot) = (rank..n).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(rank, pivot);
            let inv = self.inv(rows[rank][c]);
            for i in (rank + 1)..n {
                if rows[i][c] == 0 {
                    continue;
                }
                let factor = self.mul(rows[i][c], inv);
                let (head, tail) = rows.split_at_mut(rank + 1);
                let pivot_row = &head[rank];
                let row = &mut tail[i - rank - 1];
                for j in c..cols {
                    row[j] = self.sub(row[j], self.mul(factor, pivot_row[j]));
                }
            }
            rank += 1;
        }
        rank
    }

    /// Determinant of a square matrix over `F_p`.
    pub fn det(&self, mut rows: Vec<Vec<u64>>) -> u64 {
        let n = rows.len();
        if n == 0 {
            return 1 % self.p;
        }
        let mut det = 1u64;
        for c in 0..n {
            let Some(pivot) = (c..n).find(|&i| rows[i][c] != 0) else {
                return 0;
            };
            if pivot != c {
                rows.swap(c, pivot);
                det = self.sub(0, det);
            }
            det = self.mul(det, rows[c][c]);
            let inv = self.inv(rows[c][c]);
            for i in (c + 1)..n {
                if rows[i][c] == 0 {
                    continue;
                }
                let factor = self.mul(rows[i][c], inv);
                let (head, tail) = rows.split_at_mut(c + 1);
                let pivot_row = &head[c];
                let row = &mut tail[i - c - 1];
                for j in c..n {
                    row[j] = self.sub(row[j], self.mul(factor, pivot_row[j]));
                }
            }
        }
        det
    }

    /// Pascal table of binomial coefficients `binom(n, k) mod p` for
    /// `n, k <= bound`.
    pub fn binomial_table(&self, bound: usize) -> Vec<Vec<u64>> {
        let mut table = vec![vec![0u64; bound + 1]; bound + 1];
        for n in 0..=bound {
            table[n][0] = 1 % self.p;
            for k in 1..=n {
                let above = table[n - 1][k - 1];
                let left = if k <= n - 1 { table[n - 1][k] } else { 0 };
                table[n][k] = self.add(above, left);
            }
        }
        table
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_spot_checks() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(DEFAULT_MODULUS));
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(561)); // Carmichael
        assert!(!is_prime_u64((1u64 << 61) - 3));
    }

    #[test]
    fn field_arithmetic() {
        let fp = Fp::new(101).unwrap();
        assert_eq!(fp.add(100, 2), 1);
        assert_eq!(fp.sub(1, 2), 100);
        assert_eq!(fp.mul(51, 2), 1);
        assert_eq!(fp.mul(fp.inv(7), 7), 1);
        assert_eq!(fp.reduce_i64(-1), 100);
        assert!(Fp::new(100).is_err());
    }

    #[test]
    fn rank_and_det_small() {
        let fp = Fp::new(97).unwrap();
        let rows = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        assert_eq!(fp.rank(rows.clone()), 2);
        assert_eq!(fp.det(rows), 0);
        let m = vec![vec![1, 2], vec![1, 1]];
        assert_eq!(fp.det(m), 97 - 1);
    }

    #[test]
    fn binomial_table_matches_exact() {
        let fp = Fp::new(1_000_003).unwrap();
        let table = fp.binomial_table(10);
        assert_eq!(table[10][5], 252);
        assert_eq!(table[7][0], 1);
        assert_eq!(table[6][6], 1);
        assert_eq!(table[4][3], 4);
    }
}
