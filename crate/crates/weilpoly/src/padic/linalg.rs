//! Small dense linear algebra over F_p, Q and Z/p^k.

#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{inv_mod, mul_mod};

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut [Vec<u64>], p: u64) -> Vec<usize> {
    let width = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let Some(sel) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = inv_mod(rows[r][col], p);
        for x in rows[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][col] != 0 {
                let c = rows[i][col];
                for j in 0..width {
                    let sub = mul_mod(c, rows[r][j], p);
                    rows[i][j] = (rows[i][j] + p - sub) % p;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[Vec<u64>], p: u64) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, p).len()
}

/// Basis of `{c : Σ c_i rows_i = 0}` in reduced echelon form.
pub fn left_kernel(rows: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = rows.len();
    let w = rows.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<u64>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.clone();
            v.extend((0..n).map(|j| u64::from(i == j)));
            v
        })
        .collect();
    rref(&mut aug, p);
    let mut ker: Vec<Vec<u64>> = aug
        .into_iter()
        .filter(|r| r[..w].iter().all(|&x| x == 0))
        .map(|r| r[w..].to_vec())
        .collect();
    rref(&mut ker, p);
    ker.retain(|r| r.iter().any(|&x| x != 0));
    ker
}

/// Inverse of a square integer matrix over Q, `None` when singular.
pub fn inverse_q(m: &[Vec<BigInt>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut v: Vec<BigRational> = row.iter().cloned().map(BigRational::from_integer).collect();
            v.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            v
        })
        .collect();
    for col in 0..n {
        let sel = (col..n).find(|&i| !a[i][col].is_zero())?;
        a.swap(col, sel);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..n {
            if i != col && !a[i][col].is_zero() {
                let c = a[i][col].clone();
                for j in 0..2 * n {
                    let s = &c * &a[col][j];
                    a[i][j] -= s;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// `M⁻¹ = num / den` for an integer matrix, so products with integer
/// vectors stay in integer arithmetic.
pub struct ScaledInverse {
    num: Vec<Vec<BigInt>>,
    den: BigInt,
}

impl ScaledInverse {
    pub fn new(m: &[Vec<BigInt>]) -> Option<Self> {
        let inv = inverse_q(m)?;
        let den = inv
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let num = inv
            .iter()
            .map(|r| r.iter().map(|x| x.numer() * (&den / x.denom())).collect())
            .collect();
        Some(ScaledInverse { num, den })
    }

    /// `v · M⁻¹ · scale` when it is integral.
    pub fn apply(&self, v: &[BigInt], scale: &BigInt) -> Option<Vec<BigInt>> {
        let w = self.num.first().map_or(0, |r| r.len());
        let mut out = vec![BigInt::zero(); w];
        for (vi, row) in v.iter().zip(&self.num) {
            if vi.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(row) {
                if !x.is_zero() {
                    *o += vi * x;
                }
            }
        }
        out.into_iter()
            .map(|x| {
                let (q, r) = (x * scale).div_rem(&self.den);
                r.is_zero().then_some(q)
            })
            .collect()
    }
}

/// Inverse of a unit modulo `m`.
pub fn unit_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// `v_p(det M)` from a matrix known modulo `p^k`; `None` when the
/// valuation is at least `k`.
pub fn det_valuation_mod(m: &[Vec<BigInt>], p: u64, k: u32) -> Option<u32> {
    let pb = BigInt::from(p);
    let modulus = pb.pow(k);
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|x| x.mod_floor(&modulus)).collect())
        .collect();
    let val = |x: &BigInt| -> u32 {
        if x.is_zero() {
            return k;
        }
        let mut v = 0;
        let mut y = x.clone();
        while v < k && y.is_multiple_of(&pb) {
            y /= &pb;
            v += 1;
        }
        v
    };
    let mut total = 0u32;
    for col in 0..n {
        let (mut best, mut bv) = (None, k);
        for i in col..n {
            for j in col..n {
                let v = val(&a[i][j]);
                if v < bv {
                    bv = v;
                    best = Some((i, j));
                }
            }
        }
        let (bi, bj) = best?;
        a.swap(col, bi);
        for row in a.iter_mut() {
            row.swap(col, bj);
        }
        total += bv;
        if total >= k {
            return None;
        }
        let scale = pb.pow(bv);
        let unit = &a[col][col] / &scale;
        let uinv = unit_inverse(&unit, &modulus).expect("pivot is a unit times p^v");
        for i in col + 1..n {
            if a[i][col].is_zero() {
                continue;
            }
            let factor = (&a[i][col] / &scale * &uinv).mod_floor(&modulus);
            for j in col..n {
                let s = &factor * &a[col][j];
                a[i][j] = (&a[i][j] - s).mod_floor(&modulus);
            }
        }
    }
    Some(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_and_rank() {
        let rows = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        assert_eq!(rank(&rows, 7), 2);
        let ker = left_kernel(&rows, 7);
        assert_eq!(ker, vec![vec![1, 3, 0]]);
    }

    #[test]
    fn inverse_and_det_valuation() {
        let m = vec![
            vec![BigInt::from(2), BigInt::from(1)],
            vec![BigInt::from(0), BigInt::from(4)],
        ];
        let inv = inverse_q(&m).unwrap();
        assert_eq!(inv[0][1], BigRational::new((-1).into(), 8.into()));
        assert_eq!(det_valuation_mod(&m, 2, 6), Some(3));
        assert_eq!(det_valuation_mod(&m, 2, 3), None);
        assert_eq!(det_valuation_mod(&m, 3, 2), Some(0));
    }
}
