//! Small integer utilities shared by every module.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Inverse modulo a prime `p`; `a` must be nonzero mod `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime(c) {
        c += 1;
    }
    c
}

/// Splits `q` as `p^n` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    if is_prime(q) {
        return Some((q, 1));
    }
    let mut p = 2u64;
    while !q.is_multiple_of(p) {
        p += 1;
        if p.saturating_mul(p) > q {
            return None;
        }
    }
    let mut m = q;
    let mut n = 0;
    while m.is_multiple_of(p) {
        m /= p;
        n += 1;
    }
    (m == 1).then_some((p, n))
}

/// p-adic valuation of a nonzero integer; `None` stands for +infinity.
pub fn valuation(x: &BigInt, p: u64) -> Option<u32> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut v = 0;
    let mut m = x.clone();
    loop {
        let (d, r) = m.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        m = d;
        v += 1;
    }
}

/// p-adic valuation of a nonzero rational.
pub fn valuation_rat(x: &BigRational, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let a = valuation(x.numer(), p)? as i64;
    let b = valuation(x.denom(), p)? as i64;
    Some(a - b)
}

/// Exact square root of a nonnegative integer, if it is a perfect square.
pub fn exact_sqrt(x: &BigInt) -> Option<BigInt> {
    if x.is_negative() {
        return None;
    }
    let r = x.sqrt();
    (&r * &r == *x).then_some(r)
}

pub fn exact_sqrt_u64(x: u64) -> Option<u64> {
    let r = x.sqrt();
    (r * r == x).then_some(r)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

pub fn pow_big(base: &BigInt, e: u32) -> BigInt {
    num_traits::pow(base.clone(), e as usize)
}

/// Floor of `sqrt(x) * 2^bits` for a nonnegative rational, as an integer.
pub fn sqrt_floor_scaled(x: &BigRational, bits: u32) -> BigInt {
    // floor(sqrt(num * 4^bits / den))
    let scaled = (x.numer() << (2 * bits as usize)) / x.denom();
    match scaled.to_biguint() {
        Some(u) => BigInt::from_biguint(Sign::Plus, u.sqrt()),
        None => BigInt::zero(),
    }
}

/// Rational bounds `lo <= sqrt(x) <= hi` with denominators `2^bits`.
pub fn sqrt_bounds(x: &BigRational, bits: u32) -> (BigRational, BigRational) {
    let den = BigInt::one() << bits as usize;
    let f = sqrt_floor_scaled(x, bits);
    let lo = BigRational::new(f.clone(), den.clone());
    let hi = if &lo * &lo == *x {
        lo.clone()
    } else {
        BigRational::new(f + 1, den)
    };
    (lo, hi)
}

/// Smallest integer `>= x`.
pub fn ceil_rat(x: &BigRational) -> BigInt {
    x.ceil().to_integer()
}

pub fn floor_rat(x: &BigRational) -> BigInt {
    x.floor().to_integer()
}

pub fn biguint_to_u64(x: &BigUint) -> Option<u64> {
    x.to_u64()
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int_rat(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_powers() {
        assert!(is_prime(2) && is_prime(3) && is_prime(1_000_000_007));
        assert!(!is_prime(1) && !is_prime(91) && !is_prime(3_215_031_751));
        assert_eq!(prime_power(128), Some((2, 7)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(13), Some((13, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(49), Some((7, 2)));
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation(&BigInt::from(48), 2), Some(4));
        assert_eq!(valuation(&BigInt::from(-7), 7), Some(1));
        assert_eq!(valuation(&BigInt::zero(), 3), None);
        assert_eq!(valuation_rat(&rat(3, 8), 2), Some(-3));
    }

    #[test]
    fn binomials_and_roots() {
        assert_eq!(binomial(12, 6), BigInt::from(924));
        assert_eq!(binomial(14, 7), BigInt::from(3432));
        assert_eq!(exact_sqrt(&BigInt::from(144)), Some(BigInt::from(12)));
        assert_eq!(exact_sqrt(&BigInt::from(2)), None);
        let (lo, hi) = sqrt_bounds(&rat(2, 1), 20);
        assert!(&lo * &lo < rat(2, 1) && &hi * &hi > rat(2, 1));
        let (lo, hi) = sqrt_bounds(&rat(9, 4), 5);
        assert_eq!(lo, rat(3, 2));
        assert_eq!(hi, rat(3, 2));
    }
}
