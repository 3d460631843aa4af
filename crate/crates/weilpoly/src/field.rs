//! Coefficient fields: the rationals and the real quadratic field Q(√q).
//!
//! Polynomial algorithms are written once against [`Field`] and run over
//! both. Elements of Q(√q) are [`QuadReal`] values that carry their radicand;
//! the field object fixes it for a whole computation.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{exact_sqrt, sqrt_bounds};
use crate::error::DomainError;

/// A field with explicit context, so elements need not know how to build
/// their own zero. Constructors take `&self` because the quadratic field
/// carries its radicand.
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn from_rational(&self, r: &BigRational) -> Self::Elem;

    fn from_int(&self, n: i64) -> Self::Elem {
        self.from_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }
}

/// An ordered subfield of the reals with exact sign and rational enclosures.
pub trait OrderedField: Field {
    fn sign(&self, a: &Self::Elem) -> Ordering;
    /// Rational bounds `lo <= a <= hi` whose width shrinks like `2^-bits`.
    fn enclose(&self, a: &Self::Elem, bits: u32) -> (BigRational, BigRational);

    fn abs(&self, a: &Self::Elem) -> Self::Elem {
        if self.sign(a) == Ordering::Less {
            self.neg(a)
        } else {
            a.clone()
        }
    }

    fn cmp(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering {
        self.sign(&self.sub(a, b))
    }

    /// Sign of `p(x)` at a rational point. The default evaluates in the
    /// field; implementations may use cheaper integer arithmetic.
    fn sign_at_rational(&self, p: &[Self::Elem], x: &BigRational) -> Ordering {
        let v = p
            .iter()
            .rev()
            .fold(self.zero(), |acc, c| {
                self.add(&self.mul(&acc, &self.from_rational(x)), c)
            });
        self.sign(&v)
    }
}

/// `d^m · p(n/d)` for integer coefficients, `m = deg p`.
fn homogeneous_eval(p: &[BigInt], n: &BigInt, d: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    let mut dpow = BigInt::one();
    for c in p.iter().rev() {
        acc = acc * n + c * &dpow;
        dpow *= d;
    }
    acc
}

/// Scale rationals by the lcm of their denominators.
fn clear_denominators(xs: &[&BigRational]) -> Vec<BigInt> {
    let l = xs
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    xs.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

/// The rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RatField;

impl Field for RatField {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn from_rational(&self, r: &BigRational) -> BigRational {
        r.clone()
    }
}

impl OrderedField for RatField {
    fn sign(&self, a: &BigRational) -> Ordering {
        a.cmp(&BigRational::zero())
    }
    fn enclose(&self, a: &BigRational, _bits: u32) -> (BigRational, BigRational) {
        (a.clone(), a.clone())
    }

    fn sign_at_rational(&self, p: &[BigRational], x: &BigRational) -> Ordering {
        let c = clear_denominators(&p.iter().collect::<Vec<_>>());
        homogeneous_eval(&c, x.numer(), x.denom()).cmp(&BigInt::zero())
    }
}

/// Exact real number `a + b·√q`.
///
/// When `q` is a perfect square the value is kept in the form `b = 0`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadReal {
    a: BigRational,
    b: BigRational,
    q: BigInt,
}

impl QuadReal {
    pub fn new(a: BigRational, b: BigRational, q: BigInt) -> Result<Self, DomainError> {
        if !q.is_positive() {
            return Err(DomainError::BadRadicand(q));
        }
        Ok(Self::normalized(a, b, q))
    }

    fn normalized(a: BigRational, b: BigRational, q: BigInt) -> Self {
        match exact_sqrt(&q) {
            Some(s) if !b.is_zero() => QuadReal {
                a: a + b * BigRational::from_integer(s),
                b: BigRational::zero(),
                q,
            },
            _ => QuadReal { a, b, q },
        }
    }

    pub fn rational(a: BigRational, q: &BigInt) -> Self {
        QuadReal {
            a,
            b: BigRational::zero(),
            q: q.clone(),
        }
    }

    pub fn from_ints(a: i64, b: i64, q: i64) -> Self {
        Self::normalized(
            BigRational::from_integer(a.into()),
            BigRational::from_integer(b.into()),
            BigInt::from(q),
        )
    }

    /// The number `√q` itself.
    pub fn sqrt_q(q: &BigInt) -> Self {
        Self::normalized(BigRational::zero(), BigRational::one(), q.clone())
    }

    fn with_b(self, b: BigRational) -> Self {
        Self::normalized(self.a, b, self.q)
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }
    pub fn b(&self) -> &BigRational {
        &self.b
    }
    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.a)
    }

    /// Exact sign, decided by the signs of `a`, `b` and `a²` against `b²q`.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let b2q = &self.b * &self.b * BigRational::from_integer(self.q.clone());
        match a2.cmp(&b2q) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self, DomainError> {
        self.same_q(o)?;
        Ok(QuadField::of(&self.q).add(self, o))
    }
    pub fn checked_sub(&self, o: &Self) -> Result<Self, DomainError> {
        self.same_q(o)?;
        Ok(QuadField::of(&self.q).sub(self, o))
    }
    pub fn checked_mul(&self, o: &Self) -> Result<Self, DomainError> {
        self.same_q(o)?;
        Ok(QuadField::of(&self.q).mul(self, o))
    }

    fn same_q(&self, o: &Self) -> Result<(), DomainError> {
        if self.q == o.q {
            Ok(())
        } else {
            Err(DomainError::RadicandMismatch(self.q.clone(), o.q.clone()))
        }
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let q = self.q.to_f64().unwrap_or(f64::NAN);
        a + b * q.sqrt()
    }
}

impl fmt::Debug for QuadReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QuadReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let sqrt = format!("√{}", self.q);
        let bpart = if self.b.is_one() {
            sqrt
        } else if (-&self.b).is_one() {
            format!("-{sqrt}")
        } else {
            format!("{}{}", self.b, sqrt)
        };
        if self.a.is_zero() {
            write!(f, "{bpart}")
        } else if bpart.starts_with('-') {
            write!(f, "{}{}", self.a, bpart)
        } else {
            write!(f, "{}+{}", self.a, bpart)
        }
    }
}

/// The field Q(√q) for a fixed positive integer `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadField {
    q: BigInt,
    q_rat: BigRational,
}

impl QuadField {
    pub fn new(q: &BigInt) -> Result<Self, DomainError> {
        if !q.is_positive() {
            return Err(DomainError::BadRadicand(q.clone()));
        }
        Ok(Self::of(q))
    }

    fn of(q: &BigInt) -> Self {
        QuadField {
            q: q.clone(),
            q_rat: BigRational::from_integer(q.clone()),
        }
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn sqrt_q(&self) -> QuadReal {
        QuadReal::sqrt_q(&self.q)
    }

    pub fn elem(&self, a: BigRational, b: BigRational) -> QuadReal {
        QuadReal::normalized(a, b, self.q.clone())
    }

    /// `a + b√q` with integer parts.
    pub fn int_elem(&self, a: &BigInt, b: &BigInt) -> QuadReal {
        self.elem(
            BigRational::from_integer(a.clone()),
            BigRational::from_integer(b.clone()),
        )
    }

    pub fn conj(&self, x: &QuadReal) -> QuadReal {
        self.elem(x.a.clone(), -&x.b)
    }
}

impl Field for QuadField {
    type Elem = QuadReal;

    fn zero(&self) -> QuadReal {
        QuadReal::rational(BigRational::zero(), &self.q)
    }
    fn one(&self) -> QuadReal {
        QuadReal::rational(BigRational::one(), &self.q)
    }
    fn add(&self, x: &QuadReal, y: &QuadReal) -> QuadReal {
        debug_assert_eq!(x.q, y.q);
        QuadReal {
            a: &x.a + &y.a,
            b: &x.b + &y.b,
            q: self.q.clone(),
        }
    }
    fn sub(&self, x: &QuadReal, y: &QuadReal) -> QuadReal {
        debug_assert_eq!(x.q, y.q);
        QuadReal {
            a: &x.a - &y.a,
            b: &x.b - &y.b,
            q: self.q.clone(),
        }
    }
    fn mul(&self, x: &QuadReal, y: &QuadReal) -> QuadReal {
        debug_assert_eq!(x.q, y.q);
        match (x.b.is_zero(), y.b.is_zero()) {
            (true, true) => return QuadReal::rational(&x.a * &y.a, &self.q),
            (true, false) => {
                return QuadReal {
                    a: &x.a * &y.a,
                    b: &x.a * &y.b,
                    q: self.q.clone(),
                }
            }
            (false, true) => {
                return QuadReal {
                    a: &x.a * &y.a,
                    b: &x.b * &y.a,
                    q: self.q.clone(),
                }
            }
            _ => {}
        }
        QuadReal {
            a: &x.a * &y.a + &x.b * &y.b * &self.q_rat,
            b: &x.a * &y.b + &x.b * &y.a,
            q: self.q.clone(),
        }
    }
    fn neg(&self, x: &QuadReal) -> QuadReal {
        QuadReal {
            a: -&x.a,
            b: -&x.b,
            q: self.q.clone(),
        }
    }
    fn inv(&self, x: &QuadReal) -> QuadReal {
        if x.b.is_zero() {
            return QuadReal::rational(x.a.recip(), &self.q);
        }
        // (a - b√q) / (a² - b²q); the norm is nonzero because √q is irrational here.
        let norm = &x.a * &x.a - &x.b * &x.b * &self.q_rat;
        QuadReal {
            a: &x.a / &norm,
            b: -&x.b / &norm,
            q: self.q.clone(),
        }
    }
    fn is_zero(&self, x: &QuadReal) -> bool {
        x.a.is_zero() && x.b.is_zero()
    }
    fn from_rational(&self, r: &BigRational) -> QuadReal {
        QuadReal::rational(r.clone(), &self.q)
    }
}

impl OrderedField for QuadField {
    fn sign(&self, x: &QuadReal) -> Ordering {
        x.signum()
    }
    fn enclose(&self, x: &QuadReal, bits: u32) -> (BigRational, BigRational) {
        if x.b.is_zero() {
            return (x.a.clone(), x.a.clone());
        }
        let (slo, shi) = sqrt_bounds(&self.q_rat, bits + 4 + x.b.abs().numer().bits() as u32);
        let (lo, hi) = if x.b.is_positive() {
            (&x.b * slo, &x.b * shi)
        } else {
            (&x.b * shi, &x.b * slo)
        };
        (&x.a + lo, &x.a + hi)
    }

    fn sign_at_rational(&self, p: &[QuadReal], x: &BigRational) -> Ordering {
        let parts: Vec<&BigRational> = p.iter().flat_map(|c| [&c.a, &c.b]).collect();
        let ints = clear_denominators(&parts);
        let a: Vec<BigInt> = ints.iter().step_by(2).cloned().collect();
        let b: Vec<BigInt> = ints.iter().skip(1).step_by(2).cloned().collect();
        let (n, d) = (x.numer(), x.denom());
        // the common positive factor d^m does not change the sign
        QuadReal::rational(BigRational::from_integer(homogeneous_eval(&a, n, d)), &self.q)
            .with_b(BigRational::from_integer(homogeneous_eval(&b, n, d)))
            .signum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn sign_matches_float() {
        let k = QuadField::new(&BigInt::from(2)).unwrap();
        let cases = [(3, -2), (-3, 2), (1, 1), (-1, -1), (7, -5), (-7, 5), (0, 0)];
        for (a, b) in cases {
            let x = k.int_elem(&a.into(), &b.into());
            let f = a as f64 + b as f64 * 2f64.sqrt();
            let expect = f.partial_cmp(&0.0).unwrap();
            assert_eq!(x.signum(), expect, "{a}+{b}√2");
        }
    }

    #[test]
    fn square_radicand_folds() {
        let x = QuadReal::from_ints(1, 3, 4);
        assert!(x.is_rational());
        assert_eq!(x.a(), &rat(7, 1));
    }

    #[test]
    fn inverse_and_mismatch() {
        let k = QuadField::new(&BigInt::from(3)).unwrap();
        let x = k.int_elem(&2.into(), &5.into());
        let y = k.mul(&x, &k.inv(&x));
        assert_eq!(y, k.one());
        let z = QuadReal::from_ints(1, 1, 5);
        assert!(x.checked_add(&z).is_err());
    }

    #[test]
    fn enclosure_contains_value() {
        let k = QuadField::new(&BigInt::from(5)).unwrap();
        let x = k.elem(rat(-1, 3), rat(7, 2));
        let (lo, hi) = k.enclose(&x, 64);
        let v = x.to_f64();
        use num_traits::ToPrimitive;
        assert!(lo.to_f64().unwrap() <= v + 1e-12 && v - 1e-12 <= hi.to_f64().unwrap());
        assert!(&hi - &lo < rat(1, 1 << 40));
    }
}
