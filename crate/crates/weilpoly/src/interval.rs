//! Rational interval enclosures with outward dyadic rounding.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::field::OrderedField;

/// Precision ladder used by every certified comparison.
pub const START_BITS: u32 = 128;
pub const MAX_BITS: u32 = 4096;

/// A real number known to lie in `[lo, hi]`.
#[derive(Clone, PartialEq, Eq)]
pub struct CertifiedReal {
    pub lo: BigRational,
    pub hi: BigRational,
    pub precision: u32,
}

impl CertifiedReal {
    pub fn exact(x: BigRational, precision: u32) -> Self {
        CertifiedReal {
            lo: x.clone(),
            hi: x,
            precision,
        }
    }

    pub fn new(lo: BigRational, hi: BigRational, precision: u32) -> Self {
        debug_assert!(lo <= hi);
        CertifiedReal { lo, hi, precision }.rounded()
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn midpoint_f64(&self) -> f64 {
        ((&self.lo + &self.hi) / BigRational::from_integer(2.into()))
            .to_f64()
            .unwrap_or(f64::NAN)
    }

    fn rounded(self) -> Self {
        let scale = BigInt::one() << self.precision as usize;
        let round = |x: &BigRational, up: bool| -> BigRational {
            if x.denom() <= &scale {
                return x.clone();
            }
            let s = x * BigRational::from_integer(scale.clone());
            let n = if up { s.ceil() } else { s.floor() };
            n / BigRational::from_integer(scale.clone())
        };
        CertifiedReal {
            lo: round(&self.lo, false),
            hi: round(&self.hi, true),
            precision: self.precision,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(
            &self.lo + &o.lo,
            &self.hi + &o.hi,
            self.precision.max(o.precision),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(
            &self.lo - &o.hi,
            &self.hi - &o.lo,
            self.precision.max(o.precision),
        )
    }

    pub fn neg(&self) -> Self {
        CertifiedReal {
            lo: -&self.hi,
            hi: -&self.lo,
            precision: self.precision,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Self::new(lo, hi, self.precision.max(o.precision))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let (a, b) = (&self.lo * c, &self.hi * c);
        if c.is_negative() {
            Self::new(b, a, self.precision)
        } else {
            Self::new(a, b, self.precision)
        }
    }

    pub fn max(&self, o: &Self) -> Self {
        Self::new(
            self.lo.clone().max(o.lo.clone()),
            self.hi.clone().max(o.hi.clone()),
            self.precision.max(o.precision),
        )
    }

    pub fn min(&self, o: &Self) -> Self {
        Self::new(
            self.lo.clone().min(o.lo.clone()),
            self.hi.clone().min(o.hi.clone()),
            self.precision.max(o.precision),
        )
    }
}

impl fmt::Debug for CertifiedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{:.12e}, {:.12e}]@{}",
            self.lo.to_f64().unwrap_or(f64::NAN),
            self.hi.to_f64().unwrap_or(f64::NAN),
            self.precision
        )
    }
}

impl Serialize for CertifiedReal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CertifiedReal", 3)?;
        st.serialize_field("lo", &self.lo.to_f64().unwrap_or(f64::NAN))?;
        st.serialize_field("hi", &self.hi.to_f64().unwrap_or(f64::NAN))?;
        st.serialize_field("precision", &self.precision)?;
        st.end()
    }
}

/// Enclosure of a field element.
pub fn enclose_elem<F: OrderedField>(k: &F, x: &F::Elem, bits: u32) -> CertifiedReal {
    let (lo, hi) = k.enclose(x, bits + 8);
    CertifiedReal::new(lo, hi, bits)
}

/// Horner evaluation of a polynomial over `k` on an interval.
pub fn eval_interval<F: OrderedField>(
    k: &F,
    coeffs: &[F::Elem],
    x: &CertifiedReal,
    bits: u32,
) -> CertifiedReal {
    let mut acc = CertifiedReal::exact(BigRational::zero(), bits);
    for c in coeffs.iter().rev() {
        acc = acc.mul(x).add(&enclose_elem(k, c, bits));
        acc.precision = bits;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::field::{Field, QuadField};

    #[test]
    fn arithmetic_encloses() {
        let a = CertifiedReal::new(rat(1, 3), rat(1, 2), 64);
        let b = CertifiedReal::new(rat(-2, 1), rat(1, 1), 64);
        let p = a.mul(&b);
        assert!(p.contains(&rat(-1, 1)) && p.contains(&rat(1, 2)));
        assert!(a.sub(&b).contains(&(rat(1, 2) - rat(-2, 1))));
    }

    #[test]
    fn polynomial_enclosure() {
        let k = QuadField::new(&BigInt::from(2)).unwrap();
        // t^2 - 2 at t = √2 must enclose zero
        let p = vec![k.from_int(-2), k.zero(), k.one()];
        let x = enclose_elem(&k, &k.sqrt_q(), 100);
        let v = eval_interval(&k, &p, &x, 100);
        assert!(v.contains(&rat(0, 1)));
        assert!(v.width() < rat(1, 1 << 60));
    }
}
