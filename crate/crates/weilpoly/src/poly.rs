//! Integer polynomials and polynomials over Z[√q].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::DomainError;
use crate::field::{Field, QuadField, QuadReal, RatField};
use crate::upoly;

/// Polynomial with arbitrary-precision integer coefficients, constant term
/// first. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64s(&[1])
    }

    /// The monomial `t`.
    pub fn t() -> Self {
        Self::from_i64s(&[0, 1])
    }

    /// `t^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = BigInt::one();
        IntPoly { coeffs: c }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0 (check [`IntPoly::is_zero`]).
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        IntPoly::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn add(&self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        let mut r = IntPoly::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rat(&self, x: &BigRational) -> BigRational {
        upoly::eval(&RatField, &self.to_rat(), x)
    }

    pub fn eval_quad(&self, x: &QuadReal) -> QuadReal {
        let k = QuadField::new(x.q()).expect("radicand of an existing QuadReal is positive");
        upoly::eval(&k, &self.to_quad(&k), x)
    }

    /// `self(s·t + c)`.
    pub fn compose_linear(&self, s: &BigInt, c: &BigInt) -> IntPoly {
        let lin = IntPoly::new(vec![c.clone(), s.clone()]);
        let mut out = IntPoly::zero();
        for coef in self.coeffs.iter().rev() {
            out = out.mul(&lin).add(&IntPoly::new(vec![coef.clone()]));
        }
        out
    }

    pub fn to_rat(&self) -> Vec<BigRational> {
        self.coeffs
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect()
    }

    pub fn to_quad(&self, k: &QuadField) -> Vec<QuadReal> {
        self.coeffs
            .iter()
            .map(|c| k.from_rational(&BigRational::from_integer(c.clone())))
            .collect()
    }

    /// Clears denominators and returns the primitive integer multiple.
    pub fn from_rat_primitive(r: &[BigRational]) -> IntPoly {
        let den = r.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        IntPoly::new(
            r.iter()
                .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
                .collect(),
        )
        .primitive_part()
    }

    /// Exact rational coefficients as integers, if they all are.
    pub fn from_rat_exact(r: &[BigRational]) -> Option<IntPoly> {
        r.iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(IntPoly::new)
    }

    /// Quotient if `o` divides `self` exactly in `Z[t]`.
    pub fn div_exact(&self, o: &IntPoly) -> Option<IntPoly> {
        if o.is_zero() {
            return None;
        }
        let (q, r) = upoly::divrem(&RatField, &self.to_rat(), &o.to_rat());
        if !r.is_empty() {
            return None;
        }
        Self::from_rat_exact(&q)
    }

    /// Division by a monic polynomial, staying in `Z[t]`.
    pub fn divrem_monic(&self, m: &IntPoly) -> (IntPoly, IntPoly) {
        assert!(m.is_monic(), "divisor must be monic");
        let dm = m.degree();
        if self.coeffs.len() <= dm {
            return (IntPoly::zero(), self.clone());
        }
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); r.len() - dm];
        for i in (0..q.len()).rev() {
            let c = r[i + dm].clone();
            if c.is_zero() {
                continue;
            }
            for (j, mj) in m.coeffs.iter().enumerate() {
                r[i + j] -= &c * mj;
            }
            q[i] = c;
        }
        r.truncate(dm);
        (IntPoly::new(q), IntPoly::new(r))
    }

    /// `t^d · self(1/t)` for `d = deg self`.
    pub fn reverse(&self) -> IntPoly {
        let mut c = self.coeffs.clone();
        c.reverse();
        IntPoly::new(c)
    }

    /// Coefficients as a comma-separated list, constant term first.
    pub fn to_csv(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.coeffs.iter().map(|c| c.to_string()).collect(), "t")
    }
}

fn write_poly(f: &mut fmt::Formatter<'_>, coeffs: Vec<String>, var: &str) -> fmt::Result {
    if coeffs.is_empty() {
        return write!(f, "0");
    }
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c == "0" {
            continue;
        }
        let neg = c.starts_with('-');
        let mag = c.trim_start_matches('-');
        let compound = mag.contains(['+', '-', '√']);
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if neg { " - " } else { " + " })?;
        }
        first = false;
        let body = if compound {
            format!("({mag})")
        } else {
            mag.to_string()
        };
        match i {
            0 => write!(f, "{body}")?,
            _ => {
                if mag != "1" {
                    write!(f, "{body}")?;
                }
                if i == 1 {
                    write!(f, "{var}")?;
                } else {
                    write!(f, "{var}^{i}")?;
                }
            }
        }
    }
    Ok(())
}

/// Polynomial over Z[√q] (coefficients in Q(√q)) sharing one radicand.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadPoly {
    field: QuadField,
    coeffs: Vec<QuadReal>,
}

impl QuadPoly {
    pub fn new(q: &BigInt, coeffs: Vec<QuadReal>) -> Result<Self, DomainError> {
        let field = QuadField::new(q)?;
        if let Some(c) = coeffs.iter().find(|c| c.q() != q) {
            return Err(DomainError::RadicandMismatch(q.clone(), c.q().clone()));
        }
        let coeffs = upoly::trim(&field, coeffs);
        Ok(QuadPoly { field, coeffs })
    }

    pub fn from_int(p: &IntPoly, q: &BigInt) -> Result<Self, DomainError> {
        let field = QuadField::new(q)?;
        let coeffs = p.to_quad(&field);
        Ok(QuadPoly { field, coeffs })
    }

    pub(crate) fn from_parts(field: QuadField, coeffs: Vec<QuadReal>) -> Self {
        let coeffs = upoly::trim(&field, coeffs);
        QuadPoly { field, coeffs }
    }

    pub fn field(&self) -> &QuadField {
        &self.field
    }

    pub fn q(&self) -> &BigInt {
        self.field.q()
    }

    pub fn coeffs(&self) -> &[QuadReal] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> QuadReal {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check(&self, o: &QuadPoly) -> Result<(), DomainError> {
        if self.q() == o.q() {
            Ok(())
        } else {
            Err(DomainError::RadicandMismatch(
                self.q().clone(),
                o.q().clone(),
            ))
        }
    }

    pub fn add(&self, o: &QuadPoly) -> Result<QuadPoly, DomainError> {
        self.check(o)?;
        Ok(Self::from_parts(
            self.field.clone(),
            upoly::add(&self.field, &self.coeffs, &o.coeffs),
        ))
    }

    pub fn sub(&self, o: &QuadPoly) -> Result<QuadPoly, DomainError> {
        self.check(o)?;
        Ok(Self::from_parts(
            self.field.clone(),
            upoly::sub(&self.field, &self.coeffs, &o.coeffs),
        ))
    }

    pub fn mul(&self, o: &QuadPoly) -> Result<QuadPoly, DomainError> {
        self.check(o)?;
        Ok(Self::from_parts(
            self.field.clone(),
            upoly::mul(&self.field, &self.coeffs, &o.coeffs),
        ))
    }

    pub fn derivative(&self) -> QuadPoly {
        Self::from_parts(
            self.field.clone(),
            upoly::derivative(&self.field, &self.coeffs),
        )
    }

    pub fn eval(&self, x: &QuadReal) -> Result<QuadReal, DomainError> {
        if x.q() != self.q() {
            return Err(DomainError::RadicandMismatch(
                self.q().clone(),
                x.q().clone(),
            ));
        }
        Ok(upoly::eval(&self.field, &self.coeffs, x))
    }

    /// `self(s·t + c)`.
    pub fn compose_linear(&self, s: &QuadReal, c: &QuadReal) -> Result<QuadPoly, DomainError> {
        for v in [s, c] {
            if v.q() != self.q() {
                return Err(DomainError::RadicandMismatch(
                    self.q().clone(),
                    v.q().clone(),
                ));
            }
        }
        Ok(Self::from_parts(
            self.field.clone(),
            upoly::compose_linear(&self.field, &self.coeffs, s, c),
        ))
    }
}

impl fmt::Debug for QuadPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadPoly({self})")
    }
}

impl fmt::Display for QuadPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.coeffs.iter().map(|c| c.to_string()).collect(), "t")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = IntPoly::from_i64s(&[1, 0, 1]);
        let b = IntPoly::from_i64s(&[-1, 1]);
        assert_eq!(a.mul(&b), IntPoly::from_i64s(&[-1, 1, -1, 1]));
        assert_eq!(
            IntPoly::monomial(6).derivative(),
            IntPoly::from_i64s(&[0, 0, 0, 0, 0, 6])
        );
        let (q, r) = a.mul(&b).divrem_monic(&b);
        assert_eq!(q, a);
        assert!(r.is_zero());
        assert_eq!(a.mul(&b).div_exact(&a), Some(b.clone()));
        assert_eq!(a.div_exact(&IntPoly::from_i64s(&[0, 2])), None);
    }

    #[test]
    fn quad_eval() {
        // (1+√2)^2 - 2 = 1 + 2√2
        let q = BigInt::from(2);
        let p = QuadPoly::from_int(&IntPoly::from_i64s(&[-2, 0, 1]), &q).unwrap();
        let x = QuadReal::from_ints(1, 1, 2);
        assert_eq!(p.eval(&x).unwrap(), QuadReal::from_ints(1, 2, 2));
        let y = QuadReal::from_ints(1, 1, 3);
        assert!(p.eval(&y).is_err());
        let other = QuadPoly::from_int(&IntPoly::one(), &BigInt::from(3)).unwrap();
        assert!(p.add(&other).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(IntPoly::from_i64s(&[2, -3, 1]).to_string(), "t^2 - 3t + 2");
        assert_eq!(IntPoly::from_i64s(&[-1]).to_string(), "-1");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }
}
