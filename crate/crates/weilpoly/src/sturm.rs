//! Sturm sequences, real-root isolation and exact sign decisions at real
//! algebraic numbers.
//!
//! Everything is generic over an [`OrderedField`] so the same code serves
//! rational polynomials and polynomials over `Q(√q)`. Sample points are
//! always rational.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::ceil_rat;
use crate::error::{DomainError, PolyError};
use crate::field::{Field, OrderedField, QuadReal};
use crate::interval::{eval_interval, CertifiedReal, MAX_BITS, START_BITS};
use crate::poly::QuadPoly;
use crate::upoly::{self, Coeffs};

/// Endpoint of a counting interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Endpoint<E> {
    NegInf,
    At(E),
    PosInf,
}

/// Sturm chain of the squarefree part of a polynomial.
#[derive(Debug, Clone)]
pub struct SturmChain<F: OrderedField> {
    field: F,
    chain: Vec<Coeffs<F>>,
}

impl<F: OrderedField> SturmChain<F> {
    /// Chain of `squarefree(p)`. Remainders are negated and divided by the
    /// absolute value of their leading coefficient, which keeps the sign
    /// pattern and the coefficients small.
    pub fn new(k: &F, p: &[F::Elem]) -> Self {
        let p0 = upoly::squarefree_part(k, p);
        let mut chain = vec![p0.clone()];
        if p0.len() > 1 {
            let mut a = p0.clone();
            let mut b = upoly::monic(k, &upoly::derivative(k, &p0));
            while !b.is_empty() {
                chain.push(b.clone());
                let r = upoly::rem(k, &a, &b);
                // -r scaled by a positive constant
                let r = match r.last() {
                    Some(l) => upoly::scale(k, &r, &k.neg(&k.inv(&k.abs(l)))),
                    None => r,
                };
                a = b;
                b = r;
            }
        }
        SturmChain {
            field: k.clone(),
            chain,
        }
    }

    pub fn poly(&self) -> &[F::Elem] {
        &self.chain[0]
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    fn signs_at(&self, x: &Endpoint<F::Elem>) -> Vec<Ordering> {
        let k = &self.field;
        self.chain
            .iter()
            .map(|p| match x {
                Endpoint::NegInf => upoly::sign_at_infinity(k, p, false),
                Endpoint::PosInf => upoly::sign_at_infinity(k, p, true),
                Endpoint::At(r) => upoly::sign_at(k, p, r),
            })
            .collect()
    }

    fn variations(&self, x: &Endpoint<F::Elem>) -> usize {
        let s: Vec<Ordering> = self
            .signs_at(x)
            .into_iter()
            .filter(|o| *o != Ordering::Equal)
            .collect();
        s.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct real roots in `(lo, hi]`.
    pub fn count(&self, lo: &Endpoint<F::Elem>, hi: &Endpoint<F::Elem>) -> usize {
        if self.chain[0].len() <= 1 {
            return 0;
        }
        self.variations(lo).saturating_sub(self.variations(hi))
    }

    pub fn count_all(&self) -> usize {
        self.count(&Endpoint::NegInf, &Endpoint::PosInf)
    }

    fn variations_rat(&self, x: &BigRational) -> usize {
        let mut last = Ordering::Equal;
        let mut n = 0;
        for p in &self.chain {
            let s = self.field.sign_at_rational(p, x);
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                n += 1;
            }
            last = s;
        }
        n
    }

    /// Distinct roots in `(lo, hi]` for rational endpoints.
    pub fn count_rat(&self, lo: &BigRational, hi: &BigRational) -> usize {
        if self.chain[0].len() <= 1 {
            return 0;
        }
        self.variations_rat(lo)
            .saturating_sub(self.variations_rat(hi))
    }
}

/// Distinct real roots of `p` in `(lo, hi]`.
pub fn count_roots<F: OrderedField>(
    k: &F,
    p: &[F::Elem],
    lo: &Endpoint<F::Elem>,
    hi: &Endpoint<F::Elem>,
) -> usize {
    SturmChain::new(k, p).count(lo, hi)
}

/// Integer `M` with every real root of `p` in `(-M, M)`.
pub fn cauchy_bound<F: OrderedField>(k: &F, p: &[F::Elem]) -> BigInt {
    let Some(l) = p.last() else {
        return BigInt::one();
    };
    let mut m = BigRational::zero();
    for c in &p[..p.len() - 1] {
        let (lo, hi) = k.enclose(&k.div(c, l), 16);
        m = m.max(lo.abs()).max(hi.abs());
    }
    ceil_rat(&m) + 2
}

/// A real root of a squarefree polynomial, pinned to `(lo, hi]`.
#[derive(Debug, Clone)]
pub struct RealAlgebraic<F: OrderedField> {
    chain: SturmChain<F>,
    pub lo: BigRational,
    pub hi: BigRational,
    /// Multiplicity in the polynomial it was extracted from.
    pub multiplicity: usize,
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

impl<F: OrderedField> RealAlgebraic<F> {
    pub fn defining_poly(&self) -> &[F::Elem] {
        self.chain.poly()
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// Halve the isolating interval.
    pub fn bisect(&mut self) {
        let mid = (&self.lo + &self.hi) * half();
        let left = self.chain.count_rat(&self.lo, &mid);
        if left == 1 {
            self.hi = mid;
        } else {
            self.lo = mid;
        }
    }

    /// Bisect until the interval is no wider than `2^-bits`.
    pub fn refine(&mut self, bits: u32) {
        let target = BigRational::new(BigInt::one(), BigInt::one() << bits as usize);
        while self.width() > target {
            self.bisect();
        }
    }

    /// Exact rational value if the root is rational and the interval has
    /// already closed on it.
    pub fn as_rational(&self) -> Option<BigRational> {
        let k = self.chain.field();
        let p = self.chain.poly();
        if k.sign_at_rational(p, &self.hi) == Ordering::Equal {
            Some(self.hi.clone())
        } else {
            None
        }
    }

    /// Enclosure of the root itself.
    pub fn enclose(&mut self, bits: u32) -> CertifiedReal {
        self.refine(bits);
        CertifiedReal::new(self.lo.clone(), self.hi.clone(), bits)
    }

    /// Enclosure of `h(root)`, refined until narrower than `2^-bits` or the
    /// precision cap is reached.
    pub fn enclose_at(&mut self, h: &[F::Elem], bits: u32) -> CertifiedReal {
        let k = self.chain.field().clone();
        let target = BigRational::new(BigInt::one(), BigInt::one() << bits as usize);
        let mut b = bits.max(START_BITS);
        loop {
            let x = self.enclose(b);
            let v = eval_interval(&k, h, &x, b + 16);
            if v.width() <= target || b >= MAX_BITS {
                return v;
            }
            b = (b * 2).min(MAX_BITS);
        }
    }

    /// Exact sign of `h` at this root. `None` only if the precision cap was
    /// hit, which cannot happen for exact input but is reported rather than
    /// looping.
    pub fn sign_of(&mut self, h: &[F::Elem]) -> Option<Ordering> {
        let k = self.chain.field().clone();
        if h.is_empty() {
            return Some(Ordering::Equal);
        }
        let g = upoly::gcd(&k, self.chain.poly(), h);
        if g.len() > 1 {
            let c = SturmChain::new(&k, &g);
            if c.count_rat(&self.lo, &self.hi) > 0 {
                return Some(Ordering::Equal);
            }
        }
        let hc = SturmChain::new(&k, h);
        let cap = BigRational::new(BigInt::one(), BigInt::one() << MAX_BITS as usize);
        loop {
            let n = hc.count_rat(&self.lo, &self.hi);
            if n == 0 {
                return Some(k.sign_at_rational(h, &self.hi));
            }
            if self.width() < cap {
                return None;
            }
            self.bisect();
        }
    }

    /// Compare two roots exactly.
    pub fn cmp_root(&mut self, other: &mut RealAlgebraic<F>) -> Ordering {
        let k = self.chain.field().clone();
        let g = upoly::gcd(&k, self.chain.poly(), other.chain.poly());
        loop {
            if self.hi <= other.lo {
                // touching at a shared endpoint means self ≤ other
                return if self.hi == other.lo
                    && k.sign_at_rational(self.chain.poly(), &self.hi)
                        == Ordering::Equal
                    && k.sign_at_rational(other.chain.poly(), &self.hi)
                        == Ordering::Equal
                {
                    Ordering::Equal
                } else {
                    Ordering::Less
                };
            }
            if other.hi <= self.lo {
                return Ordering::Greater;
            }
            // overlapping: equal iff the common factor has a root in the overlap
            if g.len() > 1 {
                let lo = self.lo.clone().max(other.lo.clone());
                let hi = self.hi.clone().min(other.hi.clone());
                let gc = SturmChain::new(&k, &g);
                let in_self = gc.count_rat(&self.lo, &self.hi);
                let in_other = gc.count_rat(&other.lo, &other.hi);
                if in_self > 0 && in_other > 0 && gc.count_rat(&lo, &hi) > 0 {
                    return Ordering::Equal;
                }
            }
            if self.width() >= other.width() {
                self.bisect();
            } else {
                other.bisect();
            }
        }
    }
}

/// Isolating intervals `(lo, hi]` for the distinct real roots of a squarefree
/// polynomial, in increasing order.
pub fn isolate<F: OrderedField>(k: &F, p: &[F::Elem]) -> Vec<(BigRational, BigRational)> {
    let chain = SturmChain::new(k, p);
    let m = BigRational::from_integer(cauchy_bound(k, chain.poly()));
    let mut out = Vec::new();
    let mut stack = vec![(-m.clone(), m)];
    while let Some((lo, hi)) = stack.pop() {
        let n = chain.count_rat(&lo, &hi);
        match n {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let mid = (&lo + &hi) * half();
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    out.sort();
    out
}

/// All real roots of `p` with multiplicity, in increasing order and with
/// pairwise disjoint isolating intervals.
pub fn real_roots<F: OrderedField>(k: &F, p: &[F::Elem]) -> Vec<RealAlgebraic<F>> {
    let mut roots: Vec<RealAlgebraic<F>> = Vec::new();
    for (s, m) in upoly::squarefree_decomposition(k, p) {
        let chain = SturmChain::new(k, &s);
        for (lo, hi) in isolate(k, &s) {
            roots.push(RealAlgebraic {
                chain: chain.clone(),
                lo,
                hi,
                multiplicity: m,
            });
        }
    }
    // factors are coprime, so overlapping intervals separate under bisection
    loop {
        roots.sort_by(|a, b| a.lo.cmp(&b.lo));
        let clash = (1..roots.len()).find(|&i| roots[i].lo < roots[i - 1].hi);
        match clash {
            None => break,
            Some(i) => {
                if roots[i].width() >= roots[i - 1].width() {
                    roots[i].bisect();
                } else {
                    roots[i - 1].bisect();
                }
            }
        }
    }
    roots
}

/// Total number of real roots counted with multiplicity.
pub fn real_root_count<F: OrderedField>(k: &F, p: &[F::Elem]) -> usize {
    upoly::squarefree_decomposition(k, p)
        .iter()
        .map(|(s, m)| m * SturmChain::new(k, s).count_all())
        .sum()
}

/// True iff every root of `p` (with multiplicity) is real.
pub fn all_roots_real<F: OrderedField>(k: &F, p: &[F::Elem]) -> bool {
    match upoly::degree::<F>(p) {
        None => false,
        Some(d) => real_root_count(k, p) == d,
    }
}

/// Distinct real roots of a polynomial over `Q(√q)` in `(lo, hi]`.
pub fn sturm_count(
    p: &QuadPoly,
    lo: &Endpoint<QuadReal>,
    hi: &Endpoint<QuadReal>,
) -> Result<usize, DomainError> {
    for e in [lo, hi] {
        if let Endpoint::At(x) = e {
            if x.q() != p.q() && !x.is_rational() {
                return Err(DomainError::RadicandMismatch(p.q().clone(), x.q().clone()));
            }
        }
    }
    let k = p.field();
    let lift = |e: &Endpoint<QuadReal>| match e {
        Endpoint::At(x) => Endpoint::At(k.elem(x.a().clone(), x.b().clone())),
        Endpoint::NegInf => Endpoint::NegInf,
        Endpoint::PosInf => Endpoint::PosInf,
    };
    Ok(count_roots(k, p.coeffs(), &lift(lo), &lift(hi)))
}

/// True iff every root of `p` is real and strictly positive.
pub fn all_roots_real_positive(p: &QuadPoly) -> Result<bool, PolyError> {
    if p.is_zero() {
        return Err(PolyError::Zero);
    }
    let k = p.field();
    let c = p.coeffs();
    if k.is_zero(&c[0]) {
        return Ok(false);
    }
    let chain = SturmChain::new(k, c);
    let distinct = chain.poly().len() - 1;
    let zero = Endpoint::At(k.zero());
    Ok(chain.count(&zero, &Endpoint::PosInf) == distinct
        && chain.count(&Endpoint::NegInf, &zero) == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::field::{Field, QuadField, RatField};

    fn p(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| rat(x, 1)).collect()
    }

    #[test]
    fn counts_match_known_roots() {
        let k = RatField;
        // (x-1)(x-2)(x+3)(x^2+1)
        let f = upoly::mul(
            &k,
            &upoly::mul(&k, &p(&[-1, 1]), &p(&[-2, 1])),
            &upoly::mul(&k, &p(&[3, 1]), &p(&[1, 0, 1])),
        );
        let c = SturmChain::new(&k, &f);
        assert_eq!(c.count_all(), 3);
        assert_eq!(c.count_rat(&rat(1, 1), &rat(2, 1)), 1);
        assert_eq!(c.count_rat(&rat(0, 1), &rat(1, 1)), 1);
        assert_eq!(c.count_rat(&rat(-3, 1), &rat(0, 1)), 0);
    }

    #[test]
    fn isolation_with_multiplicity() {
        let k = RatField;
        // (x-1)^3 (x^2-2)
        let l = p(&[-1, 1]);
        let f = upoly::mul(
            &k,
            &upoly::mul(&k, &upoly::mul(&k, &l, &l), &l),
            &p(&[-2, 0, 1]),
        );
        let roots = real_roots(&k, &f);
        let mults: Vec<usize> = roots.iter().map(|r| r.multiplicity).collect();
        assert_eq!(mults, vec![1, 3, 1]);
        assert_eq!(real_root_count(&k, &f), 5);
        assert!(all_roots_real(&k, &f));
    }

    #[test]
    fn exact_sign_at_root() {
        let k = QuadField::new(&BigInt::from(2)).unwrap();
        // root √2 of t^2 - 2; h = t - √2 vanishes there, t - 1 is positive
        let f = vec![k.from_int(-2), k.zero(), k.one()];
        let mut roots = real_roots(&k, &f);
        let r = &mut roots[1];
        let h0 = vec![k.neg(&k.sqrt_q()), k.one()];
        assert_eq!(r.sign_of(&h0), Some(Ordering::Equal));
        let h1 = vec![k.from_int(-1), k.one()];
        assert_eq!(r.sign_of(&h1), Some(Ordering::Greater));
        let h2 = vec![k.from_int(-3), k.one()];
        assert_eq!(r.sign_of(&h2), Some(Ordering::Less));
    }

    #[test]
    fn positive_real_roots() {
        let q = BigInt::from(2);
        let mk = |v: &[i64]| QuadPoly::from_int(&crate::poly::IntPoly::from_i64s(v), &q).unwrap();
        assert!(all_roots_real_positive(&mk(&[-2, 5, -4, 1])).unwrap());
        assert!(!all_roots_real_positive(&mk(&[1, 0, 1])).unwrap());
        assert!(!all_roots_real_positive(&mk(&[0, 3, -3, 1])).unwrap());
        let six = mk(&[720, -1764, 1624, -735, 175, -21, 1]);
        assert_eq!(
            sturm_count(
                &six,
                &Endpoint::At(QuadReal::from_ints(0, 0, 2)),
                &Endpoint::PosInf
            )
            .unwrap(),
            6
        );
        let x2 = mk(&[-2, 0, 1]);
        assert_eq!(
            sturm_count(
                &x2,
                &Endpoint::At(QuadReal::from_ints(0, 0, 2)),
                &Endpoint::At(QuadReal::from_ints(2, 0, 2))
            )
            .unwrap(),
            1
        );
        // (lo, hi] excludes √2 at the left end
        assert_eq!(
            sturm_count(
                &x2,
                &Endpoint::At(QuadReal::sqrt_q(&q)),
                &Endpoint::At(QuadReal::from_ints(2, 0, 2))
            )
            .unwrap(),
            0
        );
    }

    #[test]
    fn root_comparison() {
        let k = RatField;
        let mut a = real_roots(&k, &p(&[-2, 0, 1])).pop().unwrap();
        let mut b = real_roots(&k, &p(&[-8, 0, 0, 1])).pop().unwrap();
        assert_eq!(a.cmp_root(&mut b), Ordering::Less);
        let mut c = real_roots(&k, &upoly::mul(&k, &p(&[-2, 0, 1]), &p(&[-5, 1]))).remove(1);
        let mut a2 = real_roots(&k, &p(&[-2, 0, 1])).pop().unwrap();
        assert_eq!(c.cmp_root(&mut a2), Ordering::Equal);
    }
}
