//! Quadratic Hensel lifting of coprime factorizations modulo `p^k`.

use num_bigint::BigInt;
use thiserror::Error;

use crate::arith::pow_big;
use crate::fp::{symmetric_mod, FpPoly};
use crate::poly::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HenselError {
    #[error("seed factors are not coprime modulo {0}")]
    NotCoprime(u64),
    #[error("f and the seed factors must be monic")]
    NotMonic,
    #[error("seed product does not reduce to f modulo {0}")]
    SeedMismatch(u64),
}

fn reduce(f: &IntPoly, m: &BigInt) -> IntPoly {
    IntPoly::new(f.coeffs().iter().map(|c| symmetric_mod(c, m)).collect())
}

/// Division by a monic polynomial, reduced modulo `m`.
fn divrem_mod(a: &IntPoly, b: &IntPoly, m: &BigInt) -> (IntPoly, IntPoly) {
    let (q, r) = a.divrem_monic(b);
    (reduce(&q, m), reduce(&r, m))
}

/// One state of the lift: `f ≡ g·h`, `s·g + t·h ≡ 1` modulo `m`.
struct Lift {
    g: IntPoly,
    h: IntPoly,
    s: IntPoly,
    t: IntPoly,
    m: BigInt,
}

impl Lift {
    /// Square the modulus. `g` and `h` stay monic.
    fn step(self, f: &IntPoly) -> Lift {
        let m2 = &self.m * &self.m;
        let e = reduce(&f.sub(&self.g.mul(&self.h)), &m2);
        let (q, r) = divrem_mod(&reduce(&self.s.mul(&e), &m2), &self.h, &m2);
        let g = reduce(&self.g.add(&self.t.mul(&e)).add(&q.mul(&self.g)), &m2);
        let h = reduce(&self.h.add(&r), &m2);
        let b = reduce(
            &self.s.mul(&g).add(&self.t.mul(&h)).sub(&IntPoly::one()),
            &m2,
        );
        let (c, d) = divrem_mod(&reduce(&self.s.mul(&b), &m2), &h, &m2);
        let s = reduce(&self.s.sub(&d), &m2);
        let t = reduce(&self.t.sub(&self.t.mul(&b)).sub(&c.mul(&g)), &m2);
        Lift { g, h, s, t, m: m2 }
    }
}

/// Lift `f ≡ g0·h0 (mod p)` to `f ≡ g·h (mod p^k)` with `g ≡ g0`, `h ≡ h0`
/// modulo `p`. Coefficients come back in the symmetric range.
pub fn hensel_lift(
    f: &IntPoly,
    g0: &FpPoly,
    h0: &FpPoly,
    p: u64,
    k: u32,
) -> Result<(IntPoly, IntPoly), HenselError> {
    if !f.is_monic() || g0.lc() != 1 || h0.lc() != 1 {
        return Err(HenselError::NotMonic);
    }
    if FpPoly::from_int(f, p) != g0.mul(h0) {
        return Err(HenselError::SeedMismatch(p));
    }
    let (gg, s, t) = g0.ext_gcd(h0);
    if !gg.is_one() {
        return Err(HenselError::NotCoprime(p));
    }
    let pb = BigInt::from(p);
    let target = pow_big(&pb, k.max(1));
    let mut st = Lift {
        g: reduce(&g0.to_int(), &pb),
        h: reduce(&h0.to_int(), &pb),
        s: reduce(&s.to_int(), &pb),
        t: reduce(&t.to_int(), &pb),
        m: pb,
    };
    while st.m < target {
        st = st.step(f);
    }
    let (g, h) = (reduce(&st.g, &target), reduce(&st.h, &target));
    debug_assert!(reduce(&f.sub(&g.mul(&h)), &target).is_zero());
    Ok((g, h))
}

/// Lift a complete factorization of `f mod p` into pairwise coprime monic
/// factors to one modulo `p^k`, in the same order.
pub fn multifactor_lift(
    f: &IntPoly,
    factors: &[FpPoly],
    p: u64,
    k: u32,
) -> Result<Vec<IntPoly>, HenselError> {
    let m = pow_big(&BigInt::from(p), k.max(1));
    let mut out = Vec::with_capacity(factors.len());
    let mut rest = reduce(f, &m);
    for (i, fi) in factors.iter().enumerate() {
        if i + 1 == factors.len() {
            out.push(rest.clone());
            break;
        }
        let others = factors[i + 1..]
            .iter()
            .fold(FpPoly::one(p), |acc, x| acc.mul(x));
        let (g, h) = hensel_lift(&rest, fi, &others, p, k)?;
        out.push(g);
        rest = h;
    }
    Ok(out)
}

/// Product of polynomials reduced modulo `m`.
pub fn product_mod(fs: &[&IntPoly], m: &BigInt) -> IntPoly {
    fs.iter()
        .fold(IntPoly::one(), |acc, f| reduce(&acc.mul(f), m))
}

/// Symmetric reduction of a polynomial modulo `m`.
pub fn reduce_mod(f: &IntPoly, m: &BigInt) -> IntPoly {
    reduce(f, m)
}
