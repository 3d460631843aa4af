//! Polynomials over the prime field F_p and their factorization.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{inv_mod, mul_mod};
use crate::poly::IntPoly;

/// Seed used for every randomized split unless the caller supplies one.
pub const DEFAULT_SEED: u64 = 0x5745_494c_0007;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let coeffs = coeffs.into_iter().map(|c| c % p).collect();
        FpPoly { p, coeffs }.trimmed()
    }

    pub fn from_i64s(p: u64, c: &[i64]) -> Self {
        let pi = p as i64;
        FpPoly::new(p, c.iter().map(|&x| x.rem_euclid(pi) as u64).collect())
    }

    pub fn from_int(f: &IntPoly, p: u64) -> Self {
        let m = BigInt::from(p);
        let coeffs = f
            .coeffs()
            .iter()
            .map(|c| c.mod_floor(&m).to_u64().unwrap())
            .collect();
        FpPoly::new(p, coeffs)
    }

    /// Lift to Z with coefficients in `[0, p)`.
    pub fn to_int(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> Self {
        FpPoly::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        FpPoly::new(p, vec![0, 1])
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        self
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn add(&self, o: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = o.coeffs.get(i).copied().unwrap_or(0);
                ((a as u128 + b as u128) % self.p as u128) as u64
            })
            .collect();
        FpPoly {
            p: self.p,
            coeffs: c,
        }
        .trimmed()
    }

    pub fn neg(&self) -> FpPoly {
        let c = self
            .coeffs
            .iter()
            .map(|&a| if a == 0 { 0 } else { self.p - a })
            .collect();
        FpPoly {
            p: self.p,
            coeffs: c,
        }
    }

    pub fn sub(&self, o: &FpPoly) -> FpPoly {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: u64) -> FpPoly {
        let c = c % self.p;
        FpPoly {
            p: self.p,
            coeffs: self.coeffs.iter().map(|&a| mul_mod(a, c, self.p)).collect(),
        }
        .trimmed()
    }

    pub fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p as u128;
        let mut acc = vec![0u128; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u128 * b as u128) % p;
            }
        }
        FpPoly {
            p: self.p,
            coeffs: acc.into_iter().map(|x| x as u64).collect(),
        }
        .trimmed()
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn divrem(&self, b: &FpPoly) -> (FpPoly, FpPoly) {
        let db = b.degree().expect("division by the zero polynomial");
        if self.coeffs.len() <= db {
            return (FpPoly::zero(self.p), self.clone());
        }
        let p = self.p;
        let inv = inv_mod(b.lc(), p);
        let mut r = self.coeffs.clone();
        let mut q = vec![0u64; r.len() - db];
        for i in (0..q.len()).rev() {
            let c = mul_mod(r[i + db], inv, p);
            if c == 0 {
                continue;
            }
            q[i] = c;
            for (j, &bj) in b.coeffs.iter().enumerate() {
                let t = mul_mod(c, bj, p);
                r[i + j] = (r[i + j] + p - t) % p;
            }
        }
        r.truncate(db);
        (
            FpPoly { p, coeffs: q }.trimmed(),
            FpPoly { p, coeffs: r }.trimmed(),
        )
    }

    pub fn rem(&self, b: &FpPoly) -> FpPoly {
        self.divrem(b).1
    }

    pub fn div_exact(&self, b: &FpPoly) -> FpPoly {
        let (q, r) = self.divrem(b);
        debug_assert!(r.is_zero());
        q
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.lc(), self.p))
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s·self + t·o = g`, `g` monic.
    pub fn ext_gcd(&self, o: &FpPoly) -> (FpPoly, FpPoly, FpPoly) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (FpPoly::one(p), FpPoly::zero(p));
        let (mut t0, mut t1) = (FpPoly::zero(p), FpPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = inv_mod(r0.lc(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> FpPoly {
        let p = self.p;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| mul_mod(a, i as u64 % p, p))
            .collect();
        FpPoly { p, coeffs: c }.trimmed()
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (mul_mod(acc, x, self.p) + c) % self.p)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &FpPoly) -> FpPoly {
        let mut result = FpPoly::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            result = result.mul(&result).rem(m);
            if e.bit(i) {
                result = result.mul(&base).rem(m);
            }
        }
        result
    }

    fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Every coefficient index is a multiple of `p`; take the p-th root.
    fn pth_root(&self) -> FpPoly {
        let p = self.p as usize;
        let c = self.coeffs.iter().step_by(p).copied().collect();
        FpPoly {
            p: self.p,
            coeffs: c,
        }
        .trimmed()
    }
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.to_int(), self.p)
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Squarefree decomposition of a monic polynomial over F_p.
pub fn squarefree_decomposition(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let f = f.monic();
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_exact(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y);
        if fac.degree().unwrap_or(0) > 0 {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(&w);
        i += 1;
    }
    if c.degree().unwrap_or(0) > 0 {
        let p = f.p() as usize;
        for (g, m) in squarefree_decomposition(&c.pth_root()) {
            out.push((g, m * p));
        }
    }
    out
}

/// Distinct-degree factorization of a squarefree monic polynomial:
/// `(product of all irreducible factors of degree d, d)`.
pub fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = f.p();
    let pe = BigUint::from(p);
    let x = FpPoly::x(p);
    let mut out = Vec::new();
    let mut rest = f.monic();
    let mut h = x.rem(&rest);
    let mut d = 0;
    while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(&pe, &rest);
        let g = rest.gcd(&h.sub(&x));
        if g.degree().unwrap_or(0) > 0 {
            rest = rest.div_exact(&g);
            h = h.rem(&rest);
            out.push((g, d));
        }
    }
    if let Some(dr) = rest.degree() {
        if dr > 0 {
            out.push((rest, dr));
        }
    }
    out
}

fn random_poly(p: u64, below: usize, rng: &mut ChaCha8Rng) -> FpPoly {
    FpPoly::new(p, (0..below).map(|_| rng.random_range(0..p)).collect())
}

/// Cantor–Zassenhaus split of a product of distinct degree-`d` irreducibles.
pub fn equal_degree(f: &FpPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
    let n = f.degree().unwrap_or(0);
    if n <= d {
        return vec![f.monic()];
    }
    let p = f.p();
    loop {
        let a = random_poly(p, n, rng);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // trace map a + a^2 + ... + a^(2^(d-1))
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(f);
                acc = acc.add(&t);
            }
            acc
        } else {
            let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
            a.pow_mod(&e, f).sub(&FpPoly::one(p))
        };
        let g = f.gcd(&b);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&f.div_exact(&g), d, rng));
            return out;
        }
    }
}

/// Complete factorization over F_p into monic irreducibles with
/// multiplicities, sorted by degree then coefficients.
pub fn fp_factor(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    fp_factor_seeded(f, DEFAULT_SEED)
}

pub fn fp_factor_seeded(f: &FpPoly, seed: u64) -> Vec<(FpPoly, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (s, m) in squarefree_decomposition(f) {
        for (g, d) in distinct_degree(&s) {
            for h in equal_degree(&g, d, &mut rng) {
                out.push((h, m));
            }
        }
    }
    out.sort_by(|a, b| {
        (
            a.0.coeffs.len(),
            a.0.coeffs.iter().rev().collect::<Vec<_>>(),
            a.1,
        )
            .cmp(&(
                b.0.coeffs.len(),
                b.0.coeffs.iter().rev().collect::<Vec<_>>(),
                b.1,
            ))
    });
    out
}

/// True iff `f` is squarefree and irreducible over F_p.
pub fn is_irreducible(f: &FpPoly) -> bool {
    let fs = fp_factor(f);
    fs.len() == 1 && fs[0].1 == 1
}

/// Whether `f` stays squarefree modulo `p`.
pub fn squarefree_mod(f: &FpPoly) -> bool {
    f.degree().is_some() && f.is_squarefree()
}

/// Reduce a `BigInt` modulo `m` into the symmetric range `(-m/2, m/2]`.
pub fn symmetric_mod(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}
