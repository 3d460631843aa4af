//! The q-Weil predicate, the real companion polynomial and the degree-12
//! transforms.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{binomial, exact_sqrt, is_prime, pow_big, prime_power};
use crate::error::{ParamError, PolyError};
use crate::field::{Field, QuadField, QuadReal, RatField};
use crate::poly::{IntPoly, QuadPoly};
use crate::sturm::{real_root_count, Endpoint, SturmChain};
use crate::upoly;

/// `q = p^n` with `p` prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct WeilParams {
    p: u64,
    n: u32,
    q: u64,
}

impl WeilParams {
    pub fn new(p: u64, n: u32) -> Result<Self, ParamError> {
        if !is_prime(p) {
            return Err(ParamError::NotPrime(p));
        }
        if n == 0 {
            return Err(ParamError::ZeroExponent);
        }
        let q = p.checked_pow(n).ok_or(ParamError::Overflow)?;
        Ok(WeilParams { p, n, q })
    }

    pub fn from_q(q: u64) -> Result<Self, ParamError> {
        let (p, n) = prime_power(q).ok_or(ParamError::NotPrimePower(q))?;
        Ok(WeilParams { p, n, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn q_big(&self) -> BigInt {
        BigInt::from(self.q)
    }

    pub fn field(&self) -> QuadField {
        QuadField::new(&self.q_big()).expect("q is positive")
    }

    pub fn sqrt_q(&self) -> QuadReal {
        QuadReal::sqrt_q(&self.q_big())
    }

    /// Integer square root of `q` when `q` is a perfect square.
    pub fn exact_sqrt_q(&self) -> Option<BigInt> {
        exact_sqrt(&self.q_big())
    }
}

/// A real root `±√q` of a Weil candidate with its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RealRootData {
    pub root: QuadReal,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeilVerdict {
    pub is_weil: bool,
    pub real_roots: Vec<RealRootData>,
    /// `None` when the coefficients are not Weil-symmetric.
    pub companion: Option<IntPoly>,
}

fn shape(chi: &IntPoly) -> Result<usize, PolyError> {
    if chi.is_zero() {
        return Err(PolyError::Zero);
    }
    if !chi.is_monic() {
        return Err(PolyError::NotMonic);
    }
    let d = chi.degree();
    if d % 2 == 1 {
        return Err(PolyError::OddDegree(d));
    }
    Ok(d / 2)
}

/// `c_{g-i} = q^i c_{g+i}` for `1 ≤ i ≤ g` (which includes `c_0 = q^g`).
pub fn check_symmetry(chi: &IntPoly, params: &WeilParams) -> Result<bool, PolyError> {
    let g = shape(chi)?;
    let q = params.q_big();
    let mut qi = BigInt::one();
    for i in 1..=g {
        qi *= &q;
        if chi.coeff(g - i) != &qi * chi.coeff(g + i) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `t^g · h(t + q/t)` for a polynomial `h` of degree `g`.
pub fn from_companion(h: &IntPoly, q: &BigInt) -> IntPoly {
    let g = h.degree();
    let mut c = vec![BigInt::zero(); 2 * g + 1];
    for (j, hj) in h.coeffs().iter().enumerate() {
        if hj.is_zero() {
            continue;
        }
        // t^g (t + q/t)^j = Σ_k C(j,k) q^(j-k) t^(g+2k-j)
        for k in 0..=j {
            let e = g + 2 * k - j;
            c[e] += hj * binomial(j as u64, k as u64) * pow_big(q, (j - k) as u32);
        }
    }
    IntPoly::new(c)
}

/// The monic `h` of degree `g` with `χ(t) = t^g h(t + q/t)`, by a
/// triangular solve from the top coefficient down.
pub fn companion_poly(chi: &IntPoly, params: &WeilParams) -> Result<IntPoly, PolyError> {
    if !check_symmetry(chi, params)? {
        return Err(PolyError::NotSymmetric);
    }
    let g = chi.degree() / 2;
    let q = params.q_big();
    let mut h = vec![BigInt::zero(); g + 1];
    for m in (0..=g).rev() {
        // coefficient of t^(g+m) gets C(j, (j+m)/2) q^((j-m)/2) h_j from j ≥ m
        let mut acc = chi.coeff(g + m);
        for j in (m + 2..=g).step_by(2) {
            acc -= &h[j]
                * binomial(j as u64, ((j + m) / 2) as u64)
                * pow_big(&q, ((j - m) / 2) as u32);
        }
        h[m] = acc;
    }
    let h = IntPoly::new(h);
    debug_assert_eq!(from_companion(&h, &q), *chi);
    Ok(h)
}

/// Real roots of `χ` at `±√q` with multiplicities.
fn real_root_data(chi: &IntPoly, params: &WeilParams) -> Vec<RealRootData> {
    let k = params.field();
    let c = chi.to_quad(&k);
    let s = k.sqrt_q();
    let mut out = Vec::new();
    for root in [s.clone(), k.neg(&s)] {
        let m = upoly::root_multiplicity(&k, &c, &root);
        if m > 0 {
            out.push(RealRootData {
                root,
                multiplicity: m,
            });
        }
    }
    out
}

/// True iff every root of `h` is real and lies in `[-2√q, 2√q]`.
pub fn companion_in_range(h: &IntPoly, params: &WeilParams) -> bool {
    let g = h.degree();
    if real_root_count(&RatField, &h.to_rat()) != g {
        return false;
    }
    let k = params.field();
    let c = h.to_quad(&k);
    let two_s = k.mul(&k.from_int(2), &k.sqrt_q());
    let minus = k.neg(&two_s);
    let chain = SturmChain::new(&k, &c);
    let right = chain.count(&Endpoint::At(two_s), &Endpoint::PosInf);
    let at_minus = upoly::sign_at(&k, &c, &minus) == Ordering::Equal;
    let left = chain.count(&Endpoint::NegInf, &Endpoint::At(minus)) - usize::from(at_minus);
    right == 0 && left == 0
}

/// The q-Weil predicate.
pub fn is_weil(chi: &IntPoly, params: &WeilParams) -> Result<WeilVerdict, PolyError> {
    if !check_symmetry(chi, params)? {
        return Ok(WeilVerdict {
            is_weil: false,
            real_roots: real_root_data(chi, params),
            companion: None,
        });
    }
    let h = companion_poly(chi, params)?;
    let real_roots = real_root_data(chi, params);
    let even = real_roots.iter().all(|r| r.multiplicity % 2 == 0);
    Ok(WeilVerdict {
        is_weil: even && companion_in_range(&h, params),
        real_roots,
        companion: Some(h),
    })
}

/// Symmetric polynomial of degree 2g from `a_1..a_g`.
pub fn weil_from_a(a: &[BigInt], q: &BigInt) -> IntPoly {
    let g = a.len();
    let mut c = vec![BigInt::zero(); 2 * g + 1];
    c[2 * g] = BigInt::one();
    for (i, ai) in a.iter().enumerate() {
        c[2 * g - 1 - i] = ai.clone();
    }
    let mut qi = BigInt::one();
    for i in 1..=g {
        qi *= q;
        c[g - i] = &qi * &c[g + i];
    }
    IntPoly::new(c)
}

/// `a_1..a_g` read off a monic polynomial of degree `2g`.
pub fn a_vector(chi: &IntPoly) -> Vec<BigInt> {
    let d = chi.degree();
    (1..=d / 2).map(|i| chi.coeff(d - i)).collect()
}

/// The six elementary symmetric functions of the `x_i` in terms of the `a_i`.
pub fn symmetric_v(a: &[BigInt; 6], params: &WeilParams) -> [BigInt; 6] {
    symmetric_v_q(a, &params.q_big())
}

pub fn symmetric_v_q(a: &[BigInt; 6], q: &BigInt) -> [BigInt; 6] {
    let q2 = q * q;
    let q3 = &q2 * q;
    [
        a[0].clone(),
        &a[1] - 6 * q,
        &a[2] - 5 * q * &a[0],
        &a[3] - 4 * q * &a[1] + 9 * &q2,
        &a[4] - 3 * q * &a[2] + 5 * &q2 * &a[0],
        &a[5] - 2 * q * &a[3] + 2 * &q2 * &a[1] - 2 * &q3,
    ]
}

/// `f` and `f̃` from the closed-form coefficient lists, `f(t)` having roots
/// `2√q + x_i` and `f̃(t)` roots `2√q - x_i`.
pub fn build_f_ftilde(a: &[BigInt; 6], params: &WeilParams) -> (QuadPoly, QuadPoly) {
    let k = params.field();
    let f = QuadPoly::from_parts(k.clone(), r_coeffs(&k, a, 1));
    let ft = QuadPoly::from_parts(k.clone(), r_coeffs(&k, a, -1));
    (f, ft)
}

/// `[r_6, …, r_1, 1]`; `sign = -1` gives the tilde list.
fn r_coeffs(k: &QuadField, a: &[BigInt; 6], sign: i64) -> Vec<QuadReal> {
    let s = BigInt::from(sign);
    let q = k.q().clone();
    let q2 = &q * &q;
    let q3 = &q2 * &q;
    let [a1, a2, a3, a4, a5, a6] = a;
    // odd-index a's flip sign in the tilde list
    let (a1, a3, a5) = (&s * a1, &s * a3, &s * a5);
    let e = |rat: BigInt, irr: BigInt| k.int_elem(&rat, &irr);
    let r1 = e(-&a1, BigInt::from(-12));
    let r2 = e(54 * &q + a2, 10 * &a1);
    let r3 = e(-35 * &q * &a1 - &a3, -112 * &q - 8 * a2);
    let r4 = e(105 * &q2 + 20 * &q * a2 + a4, 50 * &q * &a1 + 6 * &a3);
    let r5 = e(
        -25 * &q2 * &a1 - 9 * &q * &a3 - &a5,
        -36 * &q2 - 16 * &q * a2 - 4 * a4,
    );
    let r6 = e(
        2 * &q3 + 2 * &q2 * a2 + 2 * &q * a4 + a6,
        2 * &q2 * &a1 + 2 * &q * &a3 + 2 * &a5,
    );
    vec![r6, r5, r4, r3, r2, r1, k.one()]
}

/// `f(t) = h(2√q - t)` and `f̃(t) = h(t - 2√q)` computed from the companion.
pub fn f_ftilde_from_companion(h: &IntPoly, params: &WeilParams) -> (QuadPoly, QuadPoly) {
    let k = params.field();
    let c = h.to_quad(&k);
    let two_s = k.mul(&k.from_int(2), &k.sqrt_q());
    let f = upoly::compose_linear(&k, &c, &k.from_int(-1), &two_s);
    let ft = upoly::compose_linear(&k, &c, &k.one(), &k.neg(&two_s));
    (
        QuadPoly::from_parts(k.clone(), f),
        QuadPoly::from_parts(k, ft),
    )
}

/// Outcome of removing the real roots `±√q` from a degree-12 polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum RealRootReduction {
    /// `q` is a square and `(t ∓ √q)^2` was divided out.
    SquareQ {
        factor: IntPoly,
        quotient: IntPoly,
        quotient_is_weil: bool,
    },
    /// `q` is not a square and `(t^2 - q)^2` was divided out.
    NonSquareQ {
        quotient: IntPoly,
        quotient_is_weil: bool,
    },
    NoRealRoot,
    /// `±√q` is a root of odd multiplicity, so `χ` is not Weil.
    OddMultiplicity {
        root: QuadReal,
        multiplicity: usize,
    },
}

pub fn real_root_reduction(
    chi: &IntPoly,
    params: &WeilParams,
) -> Result<RealRootReduction, PolyError> {
    if chi.degree() != 12 {
        return Err(PolyError::WrongDegree {
            expected: 12,
            got: chi.degree(),
        });
    }
    if !check_symmetry(chi, params)? {
        return Err(PolyError::NotSymmetric);
    }
    let roots = real_root_data(chi, params);
    let Some(first) = roots.first() else {
        return Ok(RealRootReduction::NoRealRoot);
    };
    if let Some(odd) = roots.iter().find(|r| r.multiplicity % 2 == 1) {
        return Ok(RealRootReduction::OddMultiplicity {
            root: odd.root.clone(),
            multiplicity: odd.multiplicity,
        });
    }
    let q = params.q_big();
    match params.exact_sqrt_q() {
        Some(_) => {
            let r = first.root.as_rational().expect("square q").to_integer();
            let factor = IntPoly::new(vec![-r, BigInt::one()]);
            let (quotient, rem) = chi.divrem_monic(&factor.mul(&factor));
            debug_assert!(rem.is_zero());
            let quotient_is_weil = is_weil(&quotient, params)?.is_weil;
            Ok(RealRootReduction::SquareQ {
                factor,
                quotient,
                quotient_is_weil,
            })
        }
        None => {
            let m = IntPoly::new(vec![-q, BigInt::zero(), BigInt::one()]);
            let (quotient, rem) = chi.divrem_monic(&m.mul(&m));
            debug_assert!(rem.is_zero());
            let quotient_is_weil = is_weil(&quotient, params)?.is_weil;
            Ok(RealRootReduction::NonSquareQ {
                quotient,
                quotient_is_weil,
            })
        }
    }
}

/// The first six entries of an a-vector as a fixed array.
pub fn a6(a: &[BigInt]) -> Option<[BigInt; 6]> {
    a.to_vec().try_into().ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(v: &[i64]) -> IntPoly {
        IntPoly::from_i64s(v)
    }

    fn q2() -> WeilParams {
        WeilParams::from_q(2).unwrap()
    }

    fn t12_64() -> IntPoly {
        let mut c = vec![0i64; 13];
        c[0] = 64;
        c[12] = 1;
        ip(&c)
    }

    #[test]
    fn params() {
        assert_eq!(WeilParams::from_q(128).unwrap().n(), 7);
        assert_eq!(WeilParams::from_q(12), Err(ParamError::NotPrimePower(12)));
        assert_eq!(WeilParams::new(4, 1), Err(ParamError::NotPrime(4)));
    }

    #[test]
    fn symmetry_examples() {
        assert!(check_symmetry(&ip(&[2, 3, 1]), &q2()).unwrap());
        assert!(!check_symmetry(&ip(&[4, 1, 0, 1, 1]), &q2()).unwrap());
        assert!(check_symmetry(&t12_64(), &q2()).unwrap());
        assert_eq!(
            check_symmetry(&ip(&[1, 1]), &q2()),
            Err(PolyError::OddDegree(1))
        );
    }

    #[test]
    fn companions() {
        let h = companion_poly(&ip(&[2, 5, 1]), &q2()).unwrap();
        assert_eq!(h, ip(&[5, 1]));
        let h = companion_poly(&ip(&[4, 0, 3, 0, 1]), &q2()).unwrap();
        assert_eq!(h, ip(&[-1, 0, 1]));
        let h = companion_poly(&t12_64(), &q2()).unwrap();
        assert_eq!(from_companion(&h, &BigInt::from(2)), t12_64());
    }

    #[test]
    fn weil_examples() {
        assert!(is_weil(&ip(&[2, 0, 1]), &q2()).unwrap().is_weil);
        assert!(!is_weil(&ip(&[2, 3, 1]), &q2()).unwrap().is_weil);
        assert!(is_weil(&ip(&[4, 0, 3, 0, 1]), &q2()).unwrap().is_weil);
        assert!(is_weil(&t12_64(), &q2()).unwrap().is_weil);
        // (t - 2)^2 at q = 4: boundary with even multiplicity
        let v = is_weil(&ip(&[4, -4, 1]), &WeilParams::from_q(4).unwrap()).unwrap();
        assert!(v.is_weil);
        assert_eq!(v.real_roots[0].multiplicity, 2);
    }

    #[test]
    fn v_and_r_lists() {
        let z: [BigInt; 6] = Default::default();
        let v = symmetric_v(&z, &q2());
        let want: Vec<BigInt> = [0, -12, 0, 36, 0, -16].iter().map(|&x| x.into()).collect();
        assert_eq!(v.to_vec(), want);
        let a = [1, 0, 0, 0, 0, 0].map(BigInt::from);
        assert_eq!(symmetric_v_q(&a, &BigInt::one())[2], BigInt::from(-5));
        let (f, _) = build_f_ftilde(&a, &WeilParams::from_q(4).unwrap());
        assert_eq!(f.coeff(5), QuadReal::from_ints(-25, 0, 4));
    }

    #[test]
    fn reductions() {
        let chi = ip(&[-2, 0, 1]).pow(2).mul(&ip(&[2, 0, 1]).pow(4));
        match real_root_reduction(&chi, &q2()).unwrap() {
            RealRootReduction::NonSquareQ {
                quotient,
                quotient_is_weil,
            } => {
                assert_eq!(quotient, ip(&[2, 0, 1]).pow(4));
                assert!(quotient_is_weil);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            real_root_reduction(&t12_64(), &q2()).unwrap(),
            RealRootReduction::NoRealRoot
        );
    }
}
