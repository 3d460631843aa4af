//! Generators and fixtures shared by the integration tests.

#![allow(dead_code)]

pub mod golden;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use weilpoly::fp::{is_irreducible, FpPoly};
use weilpoly::oracle::{modulus_check, ModulusVerdict};
use weilpoly::padic::PadicFactorProfile;
use weilpoly::poly::IntPoly;
use weilpoly::weil::{is_weil, weil_from_a, WeilParams};
use weilpoly::zassenhaus::factor_over_integers;

/// `(degree, root valuation, constant-term valuation, residue degree)`.
pub type Shape = (usize, BigRational, u32, usize);

pub fn ratio(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

pub fn pow(p: u64, k: u32) -> BigInt {
    BigInt::from(p).pow(k)
}

pub fn is_squarefree(f: &IntPoly) -> bool {
    factor_over_integers(f).iter().all(|(_, m)| *m == 1)
}

fn unit<R: Rng>(rng: &mut R, p: u64) -> BigInt {
    loop {
        let u: i64 = rng.random_range(-(p as i64 * p as i64)..=(p as i64 * p as i64));
        if u % p as i64 != 0 {
            return u.into();
        }
    }
}

/// Monic of degree `d`, nonzero constant term, each lower coefficient
/// either zero or `p^v · unit` with `v` drawn from `0..=max_v`.
pub fn planted<R: Rng>(rng: &mut R, p: u64, d: usize, max_v: u32) -> IntPoly {
    let mut c: Vec<BigInt> = (0..d)
        .map(|i| {
            if i > 0 && rng.random_bool(0.3) {
                BigInt::from(0)
            } else {
                pow(p, rng.random_range(0..=max_v)) * unit(rng, p)
            }
        })
        .collect();
    c.push(1.into());
    IntPoly::new(c)
}

pub fn shapes_of(profile: &PadicFactorProfile) -> Vec<Shape> {
    let mut out: Vec<Shape> = profile
        .factors
        .iter()
        .map(|f| (f.degree, f.slope.clone(), f.const_valuation, f.residual_degree))
        .collect();
    out.sort();
    out
}

/// `t - p^k u`.
fn linear<R: Rng>(rng: &mut R, p: u64) -> (IntPoly, Shape) {
    let k = rng.random_range(0..=2u32);
    let f = IntPoly::new(vec![-(pow(p, k) * unit(rng, p)), 1.into()]);
    (f, (1, ratio(k as i64, 1), k, 1))
}

/// A lift of an irreducible of degree `d` mod p, with roots scaled by `p^k`.
fn unramified<R: Rng>(rng: &mut R, p: u64) -> (IntPoly, Shape) {
    let d = rng.random_range(2..=3usize);
    let g = loop {
        let mut c: Vec<u64> = (0..d).map(|_| rng.random_range(0..p)).collect();
        c.push(1);
        let g = FpPoly::new(p, c);
        if is_irreducible(&g) {
            break g;
        }
    };
    let k = rng.random_range(0..=1u32);
    let c: Vec<BigInt> = g
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, &ci)| {
            let lifted = if i == d {
                BigInt::from(1)
            } else {
                BigInt::from(ci) + BigInt::from(p) * rng.random_range(-1..=1i64)
            };
            lifted * pow(p, k * (d - i) as u32)
        })
        .collect();
    (IntPoly::new(c), (d, ratio(k as i64, 1), k * d as u32, d))
}

/// `t^e + p^k(r_{e-1} t^{e-1} + ... + r_1 t) - p^k u` with `gcd(k, e) = 1`:
/// totally ramified with roots of valuation `k/e`.
fn ramified<R: Rng>(rng: &mut R, p: u64) -> (IntPoly, Shape) {
    let e = rng.random_range(2..=4usize);
    let k = loop {
        let k = rng.random_range(1..=5u32);
        if num_integer::gcd(k as usize, e) == 1 {
            break k;
        }
    };
    let mut c = vec![-(pow(p, k) * unit(rng, p))];
    for _ in 1..e {
        c.push(pow(p, k) * rng.random_range(-2..=2i64));
    }
    c.push(1.into());
    (IntPoly::new(c), (e, ratio(k as i64, e as i64), k, 1))
}

/// A squarefree product of 1..=4 blocks of total degree at most 12, with
/// the union of the blocks' shapes.
pub fn composition<R: Rng>(rng: &mut R, p: u64) -> (IntPoly, Vec<Shape>) {
    loop {
        let blocks = rng.random_range(1..=4);
        let mut f = IntPoly::one();
        let mut want = Vec::new();
        for _ in 0..blocks {
            let (b, s) = match rng.random_range(0..3) {
                0 => linear(rng, p),
                1 => unramified(rng, p),
                _ => ramified(rng, p),
            };
            f = f.mul(&b);
            want.push(s);
        }
        if f.degree() <= 12 && is_squarefree(&f) {
            want.sort();
            return (f, want);
        }
    }
}

/// The worked examples with their profiles over `Q_p`.
pub fn worked_examples() -> Vec<(IntPoly, u64, Vec<Shape>)> {
    let mut out = Vec::new();
    for p in [2u64, 3, 5] {
        let pi = p as i64;
        out.push((IntPoly::from_i64s(&[pi, 0, 0, 1]), p, vec![(3, ratio(1, 3), 1, 1)]));
        let f = IntPoly::from_i64s(&[-pi, 0, 1]).mul(&IntPoly::from_i64s(&[-1, 1]));
        out.push((f, p, vec![(1, ratio(0, 1), 0, 1), (2, ratio(1, 2), 1, 1)]));
    }
    // t^4 + 3t^2 + 4 = (t^2 + t + 2)(t^2 - t + 2), and both split over Q_2
    let f = IntPoly::from_i64s(&[4, 0, 3, 0, 1]);
    let unit_root = (1, ratio(0, 1), 0, 1);
    let val_one = (1, ratio(1, 1), 1, 1);
    out.push((f, 2, vec![unit_root.clone(), unit_root, val_one.clone(), val_one]));
    out
}

/// Exhaustive `|a_i| <= 10` box of degree `2g`: `(instances, disagreements,
/// Weil but not certified by the oracle)`.
pub fn oracle_scan(g: usize, q: u64) -> (usize, usize, usize) {
    let params = WeilParams::from_q(q).unwrap();
    let qb = BigInt::from(q);
    let (mut total, mut disagree, mut inconclusive) = (0, 0, 0);
    let mut a = vec![-10i64; g];
    loop {
        let av: Vec<BigInt> = a.iter().map(|&x| x.into()).collect();
        let chi = weil_from_a(&av, &qb);
        let w = is_weil(&chi, &params).unwrap().is_weil;
        let o = modulus_check(&chi, q);
        total += 1;
        match (w, o) {
            (true, ModulusVerdict::OffCircle) | (false, ModulusVerdict::AllOnCircle) => {
                disagree += 1;
                eprintln!("disagreement q={q} a={a:?} weil={w} oracle={o:?}");
            }
            (false, ModulusVerdict::Inconclusive) => {
                disagree += 1;
                eprintln!("oracle could not refute q={q} a={a:?}");
            }
            (true, ModulusVerdict::Inconclusive) => inconclusive += 1,
            _ => {}
        }
        let mut i = 0;
        loop {
            if i == g {
                return (total, disagree, inconclusive);
            }
            a[i] += 1;
            if a[i] <= 10 {
                break;
            }
            a[i] = -10;
            i += 1;
        }
    }
}
