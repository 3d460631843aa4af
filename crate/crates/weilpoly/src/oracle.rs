//! Root-modulus oracle that shares no code with the Sturm machinery.
//!
//! Roots are approximated in `f64` by Aberth iteration. The Weierstrass
//! corrections `W_i = χ(z_i) / Π_{j≠i}(z_i - z_j)` are then evaluated exactly
//! over Q(i) at those floating points. Every root lies in the union of the
//! disks `D(z_i, n|W_i|)`, and a connected component made of `m` disks holds
//! exactly `m` roots. A component that misses the circle `|z| = √q` proves
//! some root is off the circle. A one-disk component whose image under
//! `z ↦ q/z̄` meets no other component proves its root is on the circle, since
//! the symmetric polynomial's roots are closed under that map.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::sqrt_bounds;
use crate::poly::IntPoly;

const BITS: u32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModulusVerdict {
    /// Every root certified to have modulus `√q`.
    AllOnCircle,
    /// Some root certified to have modulus different from `√q`.
    OffCircle,
    /// Neither could be certified (typically repeated roots).
    Inconclusive,
}

#[derive(Clone, Debug)]
struct CRat {
    re: BigRational,
    im: BigRational,
}

impl CRat {
    fn from_f64(z: Complex64) -> Option<CRat> {
        Some(CRat {
            re: BigRational::from_float(z.re)?,
            im: BigRational::from_float(z.im)?,
        })
    }
    fn zero() -> CRat {
        CRat {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }
    fn one() -> CRat {
        CRat {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }
    fn add(&self, o: &CRat) -> CRat {
        CRat {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
    fn sub(&self, o: &CRat) -> CRat {
        CRat {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
    fn mul(&self, o: &CRat) -> CRat {
        CRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
    fn norm2(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
}

/// Upper bound for `√x`.
fn sqrt_hi(x: &BigRational) -> BigRational {
    sqrt_bounds(x, BITS).1
}

fn sqrt_lo(x: &BigRational) -> BigRational {
    sqrt_bounds(x, BITS).0
}

/// Approximate all complex roots of a monic polynomial.
pub fn aberth_roots(f: &IntPoly) -> Vec<Complex64> {
    let n = f.degree();
    let c: Vec<f64> = f
        .coeffs()
        .iter()
        .map(|x| x.to_f64().unwrap_or(f64::MAX))
        .collect();
    let lc = c[n];
    let radius = c[..n]
        .iter()
        .map(|x| (x / lc).abs().powf(1.0 / n as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let ang = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            Complex64::from_polar(radius, ang)
        })
        .collect();
    let eval = |x: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &ci in c.iter().rev() {
            dp = dp * x + p;
            p = p * x + ci;
        }
        (p, dp)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / z[i].norm().max(1.0));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

struct Disk {
    center: CRat,
    /// Squared radius, exact.
    r2: BigRational,
}

/// Weierstrass inclusion disks at the given points; `None` if two points
/// coincide.
fn inclusion_disks(f: &IntPoly, z: &[Complex64]) -> Option<Vec<Disk>> {
    let n = f.degree();
    let pts: Vec<CRat> = z
        .iter()
        .map(|&w| CRat::from_f64(w))
        .collect::<Option<_>>()?;
    let coeffs: Vec<CRat> = f
        .coeffs()
        .iter()
        .map(|c| CRat {
            re: BigRational::from_integer(c.clone()),
            im: BigRational::zero(),
        })
        .collect();
    let nn = BigRational::from_integer(BigInt::from((n * n) as u64));
    let mut out = Vec::with_capacity(n);
    for (i, zi) in pts.iter().enumerate() {
        let val = coeffs
            .iter()
            .rev()
            .fold(CRat::zero(), |acc, c| acc.mul(zi).add(c));
        let mut den = CRat::one();
        for (j, zj) in pts.iter().enumerate() {
            if i != j {
                den = den.mul(&zi.sub(zj));
            }
        }
        let d2 = den.norm2();
        if d2.is_zero() {
            return None;
        }
        out.push(Disk {
            center: zi.clone(),
            r2: &nn * val.norm2() / d2,
        });
    }
    Some(out)
}

fn disks_meet(a: &Disk, b: &Disk) -> bool {
    // |ca - cb| ≤ ra + rb, decided with outward rational bounds
    let d2 = a.center.sub(&b.center).norm2();
    let r = sqrt_hi(&a.r2) + sqrt_hi(&b.r2);
    d2 <= &r * &r
}

fn components(disks: &[Disk]) -> Vec<Vec<usize>> {
    let n = disks.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if disks_meet(&disks[i], &disks[j]) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    groups.into_values().collect()
}

fn misses_circle(d: &Disk, q: &BigRational) -> bool {
    let m2 = d.center.norm2();
    let (s_lo, s_hi) = sqrt_bounds(q, BITS);
    let r = sqrt_hi(&d.r2);
    let inside = sqrt_hi(&m2) + &r < s_lo;
    let outside = sqrt_lo(&m2) - &r > s_hi;
    inside || outside
}

/// Image of a disk under `z ↦ q/z̄`, as a disk that contains it, or `None`
/// when the disk reaches the origin.
fn reflect(d: &Disk, q: &BigRational) -> Option<Disk> {
    let m2 = d.center.norm2();
    let r_hi = sqrt_hi(&d.r2);
    let den = &m2 - &r_hi * &r_hi;
    if !den.is_positive() {
        return None;
    }
    let s = q / &den;
    Some(Disk {
        center: CRat {
            re: &d.center.re * &s,
            im: &d.center.im * &s,
        },
        r2: &s * &s * &r_hi * &r_hi,
    })
}

/// Roots closed under `z ↦ q/z̄` for the shape `c_k = q^(g-k) c_{2g-k}`.
fn reflection_closed(f: &IntPoly, q: &BigRational) -> bool {
    let d = f.degree();
    if d % 2 == 1 {
        return false;
    }
    let g = d / 2;
    let q = q.to_integer();
    (0..g).all(|k| f.coeff(k) == q.pow((g - k) as u32) * f.coeff(d - k))
}

/// Classify the root moduli of a monic polynomial against `√q`.
pub fn modulus_check(f: &IntPoly, q: u64) -> ModulusVerdict {
    if f.degree() == 0 {
        return ModulusVerdict::AllOnCircle;
    }
    let q = BigRational::from_integer(BigInt::from(q));
    let z = aberth_roots(f);
    let Some(disks) = inclusion_disks(f, &z) else {
        return ModulusVerdict::Inconclusive;
    };
    let comps = components(&disks);
    if comps
        .iter()
        .any(|c| c.iter().all(|&i| misses_circle(&disks[i], &q)))
    {
        return ModulusVerdict::OffCircle;
    }
    let on = reflection_closed(f, &q) && comps.iter().all(|c| {
        if c.len() != 1 {
            return false;
        }
        let Some(img) = reflect(&disks[c[0]], &q) else {
            return false;
        };
        comps
            .iter()
            .filter(|o| o[0] != c[0])
            .all(|o| o.iter().all(|&j| !disks_meet(&img, &disks[j])))
    });
    if on {
        ModulusVerdict::AllOnCircle
    } else {
        ModulusVerdict::Inconclusive
    }
}
