//! Random Weil polynomials for property tests and demos.
//!
//! A companion polynomial is built from uniformly drawn real roots in
//! `(-2√q, 2√q)`, its coefficients are rounded to integers, and the result is
//! kept only if it is still Weil. Rounding moves the roots, so this is
//! rejection sampling and the output distribution is not uniform on Weil
//! polynomials.

use num_bigint::BigInt;
use rand::Rng;

use crate::poly::IntPoly;
use crate::weil::{from_companion, is_weil, WeilParams};

/// Rounded companion coefficients from `g` random real roots.
fn rounded_companion<R: Rng>(g: usize, q: f64, rng: &mut R) -> IntPoly {
    let bound = 2.0 * q.sqrt();
    let mut c = vec![1.0f64];
    for _ in 0..g {
        let x: f64 = rng.random_range(-bound..bound);
        let mut next = vec![0.0; c.len() + 1];
        for (i, ci) in c.iter().enumerate() {
            next[i + 1] += ci;
            next[i] -= x * ci;
        }
        c = next;
    }
    IntPoly::new(
        c.iter()
            .map(|x| BigInt::from(x.round() as i64))
            .collect(),
    )
}

/// A Weil polynomial of degree `2g` with no real roots, or `None` if
/// `attempts` draws were all rejected.
pub fn random_weil<R: Rng>(
    g: usize,
    params: &WeilParams,
    rng: &mut R,
    attempts: usize,
) -> Option<IntPoly> {
    let q = params.q_big();
    for _ in 0..attempts {
        let h = rounded_companion(g, params.q() as f64, rng);
        let chi = from_companion(&h, &q);
        let Ok(v) = is_weil(&chi, params) else {
            continue;
        };
        if v.is_weil && v.real_roots.is_empty() {
            return Some(chi);
        }
    }
    None
}
