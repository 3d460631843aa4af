//! Factorization over Z: squarefree split, factorization modulo a good
//! prime, Hensel lifting and subset recombination.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{next_prime, pow_big};
use crate::field::RatField;
use crate::fp::{fp_factor, squarefree_mod, FpPoly};
use crate::hensel::{multifactor_lift, product_mod, reduce_mod};
use crate::poly::IntPoly;
use crate::upoly;

/// Irreducible factorization of `f` over Z with multiplicities. The content
/// is dropped; factors are primitive with positive leading coefficient and
/// sorted by degree then coefficients.
pub fn factor_over_integers(f: &IntPoly) -> Vec<(IntPoly, usize)> {
    let f = f.primitive_part();
    if f.degree() == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (s, m) in upoly::squarefree_decomposition(&RatField, &f.to_rat()) {
        let s = IntPoly::from_rat_primitive(&s);
        for g in factor_squarefree(&s) {
            out.push((g, m));
        }
    }
    out.sort_by(|a, b| sort_key(&a.0).cmp(&sort_key(&b.0)).then(a.1.cmp(&b.1)));
    out
}

fn sort_key(f: &IntPoly) -> (usize, Vec<BigInt>) {
    let mut c = f.coeffs().to_vec();
    c.reverse();
    (f.degree(), c)
}

/// True iff `f` is irreducible over Q (degree at least one).
pub fn is_irreducible(f: &IntPoly) -> bool {
    let fs = factor_over_integers(f);
    fs.len() == 1 && fs[0].1 == 1
}

/// Primitive squarefree input of positive degree.
fn factor_squarefree(f: &IntPoly) -> Vec<IntPoly> {
    if f.degree() <= 1 {
        return vec![f.clone()];
    }
    let lc = f.lc();
    if lc.is_one() {
        return factor_monic(f);
    }
    // g(x) = lc^(n-1) f(x / lc) is monic; a factor u of g maps back to
    // the primitive part of u(lc·x)
    let n = f.degree();
    let coeffs: Vec<BigInt> = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            if i == n {
                BigInt::one()
            } else {
                c * pow_big(&lc, (n - 1 - i) as u32)
            }
        })
        .collect();
    let g = IntPoly::new(coeffs);
    factor_monic(&g)
        .into_iter()
        .map(|u| u.compose_linear(&lc, &BigInt::zero()).primitive_part())
        .collect()
}

fn norm2_bound(f: &IntPoly) -> BigInt {
    let s: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    s.sqrt() + 1
}

/// Smallest prime keeping `f` squarefree modulo p.
fn good_prime(f: &IntPoly) -> u64 {
    let mut p = 2;
    loop {
        let fp = FpPoly::from_int(f, p);
        if fp.degree() == Some(f.degree()) && squarefree_mod(&fp) {
            return p;
        }
        p = next_prime(p + 1);
    }
}

fn factor_monic(f: &IntPoly) -> Vec<IntPoly> {
    let p = good_prime(f);
    let modular: Vec<FpPoly> = fp_factor(&FpPoly::from_int(f, p))
        .into_iter()
        .map(|(g, _)| g)
        .collect();
    if modular.len() == 1 {
        return vec![f.clone()];
    }
    // any factor's coefficients are at most 2^n ||f||_2 in absolute value
    let bound = (BigInt::one() << f.degree()) * norm2_bound(f) * 2;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    while pow_big(&pb, k) <= bound {
        k += 1;
    }
    let m = pow_big(&pb, k);
    let lifted = multifactor_lift(f, &modular, p, k).expect("good prime gives coprime factors");
    recombine(f, lifted, &m)
}

fn recombine(f: &IntPoly, mut local: Vec<IntPoly>, m: &BigInt) -> Vec<IntPoly> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut s = 1;
    while 2 * s <= local.len() {
        let mut found = None;
        for subset in Subsets::new(local.len(), s) {
            let picked: Vec<&IntPoly> = subset.iter().map(|&i| &local[i]).collect();
            let cand = reduce_mod(&product_mod(&picked, m), m);
            if let Some(q) = rest.div_exact(&cand) {
                found = Some((subset, cand, q));
                break;
            }
        }
        match found {
            Some((subset, cand, q)) => {
                out.push(cand.primitive_part());
                rest = q;
                for &i in subset.iter().rev() {
                    local.remove(i);
                }
            }
            None => s += 1,
        }
    }
    if rest.degree() > 0 {
        out.push(rest.primitive_part());
    }
    out
}

/// Lexicographic k-subsets of `0..n`.
struct Subsets {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Subsets {
    fn new(n: usize, k: usize) -> Self {
        Subsets {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let cur = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(cur)
    }
}

/// Multiply a factorization back out.
pub fn expand(factors: &[(IntPoly, usize)]) -> IntPoly {
    factors
        .iter()
        .fold(IntPoly::one(), |acc, (g, m)| acc.mul(&g.pow(*m as u32)))
}
