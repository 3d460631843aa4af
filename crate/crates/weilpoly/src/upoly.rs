//! Dense univariate polynomials over a [`Field`], stored low degree first.
//!
//! A polynomial is a plain `Vec` of coefficients with no trailing zeros; the
//! zero polynomial is the empty vector.

use crate::field::{Field, OrderedField};
use std::cmp::Ordering;

pub type Coeffs<F> = Vec<<F as Field>::Elem>;

pub fn trim<F: Field>(k: &F, mut p: Coeffs<F>) -> Coeffs<F> {
    while p.last().is_some_and(|c| k.is_zero(c)) {
        p.pop();
    }
    p
}

pub fn degree<F: Field>(p: &[F::Elem]) -> Option<usize> {
    p.len().checked_sub(1)
}

pub fn lc<F: Field>(k: &F, p: &[F::Elem]) -> F::Elem {
    p.last().cloned().unwrap_or_else(|| k.zero())
}

pub fn add<F: Field>(k: &F, a: &[F::Elem], b: &[F::Elem]) -> Coeffs<F> {
    let n = a.len().max(b.len());
    let z = k.zero();
    let out = (0..n)
        .map(|i| k.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trim(k, out)
}

pub fn sub<F: Field>(k: &F, a: &[F::Elem], b: &[F::Elem]) -> Coeffs<F> {
    let n = a.len().max(b.len());
    let z = k.zero();
    let out = (0..n)
        .map(|i| k.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trim(k, out)
}

pub fn neg<F: Field>(k: &F, a: &[F::Elem]) -> Coeffs<F> {
    a.iter().map(|c| k.neg(c)).collect()
}

pub fn scale<F: Field>(k: &F, a: &[F::Elem], c: &F::Elem) -> Coeffs<F> {
    if k.is_zero(c) {
        return Vec::new();
    }
    a.iter().map(|x| k.mul(x, c)).collect()
}

pub fn mul<F: Field>(k: &F, a: &[F::Elem], b: &[F::Elem]) -> Coeffs<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![k.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if k.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = k.add(&out[i + j], &k.mul(x, y));
        }
    }
    trim(k, out)
}

/// Quotient and remainder; panics when `b` is zero.
pub fn divrem<F: Field>(k: &F, a: &[F::Elem], b: &[F::Elem]) -> (Coeffs<F>, Coeffs<F>) {
    assert!(!b.is_empty(), "division by the zero polynomial");
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let inv = k.inv(b.last().unwrap());
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![k.zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let c = k.mul(&r[i + db], &inv);
        if k.is_zero(&c) {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i + j] = k.sub(&r[i + j], &k.mul(&c, bj));
        }
        q[i] = c;
    }
    r.truncate(db);
    (trim(k, q), trim(k, r))
}

pub fn rem<F: Field>(k: &F, a: &[F::Elem], b: &[F::Elem]) -> Coeffs<F> {
    divrem(k, a, b).1
}

pub fn monic<F: Field>(k: &F, a: &[F::Elem]) -> Coeffs<F> {
    match a.last() {
        None => Vec::new(),
        Some(l) => scale(k, a, &k.inv(l)),
    }
}

/// Monic greatest common divisor (zero if both inputs are zero).
pub fn gcd<F: Field>(k: &F, a: &[F::Elem], b: &[F::Elem]) -> Coeffs<F> {
    let mut x = trim(k, a.to_vec());
    let mut y = trim(k, b.to_vec());
    while !y.is_empty() {
        let r = rem(k, &x, &y);
        x = y;
        y = monic(k, &r);
    }
    monic(k, &x)
}

pub fn derivative<F: Field>(k: &F, a: &[F::Elem]) -> Coeffs<F> {
    let out = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| k.mul(c, &k.from_int(i as i64)))
        .collect();
    trim(k, out)
}

pub fn eval<F: Field>(k: &F, a: &[F::Elem], x: &F::Elem) -> F::Elem {
    a.iter()
        .rev()
        .fold(k.zero(), |acc, c| k.add(&k.mul(&acc, x), c))
}

/// `a(s·t + c)`.
pub fn compose_linear<F: Field>(k: &F, a: &[F::Elem], s: &F::Elem, c: &F::Elem) -> Coeffs<F> {
    let lin = trim(k, vec![c.clone(), s.clone()]);
    let mut out: Coeffs<F> = Vec::new();
    for coef in a.iter().rev() {
        out = mul(k, &out, &lin);
        out = add(k, &out, std::slice::from_ref(coef));
    }
    out
}

/// Squarefree part `p / gcd(p, p')`, made monic.
pub fn squarefree_part<F: Field>(k: &F, a: &[F::Elem]) -> Coeffs<F> {
    if a.len() <= 2 {
        return monic(k, a);
    }
    let g = gcd(k, a, &derivative(k, a));
    monic(k, &divrem(k, a, &g).0)
}

/// Yun's squarefree decomposition in characteristic zero: returns monic
/// `(s_i, i)` with `a = lc · Π s_i^i`, the `s_i` pairwise coprime.
pub fn squarefree_decomposition<F: Field>(k: &F, a: &[F::Elem]) -> Vec<(Coeffs<F>, usize)> {
    let mut out = Vec::new();
    if a.len() <= 1 {
        return out;
    }
    let da = derivative(k, a);
    let mut g = gcd(k, a, &da);
    let mut b = divrem(k, a, &g).0;
    let mut c = divrem(k, &da, &g).0;
    let mut d = sub(k, &c, &derivative(k, &b));
    let mut i = 1;
    loop {
        g = gcd(k, &b, &d);
        if g.len() > 1 {
            out.push((g.clone(), i));
        }
        b = divrem(k, &b, &g).0;
        if b.len() <= 1 {
            break;
        }
        c = divrem(k, &d, &g).0;
        d = sub(k, &c, &derivative(k, &b));
        i += 1;
    }
    out
}

/// Sign of `a(x)`.
pub fn sign_at<F: OrderedField>(k: &F, a: &[F::Elem], x: &F::Elem) -> Ordering {
    k.sign(&eval(k, a, x))
}

/// Sign of `a` as `x → +∞` (`positive = true`) or `x → -∞`.
pub fn sign_at_infinity<F: OrderedField>(k: &F, a: &[F::Elem], positive: bool) -> Ordering {
    match a.last() {
        None => Ordering::Equal,
        Some(l) => {
            let s = k.sign(l);
            if positive || (a.len() - 1) % 2 == 0 {
                s
            } else {
                s.reverse()
            }
        }
    }
}

/// Multiplicity of `x` as a root of `a` (zero polynomial gives 0).
pub fn root_multiplicity<F: Field>(k: &F, a: &[F::Elem], x: &F::Elem) -> usize {
    if a.is_empty() {
        return 0;
    }
    let lin = vec![k.neg(x), k.one()];
    let mut cur = a.to_vec();
    let mut m = 0;
    loop {
        let (qt, r) = divrem(k, &cur, &lin);
        if !r.is_empty() {
            return m;
        }
        m += 1;
        cur = qt;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::field::RatField;
    use num_rational::BigRational;

    fn p(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| rat(x, 1)).collect()
    }

    #[test]
    fn product_and_division() {
        let k = RatField;
        let a = p(&[1, 0, 1]);
        let b = p(&[-1, 1]);
        let c = mul(&k, &a, &b);
        assert_eq!(c, p(&[-1, 1, -1, 1]));
        let (q, r) = divrem(&k, &c, &b);
        assert_eq!(q, a);
        assert!(r.is_empty());
    }

    #[test]
    fn gcd_and_yun() {
        let k = RatField;
        // (x-1)^2 (x+2)
        let f = mul(&k, &mul(&k, &p(&[-1, 1]), &p(&[-1, 1])), &p(&[2, 1]));
        assert_eq!(squarefree_part(&k, &f), p(&[-2, 1, 1]));
        let dec = squarefree_decomposition(&k, &f);
        assert_eq!(dec, vec![(p(&[2, 1]), 1), (p(&[-1, 1]), 2)]);
        assert_eq!(root_multiplicity(&k, &f, &rat(1, 1)), 2);
    }

    #[test]
    fn derivative_and_compose() {
        let k = RatField;
        let t6 = p(&[0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(derivative(&k, &t6), p(&[0, 0, 0, 0, 0, 6]));
        // (t^2 - 2)(t + 1) at t -> 2t - 1
        let f = p(&[-2, 0, 1]);
        let g = compose_linear(&k, &f, &rat(2, 1), &rat(-1, 1));
        assert_eq!(g, p(&[-1, -4, 4]));
    }
}
