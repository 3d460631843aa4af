//! p-maximal orders by the Round 2 enlargement and the splitting of
//! `O/pO` into local components.
//!
//! For a squarefree monic `f`, the local components of `O ⊗ Z_p` for a
//! p-maximal order `O` of `Q[t]/f` are the rings of integers of the
//! irreducible `Q_p` factors of `f`. Component `i` has rank `e_i f_i`, its
//! reduction has residue degree `f_i`, and the norm of `t` on it is the
//! constant term of the factor up to sign.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::linalg::{det_valuation_mod, left_kernel, rank, rref, ScaledInverse};
use crate::arith::{inv_mod, mul_mod};
use crate::fp::{fp_factor_seeded, FpPoly};
use crate::poly::IntPoly;

/// A full-rank order `Z⟨ω_i⟩` with `ω_i = basis_i(t) / den` in the power
/// basis of `Q[t]/f`, and its multiplication table.
struct Order {
    n: usize,
    basis: Vec<Vec<BigInt>>,
    den: BigInt,
    inv: ScaledInverse,
    /// `table[i * n + j]` holds the coordinates of `ω_i ω_j`.
    table: Vec<Vec<BigInt>>,
}

fn mulmod_f(a: &[BigInt], b: &[BigInt], f: &IntPoly) -> Vec<BigInt> {
    let n = f.degree();
    let prod = IntPoly::new(a.to_vec()).mul(&IntPoly::new(b.to_vec()));
    let (_, r) = prod.divrem_monic(f);
    (0..n).map(|i| r.coeff(i)).collect()
}

impl Order {
    fn new(f: &IntPoly, basis: Vec<Vec<BigInt>>, den: BigInt) -> Order {
        let n = f.degree();
        let inv = ScaledInverse::new(&basis).expect("order basis has full rank");
        let mut table = vec![Vec::new(); n * n];
        for i in 0..n {
            for j in i..n {
                let prod = mulmod_f(&basis[i], &basis[j], f);
                let coords: Vec<BigInt> = inv
                    .apply(&prod, &BigInt::one())
                    .expect("power coordinates are integral")
                    .into_iter()
                    .map(|c| {
                        let (q, r) = c.div_rem(&den);
                        assert!(r.is_zero(), "order is closed under multiplication");
                        q
                    })
                    .collect();
                table[i * n + j] = coords.clone();
                table[j * n + i] = coords;
            }
        }
        Order {
            n,
            basis,
            den,
            inv,
            table,
        }
    }

    fn equation_order(f: &IntPoly) -> Order {
        let n = f.degree();
        let basis = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from(u8::from(i == j))).collect())
            .collect();
        Order::new(f, basis, BigInt::one())
    }

    /// Coordinates of the power-basis element with integer coefficients `v`.
    fn coords_of(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.inv
            .apply(v, &self.den)
            .expect("element lies in the order")
    }

    /// `ω_i · y` over Z.
    fn mul_basis(&self, i: usize, y: &[BigInt]) -> Vec<BigInt> {
        let n = self.n;
        let mut out = vec![BigInt::zero(); n];
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            for (o, t) in out.iter_mut().zip(&self.table[i * n + j]) {
                if !t.is_zero() {
                    *o += yj * t;
                }
            }
        }
        out
    }

    fn mul(&self, x: &[BigInt], y: &[BigInt], m: &BigInt) -> Vec<BigInt> {
        let n = self.n;
        let mut out = vec![BigInt::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (o, t) in out.iter_mut().zip(&self.table[i * n + j]) {
                    if !t.is_zero() {
                        *o += &c * t;
                    }
                }
            }
        }
        out.into_iter().map(|v| v.mod_floor(m)).collect()
    }

    fn algebra_mod(&self, p: u64) -> FpAlgebra {
        let pb = BigInt::from(p);
        FpAlgebra {
            p,
            n: self.n,
            table: self
                .table
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|x| x.mod_floor(&pb).to_u64().expect("reduced mod p"))
                        .collect()
                })
                .collect(),
        }
    }
}

/// `O/pO` with its multiplication table.
struct FpAlgebra {
    p: u64,
    n: usize,
    table: Vec<Vec<u64>>,
}

impl FpAlgebra {
    fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let (n, p) = (self.n, self.p);
        let mut out = vec![0u64; n];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let c = mul_mod(xi, yj, p);
                for (o, &t) in out.iter_mut().zip(&self.table[i * n + j]) {
                    if t != 0 {
                        *o = (*o + mul_mod(c, t, p)) % p;
                    }
                }
            }
        }
        out
    }

    fn pow(&self, x: &[u64], e: &BigUint, one: &[u64]) -> Vec<u64> {
        let mut acc = one.to_vec();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, x);
            }
        }
        acc
    }

    fn unit(&self, i: usize) -> Vec<u64> {
        (0..self.n).map(|j| u64::from(i == j)).collect()
    }

    /// Kernel of `x ↦ x^(p^j)` with `p^j ≥ n`: the nilradical.
    fn radical(&self, one: &[u64]) -> Vec<Vec<u64>> {
        let mut e = BigUint::from(self.p);
        while e < BigUint::from(self.n) {
            e *= self.p;
        }
        let images: Vec<Vec<u64>> = (0..self.n).map(|i| self.pow(&self.unit(i), &e, one)).collect();
        left_kernel(&images, self.p)
    }

    /// Kernel of `x ↦ x^p - x`: the span of the primitive idempotents.
    fn berlekamp(&self, one: &[u64]) -> Vec<Vec<u64>> {
        let e = BigUint::from(self.p);
        let p = self.p;
        let images: Vec<Vec<u64>> = (0..self.n)
            .map(|i| {
                let u = self.unit(i);
                self.pow(&u, &e, one)
                    .iter()
                    .zip(&u)
                    .map(|(a, b)| (a + p - b) % p)
                    .collect()
            })
            .collect();
        left_kernel(&images, p)
    }

    /// Minimal polynomial of `b` over F_p, monic, from the first linear
    /// dependency among its powers.
    fn min_poly(&self, b: &[u64], one: &[u64]) -> FpPoly {
        let p = self.p;
        let mut powers = vec![one.to_vec()];
        loop {
            let next = self.mul(powers.last().unwrap(), b);
            powers.push(next);
            let ker = left_kernel(&powers, p);
            if let Some(c) = ker.first() {
                return FpPoly::new(p, c.clone()).monic();
            }
        }
    }
}

fn lift_vec(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Basis of `L` with `pZ^n ⊆ L ⊆ Z^n` from an echelon basis of `L/pZ^n`.
fn lattice_basis(echelon: &[Vec<u64>], p: u64, n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<u64>> = echelon.to_vec();
    let pivots = rref(&mut rows, p);
    let mut out: Vec<Vec<BigInt>> = rows.iter().map(|r| lift_vec(r)).collect();
    for j in (0..n).filter(|j| !pivots.contains(j)) {
        out.push((0..n).map(|i| BigInt::from(if i == j { p } else { 0 })).collect());
    }
    out
}

pub(super) struct Component {
    pub degree: usize,
    pub residue_degree: usize,
    pub const_valuation: u32,
}

#[derive(Debug)]
pub(super) struct StepLimit;

/// Local components of `Q[t]/f` at `p` for monic squarefree `f` with
/// `f(0) ≠ 0`, enlarging the order at most `max_steps` times.
pub(super) fn local_components(
    f: &IntPoly,
    p: u64,
    max_steps: usize,
    seed: u64,
) -> Result<Vec<Component>, StepLimit> {
    let n = f.degree();
    let pb = BigInt::from(p);
    let mut order = Order::equation_order(f);
    let mut steps = 0;
    let (alg, one, rad) = loop {
        let alg = order.algebra_mod(p);
        let one_int = order.coords_of(&[BigInt::one()]);
        let one: Vec<u64> = one_int
            .iter()
            .map(|x| x.mod_floor(&pb).to_u64().unwrap())
            .collect();
        let rad = alg.radical(&one);
        if rad.is_empty() {
            break (alg, one, rad);
        }
        // I = pO + rad; the multiplier ring of I is (1/p){y : yI ⊆ pI}
        let gens = lattice_basis(&rad, p, n);
        let ginv = ScaledInverse::new(&gens).expect("ideal has full rank");
        let unit = BigInt::one();
        let rows: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                let mut row = Vec::with_capacity(n * n);
                for g in &gens {
                    let prod = order.mul_basis(i, g);
                    for c in ginv.apply(&prod, &unit).expect("I is an ideal") {
                        row.push(c.mod_floor(&pb).to_u64().unwrap());
                    }
                }
                row
            })
            .collect();
        let ker = left_kernel(&rows, p);
        if ker.is_empty() {
            break (alg, one, rad);
        }
        steps += 1;
        if steps > max_steps {
            return Err(StepLimit);
        }
        // new basis (1/p)·U in power coordinates
        let u = lattice_basis(&ker, p, n);
        let mut basis: Vec<Vec<BigInt>> = u
            .iter()
            .map(|row| {
                (0..n)
                    .map(|k| {
                        row.iter()
                            .zip(&order.basis)
                            .map(|(c, b)| c * &b[k])
                            .fold(BigInt::zero(), |a, x| a + x)
                    })
                    .collect()
            })
            .collect();
        let mut den = &order.den * &pb;
        let g = basis
            .iter()
            .flatten()
            .fold(den.clone(), |acc, x| acc.gcd(x));
        if !g.is_one() {
            for row in basis.iter_mut() {
                for x in row.iter_mut() {
                    *x /= &g;
                }
            }
            den /= &g;
        }
        order = Order::new(f, basis, den);
    };

    let idempotents = split_idempotents(&alg, &one, seed);
    let v0 = crate::arith::valuation(&f.coeff(0), p).expect("f(0) is nonzero");
    let k = v0 + 1;
    let modulus = pb.pow(k);
    let alpha: Vec<BigInt> = {
        let mut t = vec![BigInt::zero(); n];
        if n > 1 {
            t[1] = BigInt::one();
            order.coords_of(&t)
        } else {
            order.coords_of(&[-f.coeff(0)])
        }
    };
    let one_int = order.coords_of(&[BigInt::one()]);
    let rad_rank = rad.len();
    let mut out = Vec::new();
    for e in idempotents {
        let e_lift = lift_idempotent(&order, &lift_vec(&e), &modulus);
        let rows: Vec<Vec<u64>> = (0..n).map(|j| alg.mul(&e, &alg.unit(j))).collect();
        let degree = rank(&rows, p);
        let mut stacked = rad.clone();
        stacked.extend(rows);
        let residue_degree = rank(&stacked, p) - rad_rank;
        // β = α e + (1 - e) acts as α on this component and as 1 elsewhere
        let ae = order.mul(&alpha, &e_lift, &modulus);
        let beta: Vec<BigInt> = ae
            .iter()
            .zip(&one_int)
            .zip(&e_lift)
            .map(|((a, o), x)| (a + o - x).mod_floor(&modulus))
            .collect();
        let mat: Vec<Vec<BigInt>> = (0..n)
            .map(|j| {
                let wj: Vec<BigInt> = (0..n).map(|k| BigInt::from(u8::from(j == k))).collect();
                order.mul(&beta, &wj, &modulus)
            })
            .collect();
        let const_valuation =
            det_valuation_mod(&mat, p, k).expect("component norm valuation is below v_p(f(0)) + 1");
        out.push(Component {
            degree,
            residue_degree,
            const_valuation,
        });
    }
    debug_assert!(out.iter().map(|c| c.degree).sum::<usize>() == n);
    Ok(out)
}

/// Newton iteration `e ← 3e² − 2e³` modulo `m`.
fn lift_idempotent(order: &Order, e: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut e: Vec<BigInt> = e.iter().map(|x| x.mod_floor(m)).collect();
    loop {
        let e2 = order.mul(&e, &e, m);
        if e2 == e {
            return e;
        }
        let e3 = order.mul(&e2, &e, m);
        e = e2
            .iter()
            .zip(&e3)
            .map(|(a, b)| (BigInt::from(3) * a - BigInt::from(2) * b).mod_floor(m))
            .collect();
    }
}

/// Primitive idempotents of `O/pO`, refined element by element over a
/// basis of the Berlekamp subalgebra.
fn split_idempotents(alg: &FpAlgebra, one: &[u64], seed: u64) -> Vec<Vec<u64>> {
    let p = alg.p;
    let basis = alg.berlekamp(one);
    let target = basis.len();
    let mut idem = vec![one.to_vec()];
    for b in &basis {
        if idem.len() == target {
            break;
        }
        let roots: Vec<u64> = fp_factor_seeded(&alg.min_poly(b, one), seed)
            .into_iter()
            .map(|(g, _)| {
                debug_assert_eq!(g.degree(), Some(1));
                (p - g.coeffs()[0]) % p
            })
            .collect();
        if roots.len() < 2 {
            continue;
        }
        // Lagrange idempotents: u_c = Π_{c' ≠ c} (b - c') / (c - c')
        let shifted = |c: u64| -> Vec<u64> {
            b.iter()
                .zip(one)
                .map(|(&x, &o)| (x + p - mul_mod(c, o, p)) % p)
                .collect()
        };
        let us: Vec<Vec<u64>> = roots
            .iter()
            .map(|&c| {
                let mut acc = one.to_vec();
                let mut scale = 1u64;
                for &c2 in roots.iter().filter(|&&c2| c2 != c) {
                    acc = alg.mul(&acc, &shifted(c2));
                    scale = mul_mod(scale, (c + p - c2) % p, p);
                }
                let inv = inv_mod(scale, p);
                acc.iter().map(|&x| mul_mod(x, inv, p)).collect()
            })
            .collect();
        let mut next = Vec::new();
        for e in &idem {
            for u in &us {
                let v = alg.mul(e, u);
                if v.iter().any(|&x| x != 0) {
                    next.push(v);
                }
            }
        }
        idem = next;
    }
    assert_eq!(idem.len(), target, "Berlekamp basis separates the components");
    idem
}
