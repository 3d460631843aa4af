//! Residual polynomials of Newton polygon segments.
//!
//! For a segment whose roots have valuation `h/e` (lowest terms), the points
//! on it sit at indices `i0, i0 + e, ...` and the residual polynomial
//! collects their unit parts. When it is squarefree mod `p`, each of its
//! irreducible factors of degree `d` lifts to one irreducible `Q_p` factor of
//! degree `d·e` with residue degree `d`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::arith::valuation;
use crate::fp::{fp_factor_seeded, squarefree_mod, FpPoly};
use crate::newton::Segment;
use crate::poly::IntPoly;

/// Root valuation `h/e` of a segment in lowest terms.
pub(super) fn segment_ratio(s: &Segment) -> (u32, usize) {
    let v = s.root_valuation();
    let h = v.numer().to_u32().expect("root valuations are small and nonnegative");
    let e = v.denom().to_usize().expect("denominator divides the degree");
    (h, e)
}

pub(super) fn residual_polynomial(f: &IntPoly, p: u64, s: &Segment) -> FpPoly {
    let (h, e) = segment_ratio(s);
    let (i0, y0) = s.start;
    let len = s.horizontal_length / e;
    let pb = BigInt::from(p);
    let coeffs = (0..=len)
        .map(|j| {
            let c = f.coeff(i0 + j * e);
            let height = y0 - j as u32 * h;
            match valuation(&c, p) {
                Some(v) if v == height => {
                    let unit = c / pb.pow(height);
                    let r = unit.mod_floor(&pb);
                    debug_assert!(r.is_positive());
                    r.to_u64().expect("reduced mod p")
                }
                _ => 0,
            }
        })
        .collect();
    FpPoly::new(p, coeffs)
}

/// `(degree, residue degree, constant-term valuation)` of each `Q_p` factor
/// on this segment, or `None` if the residual polynomial is not squarefree.
pub(super) fn segment_factors(
    f: &IntPoly,
    p: u64,
    s: &Segment,
    seed: u64,
) -> Option<Vec<(usize, usize, u32)>> {
    let (h, e) = segment_ratio(s);
    let r = residual_polynomial(f, p, s);
    if !squarefree_mod(&r) {
        return None;
    }
    Some(
        fp_factor_seeded(&r, seed)
            .into_iter()
            .map(|(g, _)| {
                let d = g.degree().expect("nonconstant factor");
                (d * e, d, d as u32 * h)
            })
            .collect(),
    )
}
