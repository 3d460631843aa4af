//! p-adic Newton polygons of integer polynomials.
//!
//! Points are `(i, v_p(c_i))` for the nonzero coefficients of `Σ c_i t^i`.
//! The polygon is their lower convex hull; a segment of slope `σ` and
//! horizontal length `l` stands for `l` roots of valuation `-σ`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::arith::{is_prime, valuation};
use crate::error::{ParamError, PolyError};
use crate::poly::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolygonError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Param(#[from] ParamError),
}

/// A hull vertex `(index, height)`.
pub type Vertex = (usize, u32);

fn rational_as_string<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Segment {
    #[serde(serialize_with = "rational_as_string")]
    pub slope: BigRational,
    pub horizontal_length: usize,
    pub start: Vertex,
    pub end: Vertex,
}

impl Segment {
    /// Valuation of the roots this segment accounts for.
    pub fn root_valuation(&self) -> BigRational {
        -self.slope.clone()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NewtonPolygon {
    pub p: u64,
    /// `(index, valuation)`; `None` is +infinity (zero coefficient).
    pub points: Vec<(usize, Option<u32>)>,
    pub vertices: Vec<Vertex>,
    pub segments: Vec<Segment>,
}

fn cross(o: Vertex, a: Vertex, b: Vertex) -> i128 {
    let (ox, oy) = (o.0 as i128, o.1 as i128);
    (a.0 as i128 - ox) * (b.1 as i128 - oy) - (a.1 as i128 - oy) * (b.0 as i128 - ox)
}

/// Lower convex hull of points sorted by index; collinear points are dropped.
pub fn lower_hull(points: &[Vertex]) -> Vec<Vertex> {
    let mut hull: Vec<Vertex> = Vec::with_capacity(points.len());
    for &pt in points {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], pt) <= 0 {
            hull.pop();
        }
        hull.push(pt);
    }
    hull
}

pub fn newton_polygon(f: &IntPoly, p: u64) -> Result<NewtonPolygon, PolygonError> {
    if !is_prime(p) {
        return Err(ParamError::NotPrime(p).into());
    }
    if f.is_zero() {
        return Err(PolyError::Zero.into());
    }
    if f.coeff(0).is_zero() {
        return Err(PolyError::ZeroConstant.into());
    }
    let points: Vec<(usize, Option<u32>)> = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| (i, valuation(c, p)))
        .collect();
    let finite: Vec<Vertex> = points
        .iter()
        .filter_map(|&(i, v)| v.map(|v| (i, v)))
        .collect();
    let vertices = lower_hull(&finite);
    let segments = vertices
        .windows(2)
        .map(|w| {
            let (a, b) = (w[0], w[1]);
            let len = b.0 - a.0;
            Segment {
                slope: BigRational::new(
                    BigInt::from(b.1 as i64 - a.1 as i64),
                    BigInt::from(len as u64),
                ),
                horizontal_length: len,
                start: a,
                end: b,
            }
        })
        .collect();
    Ok(NewtonPolygon {
        p,
        points,
        vertices,
        segments,
    })
}

impl NewtonPolygon {
    pub fn degree(&self) -> usize {
        self.vertices.last().map_or(0, |v| v.0) - self.vertices.first().map_or(0, |v| v.0)
    }

    /// `(root valuation, multiplicity)` per segment, left to right (so in
    /// decreasing valuation).
    pub fn root_valuations(&self) -> Vec<(BigRational, usize)> {
        self.segments
            .iter()
            .map(|s| (s.root_valuation(), s.horizontal_length))
            .collect()
    }

    /// Height of the hull above index `x`, or `None` outside its range.
    pub fn height_at(&self, x: usize) -> Option<BigRational> {
        let first = self.vertices.first()?;
        if x == first.0 {
            return Some(BigRational::from_integer(first.1.into()));
        }
        let s = self.segments.iter().find(|s| s.start.0 < x && x <= s.end.0)?;
        let dx = BigInt::from((x - s.start.0) as u64);
        Some(BigRational::from_integer(s.start.1.into()) + &s.slope * BigRational::from_integer(dx))
    }

    pub fn is_vertex(&self, x: usize) -> bool {
        self.vertices.iter().any(|v| v.0 == x)
    }

    /// Invariance of the root valuations under `v ↦ n - v`, the shape forced
    /// by `α ↦ q/α` on the roots of a `q`-Weil polynomial with `q = p^n`.
    pub fn is_weil_symmetric(&self, n: u32) -> bool {
        let n = BigRational::from_integer(n.into());
        let vals = self.root_valuations();
        let mut mirrored: Vec<(BigRational, usize)> =
            vals.iter().map(|(v, l)| (&n - v, *l)).collect();
        mirrored.reverse();
        vals == mirrored
    }

    /// Every point lies on or above every segment's line. A brute-force
    /// check of the hull, quadratic in the number of points.
    pub fn points_above_segments(&self) -> bool {
        self.segments.iter().all(|s| {
            self.points.iter().all(|&(i, v)| {
                let Some(v) = v else { return true };
                let line = BigRational::from_integer(s.start.1.into())
                    + &s.slope * BigRational::from_integer(BigInt::from(i as i64 - s.start.0 as i64));
                !(line - BigRational::from_integer(v.into())).is_positive()
            })
        })
    }
}

impl fmt::Display for NewtonPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .vertices
            .iter()
            .map(|(i, h)| format!("({i},{h})"))
            .collect();
        write!(f, "{}", parts.join("-"))
    }
}

/// Vertex heights, measured from the last vertex, are multiples of `n`.
///
/// For a Frobenius polynomial each vertex height is the valuation of the
/// constant term of the factor collecting the roots to its right, and
/// every `Q_p` factor contributes a multiple of `n`.
pub fn lattice_vertex_check(np: &NewtonPolygon, n: u32) -> bool {
    let Some(&(_, base)) = np.vertices.last() else {
        return true;
    };
    np.vertices
        .iter()
        .all(|&(_, h)| (h as i64 - base as i64) % n as i64 == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn ip(v: &[i64]) -> IntPoly {
        IntPoly::from_i64s(v)
    }

    #[test]
    fn spec_shapes() {
        let np = newton_polygon(&ip(&[3, 3, 1]), 3).unwrap();
        assert_eq!(np.vertices, vec![(0, 1), (2, 0)]);
        assert_eq!(np.segments.len(), 1);
        assert_eq!(np.segments[0].slope, rat(-1, 2));
        assert_eq!(np.segments[0].horizontal_length, 2);

        let np = newton_polygon(&ip(&[-25, 0, 1]), 5).unwrap();
        assert_eq!(np.vertices, vec![(0, 2), (2, 0)]);
        assert_eq!(np.segments[0].slope, rat(-1, 1));

        let mut c = vec![0i64; 15];
        c[0] = 128;
        c[14] = 1;
        let np = newton_polygon(&ip(&c), 2).unwrap();
        assert_eq!(np.vertices, vec![(0, 7), (14, 0)]);
        assert_eq!(np.segments[0].horizontal_length, 14);
        assert!(lattice_vertex_check(&np, 1));
        assert!(np.is_weil_symmetric(1));
    }

    #[test]
    fn collinear_points_are_not_vertices() {
        // t^2 + 2t + 4 at p = 2: (1,1) sits on the segment from (0,2) to (2,0)
        let np = newton_polygon(&ip(&[4, 2, 1]), 2).unwrap();
        assert_eq!(np.vertices, vec![(0, 2), (2, 0)]);
        // the supersingular line for n = 2 passes through the lattice point (7,7)
        let mut c = vec![0i64; 15];
        c[0] = 1 << 14;
        c[7] = 1 << 7;
        c[14] = 1;
        let np = newton_polygon(&ip(&c), 2).unwrap();
        assert_eq!(np.vertices, vec![(0, 14), (14, 0)]);
        assert!(lattice_vertex_check(&np, 2));
    }

    #[test]
    fn ordinary_and_heights() {
        // t^14 + t^7 + 2^7: vertex (7,0), slopes -1/7 and 0
        let mut c = vec![0i64; 15];
        c[0] = 128;
        c[7] = 1;
        c[14] = 1;
        let np = newton_polygon(&ip(&c), 2).unwrap();
        assert_eq!(np.vertices, vec![(0, 7), (7, 0), (14, 0)]);
        assert_eq!(np.root_valuations(), vec![(rat(1, 1), 7), (rat(0, 1), 7)]);
        assert_eq!(np.height_at(3), Some(rat(4, 1)));
        assert!(np.is_weil_symmetric(1));
        assert!(np.points_above_segments());
    }

    #[test]
    fn lattice_condition() {
        // t^4 + 2t^2 + 16: the vertex (2,1) has odd height, so n = 2 fails
        let np = newton_polygon(&ip(&[16, 0, 2, 0, 1]), 2).unwrap();
        assert_eq!(np.vertices, vec![(0, 4), (2, 1), (4, 0)]);
        assert!(!lattice_vertex_check(&np, 2));
        assert!(lattice_vertex_check(&np, 1));
    }

    #[test]
    fn errors() {
        assert_eq!(
            newton_polygon(&ip(&[0, 1]), 2),
            Err(PolygonError::Poly(PolyError::ZeroConstant))
        );
        assert_eq!(
            newton_polygon(&ip(&[1, 1]), 4),
            Err(PolygonError::Param(ParamError::NotPrime(4)))
        );
    }
}
