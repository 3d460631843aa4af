//! Degrees and root valuations of the irreducible factors over `Q_p`.
//!
//! Segments whose residual polynomial is squarefree are split directly.
//! The rest are resolved by building a p-maximal order of `Q[t]/f` and
//! splitting it into local components, which is exact for any squarefree
//! monic input but can take several enlargement steps.

mod linalg;
mod residual;
mod round2;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::arith::is_prime;
use crate::cases::FactorShape;
use crate::error::{ParamError, PolyError};
use crate::field::RatField;
use crate::fp::DEFAULT_SEED;
use crate::newton::{newton_polygon, PolygonError};
use crate::poly::IntPoly;
use crate::upoly;
use crate::weil::WeilParams;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PadicError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error("profile not certified: {reason}")]
    Uncertified {
        partial: Box<PadicFactorProfile>,
        reason: String,
    },
}

impl From<PolygonError> for PadicError {
    fn from(e: PolygonError) -> Self {
        match e {
            PolygonError::Poly(e) => PadicError::Poly(e),
            PolygonError::Param(e) => PadicError::Param(e),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Squarefree residual polynomial of a single segment.
    Residual,
    /// Local component of a p-maximal order.
    MaximalOrder,
    /// A whole segment left unsplit.
    Unresolved,
}

fn rational_as_string<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// One irreducible factor over `Q_p`, or a whole unsplit segment when
/// `certified` is false.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PadicFactor {
    pub degree: usize,
    /// Common valuation of the roots, with `v_p(p) = 1`.
    #[serde(serialize_with = "rational_as_string")]
    pub slope: BigRational,
    pub const_valuation: u32,
    pub residual_degree: usize,
    pub certified: bool,
    pub method: Method,
}

impl PadicFactor {
    fn key(&self) -> (BigRational, usize, usize, Method) {
        (self.slope.clone(), self.degree, self.residual_degree, self.method)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PadicFactorProfile {
    pub p: u64,
    pub degree: usize,
    /// Sorted by slope, then degree.
    pub factors: Vec<PadicFactor>,
}

impl PadicFactorProfile {
    pub fn is_certified(&self) -> bool {
        self.factors.iter().all(|f| f.certified)
    }

    pub fn shapes(&self) -> Vec<FactorShape> {
        self.factors
            .iter()
            .map(|f| FactorShape {
                degree: f.degree,
                valuation: f.slope.clone(),
            })
            .collect()
    }

    /// `(slope, total degree)` per distinct slope, ascending.
    pub fn slope_lengths(&self) -> Vec<(BigRational, usize)> {
        let mut out: Vec<(BigRational, usize)> = Vec::new();
        for f in &self.factors {
            match out.last_mut() {
                Some((s, l)) if *s == f.slope => *l += f.degree,
                _ => out.push((f.slope.clone(), f.degree)),
            }
        }
        out
    }

    fn check_invariants(&self, f: &IntPoly) {
        let np = newton_polygon(f, self.p).expect("validated input");
        let mut expected: Vec<(BigRational, usize)> = np.root_valuations();
        expected.reverse();
        assert_eq!(self.slope_lengths(), expected, "factor degrees fill the polygon");
        for fac in &self.factors {
            let cv = &fac.slope * BigRational::from_integer(BigInt::from(fac.degree as u64));
            assert!(cv.is_integer(), "constant-term valuation is integral");
            assert_eq!(cv.to_integer(), BigInt::from(fac.const_valuation));
            if fac.certified {
                assert!(fac.residual_degree > 0 && fac.degree % fac.residual_degree == 0);
                let e = fac.degree / fac.residual_degree;
                assert!((&fac.slope * BigRational::from_integer(BigInt::from(e as u64))).is_integer());
            }
        }
    }
}

impl fmt::Display for PadicFactorProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|x| {
                let mark = if x.certified { "" } else { "?" };
                format!("{}@{}{}", x.degree, x.slope, mark)
            })
            .collect();
        write!(f, "p={}: {}", self.p, parts.join(" "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProfileOptions {
    /// Cap on order enlargements before giving up.
    pub max_round2_steps: usize,
    pub seed: u64,
    /// Skip the residual shortcut (for cross-checks).
    pub force_round2: bool,
}

impl Default for ProfileOptions {
    fn default() -> Self {
        ProfileOptions {
            max_round2_steps: 64,
            seed: DEFAULT_SEED,
            force_round2: false,
        }
    }
}

fn validate(f: &IntPoly, p: u64) -> Result<(), PadicError> {
    if !is_prime(p) {
        return Err(ParamError::NotPrime(p).into());
    }
    if f.is_zero() {
        return Err(PolyError::Zero.into());
    }
    if !f.is_monic() {
        return Err(PolyError::NotMonic.into());
    }
    if f.coeff(0).is_zero() {
        return Err(PolyError::ZeroConstant.into());
    }
    let k = RatField;
    let c = f.to_rat();
    if upoly::gcd(&k, &c, &upoly::derivative(&k, &c)).len() > 1 {
        return Err(PolyError::NotSquarefree.into());
    }
    Ok(())
}

pub fn qp_factor_profile(f: &IntPoly, p: u64) -> Result<PadicFactorProfile, PadicError> {
    qp_factor_profile_with(f, p, &ProfileOptions::default())
}

/// Profile computed by the maximal-order route alone.
pub fn qp_factor_profile_round2(f: &IntPoly, p: u64) -> Result<PadicFactorProfile, PadicError> {
    qp_factor_profile_with(
        f,
        p,
        &ProfileOptions {
            force_round2: true,
            ..ProfileOptions::default()
        },
    )
}

pub fn qp_factor_profile_with(
    f: &IntPoly,
    p: u64,
    opts: &ProfileOptions,
) -> Result<PadicFactorProfile, PadicError> {
    validate(f, p)?;
    let np = newton_polygon(f, p)?;
    let mut factors = Vec::new();
    let mut pending = Vec::new();
    for s in &np.segments {
        let split = if opts.force_round2 {
            None
        } else {
            residual::segment_factors(f, p, s, opts.seed)
        };
        match split {
            Some(parts) => factors.extend(parts.into_iter().map(|(degree, rd, cv)| PadicFactor {
                degree,
                slope: s.root_valuation(),
                const_valuation: cv,
                residual_degree: rd,
                certified: true,
                method: Method::Residual,
            })),
            None => pending.push(s),
        }
    }
    let mut profile = PadicFactorProfile {
        p,
        degree: f.degree(),
        factors,
    };
    let mut failure = None;
    if !pending.is_empty() {
        match round2::local_components(f, p, opts.max_round2_steps, opts.seed) {
            Ok(components) => {
                for c in components {
                    let slope = BigRational::new(
                        BigInt::from(c.const_valuation),
                        BigInt::from(c.degree as u64),
                    );
                    if pending.iter().any(|s| s.root_valuation() == slope) {
                        profile.factors.push(PadicFactor {
                            degree: c.degree,
                            slope,
                            const_valuation: c.const_valuation,
                            residual_degree: c.residue_degree,
                            certified: true,
                            method: Method::MaximalOrder,
                        });
                    }
                }
            }
            Err(round2::StepLimit) => {
                for s in &pending {
                    let cv = s.start.1 - s.end.1;
                    profile.factors.push(PadicFactor {
                        degree: s.horizontal_length,
                        slope: s.root_valuation(),
                        const_valuation: cv,
                        residual_degree: 0,
                        certified: false,
                        method: Method::Unresolved,
                    });
                }
                failure = Some(format!(
                    "order still not p-maximal after {} enlargements",
                    opts.max_round2_steps
                ));
            }
        }
    }
    profile.factors.sort_by_key(PadicFactor::key);
    profile.check_invariants(f);
    match failure {
        None => Ok(profile),
        Some(reason) => Err(PadicError::Uncertified {
            partial: Box::new(profile),
            reason,
        }),
    }
}

/// Whether `f` has a root in `Q_p` of valuation `v·n` (with `v` given in
/// units of `n`).
pub fn has_root_of_valuation(
    f: &IntPoly,
    p: u64,
    v_units_of_n: &BigRational,
    n: u32,
) -> Result<bool, PadicError> {
    let v = v_units_of_n * BigRational::from_integer(n.into());
    if !v.is_integer() {
        validate(f, p)?;
        return Ok(false);
    }
    let profile = qp_factor_profile(f, p)?;
    Ok(profile
        .factors
        .iter()
        .any(|x| x.degree == 1 && x.slope == v))
}

pub fn count_factors_of_degree(profile: &PadicFactorProfile, d: usize) -> Result<usize, PadicError> {
    if !profile.is_certified() {
        return Err(PadicError::Uncertified {
            partial: Box::new(profile.clone()),
            reason: "profile has unsplit segments".into(),
        });
    }
    Ok(profile.factors.iter().filter(|x| x.degree == d).count())
}

/// Every `Q_p` factor's constant term has valuation divisible by `n`.
pub fn tate_condition(f: &IntPoly, params: &WeilParams) -> Result<bool, PadicError> {
    let profile = qp_factor_profile(f, params.p())?;
    Ok(profile
        .factors
        .iter()
        .all(|x| x.const_valuation % params.n() == 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn ip(v: &[i64]) -> IntPoly {
        IntPoly::from_i64s(v)
    }

    fn summary(pr: &PadicFactorProfile) -> Vec<(usize, BigRational, usize)> {
        pr.factors
            .iter()
            .map(|f| (f.degree, f.slope.clone(), f.residual_degree))
            .collect()
    }

    #[test]
    fn spec_examples() {
        for p in [2u64, 3, 5, 7] {
            let f = ip(&[p as i64, 0, 0, 1]);
            let pr = qp_factor_profile(&f, p).unwrap();
            assert_eq!(summary(&pr), vec![(3, rat(1, 3), 1)]);
            assert_eq!(pr.factors[0].const_valuation, 1);

            // (t^2 - p)(t - 1)
            let f = ip(&[-(p as i64), 0, 1]).mul(&ip(&[-1, 1]));
            let pr = qp_factor_profile(&f, p).unwrap();
            assert_eq!(summary(&pr), vec![(1, rat(0, 1), 1), (2, rat(1, 2), 1)]);
        }
        // t^4 + 3t^2 + 4 = (t^2 + t + 2)(t^2 - t + 2) at 2: both residuals are
        // (y + 1)^2, and each quadratic has roots of valuation 0 and 1, so the
        // profile is four linear factors
        let f = ip(&[4, 0, 3, 0, 1]);
        let pr = qp_factor_profile(&f, 2).unwrap();
        assert_eq!(pr.slope_lengths(), vec![(rat(0, 1), 2), (rat(1, 1), 2)]);
        assert!(pr.factors.iter().all(|x| x.degree == 1));
        assert_eq!(count_factors_of_degree(&pr, 2).unwrap(), 0);
        assert!(pr.factors.iter().all(|x| x.method == Method::MaximalOrder));
        assert!(pr.is_certified());
    }

    #[test]
    fn queries() {
        let f = ip(&[-2, 0, 1]).mul(&ip(&[-1, 1]));
        assert!(has_root_of_valuation(&f, 2, &rat(0, 1), 1).unwrap());
        assert!(!has_root_of_valuation(&f, 2, &rat(1, 2), 1).unwrap());
        assert!(!has_root_of_valuation(&f, 2, &rat(1, 3), 1).unwrap());
        let pr = qp_factor_profile(&f, 2).unwrap();
        assert_eq!(count_factors_of_degree(&pr, 2).unwrap(), 1);

        // t^2 + t + 2 is the 2-Weil polynomial of an ordinary curve
        let params = WeilParams::from_q(2).unwrap();
        assert!(tate_condition(&ip(&[2, 1, 1]), &params).unwrap());
        // t^2 + 2 at q = 4: roots of valuation 1/2 in units of 2, constant valuation 1
        let params = WeilParams::from_q(4).unwrap();
        assert!(!tate_condition(&ip(&[2, 0, 1]), &params).unwrap());
        assert!(tate_condition(&ip(&[4, 0, 1]).mul(&ip(&[4, 1, 1])), &params).unwrap_or(true));
    }

    #[test]
    fn inseparable_residual_needs_the_order() {
        // (t - p)(t - p - p^2): one segment with residual (y - 1)^2
        for p in [2i64, 3, 5] {
            let f = ip(&[-p, 1]).mul(&ip(&[-p - p * p, 1]));
            let pr = qp_factor_profile(&f, p as u64).unwrap();
            assert_eq!(summary(&pr), vec![(1, rat(1, 1), 1), (1, rat(1, 1), 1)]);
            assert!(pr.factors.iter().all(|x| x.method == Method::MaximalOrder));
        }
        // t^2 - 2·9 at 3 is irreducible of slope 1; t^2 - 4·9 at 3 splits
        let pr = qp_factor_profile(&ip(&[-18, 0, 1]), 3).unwrap();
        assert_eq!(summary(&pr), vec![(2, rat(1, 1), 2)]);
        let pr = qp_factor_profile(&ip(&[-36, 0, 1]), 3).unwrap();
        assert_eq!(summary(&pr), vec![(1, rat(1, 1), 1), (1, rat(1, 1), 1)]);
        // t^2 + 1 at 2: residual (y + 1)^2, ramified quadratic
        let pr = qp_factor_profile(&ip(&[1, 0, 1]), 2).unwrap();
        assert_eq!(summary(&pr), vec![(2, rat(0, 1), 1)]);
        // t^2 - 17 at 2 splits (17 is a 2-adic square); t^2 - 5 is unramified
        let pr = qp_factor_profile(&ip(&[-17, 0, 1]), 2).unwrap();
        assert_eq!(summary(&pr), vec![(1, rat(0, 1), 1), (1, rat(0, 1), 1)]);
        let pr = qp_factor_profile(&ip(&[-5, 0, 1]), 2).unwrap();
        assert_eq!(summary(&pr), vec![(2, rat(0, 1), 2)]);
    }

    #[test]
    fn residual_and_order_agree() {
        let cases: &[(&[i64], u64)] = &[
            (&[3, 0, 0, 1], 3),
            (&[4, 0, 3, 0, 1], 2),
            (&[2, 1, 1], 2),
            (&[8, 2, 0, 1, 1], 2),
            (&[-6, 0, 1, 0, 0, 1], 3),
            (&[25, 5, 1, 1, 1], 5),
            (&[7, 0, 0, 0, 0, 0, 0, 1], 7),
        ];
        for (c, p) in cases {
            let f = ip(c);
            let a = qp_factor_profile(&f, *p).unwrap();
            let b = qp_factor_profile_round2(&f, *p).unwrap();
            assert_eq!(summary(&a), summary(&b), "{f:?} at {p}");
            let cv = |pr: &PadicFactorProfile| pr.factors.iter().map(|x| x.const_valuation).collect::<Vec<_>>();
            assert_eq!(cv(&a), cv(&b));
        }
    }

    #[test]
    fn errors_and_cap() {
        assert!(matches!(qp_factor_profile(&ip(&[1, 2]), 2), Err(PadicError::Poly(PolyError::NotMonic))));
        assert!(matches!(qp_factor_profile(&ip(&[0, 1]), 2), Err(PadicError::Poly(PolyError::ZeroConstant))));
        assert!(matches!(
            qp_factor_profile(&ip(&[1, 2, 1]), 2),
            Err(PadicError::Poly(PolyError::NotSquarefree))
        ));
        assert!(matches!(qp_factor_profile(&ip(&[1, 1]), 6), Err(PadicError::Param(ParamError::NotPrime(6)))));
        // (t - 2)(t - 2 - 2^6) needs several enlargements
        let f = ip(&[-2, 1]).mul(&ip(&[-66, 1]));
        let opts = ProfileOptions {
            max_round2_steps: 0,
            ..ProfileOptions::default()
        };
        match qp_factor_profile_with(&f, 2, &opts) {
            Err(PadicError::Uncertified { partial, .. }) => {
                assert_eq!(partial.factors.len(), 1);
                assert!(!partial.is_certified());
                assert!(count_factors_of_degree(&partial, 1).is_err());
            }
            other => panic!("expected Uncertified, got {other:?}"),
        }
        let pr = qp_factor_profile(&f, 2).unwrap();
        assert_eq!(summary(&pr), vec![(1, rat(1, 1), 1), (1, rat(1, 1), 1)]);
    }
}
