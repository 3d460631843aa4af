//! Deciding whether a degree-14 polynomial is the Frobenius polynomial of a
//! simple abelian variety of dimension 7.
//!
//! The divisibility criterion on the `Q_p` factors is the ground truth. The
//! case table is evaluated alongside it and any disagreement is reported
//! rather than resolved.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::arith::valuation;
use crate::cases::{polygon_case_id, CaseMatchError, CaseStatus, CaseTable};
use crate::newton::newton_polygon;
use crate::padic::{qp_factor_profile_with, PadicError, PadicFactorProfile, ProfileOptions};
use crate::poly::IntPoly;
use crate::weil::{a_vector, check_symmetry, is_weil, WeilParams};
use crate::zassenhaus::factor_over_integers;

const DEGREE: usize = 14;
const DIMENSION: u32 = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("multiplicities are only determined for prime dimension at least 3, got {0}")]
    OutOfScope(u32),
}

/// Why `(t² + at + b)^g` was accepted or not.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerWitness {
    pub a: BigInt,
    pub b: BigInt,
    pub g: u32,
    /// `a = k q^(s/g)` when such a decomposition exists.
    pub k: Option<BigInt>,
    pub s: Option<u32>,
    pub failed: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorEntry {
    pub factor: IntPoly,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    NotDegree14 {
        degree: usize,
    },
    NotSymmetric,
    NotWeil,
    HasRealRoot,
    ReducibleOverQ {
        factors: Vec<FactorEntry>,
    },
    PowerCase {
        accepted: bool,
        witness: PowerWitness,
    },
    Accepted {
        case_id: u8,
        tate_ok: bool,
        /// The case's printed valuation constraints are known to be garbled.
        text_flagged: bool,
    },
    Rejected {
        case_id: Option<u8>,
        failed_conditions: Vec<String>,
    },
    TableTateDisagreement {
        case_id: Option<u8>,
        table_says: bool,
        tate_says: bool,
    },
    TextAmbiguous {
        case_id: u8,
        candidate_cases: Vec<u8>,
        table_says: bool,
        tate_says: bool,
    },
    Inconclusive {
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationG7 {
    pub verdict: Verdict,
    /// `e` in `χ = m^e`, when the input is a power of an irreducible.
    pub multiplicity: Option<u32>,
    /// Present whenever the pipeline reached the `Q_p` factorization.
    pub profile: Option<PadicFactorProfile>,
}

impl ClassificationG7 {
    fn bare(verdict: Verdict) -> Self {
        ClassificationG7 {
            verdict,
            multiplicity: None,
            profile: None,
        }
    }

    pub fn is_accepted(&self) -> bool {
        matches!(
            self.verdict,
            Verdict::Accepted { .. } | Verdict::PowerCase { accepted: true, .. }
        )
    }
}

/// `{1, g}`: the possible multiplicities for a simple abelian variety of
/// prime dimension `g ≥ 3`.
pub fn multiplicity_options(g: u32) -> Result<BTreeSet<u32>, ClassifyError> {
    if g < 3 || !crate::arith::is_prime(g.into()) {
        return Err(ClassifyError::OutOfScope(g));
    }
    Ok([1, g].into())
}

/// Whether `(t² + at + b)^g` is a Frobenius polynomial, for `g > 2`:
/// `g | n`, `b = q`, `a² < 4q` and `a = k q^(s/g)` with `p ∤ k`,
/// `gcd(s, g) = 1` and `1 ≤ s < g/2`.
pub fn power_case(a: &BigInt, b: &BigInt, g: u32, params: &WeilParams) -> PowerWitness {
    let mut w = PowerWitness {
        a: a.clone(),
        b: b.clone(),
        g,
        k: None,
        s: None,
        failed: None,
    };
    let fail = |mut w: PowerWitness, why: &str| {
        w.failed = Some(why.into());
        w
    };
    let n = params.n();
    if g <= 2 {
        return fail(w, "g must exceed 2");
    }
    if !n.is_multiple_of(g) {
        return fail(w, "g does not divide n");
    }
    let q = params.q_big();
    if *b != q {
        return fail(w, "b differs from q");
    }
    if a * a >= BigInt::from(4) * &q {
        return fail(w, "a² is not below 4q");
    }
    let Some(v) = valuation(a, params.p()) else {
        return fail(w, "a = 0 has no decomposition k q^(s/g)");
    };
    let step = n / g;
    if v % step != 0 {
        return fail(w, "v_p(a) is not a multiple of n/g");
    }
    let s = v / step;
    w.k = Some(a / BigInt::from(params.p()).pow(v));
    w.s = Some(s);
    if s == 0 || 2 * s >= g {
        return fail(w, "s is outside 1 ≤ s < g/2");
    }
    if s.gcd(&g) != 1 {
        return fail(w, "gcd(s, g) ≠ 1");
    }
    w
}

fn accepted_power(w: &PowerWitness) -> bool {
    w.failed.is_none()
}

/// `(a, b)` when `f = (t² + at + b)^7`.
fn seventh_power_of_quadratic(factors: &[(IntPoly, usize)]) -> Option<(BigInt, BigInt)> {
    match factors {
        [(m, e)] if *e == DIMENSION as usize && m.degree() == 2 && m.is_monic() => {
            Some((m.coeff(1), m.coeff(0)))
        }
        _ => None,
    }
}

pub fn classify(f: &IntPoly, params: &WeilParams) -> ClassificationG7 {
    classify_in(CaseTable::builtin(), f, params)
}

pub fn classify_in(table: &CaseTable, f: &IntPoly, params: &WeilParams) -> ClassificationG7 {
    classify_with(table, f, params, &ProfileOptions::default())
}

pub fn classify_with(
    table: &CaseTable,
    f: &IntPoly,
    params: &WeilParams,
    opts: &ProfileOptions,
) -> ClassificationG7 {
    if f.is_zero() || f.degree() != DEGREE {
        return ClassificationG7::bare(Verdict::NotDegree14 {
            degree: if f.is_zero() { 0 } else { f.degree() },
        });
    }
    match check_symmetry(f, params) {
        Ok(true) => {}
        Ok(false) => return ClassificationG7::bare(Verdict::NotSymmetric),
        // the only shape error left at even degree 14 is a non-monic input
        Err(_) => return ClassificationG7::bare(Verdict::NotWeil),
    }
    let factors = factor_over_integers(f);
    if factors.len() != 1 || factors[0].1 != 1 {
        if let Some((a, b)) = seventh_power_of_quadratic(&factors) {
            let witness = power_case(&a, &b, DIMENSION, params);
            return ClassificationG7 {
                verdict: Verdict::PowerCase {
                    accepted: accepted_power(&witness),
                    witness,
                },
                multiplicity: Some(DIMENSION),
                profile: None,
            };
        }
        return ClassificationG7::bare(Verdict::ReducibleOverQ {
            factors: factors
                .into_iter()
                .map(|(factor, multiplicity)| FactorEntry {
                    factor,
                    multiplicity,
                })
                .collect(),
        });
    }
    let weil = match is_weil(f, params) {
        Ok(w) => w,
        Err(_) => return ClassificationG7::bare(Verdict::NotWeil),
    };
    if !weil.is_weil {
        return ClassificationG7::bare(Verdict::NotWeil);
    }
    if !weil.real_roots.is_empty() {
        return ClassificationG7::bare(Verdict::HasRealRoot);
    }
    let mut out = ClassificationG7 {
        verdict: Verdict::NotWeil,
        multiplicity: Some(1),
        profile: None,
    };
    let profile = match qp_factor_profile_with(f, params.p(), opts) {
        Ok(pr) => pr,
        Err(PadicError::Uncertified { partial, reason }) => {
            out.profile = Some(*partial);
            out.verdict = Verdict::Inconclusive { reason };
            return out;
        }
        Err(e) => {
            out.verdict = Verdict::Inconclusive {
                reason: e.to_string(),
            };
            return out;
        }
    };
    let tate = profile
        .factors
        .iter()
        .all(|x| x.const_valuation % params.n() == 0);
    out.verdict = table_verdict(table, f, params, &profile, tate);
    out.profile = Some(profile);
    out
}

fn table_verdict(
    table: &CaseTable,
    f: &IntPoly,
    params: &WeilParams,
    profile: &PadicFactorProfile,
    tate: bool,
) -> Verdict {
    let np = newton_polygon(f, params.p()).expect("validated by the profile");
    let case = match polygon_case_id(&np, params) {
        Ok(c) => c.case,
        Err(CaseMatchError::NoMatch { .. }) => {
            // a vertex off the lattice already violates divisibility
            return if tate {
                Verdict::TableTateDisagreement {
                    case_id: None,
                    table_says: false,
                    tate_says: true,
                }
            } else {
                Verdict::Rejected {
                    case_id: None,
                    failed_conditions: vec!["polygon vertex heights are not multiples of n".into()],
                }
            };
        }
        Err(e) => {
            return Verdict::Inconclusive {
                reason: format!("{e:?}"),
            }
        }
    };
    let record = table.get(case).expect("matched case exists");
    let failed = record.failed_conditions(&profile.shapes(), params.n());
    let table_says = failed.is_empty();
    let flagged = record.status == CaseStatus::Ambiguous;
    if table_says != tate {
        return if flagged {
            Verdict::TextAmbiguous {
                case_id: case,
                candidate_cases: table.stated_candidates(&a_vector(f), params),
                table_says,
                tate_says: tate,
            }
        } else {
            Verdict::TableTateDisagreement {
                case_id: Some(case),
                table_says,
                tate_says: tate,
            }
        };
    }
    if tate {
        Verdict::Accepted {
            case_id: case,
            tate_ok: true,
            text_flagged: flagged,
        }
    } else {
        Verdict::Rejected {
            case_id: Some(case),
            failed_conditions: failed.iter().map(|c| c.to_string()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weil::weil_from_a;

    fn q(q: u64) -> WeilParams {
        WeilParams::from_q(q).unwrap()
    }

    fn from_a(a: &[i64], qq: u64) -> IntPoly {
        let a: Vec<BigInt> = a.iter().map(|&x| BigInt::from(x)).collect();
        weil_from_a(&a, &BigInt::from(qq))
    }

    #[test]
    fn power_case_examples() {
        let p7 = q(128);
        let w = power_case(&BigInt::from(2), &BigInt::from(128), 7, &p7);
        assert!(accepted_power(&w), "{w:?}");
        assert_eq!((w.k, w.s), (Some(BigInt::from(1)), Some(1)));
        assert!(accepted_power(&power_case(&BigInt::from(-2), &BigInt::from(128), 7, &p7)));
        assert!(!accepted_power(&power_case(&BigInt::from(0), &BigInt::from(128), 7, &p7)));
        for a in -3..=3 {
            let w = power_case(&BigInt::from(a), &BigInt::from(2), 7, &q(2));
            assert_eq!(w.failed.as_deref(), Some("g does not divide n"));
        }
        // s = 3 would need 2s < 7 to hold: a = 8 = q^(3/7) at q = 2^7 is accepted,
        // a = 16 (s = 4) is not
        assert!(accepted_power(&power_case(&BigInt::from(8), &BigInt::from(128), 7, &p7)));
        assert!(!accepted_power(&power_case(&BigInt::from(16), &BigInt::from(128), 7, &p7)));
        assert!(!accepted_power(&power_case(&BigInt::from(1), &BigInt::from(128), 7, &p7)));
    }

    #[test]
    fn multiplicities() {
        assert_eq!(multiplicity_options(7).unwrap(), [1, 7].into());
        assert_eq!(multiplicity_options(5).unwrap(), [1, 5].into());
        assert_eq!(multiplicity_options(4), Err(ClassifyError::OutOfScope(4)));
        assert_eq!(multiplicity_options(2), Err(ClassifyError::OutOfScope(2)));
    }

    #[test]
    fn seventh_powers() {
        let m = IntPoly::from_i64s(&[128, 2, 1]);
        let c = classify(&m.pow(7), &q(128));
        assert!(c.is_accepted(), "{c:?}");
        assert_eq!(c.multiplicity, Some(7));
        let m = IntPoly::from_i64s(&[2, 1, 1]);
        let c = classify(&m.pow(7), &q(2));
        assert!(matches!(c.verdict, Verdict::PowerCase { accepted: false, .. }));
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(
            classify(&IntPoly::from_i64s(&[2, 1, 1]), &q(2)).verdict,
            Verdict::NotDegree14 { degree: 2 }
        ));
        let mut f = from_a(&[0; 7], 2).into_coeffs();
        f[3] += 1;
        assert_eq!(classify(&IntPoly::new(f), &q(2)).verdict, Verdict::NotSymmetric);
        // a1 = 20 breaks the trivial bound
        let c = classify(&from_a(&[20, 0, 0, 0, 0, 0, 0], 2), &q(2));
        assert!(matches!(c.verdict, Verdict::NotWeil | Verdict::ReducibleOverQ { .. }));
    }

    #[test]
    fn ordinary_is_accepted() {
        // v_2(a_7) = 0 gives the ordinary polygon, where every constant-term
        // valuation is 0 or the factor's degree
        let params = q(2);
        let f = from_a(&[1, 0, 0, 0, 0, 0, 1], 2);
        let c = classify(&f, &params);
        assert_eq!(
            c.verdict,
            Verdict::Accepted {
                case_id: 28,
                tate_ok: true,
                text_flagged: true
            }
        );
        assert!(crate::padic::tate_condition(&f, &params).unwrap());
        assert!(crate::newton::lattice_vertex_check(&newton_polygon(&f, 2).unwrap(), 1));
        assert_eq!(c.multiplicity, Some(1));
    }

    #[test]
    fn unit_root_cubic_exposes_the_blanket_degree_three_rule() {
        // polygon of case 14 with a unit-root cubic factor over Q_2
        let f = from_a(&[1, 0, -1, 0, 0, 0, 0], 2);
        let c = classify(&f, &q(2));
        assert_eq!(
            c.verdict,
            Verdict::TableTateDisagreement {
                case_id: Some(14),
                table_says: false,
                tate_says: true
            }
        );
        let pr = c.profile.unwrap();
        assert!(pr.factors.iter().any(|x| x.degree == 3 && x.const_valuation == 0));
    }

    #[test]
    fn supersingular_binomial() {
        // t^14 + 2^7 factors over Q, so the pipeline stops there
        let mut c = vec![0i64; 15];
        c[0] = 128;
        c[14] = 1;
        let f = IntPoly::from_i64s(&c);
        let v = classify(&f, &q(2)).verdict;
        assert!(matches!(v, Verdict::ReducibleOverQ { .. } | Verdict::NotWeil), "{v:?}");
    }
}
