//! Necessary coefficient conditions for degree-12 Weil polynomials without
//! real roots, and the degree-6 positivity lemma they rest on.
//!
//! Every Pass/Fail below is decided exactly. Inequalities against the roots
//! `θ` of the resolvent cubic and against the critical points `β` of
//! `g = f'/6` are turned into sign questions for a polynomial at a real
//! algebraic number, which [`RealAlgebraic::sign_of`] answers without
//! rounding. Interval enclosures are attached for display only.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::arith::{binomial, pow_big, sqrt_bounds};
use crate::error::DomainError;
use crate::field::{Field, OrderedField, QuadField, QuadReal};
use crate::interval::{enclose_elem, CertifiedReal};
use crate::sturm::{real_roots, RealAlgebraic};
use crate::upoly::{self, Coeffs};
use crate::weil::{build_f_ftilde, WeilParams};

/// Width target for the enclosures attached to reports.
pub const REPORT_BITS: u32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Indeterminate,
}

impl Status {
    fn of(d: Option<bool>) -> Status {
        match d {
            Some(true) => Status::Pass,
            Some(false) => Status::Fail,
            None => Status::Indeterminate,
        }
    }

    fn and(self, o: Status) -> Status {
        match (self, o) {
            (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
            (Status::Indeterminate, _) | (_, Status::Indeterminate) => Status::Indeterminate,
            _ => Status::Pass,
        }
    }
}

/// How much supporting data a report should carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Detail {
    /// Decisions plus enclosures of every bound involved.
    Full,
    /// Decisions only; used by bulk scans.
    Decisions,
}

#[derive(Debug, Clone, Serialize)]
pub struct Enclosure {
    pub name: String,
    pub value: CertifiedReal,
}

#[derive(Debug, Clone, Serialize)]
pub struct Condition {
    pub id: u8,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub enclosures: Vec<Enclosure>,
}

/// Side checks that do not count towards the verdict.
#[derive(Debug, Clone, Serialize)]
pub struct Diagnostic {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct BoundsReport {
    pub conditions: Vec<Condition>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<Diagnostic>,
}

impl BoundsReport {
    pub fn status(&self, id: u8) -> Option<Status> {
        self.conditions.iter().find(|c| c.id == id).map(|c| c.status)
    }

    pub fn overall(&self) -> Status {
        self.conditions
            .iter()
            .fold(Status::Pass, |acc, c| acc.and(c.status))
    }

    pub fn all_pass(&self) -> bool {
        self.overall() == Status::Pass
    }

    pub fn failed(&self) -> Vec<u8> {
        self.ids_with(Status::Fail)
    }

    pub fn indeterminate(&self) -> Vec<u8> {
        self.ids_with(Status::Indeterminate)
    }

    fn ids_with(&self, s: Status) -> Vec<u8> {
        self.conditions
            .iter()
            .filter(|c| c.status == s)
            .map(|c| c.id)
            .collect()
    }

    fn push(&mut self, id: u8, status: Status, detail: Option<String>, enc: Vec<Enclosure>) {
        self.conditions.push(Condition {
            id,
            status,
            detail,
            enclosures: enc,
        });
    }
}

/// The quantities of the positivity lemma for one sextic.
#[derive(Debug, Clone, Serialize)]
pub struct LemmaQuantities {
    /// `g_1..g_5` with `g = f'/6`.
    pub g: [QuadReal; 5],
    pub u2: QuadReal,
    pub u3: QuadReal,
    pub u4: QuadReal,
    pub delta: QuadReal,
    /// `θ_1 ≤ θ_2 ≤ θ_3`, absent when the resolvent cubic has complex roots.
    pub theta: Option<Vec<CertifiedReal>>,
    /// Roots of the depressed quartic, `β + g_1/5`, in the order of `beta`.
    pub x_roots: Option<Vec<CertifiedReal>>,
    /// Critical points of `g`, `β_1 ≥ β_2 ≥ β_3 ≥ β_4`.
    pub beta: Option<Vec<CertifiedReal>>,
    pub lambda1: Option<CertifiedReal>,
    pub lambda2: Option<CertifiedReal>,
    pub l1: Option<CertifiedReal>,
    pub r1: Option<CertifiedReal>,
    pub l2: Option<CertifiedReal>,
    pub r2: Option<CertifiedReal>,
}

fn c(k: &QuadField, n: i64, d: i64) -> QuadReal {
    k.from_rational(&BigRational::new(n.into(), d.into()))
}

fn int(k: &QuadField, n: &BigInt) -> QuadReal {
    k.from_rational(&BigRational::from_integer(n.clone()))
}

fn enc(k: &QuadField, x: &QuadReal) -> CertifiedReal {
    enclose_elem(k, x, REPORT_BITS)
}

fn named(name: &str, value: CertifiedReal) -> Enclosure {
    Enclosure {
        name: name.to_string(),
        value,
    }
}

fn sum(k: &QuadField, terms: &[QuadReal]) -> QuadReal {
    terms.iter().fold(k.zero(), |acc, t| k.add(&acc, t))
}

/// Product of several factors.
fn prod(k: &QuadField, fs: &[&QuadReal]) -> QuadReal {
    fs.iter().fold(k.one(), |acc, f| k.mul(&acc, f))
}

fn sign(x: &QuadReal) -> Ordering {
    x.signum()
}

/// The shift-invariant combinations of `r_1..r_4`.
fn lemma_us(k: &QuadField, r: &[QuadReal; 6]) -> (QuadReal, QuadReal, QuadReal) {
    let [r1, r2, r3, r4, _, _] = r;
    let u2 = sum(k, &[prod(k, &[&c(k, -1, 12), r1, r1]), prod(k, &[&c(k, 1, 5), r2])]);
    let u3 = sum(
        k,
        &[
            prod(k, &[&c(k, 1, 108), r1, r1, r1]),
            prod(k, &[&c(k, -1, 30), r1, r2]),
            prod(k, &[&c(k, 1, 20), r3]),
        ],
    );
    let u4 = sum(
        k,
        &[
            prod(k, &[&c(k, -1, 432), r1, r1, r1, r1]),
            prod(k, &[&c(k, 1, 90), r1, r1, r2]),
            prod(k, &[&c(k, -1, 30), r1, r3]),
            prod(k, &[&c(k, 1, 15), r4]),
        ],
    );
    (u2, u3, u4)
}

/// `g = f'/6` as a coefficient vector, low degree first.
fn g_poly(k: &QuadField, r: &[QuadReal; 6]) -> Coeffs<QuadField> {
    let gs = g_coeffs(k, r);
    vec![
        gs[4].clone(),
        gs[3].clone(),
        gs[2].clone(),
        gs[1].clone(),
        gs[0].clone(),
        k.one(),
    ]
}

fn g_coeffs(k: &QuadField, r: &[QuadReal; 6]) -> [QuadReal; 5] {
    [
        k.mul(&c(k, 5, 6), &r[0]),
        k.mul(&c(k, 2, 3), &r[1]),
        k.mul(&c(k, 1, 2), &r[2]),
        k.mul(&c(k, 1, 3), &r[3]),
        k.mul(&c(k, 1, 6), &r[4]),
    ]
}

/// Three-valued "at least `need` of these hold", counting multiplicities.
fn at_least(results: &[(Option<bool>, usize)], need: usize) -> Option<bool> {
    let yes: usize = results
        .iter()
        .filter(|(d, _)| *d == Some(true))
        .map(|(_, m)| m)
        .sum();
    let maybe: usize = results
        .iter()
        .filter(|(d, _)| d.is_none())
        .map(|(_, m)| m)
        .sum();
    if yes >= need {
        Some(true)
    } else if yes + maybe < need {
        Some(false)
    } else {
        None
    }
}

/// Position of `u_4` relative to the roots `θ` of the resolvent cubic.
///
/// `θ = -u_2 z² - 3u_3 z` where `z` runs over the roots of
/// `z³ + u_2 z + u_3`, so `u_4 - θ` is the sign of `u_2 z² + 3u_3 z + u_4`
/// at each root.
struct ThetaAnalysis {
    /// `θ_1 ≤ u_4`.
    lower: Option<bool>,
    /// `u_4 ≤ θ_2`.
    upper: Option<bool>,
    theta: Vec<CertifiedReal>,
}

fn theta_analysis(
    k: &QuadField,
    u2: &QuadReal,
    u3: &QuadReal,
    u4: &QuadReal,
    detail: Detail,
) -> Option<ThetaAnalysis> {
    let cubic = vec![u3.clone(), u2.clone(), k.zero(), k.one()];
    let mut roots = real_roots(k, &cubic);
    if roots.iter().map(|r| r.multiplicity).sum::<usize>() != 3 {
        return None;
    }
    let s = upoly::trim(
        k,
        vec![u4.clone(), k.mul(&c(k, 3, 1), u3), u2.clone()],
    );
    let theta_poly = upoly::trim(
        k,
        vec![k.zero(), k.mul(&c(k, -3, 1), u3), k.neg(u2)],
    );
    let mut le = Vec::new();
    let mut ge = Vec::new();
    let mut theta = Vec::new();
    for z in roots.iter_mut() {
        let sg = z.sign_of(&s);
        // u4 ≥ θ(z) iff s(z) ≥ 0
        le.push((sg.map(|o| o != Ordering::Less), z.multiplicity));
        ge.push((sg.map(|o| o != Ordering::Greater), z.multiplicity));
        if detail == Detail::Full {
            let v = z.enclose_at(&theta_poly, REPORT_BITS);
            theta.extend(std::iter::repeat_n(v, z.multiplicity));
        }
    }
    theta.sort_by(|a, b| a.lo.cmp(&b.lo));
    Some(ThetaAnalysis {
        lower: at_least(&le, 1),
        upper: at_least(&ge, 2),
        theta,
    })
}

/// Critical points of `g` with multiplicity, largest first; `None` unless
/// all four are real.
fn critical_points(k: &QuadField, g: &[QuadReal]) -> Option<Vec<RealAlgebraic<QuadField>>> {
    let dg = upoly::derivative(k, g);
    let roots = real_roots(k, &dg);
    if roots.iter().map(|r| r.multiplicity).sum::<usize>() != 4 {
        return None;
    }
    let mut out = Vec::with_capacity(4);
    for r in roots.into_iter().rev() {
        for _ in 0..r.multiplicity {
            out.push(r.clone());
        }
    }
    Some(out)
}

/// Sign pattern of `g` at its critical points: `g(β_1), g(β_3) ≤ 0` and
/// `g(β_2), g(β_4) ≥ 0`.
fn critical_value_test(g: &[QuadReal], beta: &mut [RealAlgebraic<QuadField>]) -> Option<bool> {
    let mut all = Some(true);
    for (i, b) in beta.iter_mut().enumerate() {
        let want_nonpos = i % 2 == 0;
        let ok = b.sign_of(g).map(|o| {
            if want_nonpos {
                o != Ordering::Greater
            } else {
                o != Ordering::Less
            }
        });
        all = match (all, ok) {
            (Some(false), _) | (_, Some(false)) => Some(false),
            (None, _) | (_, None) => None,
            _ => Some(true),
        };
    }
    all
}

/// `λ_1 = max(P(β_1), P(β_3))` and `λ_2 = min(P(β_2), P(β_4))` with
/// `P = g - g_5`.
fn lambdas(
    k: &QuadField,
    g: &[QuadReal],
    beta: &mut [RealAlgebraic<QuadField>],
) -> (CertifiedReal, CertifiedReal, Vec<CertifiedReal>) {
    let mut p = g.to_vec();
    p[0] = k.zero();
    let vals: Vec<CertifiedReal> = beta
        .iter_mut()
        .map(|b| b.enclose_at(&p, REPORT_BITS))
        .collect();
    let betas = beta.iter_mut().map(|b| b.enclose(REPORT_BITS)).collect();
    (vals[0].max(&vals[2]), vals[1].min(&vals[3]), betas)
}

struct LemmaRun {
    report: BoundsReport,
    quantities: LemmaQuantities,
}

fn run_lemma(k: &QuadField, r: &[QuadReal; 6], detail: Detail) -> LemmaRun {
    let [r1, r2, r3, r4, r5, _] = r;
    let full = detail == Detail::Full;
    let mut report = BoundsReport::default();
    let (u2, u3, u4) = lemma_us(k, r);
    let delta = sum(
        k,
        &[k.mul(&u3, &u3), prod(k, &[&c(k, 4, 27), &u2, &u2, &u2])],
    );
    let g = g_poly(k, r);

    // (1)
    report.push(1, Status::of(Some(sign(r1) == Ordering::Less)), None, vec![]);

    // (2)
    let five12 = prod(k, &[&c(k, 5, 12), r1, r1]);
    let ok2 = sign(r2) == Ordering::Greater && sign(&k.sub(&five12, r2)) != Ordering::Less;
    let enc2 = if full {
        vec![named("5/12 r1^2", enc(k, &five12))]
    } else {
        vec![]
    };
    report.push(2, Status::of(Some(ok2)), None, enc2);

    // (3): with s = √(25r1² - 60r2), K = -2r1²/9 + 8r2/15 and
    // M = 10/9 r1³ - 4r1r2 + 6r3 the two-sided bound reads sK ≤ M ≤ -sK
    let d = sum(
        k,
        &[prod(k, &[&c(k, 25, 1), r1, r1]), prod(k, &[&c(k, -60, 1), r2])],
    );
    let kk = sum(
        k,
        &[prod(k, &[&c(k, -2, 9), r1, r1]), prod(k, &[&c(k, 8, 15), r2])],
    );
    let m = sum(
        k,
        &[
            prod(k, &[&c(k, 10, 9), r1, r1, r1]),
            prod(k, &[&c(k, -4, 1), r1, r2]),
            prod(k, &[&c(k, 6, 1), r3]),
        ],
    );
    let (ok3, detail3) = if sign(r3) != Ordering::Less {
        (false, None)
    } else if sign(&d) == Ordering::Less {
        (false, Some("25r1^2 - 60r2 < 0".to_string()))
    } else {
        let gap = k.sub(&prod(k, &[&kk, &kk, &d]), &k.mul(&m, &m));
        (
            sign(&kk) != Ordering::Greater && sign(&gap) != Ordering::Less,
            None,
        )
    };
    let enc3 = if full && sign(&d) != Ordering::Less {
        let (dlo, dhi) = k.enclose(&d, REPORT_BITS + 8);
        let s = CertifiedReal::new(
            sqrt_bounds(&dlo.max(BigRational::zero()), REPORT_BITS).0,
            sqrt_bounds(&dhi, REPORT_BITS).1,
            REPORT_BITS,
        );
        let side = s.mul(&enc(k, &kk));
        vec![
            named("lower", side.clone()),
            named("middle", enc(k, &m)),
            named("upper", side.neg()),
        ]
    } else {
        vec![]
    };
    report.push(3, Status::of(Some(ok3)), detail3, enc3);

    // (4): L1 ≤ r4 ≤ R1 is exactly θ1 ≤ u4 ≤ θ2
    let base4 = sum(
        k,
        &[
            prod(k, &[&c(k, 5, 144), r1, r1, r1, r1]),
            prod(k, &[&c(k, -1, 6), r1, r1, r2]),
            prod(k, &[&c(k, 1, 2), r1, r3]),
        ],
    );
    let theta = theta_analysis(k, &u2, &u3, &u4, detail);
    let pos4 = sign(r4) == Ordering::Greater;
    let (st4, det4, l1, r1b) = match &theta {
        None => (
            Status::Fail,
            Some("resolvent roots not all real".to_string()),
            None,
            None,
        ),
        Some(t) => {
            let st = Status::of(Some(pos4))
                .and(Status::of(t.lower))
                .and(Status::of(t.upper));
            let (l, rr) = if full {
                let b = enc(k, &base4);
                (
                    Some(b.add(&t.theta[0].scale(&BigRational::from_integer(15.into())))),
                    Some(b.add(&t.theta[1].scale(&BigRational::from_integer(15.into())))),
                )
            } else {
                (None, None)
            };
            (st, None, l, rr)
        }
    };
    let mut enc4 = vec![];
    if let (Some(l), Some(rr)) = (&l1, &r1b) {
        enc4 = vec![named("L1", l.clone()), named("r4", enc(k, r4)), named("R1", rr.clone())];
    }
    report.push(4, st4, det4, enc4);

    // (5): L2 ≤ r5 ≤ R2 is the sign pattern of g at its critical points
    let mut beta = critical_points(k, &g);
    let neg5 = sign(r5) == Ordering::Less;
    let mut q = LemmaQuantities {
        g: g_coeffs(k, r),
        u2: u2.clone(),
        u3: u3.clone(),
        u4: u4.clone(),
        delta,
        theta: theta.as_ref().filter(|_| full).map(|t| t.theta.clone()),
        x_roots: None,
        beta: None,
        lambda1: None,
        lambda2: None,
        l1,
        r1: r1b,
        l2: None,
        r2: None,
    };
    let (st5, det5, enc5) = match beta.as_mut() {
        None => (
            Status::Fail,
            Some("critical points of f' not all real".to_string()),
            vec![],
        ),
        Some(b) => {
            let st = Status::of(Some(neg5)).and(Status::of(critical_value_test(&g, b)));
            let mut e = vec![];
            if full {
                let (lam1, lam2, betas) = lambdas(k, &g, b);
                let six = BigRational::from_integer((-6).into());
                let l2 = lam2.scale(&six);
                let r2 = lam1.scale(&six);
                let shift = enc(k, &k.mul(&c(k, 1, 5), &q.g[0]));
                q.x_roots = Some(betas.iter().map(|x| x.add(&shift)).collect());
                q.beta = Some(betas);
                q.lambda1 = Some(lam1);
                q.lambda2 = Some(lam2);
                e = vec![named("L2", l2.clone()), named("r5", enc(k, r5)), named("R2", r2.clone())];
                q.l2 = Some(l2);
                q.r2 = Some(r2);
            }
            (st, None, e)
        }
    };
    report.push(5, st5, det5, enc5);
    LemmaRun {
        report,
        quantities: q,
    }
}

fn common_field(r: &[QuadReal; 6]) -> Result<QuadField, DomainError> {
    let q = r[0].q().clone();
    if let Some(x) = r.iter().find(|x| x.q() != &q) {
        return Err(DomainError::RadicandMismatch(q, x.q().clone()));
    }
    QuadField::new(&q)
}

/// The lemma's quantities for `f = t⁶ + r_1t⁵ + … + r_6`.
pub fn lemma_quantities(r: &[QuadReal; 6]) -> Result<LemmaQuantities, DomainError> {
    let k = common_field(r)?;
    Ok(run_lemma(&k, r, Detail::Full).quantities)
}

/// Conditions (1)–(5) of the positivity lemma for `f = t⁶ + r_1t⁵ + … + r_6`.
pub fn lemma_check(r: &[QuadReal; 6]) -> Result<BoundsReport, DomainError> {
    lemma_check_with(r, Detail::Full)
}

pub fn lemma_check_with(r: &[QuadReal; 6], detail: Detail) -> Result<BoundsReport, DomainError> {
    let k = common_field(r)?;
    Ok(run_lemma(&k, r, detail).report)
}

/// Convenience entry for rational coefficients.
pub fn lemma_check_rat(r: &[BigRational; 6]) -> BoundsReport {
    let one = BigInt::from(1);
    let r = r.clone().map(|x| QuadReal::rational(x, &one));
    lemma_check(&r).expect("single radicand")
}

/// Conditions 1–9 for `χ = t¹² + a_1t¹¹ + … + a_6t⁶ + q a_5 t⁵ + … + q⁶`.
pub fn corollary_bounds(a: &[BigInt; 6], params: &WeilParams) -> BoundsReport {
    corollary_bounds_with(a, params, Detail::Full)
}

pub fn corollary_bounds_with(a: &[BigInt; 6], params: &WeilParams, detail: Detail) -> BoundsReport {
    let k = params.field();
    let full = detail == Detail::Full;
    let qb = params.q_big();
    let q = int(&k, &qb);
    let s = k.sqrt_q();
    let [a1, a2, a3, a4, a5, _] = a.clone().map(|x| int(&k, &x));
    let mut report = BoundsReport::default();
    let lt = |x: &QuadReal, y: &QuadReal| sign(&k.sub(y, x)) == Ordering::Greater;
    let le = |x: &QuadReal, y: &QuadReal| sign(&k.sub(y, x)) != Ordering::Less;
    let encs = |pairs: &[(&str, &QuadReal)]| -> Vec<Enclosure> {
        if full {
            pairs.iter().map(|(n, v)| named(n, enc(&k, v))).collect()
        } else {
            vec![]
        }
    };

    // 1: |a1| < 12√q
    let ok1 = &a[0] * &a[0] < 144 * &qb;
    let b1 = k.mul(&c(&k, 12, 1), &s);
    report.push(1, Status::of(Some(ok1)), None, encs(&[("12 sqrt q", &b1)]));

    // 2: -54q + 10√q|a1| < a2 ≤ 6q + 5/12 a1²
    let abs_a1 = int(&k, &a[0].abs());
    let lo2 = sum(&k, &[k.mul(&c(&k, -54, 1), &q), prod(&k, &[&c(&k, 10, 1), &s, &abs_a1])]);
    let hi2 = sum(&k, &[k.mul(&c(&k, 6, 1), &q), prod(&k, &[&c(&k, 5, 12), &a1, &a1])]);
    let ok2 = lt(&lo2, &a2) && le(&a2, &hi2);
    report.push(2, Status::of(Some(ok2)), None, encs(&[("lower", &lo2), ("upper", &hi2)]));

    // 3: from r3 < 0 and r̃3 < 0
    let qs = k.mul(&q, &s);
    let lo3 = sum(
        &k,
        &[
            k.mul(&c(&k, -112, 1), &qs),
            prod(&k, &[&c(&k, -35, 1), &q, &a1]),
            prod(&k, &[&c(&k, -8, 1), &s, &a2]),
        ],
    );
    let hi3 = sum(
        &k,
        &[
            k.mul(&c(&k, 112, 1), &qs),
            prod(&k, &[&c(&k, -35, 1), &q, &a1]),
            prod(&k, &[&c(&k, 8, 1), &s, &a2]),
        ],
    );
    let ok3 = lt(&lo3, &a3) && lt(&a3, &hi3);
    report.push(3, Status::of(Some(ok3)), None, encs(&[("lower", &lo3), ("upper", &hi3)]));
    let printed_lo3 = sum(
        &k,
        &[
            k.mul(&c(&k, -112, 1), &qs),
            prod(&k, &[&c(&k, -35, 1), &q, &a1]),
            prod(&k, &[&c(&k, 8, 1), &s, &a2]),
        ],
    );
    report.diagnostics.push(Diagnostic {
        name: "item3_printed_lower".into(),
        status: Status::of(Some(lt(&printed_lo3, &a3))),
        detail: "-35q a1 + 8√q a2 - 112q√q < a3".into(),
    });

    // 4: K·√E ≤ a3 - X ≤ -K·√E with rational K, X, E
    let ra = |x: &BigInt| BigRational::from_integer(x.clone());
    let (ra1, ra2, ra3, rq) = (ra(&a[0]), ra(&a[1]), ra(&a[2]), ra(&qb));
    let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let e4 = r(25, 1) * &ra1 * &ra1 - r(60, 1) * &ra2 + r(360, 1) * &rq;
    let k4 = r(-1, 27) * &ra1 * &ra1 + r(4, 45) * &ra2 - r(8, 15) * &rq;
    let x4 = r(-5, 27) * &ra1 * &ra1 * &ra1 + r(2, 3) * &ra1 * &ra2 + &rq * &ra1;
    let (st4, det4, enc4) = if e4.is_negative() {
        (Status::Fail, Some("25a1^2 - 60a2 + 360q < 0".to_string()), vec![])
    } else {
        let diff = &ra3 - &x4;
        // sign of p + m√E, using √(n/d) = √(nd)/d
        let sgn = |p: &BigRational, m: &BigRational| -> Ordering {
            if e4.is_zero() {
                return p.cmp(&BigRational::zero());
            }
            let den = BigRational::from_integer(e4.denom().clone());
            QuadReal::new(p.clone(), m / den, e4.numer() * e4.denom())
                .expect("positive radicand")
                .signum()
        };
        let lower_ok = sgn(&diff, &-&k4) != Ordering::Less;
        let upper_ok = sgn(&-&diff, &-&k4) != Ordering::Less;
        let e = if full {
            let (elo, ehi) = sqrt_bounds(&e4, REPORT_BITS);
            let root = CertifiedReal::new(elo, ehi, REPORT_BITS);
            let kx = root.scale(&k4);
            let xe = CertifiedReal::exact(x4.clone(), REPORT_BITS);
            vec![named("lower", xe.add(&kx)), named("upper", xe.sub(&kx))]
        } else {
            vec![]
        };
        (Status::of(Some(lower_ok && upper_ok)), None, e)
    };
    report.push(4, st4, det4, enc4);

    // 5: 2√q|25q a1 + 3a3| - 105q² - 20q a2 < a4
    let inner_int: BigInt = BigInt::from(25) * &qb * &a[0] + BigInt::from(3) * &a[2];
    let inner = int(&k, &inner_int.abs());
    let lo5 = sum(
        &k,
        &[
            prod(&k, &[&c(&k, 2, 1), &s, &inner]),
            prod(&k, &[&c(&k, -105, 1), &q, &q]),
            prod(&k, &[&c(&k, -20, 1), &q, &a2]),
        ],
    );
    report.push(5, Status::of(Some(lt(&lo5, &a4))), None, encs(&[("lower", &lo5)]));

    // 6: L4 ≤ a4 ≤ R4, i.e. θ1 ≤ u4 ≤ θ2 for the printed u's
    let u2 = sum(
        &k,
        &[
            prod(&k, &[&c(&k, -1, 12), &a1, &a1]),
            k.mul(&c(&k, 1, 5), &a2),
            k.mul(&c(&k, -6, 5), &q),
        ],
    );
    let u3 = sum(
        &k,
        &[
            prod(&k, &[&c(&k, 1, 108), &a1, &a1, &a1]),
            prod(&k, &[&c(&k, -1, 30), &a1, &a2]),
            prod(&k, &[&c(&k, -1, 20), &a1, &q]),
            k.mul(&c(&k, 1, 20), &a3),
        ],
    );
    let u4 = sum(
        &k,
        &[
            prod(&k, &[&c(&k, -1, 432), &a1, &a1, &a1, &a1]),
            prod(&k, &[&c(&k, 1, 90), &a1, &a1, &a2]),
            prod(&k, &[&c(&k, 1, 10), &q, &a1, &a1]),
            prod(&k, &[&c(&k, -1, 30), &a1, &a3]),
            prod(&k, &[&c(&k, -4, 15), &q, &a2]),
            k.mul(&c(&k, 1, 15), &a4),
            prod(&k, &[&c(&k, 3, 5), &q, &q]),
        ],
    );
    let base6 = sum(
        &k,
        &[
            prod(&k, &[&c(&k, 5, 144), &a1, &a1, &a1, &a1]),
            prod(&k, &[&c(&k, -1, 6), &a1, &a1, &a2]),
            prod(&k, &[&c(&k, -3, 2), &a1, &a1, &q]),
            prod(&k, &[&c(&k, 1, 2), &a1, &a3]),
            prod(&k, &[&c(&k, 4, 1), &a2, &q]),
            prod(&k, &[&c(&k, -9, 1), &q, &q]),
        ],
    );
    match theta_analysis(&k, &u2, &u3, &u4, detail) {
        None => report.push(
            6,
            Status::Fail,
            Some("resolvent roots not all real".into()),
            vec![],
        ),
        Some(t) => {
            let st = Status::of(t.lower).and(Status::of(t.upper));
            let e = if full {
                let b = enc(&k, &base6);
                let fifteen = BigRational::from_integer(15.into());
                vec![
                    named("L4", b.add(&t.theta[0].scale(&fifteen))),
                    named("R4", b.add(&t.theta[1].scale(&fifteen))),
                ]
            } else {
                vec![]
            };
            report.push(6, st, None, e);
        }
    }

    let (f, ft) = build_f_ftilde(a, params);
    let rs = |p: &crate::poly::QuadPoly| -> [QuadReal; 6] {
        std::array::from_fn(|i| p.coeff(5 - i))
    };
    let (rf, rft) = (rs(&f), rs(&ft));
    // the printed u's are those of f̃; f has the same u2, u4 and the
    // opposite u3, which leaves every θ unchanged
    let (lu2, lu3, lu4) = lemma_us(&k, &rft);
    let (fu2, fu3, fu4) = lemma_us(&k, &rf);
    let same = lu2 == u2 && lu3 == u3 && lu4 == u4;
    let mirrored = fu2 == u2 && fu3 == k.neg(&u3) && fu4 == u4;
    report.diagnostics.push(Diagnostic {
        name: "u_cross_check".into(),
        status: Status::of(Some(same && mirrored)),
        detail: "printed u2, u3, u4 equal the lemma's u's of f̃ and match f up to the sign of u3"
            .into(),
    });

    // 7: from r5 < 0 and r̃5 < 0
    let q2s = prod(&k, &[&q, &q, &s]);
    let kf = sum(
        &k,
        &[
            k.mul(&c(&k, -36, 1), &q2s),
            prod(&k, &[&c(&k, -25, 1), &q, &q, &a1]),
            prod(&k, &[&c(&k, -16, 1), &qs, &a2]),
            prod(&k, &[&c(&k, -9, 1), &q, &a3]),
            prod(&k, &[&c(&k, -4, 1), &s, &a4]),
        ],
    );
    let kp = sum(
        &k,
        &[
            k.mul(&c(&k, 36, 1), &q2s),
            prod(&k, &[&c(&k, -25, 1), &q, &q, &a1]),
            prod(&k, &[&c(&k, 16, 1), &qs, &a2]),
            prod(&k, &[&c(&k, -9, 1), &q, &a3]),
            prod(&k, &[&c(&k, 4, 1), &s, &a4]),
        ],
    );
    let ok7 = lt(&kf, &a5) && lt(&a5, &kp);
    report.push(7, Status::of(Some(ok7)), None, encs(&[("lower", &kf), ("upper", &kp)]));

    // 8: lower bound from g(β1), g(β3) ≤ 0 on f, upper from the same on f̃
    let gf = g_poly(&k, &rf);
    let gft = g_poly(&k, &rft);
    let mut bf = critical_points(&k, &gf);
    let mut bft = critical_points(&k, &gft);
    let half = |g: &[QuadReal], b: &mut [RealAlgebraic<QuadField>]| -> Option<bool> {
        let mut out = Some(true);
        for i in [0, 2] {
            let ok = b[i].sign_of(g).map(|o| o != Ordering::Greater);
            out = match (out, ok) {
                (Some(false), _) | (_, Some(false)) => Some(false),
                (None, _) | (_, None) => None,
                _ => Some(true),
            };
        }
        out
    };
    match (bf.as_mut(), bft.as_mut()) {
        (Some(b), Some(bt)) => {
            let st = Status::of(half(&gf, b)).and(Status::of(half(&gft, bt)));
            let mut e = vec![];
            if full {
                let six = BigRational::from_integer(6.into());
                let (lam1, _, _) = lambdas(&k, &gf, b);
                let (lam1t, _, _) = lambdas(&k, &gft, bt);
                e = vec![
                    named("L5", enc(&k, &kf).add(&lam1.scale(&six))),
                    named("R5", enc(&k, &kp).sub(&lam1t.scale(&six))),
                ];
            }
            report.push(8, st, None, e);
            // printed upper bound: a5 ≤ Kp - 6 min(P(β2), P(β4)) on f
            let cst = k.mul(&c(&k, 1, 6), &k.sub(&kp, &a5));
            let mut p = gf.clone();
            p[0] = k.neg(&cst);
            let p = upoly::trim(&k, p);
            let res: Vec<(Option<bool>, usize)> = [1, 3]
                .iter()
                .map(|&i| (b[i].sign_of(&p).map(|o| o != Ordering::Greater), 1))
                .collect();
            report.diagnostics.push(Diagnostic {
                name: "item8_printed_upper".into(),
                status: Status::of(at_least(&res, 1)),
                detail: "a5 ≤ 36q²√q - 25q²a1 + 16q√q a2 - 9q a3 + 4√q a4 - 6λ2".into(),
            });
        }
        _ => report.push(
            8,
            Status::Fail,
            Some("critical points of f' or f̃' not all real".into()),
            vec![],
        ),
    }

    // 9: |a6| < 924q³
    let bound9 = 924 * pow_big(&qb, 3);
    let ok9 = a[5].abs() < bound9;
    report.push(9, Status::of(Some(ok9)), None, encs(&[("bound", &int(&k, &bound9))]));
    report
}

/// `|a_i| < C(2g, i)·q^{i/2}` for each entry of an a-vector of length `g`.
///
/// Equality needs every root real, which the no-real-root setting excludes,
/// so the comparison is strict.
pub fn trivial_bounds(a: &[BigInt], params: &WeilParams) -> BoundsReport {
    let g = a.len() as u64;
    let q = params.q_big();
    let mut report = BoundsReport::default();
    for (i, ai) in a.iter().enumerate() {
        let i1 = i as u64 + 1;
        let b = binomial(2 * g, i1);
        let ok = ai * ai < &b * &b * pow_big(&q, i1 as u32);
        report.push(i1 as u8, Status::of(Some(ok)), None, vec![]);
    }
    report
}

/// Floating evaluation of the radical formulas for `θ` and `β`, kept as a
/// cross-check of the exact route.
#[derive(Debug, Clone, Serialize)]
pub struct ClosedForm {
    pub theta: Vec<(f64, f64)>,
    pub beta: Vec<(f64, f64)>,
}

pub fn closed_form(r: &[f64; 6]) -> ClosedForm {
    let [r1, r2, r3, r4, _, _] = *r;
    let g1 = 5.0 * r1 / 6.0;
    let u2 = -r1 * r1 / 12.0 + r2 / 5.0;
    let u3 = r1.powi(3) / 108.0 - r1 * r2 / 30.0 + r3 / 20.0;
    let u4 = -r1.powi(4) / 432.0 + r1 * r1 * r2 / 90.0 - r1 * r3 / 30.0 + r4 / 15.0;
    let cx = |x: f64| Complex64::new(x, 0.0);
    let delta = u3 * u3 + 4.0 / 27.0 * u2.powi(3);
    let sd = cx(delta).sqrt();
    let mut w = ((cx(-u3) + sd) / 2.0).powf(1.0 / 3.0);
    if w.norm() < 1e-300 {
        w = ((cx(-u3) - sd) / 2.0).powf(1.0 / 3.0);
    }
    // partner cube root with w·w' = -u2/3; equals the conjugate when all
    // three roots are real
    let w2 = if w.norm() < 1e-300 {
        cx(0.0)
    } else {
        cx(-u2 / 3.0) / w
    };
    let zeta = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    let theta = (0..3)
        .map(|kk| {
            let zk = zeta.powi(kk);
            let zmk = zeta.powi(-kk);
            let t = -zk * w * (cx(4.5 * u3) + 1.5 * sd) - zmk * w2 * (cx(4.5 * u3) - 1.5 * sd)
                + cx(2.0 * u2 * u2 / 3.0);
            (t.re, t.im)
        })
        .collect();
    let mut xs = Vec::with_capacity(4);
    if u3 == 0.0 {
        for i1 in [1.0, -1.0] {
            for i2 in [1.0, -1.0] {
                xs.push(i1 * (cx(-u2) + i2 * cx(u2 * u2 - u4).sqrt()).sqrt());
            }
        }
    } else {
        let v2 = -u2 * u2 / 3.0 - u4;
        let v3 = 2.0 * u2 * u4 / 3.0 - 2.0 * u2.powi(3) / 27.0 - 2.0 * u3 * u3;
        let cc = if v2 == 0.0 {
            cx(-v3).powf(1.0 / 3.0)
        } else {
            ((cx(-v3) + cx(v3 * v3 + 4.0 / 27.0 * v2.powi(3)).sqrt()) / 2.0).powf(1.0 / 3.0)
        };
        let y = cc - cx(v2) / (3.0 * cc) - cx(2.0 * u2 / 3.0);
        let sy = (2.0 * y).sqrt();
        for i1 in [1.0, -1.0] {
            for i2 in [1.0, -1.0] {
                let inner = cx(-4.0 * u2) - 2.0 * y - i1 * 8.0 * u3 / sy;
                xs.push((i1 * sy + i2 * inner.sqrt()) / 2.0);
            }
        }
    }
    let beta = xs
        .into_iter()
        .map(|x| {
            let b = x - g1 / 5.0;
            (b.re, b.im)
        })
        .collect();
    ClosedForm { theta, beta }
}
