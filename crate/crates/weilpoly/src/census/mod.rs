//! Brute-force enumeration of Weil polynomials in a coefficient box and the
//! cross-check harness built on it.

pub mod lmfdb;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{binomial, pow_big};
use crate::bounds12::{corollary_bounds_with, trivial_bounds, Detail, Status};
use crate::classify::{classify, Verdict};
use crate::oracle::{modulus_check, ModulusVerdict};
use crate::weil::{a6, is_weil, weil_from_a, WeilParams};
use crate::zassenhaus::is_irreducible;

/// Refuse boxes with more candidates than this unless the caller raises it.
pub const DEFAULT_RECORD_CAP: u128 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("box has {estimate} candidates, above the cap of {cap}")]
    TooLarge { estimate: u128, cap: u128 },
    #[error("box has {got} ranges for {expected} coefficients")]
    BoxShape { expected: usize, got: usize },
    #[error("coefficient bound does not fit in 64 bits")]
    Overflow,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Filters {
    pub weil_only: bool,
    pub irreducible_only: bool,
    pub no_real_roots: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumerationSpec {
    /// Half the degree.
    pub g: usize,
    #[serde(rename = "q", serialize_with = "params_as_q")]
    pub params: WeilParams,
    /// Inclusive range for each of `a_1..a_g`.
    pub ranges: Vec<(i64, i64)>,
    pub filters: Filters,
    #[serde(skip)]
    pub record_cap: u128,
}

fn params_as_q<S: serde::Serializer>(p: &WeilParams, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u64(p.q())
}

/// `⌊C(2g, i) q^(i/2)⌋`, the largest `|a_i|` any q-Weil polynomial allows.
pub fn trivial_bound(g: usize, i: usize, params: &WeilParams) -> BigInt {
    let c = binomial(2 * g as u64, i as u64);
    (&c * &c * pow_big(&params.q_big(), i as u32)).sqrt()
}

impl EnumerationSpec {
    /// The full trivial-bound box.
    pub fn new(g: usize, params: WeilParams) -> Result<Self, CensusError> {
        let ranges = (1..=g)
            .map(|i| {
                let b = trivial_bound(g, i, &params).to_i64().ok_or(CensusError::Overflow)?;
                Ok((-b, b))
            })
            .collect::<Result<_, _>>()?;
        Ok(EnumerationSpec {
            g,
            params,
            ranges,
            filters: Filters::default(),
            record_cap: DEFAULT_RECORD_CAP,
        })
    }

    /// The same range `lo..=hi` for every coefficient.
    pub fn with_uniform_box(g: usize, params: WeilParams, lo: i64, hi: i64) -> Self {
        EnumerationSpec {
            g,
            params,
            ranges: vec![(lo, hi); g],
            filters: Filters::default(),
            record_cap: DEFAULT_RECORD_CAP,
        }
    }

    pub fn filters(mut self, filters: Filters) -> Self {
        self.filters = filters;
        self
    }

    pub fn candidate_count(&self) -> u128 {
        self.ranges
            .iter()
            .map(|&(lo, hi)| if hi < lo { 0 } else { (hi - lo) as u128 + 1 })
            .try_fold(1u128, |acc, x| acc.checked_mul(x))
            .unwrap_or(u128::MAX)
    }

    fn validate(&self) -> Result<(), CensusError> {
        if self.ranges.len() != self.g {
            return Err(CensusError::BoxShape {
                expected: self.g,
                got: self.ranges.len(),
            });
        }
        let estimate = self.candidate_count();
        if estimate > self.record_cap {
            return Err(CensusError::TooLarge {
                estimate,
                cap: self.record_cap,
            });
        }
        Ok(())
    }

    /// Split the `a_1` range into at most `k` consecutive pieces.
    pub fn shards(&self, k: usize) -> Vec<EnumerationSpec> {
        let Some(&(lo, hi)) = self.ranges.first() else {
            return vec![self.clone()];
        };
        if hi < lo || k <= 1 {
            return vec![self.clone()];
        }
        let width = (hi - lo) as u128 + 1;
        let k = (k as u128).min(width);
        (0..k)
            .map(|s| {
                let a = lo + (width * s / k) as i64;
                let b = lo + (width * (s + 1) / k) as i64 - 1;
                let mut sh = self.clone();
                sh.ranges[0] = (a, b);
                sh
            })
            .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusRecord {
    pub a: Vec<i64>,
    pub is_weil: bool,
    pub has_real_root: bool,
    /// Computed only when a filter or checker needs it.
    pub irreducible: Option<bool>,
    /// Overall corollary status, degree 12 only.
    pub bounds12: Option<Status>,
    /// Verdict kind, degree 14 only.
    pub classification: Option<String>,
    pub case_id: Option<u8>,
    /// Wall time spent on this record; not serialized so that output is
    /// reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
    #[serde(skip)]
    pub verdict: Option<Verdict>,
}

fn verdict_kind(v: &Verdict) -> String {
    serde_json::to_value(v).expect("verdicts serialize")["kind"]
        .as_str()
        .expect("tagged enum")
        .to_string()
}

fn verdict_case(v: &Verdict) -> Option<u8> {
    match v {
        Verdict::Accepted { case_id, .. } | Verdict::TextAmbiguous { case_id, .. } => Some(*case_id),
        Verdict::Rejected { case_id, .. } | Verdict::TableTateDisagreement { case_id, .. } => *case_id,
        _ => None,
    }
}

/// Lexicographic walk over a box, `a_1` slowest.
struct BoxWalk {
    ranges: Vec<(i64, i64)>,
    cur: Option<Vec<i64>>,
}

impl BoxWalk {
    fn new(ranges: &[(i64, i64)]) -> Self {
        let empty = ranges.iter().any(|&(lo, hi)| hi < lo);
        BoxWalk {
            ranges: ranges.to_vec(),
            cur: (!empty).then(|| ranges.iter().map(|r| r.0).collect()),
        }
    }
}

impl Iterator for BoxWalk {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        let out = self.cur.clone()?;
        let cur = self.cur.as_mut().expect("checked above");
        let mut i = cur.len();
        loop {
            if i == 0 {
                self.cur = None;
                break;
            }
            i -= 1;
            if cur[i] < self.ranges[i].1 {
                cur[i] += 1;
                break;
            }
            cur[i] = self.ranges[i].0;
        }
        Some(out)
    }
}

fn evaluate(spec: &EnumerationSpec, a: Vec<i64>) -> Option<CensusRecord> {
    let start = Instant::now();
    let params = &spec.params;
    let big: Vec<BigInt> = a.iter().map(|&x| BigInt::from(x)).collect();
    let f = weil_from_a(&big, &params.q_big());
    let w = is_weil(&f, params).expect("weil_from_a builds monic even-degree input");
    let has_real_root = !w.real_roots.is_empty();
    if spec.filters.weil_only && !w.is_weil {
        return None;
    }
    if spec.filters.no_real_roots && has_real_root {
        return None;
    }
    let mut irreducible = None;
    if spec.filters.irreducible_only {
        let irr = is_irreducible(&f);
        if !irr {
            return None;
        }
        irreducible = Some(irr);
    }
    let mut rec = CensusRecord {
        a,
        is_weil: w.is_weil,
        has_real_root,
        irreducible,
        bounds12: None,
        classification: None,
        case_id: None,
        elapsed: Duration::ZERO,
        verdict: None,
    };
    if w.is_weil && !has_real_root {
        if let Some(a6) = a6(&big) {
            rec.bounds12 = Some(corollary_bounds_with(&a6, params, Detail::Decisions).overall());
        }
    }
    if spec.g == 7 {
        let c = classify(&f, params);
        rec.classification = Some(verdict_kind(&c.verdict));
        rec.case_id = verdict_case(&c.verdict);
        if rec.irreducible.is_none() {
            rec.irreducible = Some(!matches!(
                c.verdict,
                Verdict::ReducibleOverQ { .. } | Verdict::PowerCase { .. }
            ));
        }
        rec.verdict = Some(c.verdict);
    }
    rec.elapsed = start.elapsed();
    Some(rec)
}

/// Records for every candidate in the box that passes the filters, in
/// lexicographic order of `(a_1, ..., a_g)`.
pub fn enumerate_weil(
    spec: &EnumerationSpec,
) -> Result<impl Iterator<Item = CensusRecord> + '_, CensusError> {
    spec.validate()?;
    Ok(BoxWalk::new(&spec.ranges).filter_map(move |a| evaluate(spec, a)))
}

/// `enumerate_weil` over `threads` shards of the `a_1` range, merged in
/// order. The output equals the unsharded run.
pub fn enumerate_sharded(
    spec: &EnumerationSpec,
    threads: usize,
) -> Result<Vec<CensusRecord>, CensusError> {
    spec.validate()?;
    let shards = spec.shards(threads.max(1));
    let parts: Vec<Vec<CensusRecord>> = std::thread::scope(|s| {
        let handles: Vec<_> = shards
            .iter()
            .map(|sh| s.spawn(move || enumerate_weil(sh).map(|it| it.collect::<Vec<_>>())))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("shard thread panicked"))
            .collect::<Result<_, _>>()
    })?;
    Ok(parts.into_iter().flatten().collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub a: Vec<i64>,
    pub property: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AmbiguousInstance {
    pub a: Vec<i64>,
    pub case_id: u8,
    pub candidate_cases: Vec<u8>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CrossCheckReport {
    pub spec: EnumerationSpec,
    pub records: usize,
    pub counts: BTreeMap<String, usize>,
    pub violations: Vec<Violation>,
    pub ambiguous: Vec<AmbiguousInstance>,
    /// Modulus-oracle calls made (all records up to degree 4, 1% beyond).
    pub oracle_checked: usize,
    /// Degree-12 conditions that could not be decided.
    pub indeterminate: usize,
}

impl CrossCheckReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Run the box and check every property that applies to its degree:
/// the modulus oracle on Weil records, the degree-12 bounds on Weil
/// records without real roots, and agreement between the case table and
/// the divisibility criterion at degree 14.
pub fn cross_check(spec: &EnumerationSpec) -> Result<CrossCheckReport, CensusError> {
    let records = enumerate_sharded(spec, std::thread::available_parallelism().map_or(1, |n| n.get()))?;
    let mut report = CrossCheckReport {
        spec: spec.clone(),
        records: records.len(),
        counts: BTreeMap::new(),
        violations: Vec::new(),
        ambiguous: Vec::new(),
        oracle_checked: 0,
        indeterminate: 0,
    };
    let q = spec.params.q();
    for (idx, r) in records.iter().enumerate() {
        let key = match &r.classification {
            Some(k) => k.clone(),
            None if r.is_weil => "weil".into(),
            None => "not_weil".into(),
        };
        *report.counts.entry(key).or_default() += 1;
        let mut violate = |property: &str, detail: String| {
            report.violations.push(Violation {
                a: r.a.clone(),
                property: property.into(),
                detail,
            })
        };
        if r.is_weil && (spec.g <= 2 || idx % 100 == 0) {
            let big: Vec<BigInt> = r.a.iter().map(|&x| BigInt::from(x)).collect();
            let f = weil_from_a(&big, &spec.params.q_big());
            if modulus_check(&f, q) == ModulusVerdict::OffCircle {
                violate("modulus_oracle", "a root is certified off the circle".into());
            }
            report.oracle_checked += 1;
        }
        if r.is_weil && !r.has_real_root {
            let big: Vec<BigInt> = r.a.iter().map(|&x| BigInt::from(x)).collect();
            let t = trivial_bounds(&big, &spec.params);
            if !t.failed().is_empty() {
                violate("trivial_bounds", format!("failed {:?}", t.failed()));
            }
            match r.bounds12 {
                Some(Status::Fail) => {
                    let a6 = a6(&big).expect("degree 12");
                    let rep = corollary_bounds_with(&a6, &spec.params, Detail::Decisions);
                    violate("bounds12", format!("failed conditions {:?}", rep.failed()));
                }
                Some(Status::Indeterminate) => report.indeterminate += 1,
                _ => {}
            }
        }
        match &r.verdict {
            Some(Verdict::TableTateDisagreement {
                case_id,
                table_says,
                tate_says,
            }) => violate(
                "table_tate",
                format!("case {case_id:?}: table {table_says}, divisibility {tate_says}"),
            ),
            Some(Verdict::TextAmbiguous {
                case_id,
                candidate_cases,
                ..
            }) => report.ambiguous.push(AmbiguousInstance {
                a: r.a.clone(),
                case_id: *case_id,
                candidate_cases: candidate_cases.clone(),
            }),
            _ => {}
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weil_box(g: usize, q: u64, lo: i64, hi: i64) -> EnumerationSpec {
        EnumerationSpec::with_uniform_box(g, WeilParams::from_q(q).unwrap(), lo, hi).filters(Filters {
            weil_only: true,
            ..Filters::default()
        })
    }

    fn a_values(spec: &EnumerationSpec) -> Vec<Vec<i64>> {
        enumerate_weil(spec).unwrap().map(|r| r.a).collect()
    }

    #[test]
    fn degree_two_counts() {
        assert_eq!(a_values(&weil_box(1, 2, -3, 3)), (-2..=2).map(|a| vec![a]).collect::<Vec<_>>());
        assert_eq!(a_values(&weil_box(1, 3, -4, 4)).len(), 7);
        assert_eq!(a_values(&weil_box(1, 4, -4, 4)).len(), 9);
    }

    #[test]
    fn default_box_is_the_trivial_bound() {
        let spec = EnumerationSpec::new(2, WeilParams::from_q(2).unwrap()).unwrap();
        // 4·√2 ≈ 5.66 and 6·2 = 12
        assert_eq!(spec.ranges, vec![(-5, 5), (-12, 12)]);
        let all: Vec<_> = enumerate_weil(&spec.clone().filters(Filters {
            weil_only: true,
            ..Filters::default()
        }))
        .unwrap()
        .collect();
        // every 2-Weil polynomial of degree 4 lies in this box; none sit on its faces
        assert!(all.iter().all(|r| r.a[0].abs() < 6 && r.a[1].abs() <= 12));
        assert!(!all.is_empty());
    }

    #[test]
    fn lexicographic_and_sharding() {
        let spec = EnumerationSpec::with_uniform_box(3, WeilParams::from_q(3).unwrap(), -2, 2);
        let plain: Vec<_> = enumerate_weil(&spec).unwrap().collect();
        assert_eq!(plain.len(), 125);
        assert!(plain.windows(2).all(|w| w[0].a < w[1].a));
        let text = serde_json::to_string(&plain).unwrap();
        for k in [1, 2, 3, 7] {
            let sharded = enumerate_sharded(&spec, k).unwrap();
            assert_eq!(serde_json::to_string(&sharded).unwrap(), text);
        }
    }

    #[test]
    fn cap_and_empty_box() {
        let mut spec = weil_box(6, 2, -100, 100);
        match enumerate_weil(&spec) {
            Err(CensusError::TooLarge { estimate, .. }) => assert_eq!(estimate, 201u128.pow(6)),
            Err(e) => panic!("unexpected {e}"),
            Ok(_) => panic!("box should be refused"),
        }
        spec.ranges = vec![(1, 0); 6];
        let rep = cross_check(&spec).unwrap();
        assert_eq!(rep.records, 0);
        assert!(rep.ok());
    }

    #[test]
    fn cross_check_small_boxes() {
        let rep = cross_check(&weil_box(2, 5, -10, 10)).unwrap();
        assert!(rep.ok(), "{:?}", rep.violations);
        assert_eq!(rep.oracle_checked, rep.records);
        let spec = weil_box(6, 2, -1, 1).filters(Filters {
            weil_only: true,
            no_real_roots: true,
            irreducible_only: false,
        });
        let rep = cross_check(&spec).unwrap();
        assert!(rep.ok(), "{:?}", rep.violations);
        assert!(rep.records > 0);
    }
}
