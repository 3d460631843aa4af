//! Acceptance criteria 1 to 10, one PASS/FAIL/SKIPPED line each.
//!
//! Runs without the libtest harness so the lines appear in plain
//! `cargo test` output. The process fails if a criterion fails that is not
//! in `KNOWN_FAILURES`, or if a known failure stops matching its
//! documented explanation.
//!
//! Criterion 10 reads the LMFDB cache in `$WEILPOLY_CACHE_DIR` (default
//! `.weilpoly-cache`); set `WEILPOLY_ALLOW_NETWORK=1` to fetch.

mod common;

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use weilpoly::bounds12::{corollary_bounds_with, trivial_bounds, Detail, Status};
use weilpoly::census::lmfdb::{lmfdb_reconcile, FetchPolicy, ReconcileStatus, CACHE_ENV};
use weilpoly::census::{enumerate_weil, EnumerationSpec, Filters};
use weilpoly::classify::{classify, power_case, Verdict};
use weilpoly::newton::newton_polygon;
use weilpoly::padic::{qp_factor_profile, Method, PadicError};
use weilpoly::poly::IntPoly;
use weilpoly::sample::random_weil;
use weilpoly::weil::{
    a6, a_vector, build_f_ftilde, companion_poly, f_ftilde_from_companion, weil_from_a, WeilParams,
};

use common::{composition, is_squarefree, oracle_scan, planted, shapes_of, worked_examples};

/// Criterion 7 fails because the printed side conditions of cases 14 and
/// 20 forbid every cubic factor, including admissible unit-root cubics.
const KNOWN_FAILURES: &[u8] = &[7];

type Criterion = (u8, &'static str, fn() -> Outcome);

enum Outcome {
    Pass(String),
    Fail(String),
    Skipped(String),
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Pass(d) => write!(f, "PASS    {d}"),
            Outcome::Fail(d) => write!(f, "FAIL    {d}"),
            Outcome::Skipped(d) => write!(f, "SKIPPED {d}"),
        }
    }
}

fn verdict(ok: bool, detail: String) -> Outcome {
    if ok {
        Outcome::Pass(detail)
    } else {
        Outcome::Fail(detail)
    }
}

fn within(t: Instant, limit: Duration) -> (bool, String) {
    let e = t.elapsed();
    (e < limit, format!("{:.1}s of {}s", e.as_secs_f64(), limit.as_secs()))
}

fn weil_oracle() -> Outcome {
    let t = Instant::now();
    let (mut total, mut disagree, mut uncertified) = (0, 0, 0);
    for q in [2, 3, 4, 5] {
        for g in [1, 2] {
            let (n, d, u) = oracle_scan(g, q);
            total += n;
            disagree += d;
            uncertified += u;
        }
    }
    let (fast, time) = within(t, Duration::from_secs(120));
    verdict(
        disagree == 0 && fast,
        format!("{total} instances, {disagree} disagreements, {uncertified} Weil with repeated roots left to the exact side; {time}"),
    )
}

fn degree_two_counts() -> Outcome {
    let weil = Filters {
        weil_only: true,
        ..Filters::default()
    };
    let mut got = Vec::new();
    for q in [2u64, 3, 4] {
        let params = WeilParams::from_q(q).unwrap();
        let spec = EnumerationSpec::new(1, params).unwrap().filters(weil);
        got.push((q, enumerate_weil(&spec).unwrap().count()));
    }
    let want = vec![(2, 5), (3, 7), (4, 9)];
    verdict(got == want, format!("(q, count) = {got:?}"))
}

fn necessity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let (mut samples, mut violations, mut undecided) = (0usize, 0usize, 0usize);
    for q in [2u64, 3, 4, 5, 9] {
        let params = WeilParams::from_q(q).unwrap();
        for _ in 0..2000 {
            let chi = random_weil(6, &params, &mut rng, 100_000).expect("sampler finds a Weil polynomial");
            let a = a6(&a_vector(&chi)).unwrap();
            let report = corollary_bounds_with(&a, &params, Detail::Decisions);
            let trivial = trivial_bounds(&a, &params);
            samples += 1;
            if !report.failed().is_empty() || trivial.overall() == Status::Fail {
                violations += 1;
                eprintln!("necessity violation q={q} a={a:?} failed={:?}", report.failed());
            }
            if !report.indeterminate().is_empty() {
                undecided += 1;
            }
        }
    }
    let rate = undecided as f64 / samples as f64;
    verdict(
        samples >= 10_000 && violations == 0 && rate < 0.01,
        format!("{samples} samples, {violations} violations, indeterminate rate {:.2}%", 100.0 * rate),
    )
}

fn transform_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let qs = [2u64, 3, 4, 5, 9];
    let mut bad = 0;
    for i in 0..10_000 {
        let params = WeilParams::from_q(qs[i % qs.len()]).unwrap();
        let a: [BigInt; 6] = std::array::from_fn(|_| BigInt::from(rng.random_range(-5000i64..=5000)));
        let chi = weil_from_a(&a, &params.q_big());
        let h = companion_poly(&chi, &params).unwrap();
        if build_f_ftilde(&a, &params) != f_ftilde_from_companion(&h, &params) {
            bad += 1;
        }
    }
    verdict(bad == 0, format!("10000 a-vectors, {bad} mismatches"))
}

fn polygon_duality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let (mut checked, mut bad, mut uncertified) = (0, 0, 0);
    while checked < 1000 {
        let p = [2u64, 3, 5][checked % 3];
        let d = rng.random_range(1..=14);
        let f = planted(&mut rng, p, d, 4);
        if !is_squarefree(&f) {
            continue;
        }
        let profile = match qp_factor_profile(&f, p) {
            Ok(pr) => pr,
            Err(PadicError::Uncertified { partial, .. }) => {
                uncertified += 1;
                *partial
            }
            Err(e) => panic!("{f} at {p}: {e}"),
        };
        let np = newton_polygon(&f, p).unwrap();
        let mut segs: Vec<_> = np
            .segments
            .iter()
            .map(|s| (s.root_valuation(), s.horizontal_length))
            .collect();
        segs.sort();
        let mut prof = profile.slope_lengths();
        prof.sort();
        if segs != prof {
            bad += 1;
            eprintln!("duality mismatch {f} at {p}");
        }
        checked += 1;
    }
    verdict(
        bad == 0,
        format!("{checked} polynomials, {bad} mismatches, {uncertified} partial profiles"),
    )
}

fn composition_oracle() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mut cases = worked_examples();
    let worked = cases.len();
    for i in 0..1000 {
        let p = [2u64, 3, 5][i % 3];
        let (f, want) = composition(&mut rng, p);
        cases.push((f, p, want));
    }
    let (mut bad, mut by_order) = (0, 0);
    for (f, p, want) in &cases {
        match qp_factor_profile(f, *p) {
            Ok(got) => {
                if got.factors.iter().any(|x| x.method == Method::MaximalOrder) {
                    by_order += 1;
                }
                if shapes_of(&got) != *want {
                    bad += 1;
                    eprintln!("composition mismatch {f} at {p}: {got}");
                }
            }
            Err(e) => {
                bad += 1;
                eprintln!("composition error {f} at {p}: {e}");
            }
        }
    }
    let (fast, time) = within(t, Duration::from_secs(300));
    verdict(
        bad == 0 && fast,
        format!(
            "{} products ({worked} worked examples), {bad} mismatches, {by_order} needed the maximal order; {time}",
            cases.len()
        ),
    )
}

fn table_tate() -> Outcome {
    let t = Instant::now();
    let params = WeilParams::from_q(2).unwrap();
    let mut tally: BTreeMap<&'static str, usize> = BTreeMap::new();
    let mut unflagged = Vec::new();
    let mut flagged = Vec::new();
    let mut unexplained = 0;
    for code in 0..3usize.pow(7) {
        let a: Vec<BigInt> = (0..7)
            .map(|i| BigInt::from((code / 3usize.pow(i)) % 3) - 1)
            .collect();
        let c = classify(&weil_from_a(&a, &params.q_big()), &params);
        let kind = match &c.verdict {
            Verdict::Accepted { .. } => "accepted",
            Verdict::Rejected { .. } => "rejected",
            Verdict::TableTateDisagreement { case_id, table_says, tate_says } => {
                unflagged.push(case_id.unwrap_or(0));
                // the documented gap: cases 14 and 20 reject a unit-root cubic
                let unit_cubic = c.profile.as_ref().is_some_and(|pr| {
                    pr.factors
                        .iter()
                        .any(|f| f.degree == 3 && (f.slope == common::ratio(0, 1) || f.slope == common::ratio(1, 1)))
                });
                if !(matches!(case_id, Some(14 | 20)) && !table_says && *tate_says && unit_cubic) {
                    unexplained += 1;
                    eprintln!("unexplained disagreement a={a:?} {:?}", c.verdict);
                }
                "disagreement"
            }
            Verdict::TextAmbiguous { case_id, .. } => {
                flagged.push((a.clone(), *case_id));
                "text_ambiguous"
            }
            Verdict::Inconclusive { .. } => "inconclusive",
            _ => "filtered",
        };
        *tally.entry(kind).or_default() += 1;
    }
    let (fast, time) = within(t, Duration::from_secs(600));
    for (a, case) in &flagged {
        println!("    flagged instance: case {case}, a = {a:?}");
    }
    let mut per_case: BTreeMap<u8, usize> = BTreeMap::new();
    for id in &unflagged {
        *per_case.entry(*id).or_default() += 1;
    }
    let detail = format!(
        "{tally:?}; unflagged disagreements by case {per_case:?} ({}explained by unit-root cubics); {time}",
        if unexplained == 0 { "all " } else { "NOT all " }
    );
    if unflagged.is_empty() && fast {
        Outcome::Pass(detail)
    } else {
        // a known failure stays acceptable only while it has the documented cause
        if unexplained > 0 || !fast {
            return Outcome::Fail(format!("{detail}; UNEXPECTED"));
        }
        Outcome::Fail(detail)
    }
}

fn power_instances() -> Outcome {
    let q128 = WeilParams::new(2, 7).unwrap();
    let q2 = WeilParams::from_q(2).unwrap();
    let yes = power_case(&BigInt::from(2), &BigInt::from(128), 7, &q128);
    let no = power_case(&BigInt::from(1), &BigInt::from(2), 7, &q2);
    let full_yes = classify(&IntPoly::from_i64s(&[128, 2, 1]).pow(7), &q128);
    let full_no = classify(&IntPoly::from_i64s(&[2, 1, 1]).pow(7), &q2);
    let ok = yes.failed.is_none()
        && no.failed.as_deref() == Some("g does not divide n")
        && matches!(full_yes.verdict, Verdict::PowerCase { accepted: true, .. })
        && matches!(full_no.verdict, Verdict::PowerCase { accepted: false, .. });
    verdict(
        ok,
        format!(
            "(t^2+2t+2^7)^7 over 2^7 accepted: {}; (t^2+t+2)^7 over 2 rejected: {:?}",
            yes.failed.is_none(),
            no.failed.unwrap_or_default()
        ),
    )
}

fn goldens() -> Outcome {
    let n = common::golden::cases().len();
    let stale = common::golden::stale(false);
    verdict(stale.is_empty(), format!("{n} invocations, stale: {stale:?}"))
}

fn lmfdb() -> Outcome {
    let dir = std::env::var_os(CACHE_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(".weilpoly-cache"));
    let policy = if std::env::var_os("WEILPOLY_ALLOW_NETWORK").is_some() {
        FetchPolicy::AllowNetwork
    } else {
        FetchPolicy::CacheOnly
    };
    let (mut classes, mut mismatches, mut skipped) = (0, 0, Vec::new());
    for g in [1, 2] {
        for q in [2u64, 3] {
            let params = WeilParams::from_q(q).unwrap();
            match lmfdb_reconcile(&params, g, &dir, policy) {
                Ok(r) if r.status == ReconcileStatus::Skipped => skipped.push(format!(
                    "g={g} q={q}: {}",
                    r.skipped_reason.unwrap_or_default()
                )),
                Ok(r) => {
                    classes += r.classes;
                    mismatches += r.mismatches.len();
                }
                Err(e) => skipped.push(format!("g={g} q={q}: {e}")),
            }
        }
    }
    if mismatches > 0 {
        return Outcome::Fail(format!("{classes} classes, {mismatches} mismatches"));
    }
    if !skipped.is_empty() {
        return Outcome::Skipped(skipped.join("; "));
    }
    Outcome::Pass(format!("{classes} classes, 0 mismatches"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "Weil predicate vs root moduli", weil_oracle),
        (2, "degree-2 Weil counts", degree_two_counts),
        (3, "degree-12 necessity", necessity),
        (4, "transform identity", transform_identity),
        (5, "Newton polygon duality", polygon_duality),
        (6, "p-adic composition oracle", composition_oracle),
        (7, "table vs divisibility criterion", table_tate),
        (8, "power case instances", power_instances),
        (9, "CLI goldens", goldens),
        (10, "LMFDB reconciliation", lmfdb),
    ];
    let mut unexpected = Vec::new();
    for (id, name, check) in criteria {
        let outcome = check();
        println!("criterion {id:>2} {name:32} {outcome}");
        let known = KNOWN_FAILURES.contains(&id);
        match &outcome {
            Outcome::Fail(d) if !known || d.ends_with("UNEXPECTED") => unexpected.push(id),
            _ => {}
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: no failures beyond the documented ones {KNOWN_FAILURES:?}");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected failures {unexpected:?}");
        ExitCode::FAILURE
    }
}
