//! Exit-status contract of the command-line interface: 0 affirmative,
//! 1 negative, 2 usage error, 3 inconclusive; usage errors write only to
//! stderr.

use num_bigint::BigInt;
use proptest::prelude::*;
use weilpoly::classify::{classify, Verdict};
use weilpoly::cli::input::PolynomialInput;
use weilpoly::cli::run;
use weilpoly::poly::IntPoly;
use weilpoly::weil::{is_weil, weil_from_a, WeilParams};

fn call(args: &[String]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("weilpoly".to_string()).chain(args.iter().cloned());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn s(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn arbitrary_arguments_never_panic(
        cmd in prop::sample::select(vec!["check-weil", "bounds12", "classify14", "polygon", "nonsense"]),
        rest in prop::collection::vec("[-a-z0-9,:^=; ]{0,12}", 0..4),
    ) {
        let mut args = vec![cmd.to_string()];
        args.extend(rest);
        let (code, out, err) = call(&args);
        prop_assert!((0..=3).contains(&code));
        if code == 2 {
            prop_assert!(out.is_empty());
            prop_assert!(!err.is_empty());
        }
    }

    #[test]
    fn check_weil_status_matches_the_predicate(
        c in prop::collection::vec(-6i64..=6, 1..5),
        qi in 0..3usize,
    ) {
        let q = [2u64, 3, 4][qi];
        let mut coeffs = c.clone();
        if coeffs.len() % 2 == 1 {
            coeffs.push(0);
        }
        coeffs.push(1);
        let f = IntPoly::from_i64s(&coeffs);
        let want = is_weil(&f, &WeilParams::from_q(q).unwrap()).unwrap().is_weil;
        let (code, out, _) = call(&s(&["check-weil", "--q", &q.to_string(), &f.to_csv()]));
        prop_assert_eq!(code, if want { 0 } else { 1 });
        let json: serde_json::Value = serde_json::from_str(&out).unwrap();
        prop_assert_eq!(json["is_weil"].as_bool(), Some(want));
        prop_assert_eq!(json["schema_version"].as_u64(), Some(1));
    }

    #[test]
    fn malformed_coefficients_are_usage_errors(
        c in prop::collection::vec(-9i64..=9, 1..6),
        at in 0..6usize,
        junk in "[a-z]{1,3}",
    ) {
        let mut toks: Vec<String> = c.iter().map(|x| x.to_string()).collect();
        let at = at.min(toks.len() - 1);
        toks[at] = junk;
        let (code, out, err) = call(&s(&["check-weil", "--q", "2", &toks.join(",")]));
        prop_assert_eq!(code, 2);
        prop_assert!(out.is_empty());
        prop_assert!(err.contains("column"));
    }

    #[test]
    fn classify_status_follows_the_verdict(a in proptest::array::uniform7(-1i64..=1)) {
        let params = WeilParams::from_q(2).unwrap();
        let f = weil_from_a(&a.map(BigInt::from), &params.q_big());
        let want = match classify(&f, &params).verdict {
            Verdict::Accepted { .. } | Verdict::PowerCase { accepted: true, .. } => 0,
            Verdict::TableTateDisagreement { .. } | Verdict::TextAmbiguous { .. } | Verdict::Inconclusive { .. } => 3,
            _ => 1,
        };
        let list: Vec<String> = a.iter().map(|x| x.to_string()).collect();
        let input = format!("q=2^1; a={}", list.join(","));
        let (code, _, _) = call(&s(&["classify14", &input]));
        prop_assert_eq!(code, want);
    }

    #[test]
    fn symmetric_input_round_trips(p in prop::sample::select(vec![2u64, 3, 5, 7]), n in 1u32..=3, a in prop::collection::vec(-50i64..=50, 1..8)) {
        let list: Vec<String> = a.iter().map(|x| x.to_string()).collect();
        let text = format!("q={p}^{n}; a={}", list.join(","));
        let parsed: PolynomialInput = text.parse().unwrap();
        prop_assert_eq!(parsed.to_string(), text);
    }
}
