//! Classify every symmetric degree-14 polynomial over q = 2 with
//! coefficients a_1..a_7 in {-1, 0, 1} and tally the verdicts.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use weilpoly::classify::{classify, Verdict};
use weilpoly::weil::{weil_from_a, WeilParams};

fn main() {
    let params = WeilParams::from_q(2).expect("2 is prime");
    let mut tally: BTreeMap<String, usize> = BTreeMap::new();
    let mut cases: BTreeMap<u8, usize> = BTreeMap::new();
    for code in 0..3usize.pow(7) {
        let a: Vec<BigInt> = (0..7)
            .map(|i| BigInt::from((code / 3usize.pow(i)) % 3) - 1)
            .collect();
        let f = weil_from_a(&a, &params.q_big());
        let c = classify(&f, &params);
        let kind = serde_json::to_value(&c.verdict).expect("serializable")["kind"]
            .as_str()
            .unwrap_or_default()
            .to_string();
        match &c.verdict {
            Verdict::Accepted { case_id, .. } => *cases.entry(*case_id).or_default() += 1,
            Verdict::TableTateDisagreement { .. } | Verdict::TextAmbiguous { .. } => {
                println!("{a:?}: {}", serde_json::to_string(&c.verdict).unwrap());
            }
            _ => {}
        }
        *tally.entry(kind).or_default() += 1;
    }
    println!("verdicts: {tally:?}");
    println!("accepted by case: {cases:?}");
}
