//! Run the degree-14 classification on a few inputs, showing each kind of
//! verdict.

use num_bigint::BigInt;
use weilpoly::classify::classify;
use weilpoly::poly::IntPoly;
use weilpoly::weil::{weil_from_a, WeilParams};

fn main() {
    let params = WeilParams::from_q(2).expect("prime");
    let from_a = |a: [i64; 7]| weil_from_a(&a.map(BigInt::from), &params.q_big());
    let mut binomial = vec![0i64; 15];
    binomial[0] = 128;
    binomial[14] = 1;
    let inputs = [
        ("ordinary", from_a([1, 0, 0, 0, 0, 0, 1])),
        ("unit-root cubic factor", from_a([1, 0, -1, 0, 0, 0, 0])),
        ("t^14 + 2^7 (reducible)", IntPoly::from_i64s(&binomial)),
        ("not Weil", from_a([9, 0, 0, 0, 0, 0, 0])),
        ("degree 4", IntPoly::from_i64s(&[4, 0, 1, 0, 1])),
    ];
    for (name, f) in &inputs {
        let c = classify(f, &params);
        println!("{name}: {}", serde_json::to_string(&c.verdict).expect("serializable"));
    }
}
