//! The multiplicity-7 side case: (t^2 + at + b)^7 with b = q.

use num_bigint::BigInt;
use weilpoly::classify::{multiplicity_options, power_case};
use weilpoly::weil::WeilParams;

fn main() {
    println!("possible multiplicities for g = 7: {:?}", multiplicity_options(7).unwrap());
    let q128 = WeilParams::new(2, 7).expect("prime power");
    let w = power_case(&BigInt::from(2), &BigInt::from(128), 7, &q128);
    println!("(t^2 + 2t + 2^7)^7 over q = 2^7: {w:?}");
    let q2 = WeilParams::from_q(2).expect("prime");
    let w = power_case(&BigInt::from(1), &BigInt::from(2), 7, &q2);
    println!("(t^2 + t + 2)^7 over q = 2: {w:?}");
}
