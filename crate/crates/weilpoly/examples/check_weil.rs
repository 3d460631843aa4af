//! Decide the q-Weil property exactly and compare with a numerical
//! root-modulus check.

use num_bigint::BigInt;
use weilpoly::oracle::modulus_check;
use weilpoly::poly::IntPoly;
use weilpoly::weil::{companion_poly, is_weil, weil_from_a, WeilParams};

fn main() {
    let q2 = WeilParams::from_q(2).expect("prime");
    let candidates = [
        ("t^2 + 2", IntPoly::from_i64s(&[2, 0, 1])),
        ("t^2 + 3t + 2", IntPoly::from_i64s(&[2, 3, 1])),
        ("t^2 - 2 (real roots of odd multiplicity)", IntPoly::from_i64s(&[-2, 0, 1])),
        ("(t^2 - 2)^2", IntPoly::from_i64s(&[-2, 0, 1]).pow(2)),
        ("t^12 + 64", IntPoly::from_i64s(&[64, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1])),
    ];
    for (name, chi) in &candidates {
        let v = is_weil(chi, &q2).expect("monic, even degree");
        println!(
            "{name:45} weil={:5} real_roots={} oracle={:?}",
            v.is_weil,
            v.real_roots.len(),
            modulus_check(chi, 2)
        );
    }

    // symmetric form: a = (1, 3) over q = 3 is t^4 + t^3 + 3t^2 + 3t + 9
    let q3 = WeilParams::from_q(3).expect("prime");
    let a: Vec<BigInt> = vec![1.into(), 3.into()];
    let chi = weil_from_a(&a, &q3.q_big());
    let h = companion_poly(&chi, &q3).expect("symmetric");
    println!("chi = {chi}");
    println!("companion h = {h}");
    println!("weil = {}", is_weil(&chi, &q3).expect("valid").is_weil);
}
