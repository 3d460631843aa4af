//! Factor shapes over Q_p: degree, root valuation and constant-term
//! valuation of every irreducible factor.

use num_rational::BigRational;
use weilpoly::padic::{
    count_factors_of_degree, has_root_of_valuation, qp_factor_profile, qp_factor_profile_round2,
    tate_condition,
};
use weilpoly::poly::IntPoly;
use weilpoly::weil::WeilParams;

fn main() {
    let examples = [
        ("t^3 + 2", IntPoly::from_i64s(&[2, 0, 0, 1]), 2),
        ("(t^2 - 3)(t - 1)", IntPoly::from_i64s(&[-3, 0, 1]).mul(&IntPoly::from_i64s(&[-1, 1])), 3),
        ("t^4 + 3t^2 + 4", IntPoly::from_i64s(&[4, 0, 3, 0, 1]), 2),
        // the residual polynomial is a square, so the maximal order decides
        ("t^2 - 18", IntPoly::from_i64s(&[-18, 0, 1]), 3),
    ];
    for (name, f, p) in &examples {
        let profile = qp_factor_profile(f, *p).expect("squarefree, monic, f(0) != 0");
        println!("{name} over Q_{p}: {profile}");
        let quadratics = count_factors_of_degree(&profile, 2).expect("certified");
        let zero = BigRational::from_integer(0.into());
        let unit_root = has_root_of_valuation(f, *p, &zero, 1).expect("valid");
        println!("  quadratic factors {quadratics}, root in Z_p^x {unit_root}");
    }

    let f = IntPoly::from_i64s(&[4, 0, 3, 0, 1]);
    let general = qp_factor_profile_round2(&f, 2).expect("valid");
    println!("maximal-order route agrees: {}", general.shapes() == qp_factor_profile(&f, 2).unwrap().shapes());

    let params = WeilParams::from_q(2).expect("prime");
    let chi = IntPoly::from_i64s(&[2, 1, 1]);
    println!("t^2 + t + 2 satisfies the divisibility criterion: {}", tate_condition(&chi, &params).unwrap());
}
