//! Newton polygons of two degree-14 Weil polynomials, their lattice check
//! and the case of the 31-case table they fall into.

use num_bigint::BigInt;
use weilpoly::cases::polygon_case_id;
use weilpoly::newton::{lattice_vertex_check, newton_polygon};
use weilpoly::poly::IntPoly;
use weilpoly::weil::{weil_from_a, WeilParams};

fn main() {
    let params = WeilParams::from_q(2).expect("prime");
    let mut binomial = vec![0i64; 15];
    binomial[0] = 128;
    binomial[14] = 1;
    let ordinary = weil_from_a(&[1, 0, 0, 0, 0, 0, 1].map(BigInt::from), &params.q_big());
    for (name, f) in [("t^14 + 2^7", IntPoly::from_i64s(&binomial)), ("a = (1, 0, 0, 0, 0, 0, 1)", ordinary)] {
        let np = newton_polygon(&f, params.p()).expect("nonzero");
        println!("{name}");
        println!("  {np}");
        for s in &np.segments {
            println!("  slope {} over length {}", s.slope, s.horizontal_length);
        }
        println!("  symmetric {}", np.is_weil_symmetric(params.n()));
        println!("  lattice vertices {}", lattice_vertex_check(&np, params.n()));
        match polygon_case_id(&np, &params) {
            Ok(id) => println!("  case {}", id.case),
            Err(e) => println!("  no case: {e}"),
        }
    }
}
