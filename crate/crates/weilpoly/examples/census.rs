//! Enumerate Weil polynomials in a coefficient box and count them.

use weilpoly::census::{enumerate_sharded, enumerate_weil, EnumerationSpec, Filters};
use weilpoly::weil::WeilParams;

fn main() {
    let weil = Filters {
        weil_only: true,
        ..Filters::default()
    };
    for q in [2, 3, 4, 5] {
        let params = WeilParams::from_q(q).expect("prime power");
        let spec = EnumerationSpec::new(1, params).expect("small box").filters(weil);
        let a1: Vec<i64> = enumerate_weil(&spec).expect("valid").map(|r| r.a[0]).collect();
        println!("degree 2, q = {q}: {} classes, a_1 in {a1:?}", a1.len());
    }

    let params = WeilParams::from_q(2).expect("prime");
    let spec = EnumerationSpec::with_uniform_box(2, params, -3, 3).filters(Filters {
        weil_only: true,
        irreducible_only: true,
        no_real_roots: true,
    });
    let records = enumerate_sharded(&spec, 4).expect("valid");
    println!("degree 4, q = 2, |a_i| <= 3, irreducible without real roots: {}", records.len());
    for r in records.iter().take(3) {
        println!("  {}", serde_json::to_string(r).expect("serializable"));
    }
}
