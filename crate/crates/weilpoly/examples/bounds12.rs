//! Check the degree-12 coefficient bounds on a random Weil polynomial and
//! on an a-vector that violates them.

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use weilpoly::bounds12::{corollary_bounds, trivial_bounds, Status};
use weilpoly::sample::random_weil;
use weilpoly::weil::{a6, a_vector, WeilParams};

fn show(label: &str, a: &[BigInt; 6], params: &WeilParams) {
    let report = corollary_bounds(a, params);
    let trivial = trivial_bounds(a, params);
    let a: Vec<String> = a.iter().map(|x| x.to_string()).collect();
    println!("{label}: a = ({})", a.join(", "));
    for c in &report.conditions {
        if c.status != Status::Pass {
            println!("  condition {}: {:?}", c.id, c.status);
        }
    }
    println!("  overall {:?}, trivial bounds {:?}", report.overall(), trivial.overall());
}

fn main() {
    let params = WeilParams::from_q(3).expect("prime");
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let chi = random_weil(6, &params, &mut rng, 10_000).expect("a sample within 10^4 draws");
    let a = a6(&a_vector(&chi)).expect("degree 12");
    show("random Weil polynomial", &a, &params);

    let bad: [BigInt; 6] = [20, 0, 0, 0, 0, 0].map(BigInt::from);
    show("a_1 = 20", &bad, &params);
}
