//! Check every applicable property across a census box.

use weilpoly::census::{cross_check, EnumerationSpec, Filters};
use weilpoly::weil::WeilParams;

fn main() {
    let params = WeilParams::from_q(2).expect("prime");
    let spec = EnumerationSpec::with_uniform_box(2, params, -3, 3).filters(Filters {
        weil_only: true,
        ..Filters::default()
    });
    let report = cross_check(&spec).expect("valid box");
    println!("records {}", report.records);
    println!("counts {:?}", report.counts);
    println!("oracle checked {}", report.oracle_checked);
    println!("violations {}", report.violations.len());
    println!("ok {}", report.ok());
}
