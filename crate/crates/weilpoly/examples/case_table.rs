//! The built-in 31-case table and an audit of its printed side conditions
//! against the divisibility criterion.

use weilpoly::cases::{audit_exponents, audit_side_conditions, CaseStatus, CaseTable};

fn main() {
    let table = CaseTable::builtin();
    let flagged: Vec<u8> = table
        .cases
        .iter()
        .filter(|c| c.status != CaseStatus::Ok)
        .map(|c| c.id)
        .collect();
    println!("{} cases, flagged {flagged:?}", table.cases.len());
    for case in &table.cases {
        let mut findings = 0;
        for n in audit_exponents() {
            findings += audit_side_conditions(case, n).len();
        }
        if findings > 0 {
            println!("case {}: {findings} factor patterns where the printed conditions disagree", case.id);
        }
    }
}
