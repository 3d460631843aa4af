//! Exact tools for Weil polynomials.
//!
//! Every decision is made in exact arithmetic over Z, Q, Q(√q), F_p or
//! Z/p^k; floating point appears only in independent oracles and in
//! reported enclosures.
//!
//! | Module | Provides |
//! |---|---|
//! | [`weil`] | the q-Weil predicate, companion polynomial, real-root reduction, the degree-12 transforms |
//! | [`bounds12`] | the degree-12 coefficient conditions and trivial bounds, as Pass/Fail/Indeterminate reports |
//! | [`newton`] | Newton polygons, Weil symmetry and the lattice vertex check |
//! | [`padic`] | factor shapes over Q_p and the constant-term divisibility criterion |
//! | [`cases`] | the 31-case degree-14 table, polygon matching and the side-condition audit |
//! | [`classify`] | the degree-14 decision procedure and the multiplicity-7 power case |
//! | [`census`] | box enumeration, cross-checks and LMFDB reconciliation |
//! | [`cli`] | the `weilpoly` command line |
//!
//! Supporting arithmetic: [`poly`] and [`upoly`] (polynomials), [`field`]
//! (Q and Q(√q)), [`fp`] (F_p factorization), [`hensel`] and
//! [`zassenhaus`] (factoring over Z), [`sturm`] (real roots), [`interval`]
//! (certified enclosures), [`oracle`] (numerical root moduli), [`sample`]
//! (random Weil polynomials) and [`arith`].
//!
//! ```
//! use weilpoly::poly::IntPoly;
//! use weilpoly::weil::{is_weil, WeilParams};
//!
//! let q = WeilParams::from_q(2).unwrap();
//! assert!(is_weil(&IntPoly::from_i64s(&[2, 0, 1]), &q).unwrap().is_weil);
//! assert!(!is_weil(&IntPoly::from_i64s(&[2, 3, 1]), &q).unwrap().is_weil);
//! ```

pub mod arith;
pub mod bounds12;
pub mod census;
pub mod cases;
pub mod classify;
pub mod cli;
pub mod error;
pub mod field;
pub mod fp;
pub mod hensel;
pub mod interval;
pub mod newton;
pub mod oracle;
pub mod padic;
pub mod poly;
pub mod sample;
pub mod sturm;
pub mod upoly;
pub mod weil;
pub mod zassenhaus;
