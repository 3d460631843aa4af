//! Reconcile against the LMFDB isogeny-class lists.
//!
//! `cargo run --example lmfdb -- <cache-dir> [--allow-network]`. Without
//! the flag only cached responses are used and a cold cache reports
//! Skipped. The cache directory falls back to `$WEILPOLY_CACHE_DIR`, then
//! `.weilpoly-cache`.

use std::path::PathBuf;

use weilpoly::census::lmfdb::{lmfdb_reconcile, FetchPolicy, CACHE_ENV};
use weilpoly::weil::WeilParams;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let dir = args
        .iter()
        .find(|a| !a.starts_with("--"))
        .map(PathBuf::from)
        .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(".weilpoly-cache"));
    let policy = if args.iter().any(|a| a == "--allow-network") {
        FetchPolicy::AllowNetwork
    } else {
        FetchPolicy::CacheOnly
    };
    for (g, q) in [(1, 2), (1, 3), (2, 2), (2, 3)] {
        let params = WeilParams::from_q(q).expect("prime");
        match lmfdb_reconcile(&params, g, &dir, policy) {
            Ok(r) => println!(
                "g = {g}, q = {q}: {:?}, {} classes, {} mismatches{}",
                r.status,
                r.classes,
                r.mismatches.len(),
                r.skipped_reason.map(|s| format!(" ({s})")).unwrap_or_default()
            ),
            Err(e) => println!("g = {g}, q = {q}: error {e}"),
        }
    }
}
