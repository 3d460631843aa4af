//! Reconciliation against the isogeny-class tables of the LMFDB.
//!
//! Responses are cached one file per query URL. Without a warm cache and
//! without explicit permission to use the network the result is
//! `Skipped`, never a failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::padic::tate_condition;
use crate::poly::IntPoly;
use crate::weil::{is_weil, WeilParams};
use crate::zassenhaus::is_irreducible;

pub const API_BASE: &str = "https://www.lmfdb.org/api/av_fq_isog/";
/// Environment variable naming the default cache directory.
pub const CACHE_ENV: &str = "WEILPOLY_CACHE_DIR";
const MAX_PAGES: usize = 100;

#[derive(Debug, Error)]
pub enum LmfdbError {
    #[error("cache i/o on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed response from {url}: {msg}")]
    Format { url: String, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FetchPolicy {
    CacheOnly,
    AllowNetwork,
}

/// What is stored on disk for one query.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CacheEntry {
    pub url: String,
    /// Seconds since the Unix epoch.
    pub fetched_at: u64,
    pub body: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReconcileStatus {
    Ok,
    Mismatches,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub label: String,
    pub poly: Vec<i64>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LmfdbReport {
    pub g: usize,
    pub q: u64,
    pub status: ReconcileStatus,
    pub skipped_reason: Option<String>,
    pub classes: usize,
    /// Classes whose polynomial is irreducible, where the divisibility
    /// criterion was also checked.
    pub tate_checked: usize,
    pub mismatches: Vec<Mismatch>,
}

#[derive(Debug, Deserialize)]
struct Page {
    data: Vec<Row>,
    next: Option<String>,
}

#[derive(Debug, Deserialize)]
struct Row {
    label: String,
    poly: Vec<i64>,
}

pub fn query_url(g: usize, q: u64) -> String {
    format!("{API_BASE}?g={g}&q={q}&_format=json&_fields=label,poly")
}

/// File name derived from the query URL.
pub fn cache_path(dir: &Path, url: &str) -> PathBuf {
    let key: String = url
        .trim_start_matches("https://")
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect();
    dir.join(format!("{key}.json"))
}

fn read_cache(path: &Path) -> Result<Option<CacheEntry>, LmfdbError> {
    match fs::read_to_string(path) {
        Ok(s) => serde_json::from_str(&s).map(Some).map_err(|e| LmfdbError::Format {
            url: path.display().to_string(),
            msg: e.to_string(),
        }),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
        Err(source) => Err(LmfdbError::Io {
            path: path.to_path_buf(),
            source,
        }),
    }
}

pub fn write_cache(dir: &Path, entry: &CacheEntry) -> Result<(), LmfdbError> {
    let path = cache_path(dir, &entry.url);
    let io = |source| LmfdbError::Io {
        path: path.clone(),
        source,
    };
    fs::create_dir_all(dir).map_err(io)?;
    let text = serde_json::to_string_pretty(entry).expect("cache entries serialize");
    fs::write(&path, text).map_err(io)
}

fn fetch(url: &str) -> Result<String, String> {
    let agent: ureq::Agent = ureq::Agent::config_builder()
        .timeout_global(Some(Duration::from_secs(30)))
        .build()
        .into();
    let mut resp = agent.get(url).call().map_err(|e| e.to_string())?;
    resp.body_mut().read_to_string().map_err(|e| e.to_string())
}

/// Body for `url`, from the cache or, if allowed, the network.
/// The inner `Err` says why neither was available.
fn body_for(url: &str, dir: &Path, policy: FetchPolicy) -> Result<Result<String, String>, LmfdbError> {
    if let Some(entry) = read_cache(&cache_path(dir, url))? {
        return Ok(Ok(entry.body));
    }
    if policy == FetchPolicy::CacheOnly {
        return Ok(Err("cache is cold and network use was not allowed".into()));
    }
    match fetch(url) {
        Ok(body) => {
            let fetched_at = SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map_or(0, |d| d.as_secs());
            write_cache(
                dir,
                &CacheEntry {
                    url: url.into(),
                    fetched_at,
                    body: body.clone(),
                },
            )?;
            Ok(Ok(body))
        }
        Err(e) => Ok(Err(format!("network unavailable: {e}"))),
    }
}

/// Weil polynomial, constant term first, from either orientation of the
/// stored coefficient list.
pub fn weil_coefficients(poly: &[i64], g: usize, q: u64) -> Option<Vec<i64>> {
    let qg = (q as i128).checked_pow(g as u32)?;
    match (poly.first(), poly.last()) {
        (Some(&c0), Some(&1)) if c0 as i128 == qg => Some(poly.to_vec()),
        (Some(&1), Some(&cl)) if cl as i128 == qg => Some(poly.iter().rev().copied().collect()),
        _ => None,
    }
}

fn check_class(row: &Row, g: usize, params: &WeilParams) -> (Option<Mismatch>, bool) {
    let mismatch = |reason: &str| Mismatch {
        label: row.label.clone(),
        poly: row.poly.clone(),
        reason: reason.into(),
    };
    let Some(c) = weil_coefficients(&row.poly, g, params.q()) else {
        return (Some(mismatch("coefficient list is not a degree-2g Weil shape")), false);
    };
    let f = IntPoly::new(c.iter().map(|&x| BigInt::from(x)).collect());
    match is_weil(&f, params) {
        Ok(v) if v.is_weil => {}
        _ => return (Some(mismatch("fails the q-Weil predicate")), false),
    }
    if !is_irreducible(&f) {
        return (None, false);
    }
    match tate_condition(&f, params) {
        Ok(true) => (None, true),
        Ok(false) => (Some(mismatch("fails the divisibility criterion")), true),
        Err(e) => (Some(mismatch(&format!("profile error: {e}"))), true),
    }
}

pub fn lmfdb_reconcile(
    params: &WeilParams,
    g: usize,
    cache_dir: &Path,
    policy: FetchPolicy,
) -> Result<LmfdbReport, LmfdbError> {
    let mut report = LmfdbReport {
        g,
        q: params.q(),
        status: ReconcileStatus::Ok,
        skipped_reason: None,
        classes: 0,
        tate_checked: 0,
        mismatches: Vec::new(),
    };
    let mut url = query_url(g, params.q());
    for _ in 0..MAX_PAGES {
        let body = match body_for(&url, cache_dir, policy)? {
            Ok(b) => b,
            Err(reason) => {
                report.status = ReconcileStatus::Skipped;
                report.skipped_reason = Some(reason);
                report.classes = 0;
                report.tate_checked = 0;
                report.mismatches.clear();
                return Ok(report);
            }
        };
        let page: Page = serde_json::from_str(&body).map_err(|e| LmfdbError::Format {
            url: url.clone(),
            msg: e.to_string(),
        })?;
        for row in &page.data {
            report.classes += 1;
            let (m, checked) = check_class(row, g, params);
            report.tate_checked += usize::from(checked);
            report.mismatches.extend(m);
        }
        match page.next {
            Some(next) if !next.is_empty() && !page.data.is_empty() => {
                url = if next.starts_with("http") {
                    next
                } else {
                    format!("https://www.lmfdb.org{next}")
                };
            }
            _ => break,
        }
    }
    if !report.mismatches.is_empty() {
        report.status = ReconcileStatus::Mismatches;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orientation() {
        assert_eq!(weil_coefficients(&[1, -1, 2], 1, 2), Some(vec![2, -1, 1]));
        assert_eq!(weil_coefficients(&[2, -1, 1], 1, 2), Some(vec![2, -1, 1]));
        assert_eq!(weil_coefficients(&[3, 0, 1], 1, 2), None);
    }

    #[test]
    fn cold_cache_offline_is_skipped() {
        let dir = tempfile::tempdir().unwrap();
        let rep = lmfdb_reconcile(&WeilParams::from_q(2).unwrap(), 1, dir.path(), FetchPolicy::CacheOnly).unwrap();
        assert_eq!(rep.status, ReconcileStatus::Skipped);
        assert_eq!(rep.classes, 0);
    }

    #[test]
    fn warm_cache_is_checked() {
        let dir = tempfile::tempdir().unwrap();
        let url = query_url(1, 2);
        // the five elliptic isogeny classes over F_2, as L-polynomials
        let body = r#"{"data":[
            {"label":"1.2.ac","poly":[1,-2,2]},
            {"label":"1.2.ab","poly":[1,-1,2]},
            {"label":"1.2.a","poly":[1,0,2]},
            {"label":"1.2.b","poly":[1,1,2]},
            {"label":"1.2.c","poly":[1,2,2]}],"next":null}"#;
        write_cache(
            dir.path(),
            &CacheEntry {
                url,
                fetched_at: 0,
                body: body.into(),
            },
        )
        .unwrap();
        let rep = lmfdb_reconcile(&WeilParams::from_q(2).unwrap(), 1, dir.path(), FetchPolicy::CacheOnly).unwrap();
        assert_eq!(rep.status, ReconcileStatus::Ok, "{:?}", rep.mismatches);
        assert_eq!(rep.classes, 5);
        assert_eq!(rep.tate_checked, 5);
    }
}
