//! The 31 Newton polygon cases for degree-14 Weil polynomials.
//!
//! Each case is a polygon from `(0, 7n)` to `(14, 0)` whose root valuations
//! are symmetric under `v ↦ n - v` and whose vertex heights are multiples
//! of `n`. The table stores the polygon,
//! the valuation constraints and side conditions as printed, and a status
//! that marks records whose printed constraints differ from the polygon.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::arith::valuation;
use crate::newton::{NewtonPolygon, Vertex};
use crate::weil::WeilParams;

pub const TABLE_FORMAT: u32 = 1;
const DEGREE: usize = 14;
const HALF: usize = 7;

static BUILTIN_SOURCE: &str = include_str!("../data/g7_cases.txt");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CaseTableError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("unsupported table format {0}")]
    Format(u32),
    #[error("case {id}: {msg}")]
    Invalid { id: u8, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum CaseMatchError {
    #[error("expected a degree-14 polygon, got degree {0}")]
    NotDegree14(usize),
    #[error("polygon matches no case (nearest: {nearest:?})")]
    NoMatch { nearest: Vec<u8> },
    #[error("polygon matches several cases: {candidates:?}")]
    AmbiguousCase { candidates: Vec<u8> },
}

fn rational_as_string<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    AtLeast,
    Equal,
}

/// `v_p(a_k) ≥ value·n` or `v_p(a_k) = value·n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Constraint {
    pub k: usize,
    pub relation: Relation,
    #[serde(serialize_with = "rational_as_string")]
    pub value: BigRational,
}

impl Constraint {
    /// `v` is `v_p(a_k)`, `None` for `a_k = 0`.
    pub fn holds(&self, v: Option<u32>, n: u32) -> bool {
        let bound = &self.value * BigRational::from_integer(n.into());
        match (self.relation, v) {
            (Relation::AtLeast, None) => true,
            (Relation::Equal, None) => false,
            (Relation::AtLeast, Some(v)) => BigRational::from_integer(v.into()) >= bound,
            (Relation::Equal, Some(v)) => BigRational::from_integer(v.into()) == bound,
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.relation {
            Relation::AtLeast => ">=",
            Relation::Equal => "=",
        };
        write!(f, "a{}{}{}", self.k, op, self.value)
    }
}

/// Side conditions on the irreducible factors over `Q_p`. Valuations are in
/// units of `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SideCondition {
    NoRoot {
        #[serde(serialize_with = "rational_as_string")]
        valuation: BigRational,
    },
    NoDegree {
        degree: usize,
    },
    ExactlyDegree {
        degree: usize,
        count: usize,
    },
    AtMostDegree {
        degree: usize,
        count: usize,
    },
}

impl fmt::Display for SideCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SideCondition::NoRoot { valuation } => write!(f, "no-root {valuation}"),
            SideCondition::NoDegree { degree } => write!(f, "no-degree {degree}"),
            SideCondition::ExactlyDegree { degree, count } => {
                write!(f, "exactly-degree {degree} {count}")
            }
            SideCondition::AtMostDegree { degree, count } => {
                write!(f, "at-most-degree {degree} {count}")
            }
        }
    }
}

/// Degree and common root valuation (in units of `v_p(p) = 1`) of one
/// irreducible factor over `Q_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorShape {
    pub degree: usize,
    pub valuation: BigRational,
}

impl SideCondition {
    pub fn holds(&self, factors: &[FactorShape], n: u32) -> bool {
        let count = |d: usize| factors.iter().filter(|f| f.degree == d).count();
        match self {
            SideCondition::NoRoot { valuation } => {
                let v = valuation * BigRational::from_integer(n.into());
                !factors.iter().any(|f| f.degree == 1 && f.valuation == v)
            }
            SideCondition::NoDegree { degree } => count(*degree) == 0,
            SideCondition::ExactlyDegree { degree, count: k } => count(*degree) == *k,
            SideCondition::AtMostDegree { degree, count: k } => count(*degree) <= *k,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseStatus {
    Ok,
    Ambiguous,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseRecord {
    pub id: u8,
    /// `(multiplicity, root valuation in units of n)`, ascending valuation.
    pub polygon: Vec<(usize, BigRational)>,
    pub stated: Vec<Constraint>,
    pub require: Vec<SideCondition>,
    pub status: CaseStatus,
}

impl CaseRecord {
    /// Hull height above index `x` in units of `n`. The last vertex is
    /// `(14, 0)` and valuations ascend leftwards.
    pub fn height(&self, x: usize) -> BigRational {
        let mut h = BigRational::zero();
        let mut pos = DEGREE;
        for (len, v) in &self.polygon {
            let left = pos - len;
            if x >= left {
                return h + v * BigRational::from_integer(BigInt::from((pos - x) as u64));
            }
            h += v * BigRational::from_integer(BigInt::from(*len as u64));
            pos = left;
        }
        h
    }

    /// Vertex indices from right to left.
    pub fn vertex_indices(&self) -> Vec<usize> {
        let mut out = vec![DEGREE];
        let mut pos = DEGREE;
        for (len, _) in &self.polygon {
            pos -= len;
            out.push(pos);
        }
        out
    }

    /// Vertices `(index, height in units of n)` left to right.
    pub fn vertices(&self, n: u32) -> Vec<Vertex> {
        let mut v: Vec<Vertex> = self
            .vertex_indices()
            .into_iter()
            .map(|x| {
                let h = self.height(x) * BigRational::from_integer(n.into());
                (x, h.to_integer().to_u32().expect("vertex heights are integral"))
            })
            .collect();
        v.reverse();
        v
    }

    /// The constraints the polygon itself forces, read at `(14-k, v_p(a_k))`.
    pub fn canonical_constraints(&self) -> Vec<Constraint> {
        let verts = self.vertex_indices();
        (1..=HALF)
            .map(|k| {
                let x = DEGREE - k;
                Constraint {
                    k,
                    relation: if verts.contains(&x) {
                        Relation::Equal
                    } else {
                        Relation::AtLeast
                    },
                    value: self.height(x),
                }
            })
            .collect()
    }

    pub fn stated_matches_polygon(&self) -> bool {
        let mut stated = self.stated.clone();
        stated.sort_by_key(|c| c.k);
        stated == self.canonical_constraints()
    }

    /// Whether the valuations of `a_1..a_7` satisfy the printed constraints.
    pub fn stated_hold(&self, a: &[BigInt], params: &WeilParams) -> bool {
        self.stated
            .iter()
            .all(|c| c.holds(valuation(&a[c.k - 1], params.p()), params.n()))
    }

    /// The printed side conditions that fail on the given factor shapes.
    pub fn failed_conditions(&self, factors: &[FactorShape], n: u32) -> Vec<SideCondition> {
        self.require
            .iter()
            .filter(|c| !c.holds(factors, n))
            .cloned()
            .collect()
    }

    /// An a-vector whose polygon is this case: `a_k = p^(height·n)` at
    /// vertices and `a_k = 0` elsewhere.
    pub fn synthetic_a(&self, params: &WeilParams) -> Vec<BigInt> {
        let verts = self.vertex_indices();
        (1..=HALF)
            .map(|k| {
                let x = DEGREE - k;
                if verts.contains(&x) {
                    let h = self.height(x) * BigRational::from_integer(params.n().into());
                    let e = h.to_integer().to_u32().expect("vertex heights are integral");
                    BigInt::from(params.p()).pow(e)
                } else {
                    BigInt::zero()
                }
            })
            .collect()
    }

    fn validate(&self) -> Result<(), CaseTableError> {
        let err = |msg: &str| CaseTableError::Invalid {
            id: self.id,
            msg: msg.to_string(),
        };
        let total: usize = self.polygon.iter().map(|(l, _)| l).sum();
        if total != DEGREE {
            return Err(err("polygon lengths do not sum to 14"));
        }
        if self.polygon.windows(2).any(|w| w[0].1 >= w[1].1) {
            return Err(err("valuations must strictly ascend"));
        }
        let mirrored: Vec<(usize, BigRational)> = self
            .polygon
            .iter()
            .rev()
            .map(|(l, v)| (*l, BigRational::one() - v))
            .collect();
        if mirrored != self.polygon {
            return Err(err("polygon is not symmetric under v -> 1 - v"));
        }
        if self
            .polygon
            .iter()
            .any(|(l, v)| !(v * BigRational::from_integer(BigInt::from(*l as u64))).is_integer())
        {
            return Err(err("a vertex height is not a multiple of n"));
        }
        let mut ks: Vec<usize> = self.stated.iter().map(|c| c.k).collect();
        ks.sort_unstable();
        if ks != (1..=HALF).collect::<Vec<_>>() {
            return Err(err("stated constraints must cover a1..a7 once each"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseTable {
    pub format: u32,
    pub cases: Vec<CaseRecord>,
}

fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((a, b)) => {
            let (a, d) = (BigInt::from_str(a).ok()?, BigInt::from_str(b).ok()?);
            (!d.is_zero()).then(|| BigRational::new(a, d))
        }
        None => Some(BigRational::from_integer(BigInt::from_str(s).ok()?)),
    }
}

fn parse_constraint(tok: &str) -> Option<Constraint> {
    let rest = tok.strip_prefix('a')?;
    let (k, rel, val) = if let Some((k, v)) = rest.split_once(">=") {
        (k, Relation::AtLeast, v)
    } else {
        let (k, v) = rest.split_once('=')?;
        (k, Relation::Equal, v)
    };
    let k: usize = k.parse().ok()?;
    (1..=HALF).contains(&k).then_some(())?;
    Some(Constraint {
        k,
        relation: rel,
        value: parse_rational(val)?,
    })
}

fn parse_condition(words: &[&str]) -> Option<SideCondition> {
    let num = |s: &str| s.parse::<usize>().ok();
    match words {
        ["no-root", v] => Some(SideCondition::NoRoot {
            valuation: parse_rational(v)?,
        }),
        ["no-degree", d] => Some(SideCondition::NoDegree { degree: num(d)? }),
        ["exactly-degree", d, k] => Some(SideCondition::ExactlyDegree {
            degree: num(d)?,
            count: num(k)?,
        }),
        ["at-most-degree", d, k] => Some(SideCondition::AtMostDegree {
            degree: num(d)?,
            count: num(k)?,
        }),
        _ => None,
    }
}

#[derive(Default)]
struct Partial {
    id: Option<u8>,
    polygon: Option<Vec<(usize, BigRational)>>,
    stated: Option<Vec<Constraint>>,
    require: Vec<SideCondition>,
    status: Option<CaseStatus>,
}

impl CaseTable {
    pub fn parse(src: &str) -> Result<CaseTable, CaseTableError> {
        let mut format = None;
        let mut cases = Vec::new();
        let mut cur: Option<Partial> = None;
        for (idx, raw) in src.lines().enumerate() {
            let line = idx + 1;
            let syntax = |msg: &str| CaseTableError::Syntax {
                line,
                msg: msg.to_string(),
            };
            let text = raw.split('#').next().unwrap_or("").trim();
            if text.is_empty() {
                continue;
            }
            let words: Vec<&str> = text.split_whitespace().collect();
            match (words[0], cur.as_mut()) {
                ("format", None) => {
                    let v: u32 = words
                        .get(1)
                        .and_then(|w| w.parse().ok())
                        .ok_or_else(|| syntax("bad format line"))?;
                    if v != TABLE_FORMAT {
                        return Err(CaseTableError::Format(v));
                    }
                    format = Some(v);
                }
                ("case", None) => {
                    if format.is_none() {
                        return Err(syntax("format line must come first"));
                    }
                    let id = words
                        .get(1)
                        .and_then(|w| w.parse().ok())
                        .ok_or_else(|| syntax("bad case id"))?;
                    cur = Some(Partial {
                        id: Some(id),
                        ..Default::default()
                    });
                }
                ("polygon", Some(c)) => {
                    let segs = words[1..]
                        .iter()
                        .map(|w| {
                            let (l, v) = w.split_once(':')?;
                            Some((l.parse().ok()?, parse_rational(v)?))
                        })
                        .collect::<Option<Vec<_>>>()
                        .ok_or_else(|| syntax("bad polygon entry"))?;
                    c.polygon = Some(segs);
                }
                ("stated", Some(c)) => {
                    let cs = words[1..]
                        .iter()
                        .map(|w| parse_constraint(w))
                        .collect::<Option<Vec<_>>>()
                        .ok_or_else(|| syntax("bad constraint"))?;
                    c.stated = Some(cs);
                }
                ("require", Some(c)) => {
                    c.require
                        .push(parse_condition(&words[1..]).ok_or_else(|| syntax("bad condition"))?);
                }
                ("status", Some(c)) => {
                    c.status = Some(match words.get(1) {
                        Some(&"ok") => CaseStatus::Ok,
                        Some(&"ambiguous") => CaseStatus::Ambiguous,
                        _ => return Err(syntax("status must be ok or ambiguous")),
                    });
                }
                ("end", Some(_)) => {
                    let c = cur.take().expect("inside a record");
                    let rec = CaseRecord {
                        id: c.id.expect("set at case line"),
                        polygon: c.polygon.ok_or_else(|| syntax("missing polygon"))?,
                        stated: c.stated.ok_or_else(|| syntax("missing stated"))?,
                        require: c.require,
                        status: c.status.ok_or_else(|| syntax("missing status"))?,
                    };
                    rec.validate()?;
                    cases.push(rec);
                }
                _ => return Err(syntax(&format!("unexpected '{}'", words[0]))),
            }
        }
        if cur.is_some() {
            return Err(CaseTableError::Syntax {
                line: src.lines().count(),
                msg: "unterminated record".into(),
            });
        }
        let format = format.ok_or(CaseTableError::Syntax {
            line: 1,
            msg: "missing format line".into(),
        })?;
        Ok(CaseTable { format, cases })
    }

    /// The table shipped with the crate.
    pub fn builtin() -> &'static CaseTable {
        static TABLE: OnceLock<CaseTable> = OnceLock::new();
        TABLE.get_or_init(|| CaseTable::parse(BUILTIN_SOURCE).expect("shipped table parses"))
    }

    pub fn source() -> &'static str {
        BUILTIN_SOURCE
    }

    pub fn get(&self, id: u8) -> Option<&CaseRecord> {
        self.cases.iter().find(|c| c.id == id)
    }

    /// Ids whose printed valuation constraints the a-vector satisfies.
    pub fn stated_candidates(&self, a: &[BigInt], params: &WeilParams) -> Vec<u8> {
        self.cases
            .iter()
            .filter(|c| c.stated_hold(a, params))
            .map(|c| c.id)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolygonCaseId {
    pub case: u8,
    pub vertex_signature: Vec<Vertex>,
}

/// Root valuations of the polygon in units of `n`, ascending.
fn normalized(np: &NewtonPolygon, n: u32) -> Vec<(usize, BigRational)> {
    let n = BigRational::from_integer(n.into());
    np.root_valuations()
        .into_iter()
        .rev()
        .map(|(v, l)| (l, v / &n))
        .collect()
}

/// Heights at `0..=14` in units of `n`, for the nearest-case distance.
fn height_profile(segs: &[(usize, BigRational)]) -> Vec<BigRational> {
    let rec = CaseRecord {
        id: 0,
        polygon: segs.to_vec(),
        stated: Vec::new(),
        require: Vec::new(),
        status: CaseStatus::Ok,
    };
    (0..=DEGREE).map(|x| rec.height(x)).collect()
}

pub fn polygon_case_id_in(
    table: &CaseTable,
    np: &NewtonPolygon,
    params: &WeilParams,
) -> Result<PolygonCaseId, CaseMatchError> {
    if np.degree() != DEGREE || np.vertices.first().map(|v| v.0) != Some(0) {
        return Err(CaseMatchError::NotDegree14(np.degree()));
    }
    let segs = normalized(np, params.n());
    let hits: Vec<u8> = table
        .cases
        .iter()
        .filter(|c| c.polygon == segs)
        .map(|c| c.id)
        .collect();
    match hits.as_slice() {
        [id] => Ok(PolygonCaseId {
            case: *id,
            vertex_signature: np.vertices.clone(),
        }),
        [] => {
            let mine = height_profile(&segs);
            let dist: Vec<(BigRational, u8)> = table
                .cases
                .iter()
                .map(|c| {
                    let d = height_profile(&c.polygon)
                        .iter()
                        .zip(&mine)
                        .map(|(a, b)| (a - b).abs())
                        .fold(BigRational::zero(), |acc, x| acc + x);
                    (d, c.id)
                })
                .collect();
            let best = dist.iter().map(|d| d.0.clone()).min().unwrap_or_default();
            Err(CaseMatchError::NoMatch {
                nearest: dist.into_iter().filter(|d| d.0 == best).map(|d| d.1).collect(),
            })
        }
        _ => Err(CaseMatchError::AmbiguousCase { candidates: hits }),
    }
}

pub fn polygon_case_id(
    np: &NewtonPolygon,
    params: &WeilParams,
) -> Result<PolygonCaseId, CaseMatchError> {
    polygon_case_id_in(CaseTable::builtin(), np, params)
}

/// One factorization pattern where the printed side conditions and the
/// divisibility criterion disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditFinding {
    pub case: u8,
    pub n: u32,
    /// `(degree, valuation in units of n)` per factor.
    pub factors: Vec<(usize, String)>,
    pub printed: bool,
    pub tate: bool,
}

/// Partitions of `total` into parts that are multiples of `step`, parts
/// non-increasing.
fn partitions(total: usize, step: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, step: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        let mut part = max.min(rest) / step * step;
        while part >= step {
            cur.push(part);
            go(rest - part, part, step, cur, out);
            cur.pop();
            part -= step;
        }
    }
    let mut out = Vec::new();
    go(total, total, step, &mut Vec::new(), &mut out);
    out
}

/// Compare the printed side conditions of `case` with the criterion that
/// each factor's constant-term valuation is a multiple of `n`, over every
/// factor-degree pattern the polygon allows. A factor with roots of
/// valuation `v·n` has degree divisible by the denominator of `v·n`; the
/// factors on slope `v` and `1 - v` mirror each other.
pub fn audit_side_conditions(case: &CaseRecord, n: u32) -> Vec<AuditFinding> {
    let nn = BigRational::from_integer(n.into());
    let half = BigRational::new(1.into(), 2.into());
    // one entry per independent block: (valuation, length, mirrored)
    let blocks: Vec<(BigRational, usize, bool)> = case
        .polygon
        .iter()
        .filter(|(_, v)| *v <= half)
        .map(|(l, v)| (v.clone(), *l, *v != half))
        .collect();
    let options: Vec<Vec<Vec<usize>>> = blocks
        .iter()
        .map(|(v, l, _)| {
            let step = (v * &nn).denom().to_usize().expect("small denominator");
            partitions(*l, step)
        })
        .collect();
    let mut findings = Vec::new();
    let mut idx = vec![0usize; blocks.len()];
    if options.iter().any(|o| o.is_empty()) {
        return findings;
    }
    loop {
        let mut shapes = Vec::new();
        for (b, (v, _, mirrored)) in blocks.iter().enumerate() {
            for &d in &options[b][idx[b]] {
                shapes.push((d, v.clone()));
                if *mirrored {
                    shapes.push((d, BigRational::one() - v));
                }
            }
        }
        let factors: Vec<FactorShape> = shapes
            .iter()
            .map(|(d, v)| FactorShape {
                degree: *d,
                valuation: v * &nn,
            })
            .collect();
        let printed = case.require.iter().all(|c| c.holds(&factors, n));
        let tate = shapes
            .iter()
            .all(|(d, v)| (v * BigRational::from_integer(BigInt::from(*d as u64))).is_integer());
        if printed != tate {
            findings.push(AuditFinding {
                case: case.id,
                n,
                factors: shapes.iter().map(|(d, v)| (*d, v.to_string())).collect(),
                printed,
                tate,
            });
        }
        // odometer over the blocks
        let mut b = 0;
        loop {
            if b == blocks.len() {
                return findings;
            }
            idx[b] += 1;
            if idx[b] < options[b].len() {
                break;
            }
            idx[b] = 0;
            b += 1;
        }
    }
}

/// Residues of `n` that matter: every denominator in the table divides 420.
pub fn audit_exponents() -> impl Iterator<Item = u32> {
    1..=420u32
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newton::newton_polygon;
    use crate::weil::weil_from_a;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn table() -> &'static CaseTable {
        CaseTable::builtin()
    }

    #[test]
    fn builtin_parses_with_31_distinct_polygons() {
        let t = table();
        assert_eq!(t.format, 1);
        assert_eq!(t.cases.len(), 31);
        let ids: Vec<u8> = t.cases.iter().map(|c| c.id).collect();
        assert_eq!(ids, (1..=31).collect::<Vec<u8>>());
        for (i, a) in t.cases.iter().enumerate() {
            for b in &t.cases[i + 1..] {
                assert_ne!(a.polygon, b.polygon, "cases {} and {}", a.id, b.id);
            }
        }
    }

    /// Every symmetric lattice polygon is in the table: enumerate the
    /// half-polygons directly.
    #[test]
    fn table_is_complete() {
        // slopes below 1/2 with admissible lengths l (l·v integral, l ≤ 7)
        let mut singles: Vec<(BigRational, usize)> = Vec::new();
        for l in 1..=7usize {
            for num in 0..l {
                let v = r(num as i64, l as i64);
                if v < r(1, 2) {
                    singles.push((v, l));
                }
            }
        }
        singles.sort();
        singles.dedup();
        let mut count = 0;
        let m = singles.len();
        for mask in 0u32..(1 << m) {
            let chosen: Vec<&(BigRational, usize)> =
                (0..m).filter(|i| mask >> i & 1 == 1).map(|i| &singles[i]).collect();
            let mut vals: Vec<&BigRational> = chosen.iter().map(|c| &c.0).collect();
            vals.sort();
            vals.dedup();
            if vals.len() != chosen.len() {
                continue;
            }
            let total: usize = chosen.iter().map(|c| c.1).sum();
            if total > 7 {
                continue;
            }
            let mut poly: Vec<(usize, BigRational)> =
                chosen.iter().map(|(v, l)| (*l, v.clone())).collect();
            poly.sort_by(|a, b| a.1.cmp(&b.1));
            let mut full = poly.clone();
            if total < 7 {
                full.push((14 - 2 * total, r(1, 2)));
            }
            full.extend(poly.iter().rev().map(|(l, v)| (*l, BigRational::one() - v)));
            assert!(
                table().cases.iter().any(|c| c.polygon == full),
                "missing {full:?}"
            );
            count += 1;
        }
        assert_eq!(count, 31);
    }

    #[test]
    fn ambiguous_exactly_when_printed_constraints_differ() {
        let mismatched: Vec<u8> = table()
            .cases
            .iter()
            .filter(|c| !c.stated_matches_polygon())
            .map(|c| c.id)
            .collect();
        let flagged: Vec<u8> = table()
            .cases
            .iter()
            .filter(|c| c.status == CaseStatus::Ambiguous)
            .map(|c| c.id)
            .collect();
        assert_eq!(mismatched, flagged);
        assert_eq!(mismatched, vec![10, 11, 17, 21, 22, 23, 24, 25, 26, 27, 28, 29, 30, 31]);
    }

    #[test]
    fn synthetic_vectors_round_trip() {
        for q in [2u64, 3, 4, 8, 9, 27, 32, 64, 128, 729] {
            let params = WeilParams::from_q(q).unwrap();
            for c in &table().cases {
                let a = c.synthetic_a(&params);
                let f = weil_from_a(&a, &params.q_big());
                let np = newton_polygon(&f, params.p()).unwrap();
                let id = polygon_case_id(&np, &params).unwrap();
                assert_eq!(id.case, c.id, "q = {q}");
                assert_eq!(np.vertices, c.vertices(params.n()));
                if c.status == CaseStatus::Ok {
                    assert!(c.stated_hold(&a, &params), "case {} q = {q}", c.id);
                }
            }
        }
    }

    #[test]
    fn spec_examples() {
        let params = WeilParams::from_q(2).unwrap();
        let mut a = vec![BigInt::zero(); 7];
        let f = weil_from_a(&a, &params.q_big());
        let np = newton_polygon(&f, 2).unwrap();
        assert_eq!(polygon_case_id(&np, &params).unwrap().case, 1);
        a[6] = BigInt::one();
        let np = newton_polygon(&weil_from_a(&a, &params.q_big()), 2).unwrap();
        assert_eq!(np.vertices, vec![(0, 7), (7, 0), (14, 0)]);
        assert_eq!(polygon_case_id(&np, &params).unwrap().case, 28);
        let mut a = vec![BigInt::zero(); 7];
        a[0] = BigInt::one();
        let np = newton_polygon(&weil_from_a(&a, &params.q_big()), 2).unwrap();
        assert_eq!(np.vertices, vec![(0, 7), (1, 6), (13, 0), (14, 0)]);
        assert_eq!(polygon_case_id(&np, &params).unwrap().case, 2);
    }

    #[test]
    fn non_lattice_polygon_has_no_case() {
        // q = 4, a_7 = 2: vertex (7,1) at odd height
        let params = WeilParams::from_q(4).unwrap();
        let mut a = vec![BigInt::zero(); 7];
        a[6] = BigInt::from(2);
        let np = newton_polygon(&weil_from_a(&a, &params.q_big()), 2).unwrap();
        match polygon_case_id(&np, &params) {
            Err(CaseMatchError::NoMatch { nearest }) => assert!(!nearest.is_empty()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn parser_errors_carry_positions() {
        let bad = "format 1\ncase 1\npolygon 14:1/2\nstated a1>=1/2 a9>=1\n";
        assert!(matches!(
            CaseTable::parse(bad),
            Err(CaseTableError::Syntax { line: 4, .. })
        ));
        assert_eq!(CaseTable::parse("format 2\n"), Err(CaseTableError::Format(2)));
        let asym = "format 1\ncase 1\npolygon 1:0 13:1/2\nstated a1=0 a2>=0 a3>=0 a4>=0 a5>=0 a6>=0 a7>=0\nstatus ok\nend\n";
        assert!(matches!(CaseTable::parse(asym), Err(CaseTableError::Invalid { id: 1, .. })));
    }

    #[test]
    fn audit_partitions() {
        assert_eq!(partitions(4, 1).len(), 5);
        assert_eq!(partitions(6, 3), vec![vec![6], vec![3, 3]]);
        assert!(partitions(3, 2).is_empty());
    }
}
