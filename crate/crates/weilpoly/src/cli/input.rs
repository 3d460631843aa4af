//! Polynomial and parameter input formats.
//!
//! Either a coefficient list, constant term first (`2,0,1` is `t² + 2`), or
//! the symmetric form `q=<p>^<n>; a=<a_1,...,a_g>`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use crate::poly::IntPoly;
use crate::weil::{weil_from_a, WeilParams};

/// A parse failure at a 0-based byte offset.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {}: {message}", .position + 1)]
pub struct InputError {
    pub position: usize,
    pub message: String,
}

fn err<T>(position: usize, message: impl Into<String>) -> Result<T, InputError> {
    Err(InputError {
        position,
        message: message.into(),
    })
}

/// Comma-separated integers starting at byte `base` of the full input.
fn parse_int_list(s: &str, base: usize) -> Result<Vec<BigInt>, InputError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in s.split(',') {
        let lead = piece.len() - piece.trim_start().len();
        let tok = piece.trim();
        let pos = base + offset + lead;
        if tok.is_empty() {
            return err(pos, "expected an integer");
        }
        match BigInt::from_str(tok) {
            Ok(v) => out.push(v),
            Err(_) => return err(pos, format!("`{tok}` is not an integer")),
        }
        offset += piece.len() + 1;
    }
    Ok(out)
}

/// `p^n` or a plain prime power, starting at byte `base`.
fn parse_q_at(s: &str, base: usize) -> Result<WeilParams, InputError> {
    let lead = s.len() - s.trim_start().len();
    let t = s.trim();
    let pos = base + lead;
    let num = |tok: &str, at: usize| -> Result<u64, InputError> {
        tok.parse::<u64>()
            .or_else(|_| err(at, format!("`{tok}` is not a non-negative integer")))
    };
    let params = match t.split_once('^') {
        Some((p, n)) => {
            let pv = num(p.trim(), pos)?;
            let nv = num(n.trim(), pos + p.len() + 1)?;
            let nv = u32::try_from(nv).or_else(|_| err(pos + p.len() + 1, "exponent too large"))?;
            WeilParams::new(pv, nv)
        }
        None => WeilParams::from_q(num(t, pos)?),
    };
    params.or_else(|e| err(pos, e.to_string()))
}

pub fn parse_q(s: &str) -> Result<WeilParams, InputError> {
    parse_q_at(s, 0)
}

/// Printed as `p^n`, or `p` when `n = 1`.
pub fn format_q(params: &WeilParams) -> String {
    if params.n() == 1 {
        params.p().to_string()
    } else {
        format!("{}^{}", params.p(), params.n())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolynomialInput {
    Coefficients(IntPoly),
    Symmetric { params: WeilParams, a: Vec<BigInt> },
}

impl PolynomialInput {
    pub fn poly(&self) -> IntPoly {
        match self {
            PolynomialInput::Coefficients(f) => f.clone(),
            PolynomialInput::Symmetric { params, a } => weil_from_a(a, &params.q_big()),
        }
    }

    pub fn params(&self) -> Option<&WeilParams> {
        match self {
            PolynomialInput::Coefficients(_) => None,
            PolynomialInput::Symmetric { params, .. } => Some(params),
        }
    }
}

impl FromStr for PolynomialInput {
    type Err = InputError;

    fn from_str(s: &str) -> Result<Self, InputError> {
        if s.trim().is_empty() {
            return err(0, "empty input");
        }
        if !s.trim_start().starts_with('q') {
            return Ok(PolynomialInput::Coefficients(IntPoly::new(parse_int_list(s, 0)?)));
        }
        let Some(semi) = s.find(';') else {
            return err(s.len(), "expected `;` after the q part");
        };
        let (qpart, rest) = (&s[..semi], &s[semi + 1..]);
        let Some(eq) = qpart.find('=') else {
            return err(qpart.len(), "expected `q=`");
        };
        if qpart[..eq].trim() != "q" {
            return err(0, "expected `q=`");
        }
        let params = parse_q_at(&qpart[eq + 1..], eq + 1)?;
        let abase = semi + 1;
        let Some(aeq) = rest.find('=') else {
            return err(abase + rest.len(), "expected `a=`");
        };
        if rest[..aeq].trim() != "a" {
            return err(abase, "expected `a=`");
        }
        let a = parse_int_list(&rest[aeq + 1..], abase + aeq + 1)?;
        Ok(PolynomialInput::Symmetric { params, a })
    }
}

impl fmt::Display for PolynomialInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolynomialInput::Coefficients(p) => write!(f, "{}", p.to_csv()),
            PolynomialInput::Symmetric { params, a } => {
                let list: Vec<String> = a.iter().map(|x| x.to_string()).collect();
                write!(f, "q={}^{}; a={}", params.p(), params.n(), list.join(","))
            }
        }
    }
}

/// An inclusive coefficient range `lo:hi`.
pub fn parse_range(s: &str, base: usize) -> Result<(i64, i64), InputError> {
    let Some((lo, hi)) = s.split_once(':') else {
        return err(base, "expected `lo:hi`");
    };
    let lo_v = lo
        .trim()
        .parse::<i64>()
        .or_else(|_| err(base, format!("`{}` is not an integer", lo.trim())))?;
    let hi_v = hi
        .trim()
        .parse::<i64>()
        .or_else(|_| err(base + lo.len() + 1, format!("`{}` is not an integer", hi.trim())))?;
    Ok((lo_v, hi_v))
}

/// One `lo:hi` for every coefficient, or a comma-separated list with one
/// range per coefficient.
pub fn parse_box(s: &str, g: usize) -> Result<Vec<(i64, i64)>, InputError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in s.split(',') {
        out.push(parse_range(piece, offset)?);
        offset += piece.len() + 1;
    }
    match out.len() {
        1 => Ok(vec![out[0]; g]),
        k if k == g => Ok(out),
        k => err(0, format!("{k} ranges given for {g} coefficients")),
    }
}
