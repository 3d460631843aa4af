//! The `weilpoly` command line.
//!
//! Exit status: 0 affirmative, 1 definite negative, 2 usage or parse
//! error, 3 inconclusive. Every command prints one JSON document carrying
//! `schema_version`, except `enumerate --format csv`.

pub mod input;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde::Serialize;

use crate::bounds12::{corollary_bounds, trivial_bounds, BoundsReport, Status};
use crate::cases::{polygon_case_id, CaseTable};
use crate::census::lmfdb::{lmfdb_reconcile, FetchPolicy, ReconcileStatus, CACHE_ENV};
use crate::census::{cross_check, enumerate_sharded, EnumerationSpec, Filters};
use crate::classify::{classify_with, ClassificationG7, Verdict};
use crate::fp::DEFAULT_SEED;
use crate::newton::{lattice_vertex_check, newton_polygon, NewtonPolygon};
use crate::padic::ProfileOptions;
use crate::poly::IntPoly;
use crate::weil::{a6, a_vector, is_weil, RealRootData, WeilParams};
use input::{format_q, parse_box, parse_q, InputError, PolynomialInput};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "weilpoly", version, about = "Exact checks for Weil polynomials")]
struct Cli {
    /// Seed for randomized polynomial splitting.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide the q-Weil predicate.
    CheckWeil(PolyArgs),
    /// Evaluate the degree-12 coefficient conditions.
    Bounds12(BoundsArgs),
    /// Classify a degree-14 polynomial against dimension-7 simple varieties.
    Classify14(PolyArgs),
    /// Newton polygon at p, with the case id when the degree is 14.
    Polygon(PolygonArgs),
    /// Enumerate a coefficient box.
    Enumerate(EnumerateArgs),
    /// Enumerate a box and check every applicable property.
    CrossCheck(BoxArgs),
    /// Reconcile against the LMFDB isogeny-class tables.
    Lmfdb(LmfdbArgs),
}

#[derive(Debug, Args)]
struct PolyArgs {
    /// q as p^n or a prime power; optional when the polynomial carries it.
    #[arg(long)]
    q: Option<String>,
    /// Coefficients constant term first, or `q=<p>^<n>; a=<a_1,...,a_g>`.
    #[arg(allow_hyphen_values = true)]
    poly: String,
}

#[derive(Debug, Args)]
struct BoundsArgs {
    /// q as p^n or a prime power; optional when the polynomial carries it.
    #[arg(long)]
    q: Option<String>,
    /// a_1..a_6, comma-separated.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "poly")]
    a: Option<String>,
    /// A degree-12 polynomial, in place of --a.
    #[arg(allow_hyphen_values = true)]
    poly: Option<String>,
}

#[derive(Debug, Args)]
struct PolygonArgs {
    /// The prime; defaults to the prime of --q or of the polynomial.
    #[arg(long)]
    p: Option<u64>,
    /// Needed for the lattice check and case id; defaults to q = p.
    #[arg(long)]
    q: Option<String>,
    /// Coefficients constant term first, or `q=<p>^<n>; a=<a_1,...,a_g>`.
    #[arg(allow_hyphen_values = true)]
    poly: String,
}

#[derive(Debug, Args)]
struct BoxArgs {
    /// Even degree 2g of the polynomials.
    #[arg(long)]
    degree: usize,
    /// q as p^n or a prime power.
    #[arg(long)]
    q: String,
    /// `lo:hi` for every coefficient or one range per coefficient;
    /// defaults to the trivial bounds.
    #[arg(long = "box", allow_hyphen_values = true)]
    range: Option<String>,
    /// Comma-separated subset of weil, irreducible, no-real-roots.
    #[arg(long)]
    filter: Option<String>,
    /// Refuse boxes with more candidates than this.
    #[arg(long)]
    cap: Option<u128>,
    /// Worker threads; the output does not depend on this.
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    #[command(flatten)]
    spec: BoxArgs,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write records here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct LmfdbArgs {
    /// Dimension of the isogeny classes.
    #[arg(long)]
    g: usize,
    /// q as p^n or a prime power.
    #[arg(long)]
    q: String,
    /// Defaults to $WEILPOLY_CACHE_DIR, then `.weilpoly-cache`.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Fetch pages missing from the cache.
    #[arg(long)]
    allow_network: bool,
}

/// A usage-level failure: message for standard error, exit 2.
struct Usage(String);

impl From<InputError> for Usage {
    fn from(e: InputError) -> Self {
        Usage(format!("parse error at {e}"))
    }
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema_version: u32,
    command: &'a str,
    #[serde(flatten)]
    body: T,
}

fn emit<T: Serialize>(out: &mut dyn Write, command: &str, body: T) -> std::io::Result<()> {
    let doc = Envelope {
        schema_version: SCHEMA_VERSION,
        command,
        body,
    };
    let text = serde_json::to_string_pretty(&doc).expect("outputs serialize");
    writeln!(out, "{text}")
}

/// Polynomial plus parameters, reconciling `--q` with the symmetric form.
fn poly_and_params(poly: &str, q: Option<&str>) -> Result<(PolynomialInput, WeilParams), Usage> {
    let input: PolynomialInput = poly.parse()?;
    let flag = q.map(parse_q).transpose()?;
    let params = match (input.params(), flag) {
        (Some(a), Some(b)) if *a != b => {
            return Err(Usage(format!(
                "--q {} disagrees with q={} in the polynomial",
                format_q(&b),
                format_q(a)
            )))
        }
        (Some(a), _) => *a,
        (None, Some(b)) => b,
        (None, None) => return Err(Usage("--q is required for a coefficient list".into())),
    };
    Ok((input, params))
}

fn strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

#[derive(Serialize)]
struct CheckWeilOut {
    input: String,
    q: u64,
    is_weil: bool,
    real_root: bool,
    real_roots: Vec<RealRootData>,
    companion_coefficients: Option<Vec<String>>,
}

fn cmd_check_weil(args: &PolyArgs, out: &mut dyn Write) -> Result<i32, Usage> {
    let (input, params) = poly_and_params(&args.poly, args.q.as_deref())?;
    let f = input.poly();
    let v = is_weil(&f, &params).map_err(|e| Usage(format!("not a candidate: {e}")))?;
    let code = if v.is_weil { EXIT_OK } else { EXIT_NEGATIVE };
    let body = CheckWeilOut {
        input: input.to_string(),
        q: params.q(),
        is_weil: v.is_weil,
        real_root: !v.real_roots.is_empty(),
        real_roots: v.real_roots,
        companion_coefficients: v.companion.map(|h| strings(h.coeffs())),
    };
    emit(out, "check-weil", body).map_err(io_usage)?;
    Ok(code)
}

fn io_usage(e: std::io::Error) -> Usage {
    Usage(format!("cannot write output: {e}"))
}

#[derive(Serialize)]
struct BoundsOut {
    q: u64,
    a: Vec<String>,
    is_weil: bool,
    has_real_root: bool,
    overall: Status,
    corollary: BoundsReport,
    trivial: BoundsReport,
}

fn cmd_bounds12(args: &BoundsArgs, out: &mut dyn Write) -> Result<i32, Usage> {
    let (a, params) = match (&args.a, &args.poly) {
        (Some(list), None) => {
            let params = parse_q(args.q.as_deref().ok_or_else(|| Usage("--q is required with --a".into()))?)?;
            let input: PolynomialInput = format!("q={}^{}; a={list}", params.p(), params.n()).parse()?;
            let PolynomialInput::Symmetric { a, .. } = input else {
                unreachable!("symmetric form parsed")
            };
            (a, params)
        }
        (None, Some(poly)) => {
            let (input, params) = poly_and_params(poly, args.q.as_deref())?;
            let f = input.poly();
            if f.degree() != 12 || !f.is_monic() {
                return Err(Usage(format!("expected a monic degree-12 polynomial, got degree {}", f.degree())));
            }
            (a_vector(&f), params)
        }
        _ => return Err(Usage("give either --a or a polynomial".into())),
    };
    let Some(a6v) = a6(&a) else {
        return Err(Usage(format!("expected 6 coefficients a_1..a_6, got {}", a.len())));
    };
    let f = crate::weil::weil_from_a(&a, &params.q_big());
    let v = is_weil(&f, &params).expect("symmetric monic input");
    let report = corollary_bounds(&a6v, &params);
    let overall = report.overall();
    let code = match overall {
        Status::Pass => EXIT_OK,
        Status::Fail => EXIT_NEGATIVE,
        Status::Indeterminate => EXIT_INCONCLUSIVE,
    };
    let body = BoundsOut {
        q: params.q(),
        a: strings(&a),
        is_weil: v.is_weil,
        has_real_root: !v.real_roots.is_empty(),
        overall,
        trivial: trivial_bounds(&a, &params),
        corollary: report,
    };
    emit(out, "bounds12", body).map_err(io_usage)?;
    Ok(code)
}

#[derive(Serialize)]
struct ClassifyOut {
    input: String,
    q: u64,
    classification: ClassificationG7,
}

fn classification_exit(c: &ClassificationG7) -> i32 {
    match &c.verdict {
        Verdict::Accepted { .. } | Verdict::PowerCase { accepted: true, .. } => EXIT_OK,
        Verdict::Inconclusive { .. }
        | Verdict::TableTateDisagreement { .. }
        | Verdict::TextAmbiguous { .. } => EXIT_INCONCLUSIVE,
        _ => EXIT_NEGATIVE,
    }
}

fn cmd_classify14(args: &PolyArgs, seed: u64, out: &mut dyn Write) -> Result<i32, Usage> {
    let (input, params) = poly_and_params(&args.poly, args.q.as_deref())?;
    let opts = ProfileOptions {
        seed,
        ..ProfileOptions::default()
    };
    let c = classify_with(CaseTable::builtin(), &input.poly(), &params, &opts);
    let code = classification_exit(&c);
    let body = ClassifyOut {
        input: input.to_string(),
        q: params.q(),
        classification: c,
    };
    emit(out, "classify14", body).map_err(io_usage)?;
    Ok(code)
}

#[derive(Serialize)]
struct PolygonOut {
    input: String,
    q: u64,
    polygon: NewtonPolygon,
    root_valuations: Vec<(String, usize)>,
    weil_symmetric: bool,
    lattice_ok: bool,
    case_id: Option<u8>,
}

fn cmd_polygon(args: &PolygonArgs, out: &mut dyn Write) -> Result<i32, Usage> {
    let input: PolynomialInput = args.poly.parse()?;
    let q = match (args.q.as_deref(), input.params()) {
        (None, None) => None,
        (q, _) => Some(poly_and_params(&args.poly, q)?.1),
    };
    let params = match (args.p, q) {
        (Some(p), Some(q)) if q.p() != p => {
            return Err(Usage(format!("--p {p} is not the prime of --q {}", format_q(&q))))
        }
        (_, Some(q)) => q,
        (Some(p), None) => WeilParams::new(p, 1).map_err(|e| Usage(e.to_string()))?,
        (None, None) => return Err(Usage("give --p or --q".into())),
    };
    let f: IntPoly = input.poly();
    let np = newton_polygon(&f, params.p()).map_err(|e| Usage(e.to_string()))?;
    let case_id = (np.degree() == 14)
        .then(|| polygon_case_id(&np, &params).ok().map(|c| c.case))
        .flatten();
    let body = PolygonOut {
        input: input.to_string(),
        q: params.q(),
        root_valuations: np
            .root_valuations()
            .into_iter()
            .map(|(v, l)| (v.to_string(), l))
            .collect(),
        weil_symmetric: np.is_weil_symmetric(params.n()),
        lattice_ok: lattice_vertex_check(&np, params.n()),
        case_id,
        polygon: np,
    };
    emit(out, "polygon", body).map_err(io_usage)?;
    Ok(EXIT_OK)
}

fn build_spec(args: &BoxArgs) -> Result<EnumerationSpec, Usage> {
    if args.degree == 0 || args.degree % 2 == 1 {
        return Err(Usage(format!("--degree must be positive and even, got {}", args.degree)));
    }
    let g = args.degree / 2;
    let params = parse_q(&args.q)?;
    let mut spec = match &args.range {
        Some(b) => EnumerationSpec {
            ranges: parse_box(b, g)?,
            ..EnumerationSpec::with_uniform_box(g, params, 0, 0)
        },
        None => EnumerationSpec::new(g, params).map_err(|e| Usage(e.to_string()))?,
    };
    let mut filters = Filters::default();
    for name in args.filter.iter().flat_map(|f| f.split(',')) {
        match name.trim() {
            "weil" => filters.weil_only = true,
            "irreducible" => filters.irreducible_only = true,
            "no-real-roots" => filters.no_real_roots = true,
            "" => {}
            other => return Err(Usage(format!("unknown filter `{other}`"))),
        }
    }
    spec.filters = filters;
    if let Some(cap) = args.cap {
        spec.record_cap = cap;
    }
    Ok(spec)
}

#[derive(Serialize)]
struct EnumerateOut<'a> {
    spec: &'a EnumerationSpec,
    count: usize,
    records: &'a [crate::census::CensusRecord],
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

fn status_name(s: &Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Indeterminate => "indeterminate",
    }
}

fn cmd_enumerate(args: &EnumerateArgs, out: &mut dyn Write) -> Result<i32, Usage> {
    let spec = build_spec(&args.spec)?;
    let records = enumerate_sharded(&spec, args.spec.threads).map_err(|e| Usage(e.to_string()))?;
    let mut buf: Vec<u8> = Vec::new();
    match args.format {
        Format::Json => emit(
            &mut buf,
            "enumerate",
            EnumerateOut {
                spec: &spec,
                count: records.len(),
                records: &records,
            },
        )
        .map_err(io_usage)?,
        Format::Csv => {
            let mut header: Vec<String> = (1..=spec.g).map(|i| format!("a{i}")).collect();
            header.extend(
                ["is_weil", "has_real_root", "irreducible", "bounds12", "classification", "case_id"]
                    .map(String::from),
            );
            writeln!(buf, "{}", header.join(",")).map_err(io_usage)?;
            for r in &records {
                let mut row: Vec<String> = r.a.iter().map(|x| x.to_string()).collect();
                row.push(r.is_weil.to_string());
                row.push(r.has_real_root.to_string());
                row.push(opt(&r.irreducible));
                row.push(r.bounds12.as_ref().map(status_name).unwrap_or_default().into());
                row.push(opt(&r.classification));
                row.push(opt(&r.case_id));
                writeln!(buf, "{}", row.join(",")).map_err(io_usage)?;
            }
        }
    }
    match &args.out {
        Some(path) => std::fs::write(path, &buf).map_err(|e| Usage(format!("cannot write {}: {e}", path.display())))?,
        None => out.write_all(&buf).map_err(io_usage)?,
    }
    Ok(EXIT_OK)
}

fn cmd_cross_check(args: &BoxArgs, out: &mut dyn Write) -> Result<i32, Usage> {
    let spec = build_spec(args)?;
    let report = cross_check(&spec).map_err(|e| Usage(e.to_string()))?;
    let code = if report.ok() { EXIT_OK } else { EXIT_NEGATIVE };
    emit(out, "cross-check", report).map_err(io_usage)?;
    Ok(code)
}

fn cmd_lmfdb(args: &LmfdbArgs, out: &mut dyn Write) -> Result<i32, Usage> {
    let params = parse_q(&args.q)?;
    let dir = args
        .cache_dir
        .clone()
        .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(".weilpoly-cache"));
    let policy = if args.allow_network {
        FetchPolicy::AllowNetwork
    } else {
        FetchPolicy::CacheOnly
    };
    let report = lmfdb_reconcile(&params, args.g, &dir, policy).map_err(|e| Usage(e.to_string()))?;
    let code = match report.status {
        ReconcileStatus::Ok | ReconcileStatus::Skipped => EXIT_OK,
        ReconcileStatus::Mismatches => EXIT_NEGATIVE,
    };
    emit(out, "lmfdb", report).map_err(io_usage)?;
    Ok(code)
}

/// Run the command line on `args` (including the program name) and return
/// the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::CheckWeil(a) => cmd_check_weil(a, out),
        Command::Bounds12(a) => cmd_bounds12(a, out),
        Command::Classify14(a) => cmd_classify14(a, cli.seed, out),
        Command::Polygon(a) => cmd_polygon(a, out),
        Command::Enumerate(a) => cmd_enumerate(a, out),
        Command::CrossCheck(a) => cmd_cross_check(a, out),
        Command::Lmfdb(a) => cmd_lmfdb(a, out),
    };
    match result {
        Ok(code) => code,
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("weilpoly").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    fn json(s: &str) -> serde_json::Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn check_weil_examples() {
        let (c, o, _) = call(&["check-weil", "--q", "2", "2,0,1"]);
        assert_eq!(c, 0);
        assert_eq!(json(&o)["is_weil"], true);
        let (c, o, _) = call(&["check-weil", "--q", "2", "2,3,1"]);
        assert_eq!(c, 1);
        assert_eq!(json(&o)["is_weil"], false);
        let (c, o, _) = call(&["check-weil", "--q", "2", "64,0,0,0,0,0,0,0,0,0,0,0,1"]);
        assert_eq!(c, 0);
        assert_eq!(json(&o)["schema_version"], 1);
    }

    #[test]
    fn usage_errors() {
        let (c, _, e) = call(&["check-weil", "--q", "2", "2,x,1"]);
        assert_eq!(c, 2);
        assert!(e.contains("column 3"), "{e}");
        assert_eq!(call(&["check-weil", "2,0,1"]).0, 2);
        assert_eq!(call(&["check-weil", "--q", "6", "2,0,1"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["check-weil", "--q", "4", "q=2^1; a=0"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn polygon_and_bounds() {
        let (c, o, _) = call(&["polygon", "--p", "2", "128,0,0,0,0,0,0,0,0,0,0,0,0,0,1"]);
        assert_eq!(c, 0);
        let v = json(&o);
        assert_eq!(v["polygon"]["vertices"], serde_json::json!([[0, 7], [14, 0]]));
        assert_eq!(v["polygon"]["segments"][0]["slope"], "-1/2");
        assert_eq!(v["case_id"], 1);
        let (c, o, _) = call(&["bounds12", "--q", "2", "--a", "0,0,0,0,0,0"]);
        assert_eq!(c, 0, "{o}");
        let v = json(&o);
        assert_eq!(v["corollary"]["conditions"].as_array().unwrap().len(), 9);
        assert_eq!(v["overall"], "pass");
    }

    #[test]
    fn enumerate_rows() {
        let (c, o, _) = call(&["enumerate", "--degree", "2", "--q", "3", "--box", "-4:4", "--filter", "weil"]);
        assert_eq!(c, 0);
        assert_eq!(o.lines().count(), 8);
        assert!(o.starts_with("a1,is_weil,"));
        let (c, _, e) = call(&["enumerate", "--degree", "12", "--q", "2"]);
        assert_eq!(c, 2);
        assert!(e.contains("candidates"), "{e}");
    }
}
