//! Command-line front end: vector parsing, relation checks, catalyst
//! search, generators and geometry reports.
//!
//! Exit codes: 0 holds / found / generated, 1 fails, 2 usage or input
//! error, 3 no catalyst up to the maximum dimension, 4 trumping prefilter
//! fails, 5 inconclusive.

use std::io::Write;

use catmaj_core::catalysis::{search_catalyst, SearchConfig};
use catmaj_core::families::{bennett05_pair, bennett_pair, midpoint_min_step, midpoint_sum};
use catmaj_core::geometry::{classify_extreme_point, in_p, in_s, in_t, rado_decompose};
use catmaj_core::relations::{
    integer_trump_certificate, majorize, power_majorize, submajorize, supermajorize, trumped,
};
use catmaj_core::{DVector, Error, Outcome, ScanConfig, Summary, Verdict, Witness};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Zero};
use serde::Serialize;

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_FOUND: i32 = 3;
pub const EXIT_PREFILTER: i32 = 4;
pub const EXIT_INCONCLUSIVE: i32 = 5;

#[derive(Debug, Parser)]
#[command(
    name = "catmaj",
    version,
    about = "Majorization, power majorization and trumping checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RelationArg {
    Majorize,
    Submajorize,
    Supermajorize,
    Power,
    Trump,
    Certificate,
}

#[derive(Debug, Args)]
struct Pair {
    /// First vector: "1 2 3", "[0.5, 0.5]" or @path.
    x: String,
    /// Second vector, same formats.
    y: String,
    /// Read decimals and p/q fractions as exact rationals.
    #[arg(long)]
    exact: bool,
}

#[derive(Debug, Args)]
struct ScanArgs {
    /// Margin below which a scanned minimum counts as undecided.
    #[arg(long)]
    tol: Option<f64>,
    /// Scan the symmetric window [-R, R].
    #[arg(long = "r-max")]
    r_max: Option<f64>,
    /// Number of grid points.
    #[arg(long)]
    grid: Option<usize>,
}

impl ScanArgs {
    fn config(&self) -> catmaj_core::Result<ScanConfig> {
        let mut cfg = ScanConfig::default();
        if let Some(r) = self.r_max {
            cfg = cfg.with_r_max(r);
        }
        if let Some(t) = self.tol {
            cfg.margin_tol = t;
        }
        if let Some(g) = self.grid {
            cfg.grid_points = g;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide a relation between two vectors.
    Check {
        #[arg(long, value_enum, default_value = "majorize")]
        relation: RelationArg,
        #[command(flatten)]
        pair: Pair,
        #[command(flatten)]
        scan: ScanArgs,
        #[arg(long)]
        json: bool,
    },
    /// Search for a catalyst z with x⊗z ≺ y⊗z.
    Catalyst {
        #[command(flatten)]
        pair: Pair,
        #[arg(long = "max-dim", default_value_t = 8)]
        max_dim: usize,
        #[arg(long, default_value_t = 64)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Generate integer pair families.
    Gen {
        #[command(subcommand)]
        family: GenCommand,
    },
    /// Midpoint sums M_n(t^p) on [a, b] and their monotonicity.
    Riemann {
        #[arg(long, allow_negative_numbers = true)]
        p: f64,
        #[arg(long = "n-max", default_value_t = 50)]
        n_max: usize,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
        b: f64,
        #[arg(long)]
        json: bool,
    },
    /// Membership, extreme points and convex decompositions.
    Geometry {
        #[command(subcommand)]
        query: GeometryCommand,
    },
}

#[derive(Debug, Subcommand)]
enum GenCommand {
    /// Trumped-but-not-majorized pair of index n.
    Bennett {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Majorized pair of index n from the non-example system.
    Nonexample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Subcommand)]
enum GeometryCommand {
    /// Membership of x in S(y), T(y) and P(y).
    Membership {
        #[command(flatten)]
        pair: Pair,
        #[command(flatten)]
        scan: ScanArgs,
        #[arg(long)]
        json: bool,
    },
    /// Extreme-point report for x in P(y), as JSON.
    Extreme {
        #[command(flatten)]
        pair: Pair,
        #[command(flatten)]
        scan: ScanArgs,
    },
    /// Convex combination of rearrangements of y equal to x.
    Decompose {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        json: bool,
    },
}

/// Failure of a command: message plus exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type CmdResult = std::result::Result<i32, Failure>;

/// Parses a decimal such as `12`, `0.25` or `1.5e-3` into an exact rational.
fn decimal_to_rational(token: &str) -> Option<BigRational> {
    let (mantissa, exponent) = match token.find(['e', 'E']) {
        Some(i) => (&token[..i], token[i + 1..].parse::<i32>().ok()?),
        None => (token, 0),
    };
    let mantissa = mantissa.strip_prefix('+').unwrap_or(mantissa);
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int}{frac}").parse().ok()?;
    let shift = exponent - frac.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    let scale = if shift >= 0 {
        ten.pow(shift)
    } else {
        BigRational::from_integer(BigInt::from(1)) / ten.pow(-shift)
    };
    Some(BigRational::from_integer(digits) * scale)
}

enum Entry {
    Exact(BigRational),
    Float(f64),
}

fn parse_token(token: &str, exact: bool) -> std::result::Result<Entry, String> {
    let bad = || format!("cannot parse vector entry {token:?}");
    if token.starts_with('-') {
        return Err(format!("negative entry {token:?}"));
    }
    if let Some((p, q)) = token.split_once('/') {
        let (p, q) = (
            decimal_to_rational(p).ok_or_else(bad)?,
            decimal_to_rational(q).ok_or_else(bad)?,
        );
        if q.is_zero() {
            return Err(format!("zero denominator in {token:?}"));
        }
        let value = p / q;
        return Ok(if exact {
            Entry::Exact(value)
        } else {
            Entry::Float(catmaj_core::vectors::rational_to_f64(&value))
        });
    }
    let is_integer = token
        .trim_start_matches('+')
        .chars()
        .all(|c| c.is_ascii_digit())
        && !token.trim_start_matches('+').is_empty();
    if is_integer || exact {
        if let Some(q) = decimal_to_rational(token) {
            return Ok(Entry::Exact(q));
        }
    }
    let value: f64 = token.parse().map_err(|_| bad())?;
    if !value.is_finite() {
        return Err(format!("non-finite entry {token:?}"));
    }
    if value < 0.0 {
        return Err(format!("negative entry {token:?}"));
    }
    Ok(Entry::Float(value))
}

/// Parses whitespace- or comma-separated numbers, or a JSON array.
///
/// Integer-only input is exact; with `exact`, decimals and `p/q` fractions
/// are exact as well. Anything else is a float vector.
pub fn parse_vector(text: &str, exact: bool) -> std::result::Result<DVector, String> {
    let text = text.trim();
    let tokens: Vec<String> = if text.starts_with('[') {
        let values: Vec<serde_json::Number> =
            serde_json::from_str(text).map_err(|e| format!("invalid JSON array: {e}"))?;
        values.iter().map(|n| n.to_string()).collect()
    } else {
        text.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(str::to_string)
            .collect()
    };
    if tokens.is_empty() {
        return Err("empty vector".into());
    }
    let entries = tokens
        .iter()
        .map(|t| parse_token(t, exact))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let all_exact = entries.iter().all(|e| matches!(e, Entry::Exact(_)));
    let result = if all_exact {
        DVector::from_rationals(
            entries
                .into_iter()
                .map(|e| match e {
                    Entry::Exact(q) => q,
                    Entry::Float(_) => unreachable!(),
                })
                .collect(),
        )
    } else {
        DVector::float(
            entries
                .into_iter()
                .map(|e| match e {
                    Entry::Exact(q) => catmaj_core::vectors::rational_to_f64(&q),
                    Entry::Float(v) => v,
                })
                .collect(),
        )
    };
    result.map_err(|e| e.to_string())
}

/// Reads `@path` arguments from disk, then parses.
fn load_vector(arg: &str, exact: bool) -> std::result::Result<DVector, Failure> {
    let text = match arg.strip_prefix('@') {
        Some(path) => {
            std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {path}: {e}")))?
        }
        None => arg.to_string(),
    };
    parse_vector(&text, exact).map_err(usage)
}

fn load_pair(pair: &Pair) -> std::result::Result<(DVector, DVector), Failure> {
    Ok((
        load_vector(&pair.x, pair.exact)?,
        load_vector(&pair.y, pair.exact)?,
    ))
}

fn exit_code(outcome: Outcome) -> i32 {
    match outcome {
        Outcome::Holds => EXIT_HOLDS,
        Outcome::Fails => EXIT_FAILS,
        Outcome::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn outcome_name(o: Outcome) -> &'static str {
    match o {
        Outcome::Holds => "holds",
        Outcome::Fails => "fails",
        Outcome::Inconclusive => "inconclusive",
    }
}

fn describe_witness(w: &Witness) -> String {
    match w {
        Witness::Prefix { k, deficit } => format!("prefix k={k} (deficit {deficit})"),
        Witness::Parameter { r, value } => format!("r={r} (value {value})"),
        Witness::Reason { reason } => reason.clone(),
    }
}

fn write_json(out: &mut dyn Write, value: &impl Serialize) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(value).expect("serializable report");
    writeln!(out, "{text}")
}

fn write_summary(out: &mut dyn Write, s: &Summary, verdict: &Verdict) -> std::io::Result<()> {
    writeln!(out, "relation: {}", s.relation.name())?;
    writeln!(out, "outcome: {}", outcome_name(s.outcome))?;
    if let Some(w) = &s.witness {
        writeln!(out, "witness: {}", describe_witness(w))?;
    }
    if let Verdict::Inconclusive { reason, .. } = verdict {
        writeln!(out, "reason: {reason}")?;
    }
    writeln!(out, "exact: {}", s.exact)
}

#[derive(Serialize)]
struct CheckOutput<'a, R: Serialize> {
    summary: &'a Summary,
    report: &'a R,
}

fn emit<R: Serialize>(
    out: &mut dyn Write,
    json: bool,
    summary: Summary,
    verdict: &Verdict,
    report: &R,
    extra: &[String],
) -> CmdResult {
    if json {
        write_json(
            out,
            &CheckOutput {
                summary: &summary,
                report,
            },
        )?;
    } else {
        write_summary(out, &summary, verdict)?;
        for line in extra {
            writeln!(out, "{line}")?;
        }
    }
    Ok(exit_code(summary.outcome))
}

fn check(
    relation: RelationArg,
    pair: &Pair,
    scan: &ScanArgs,
    json: bool,
    out: &mut dyn Write,
) -> CmdResult {
    let (x, y) = load_pair(pair)?;
    let cfg = scan.config()?;
    match relation {
        RelationArg::Majorize | RelationArg::Submajorize | RelationArg::Supermajorize => {
            let m = match relation {
                RelationArg::Majorize => majorize(&x, &y),
                RelationArg::Submajorize => submajorize(&x, &y),
                _ => supermajorize(&x, &y),
            };
            let mut extra = Vec::new();
            if let Some(k) = m.first_violation_k {
                extra.push(format!("first violated prefix: k={k}"));
            }
            if let Some(k) = m.ascending_flip_k {
                extra.push(format!("ascending flip: k={k}"));
            }
            emit(out, json, m.summary(), &m.verdict(), &m, &extra)
        }
        RelationArg::Power => {
            let p = power_majorize(&x, &y, &cfg)?;
            let extra = vec![
                format!("strict: {}", p.strict),
                format!("min gap: {} at p={}", p.min_gap, p.argmin_p),
            ];
            emit(out, json, p.summary(), &p.verdict, &p, &extra)
        }
        RelationArg::Trump => {
            let t = trumped(&x, &y, &cfg)?;
            let mut extra = vec![format!("route: {:?}", t.route).to_lowercase()];
            if let Some(s) = &t.scan {
                extra.push(format!("min gap: {} at r={}", s.min_gap, s.argmin_r));
            }
            emit(out, json, t.summary(), &t.verdict, &t, &extra)
        }
        RelationArg::Certificate => {
            let c = integer_trump_certificate(&x, &y, &cfg)?;
            let extra = vec![
                format!("products differ: {}", c.products_differ),
                format!("self-power products differ: {}", c.self_powers_differ),
            ];
            emit(out, json, c.summary(), &c.verdict, &c, &extra)
        }
    }
}

fn catalyst(pair: &Pair, cfg: SearchConfig, json: bool, out: &mut dyn Write) -> CmdResult {
    let (x, y) = load_pair(pair)?;
    let report = search_catalyst(&x, &y, &cfg)?;
    let code = if report.found {
        EXIT_HOLDS
    } else if report.prefilter_failed() {
        EXIT_PREFILTER
    } else {
        EXIT_NOT_FOUND
    };
    if json {
        write_json(out, &report)?;
        return Ok(code);
    }
    match (&report.catalyst, report.found_dim) {
        (Some(z), Some(dim)) => {
            writeln!(out, "catalyst found (dimension {dim}): {}", z.vector())?;
            writeln!(out, "exact recheck: {}", report.exact_recheck)?;
        }
        _ if report.prefilter_failed() => {
            writeln!(out, "no catalyst exists: x is not trumped by y")?;
            if let Some(w) = report.prefilter.verdict.witness() {
                writeln!(out, "witness: {}", describe_witness(w))?;
            }
        }
        _ => {
            writeln!(out, "no catalyst found up to dimension {}", cfg.max_dim)?;
            let best: Vec<String> = report
                .best_violation_per_dim
                .iter()
                .zip(&report.dim_tried)
                .map(|(v, d)| format!("{d}:{v:.3e}"))
                .collect();
            writeln!(out, "best violation per dimension: {}", best.join(" "))?;
        }
    }
    writeln!(
        out,
        "seed: {} (restarts run: {})",
        report.seed, report.seeds_used
    )?;
    Ok(code)
}

#[derive(Serialize)]
struct PairOutput<'a> {
    n: usize,
    x: &'a DVector,
    y: &'a DVector,
}

fn generated(n: usize, x: &DVector, y: &DVector, json: bool, out: &mut dyn Write) -> CmdResult {
    if json {
        write_json(out, &PairOutput { n, x, y })?;
    } else {
        writeln!(out, "{x}")?;
        writeln!(out, "{y}")?;
    }
    Ok(EXIT_HOLDS)
}

#[derive(Serialize)]
struct RiemannOutput {
    p: f64,
    a: f64,
    b: f64,
    sums: Vec<f64>,
    direction: &'static str,
    min_step: f64,
    monotone: bool,
}

fn riemann(p: f64, n_max: usize, a: f64, b: f64, json: bool, out: &mut dyn Write) -> CmdResult {
    let min_step = midpoint_min_step(p, n_max, a, b)?;
    let sums = (1..=n_max)
        .map(|n| midpoint_sum(p, n, a, b))
        .collect::<catmaj_core::Result<Vec<_>>>()?;
    let report = RiemannOutput {
        p,
        a,
        b,
        sums,
        direction: if p > 0.0 && p < 1.0 {
            "decreasing"
        } else {
            "increasing"
        },
        min_step,
        monotone: min_step > 1e-13,
    };
    if json {
        write_json(out, &report)?;
    } else {
        for (n, m) in report.sums.iter().enumerate() {
            writeln!(out, "{} {m:.17}", n + 1)?;
        }
        writeln!(out, "expected: strictly {}", report.direction)?;
        writeln!(
            out,
            "monotone: {} (smallest step {:e})",
            report.monotone, min_step
        )?;
    }
    Ok(if report.monotone {
        EXIT_HOLDS
    } else {
        EXIT_FAILS
    })
}

#[derive(Serialize)]
struct Membership {
    in_s: bool,
    in_t: Verdict,
    in_p: Verdict,
}

fn geometry(query: &GeometryCommand, out: &mut dyn Write) -> CmdResult {
    match query {
        GeometryCommand::Membership { pair, scan, json } => {
            let (x, y) = load_pair(pair)?;
            let cfg = scan.config()?;
            let m = Membership {
                in_s: in_s(&x, &y)?,
                in_t: in_t(&x, &y, &cfg)?,
                in_p: in_p(&x, &y, &cfg)?,
            };
            if *json {
                write_json(out, &m)?;
            } else {
                writeln!(out, "S(y): {}", if m.in_s { "holds" } else { "fails" })?;
                writeln!(out, "T(y): {}", outcome_name(m.in_t.outcome()))?;
                writeln!(out, "P(y): {}", outcome_name(m.in_p.outcome()))?;
            }
            Ok(EXIT_HOLDS)
        }
        GeometryCommand::Extreme { pair, scan } => {
            let (x, y) = load_pair(pair)?;
            let report = match classify_extreme_point(&x, &y, &scan.config()?) {
                Err(Error::NotInP(msg)) => {
                    return Err(Failure {
                        code: EXIT_FAILS,
                        message: msg,
                    })
                }
                other => other?,
            };
            write_json(out, &report)?;
            Ok(if report.classified_extreme {
                EXIT_HOLDS
            } else {
                EXIT_FAILS
            })
        }
        GeometryCommand::Decompose { pair, json } => {
            let (x, y) = load_pair(pair)?;
            let dec = match rado_decompose(&x, &y) {
                Err(Error::NotMajorized) => {
                    return Err(Failure {
                        code: EXIT_FAILS,
                        message: "x is not majorized by y".into(),
                    })
                }
                other => other?,
            };
            if *json {
                write_json(out, &dec)?;
            } else {
                for term in &dec.terms {
                    let perm: Vec<String> = term.permutation.iter().map(usize::to_string).collect();
                    writeln!(out, "{:.17} {}", term.weight, perm.join(" "))?;
                }
                writeln!(out, "reconstruction error: {:e}", dec.reconstruction_error)?;
            }
            Ok(EXIT_HOLDS)
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> CmdResult {
    match cli.command {
        Command::Check {
            relation,
            pair,
            scan,
            json,
        } => check(relation, &pair, &scan, json, out),
        Command::Catalyst {
            pair,
            max_dim,
            restarts,
            seed,
            json,
        } => {
            let cfg = SearchConfig {
                max_dim,
                restarts_per_dim: restarts,
                seed,
                ..SearchConfig::default()
            };
            catalyst(&pair, cfg, json, out)
        }
        Command::Gen { family } => match family {
            GenCommand::Bennett { n, json } => {
                let p = bennett_pair(n)?;
                generated(n, &p.x, &p.y, json, out)
            }
            GenCommand::Nonexample { n, json } => {
                let (x, y) = bennett05_pair(n)?;
                generated(n, &x, &y, json, out)
            }
        },
        Command::Riemann {
            p,
            n_max,
            a,
            b,
            json,
        } => riemann(p, n_max, a, b, json, out),
        Command::Geometry { query } => geometry(&query, out),
    }
}

/// Runs the CLI on `argv` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_HOLDS
            };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_exactly() {
        let v = parse_vector("1 2 3", false).unwrap();
        assert!(v.is_exact());
        assert_eq!(v.values(), &[1.0, 2.0, 3.0]);
    }

    #[test]
    fn parses_json_floats() {
        let v = parse_vector("[0.5, 0.5]", false).unwrap();
        assert!(!v.is_exact());
        assert_eq!(v.values(), &[0.5, 0.5]);
        assert!(parse_vector("[1, 2]", false).unwrap().is_exact());
    }

    #[test]
    fn exact_decimals_and_fractions() {
        let v = parse_vector("0.4, 1/10, 1.5e-1", true).unwrap();
        assert!(v.is_exact());
        assert_eq!(v.to_string(), "2/5 1/10 3/20");
        let f = parse_vector("1/4 0.75", false).unwrap();
        assert!(!f.is_exact());
        assert_eq!(f.values(), &[0.25, 0.75]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_vector("1 -2", false).is_err());
        assert!(parse_vector("1 inf", false).is_err());
        assert!(parse_vector("1 NaN", false).is_err());
        assert!(parse_vector("", false).is_err());
        assert!(parse_vector("1 x", false).is_err());
        assert!(parse_vector("1/0", true).is_err());
        assert!(parse_vector("[1, -2]", false).is_err());
    }

    #[test]
    fn decimal_conversion() {
        let q = decimal_to_rational("12.50e1").unwrap();
        assert_eq!(q, BigRational::from_integer(BigInt::from(125)));
        assert!(decimal_to_rational(".").is_none());
        assert!(decimal_to_rational("1.2.3").is_none());
    }
}
