//! Klimesh functionals `f_r`, power means `A_nu`, and the scanner deciding
//! strict `f_r` dominance for every real `r`.
//!
//! The scanner does not work on the raw gap `f_r(y) - f_r(x)`: for
//! probability vectors that gap tends to zero as `r -> 0` and `r -> 1`, so
//! its infimum over `r` is always zero. It works instead on
//!
//! ```text
//! s(r) = (ln sum y^r - ln sum x^r) / (r (r - 1))
//! ```
//!
//! which has the same sign as the gap for every `r` outside `{0, 1}`, is
//! analytic on the whole line, and takes the values `(f_0(y) - f_0(x)) / d`
//! and `f_1(y) - f_1(x)` at `r = 0` and `r = 1`.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scan::{self, RawScan, Refinement, Sample, ScanConfig};
use crate::vectors::{entropy, normalize_pair, DVector, ProbVector};
use crate::verdict::{Verdict, Witness};

/// A real number or `+-infinity`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub enum ExtendedReal {
    NegInfinity,
    Finite(f64),
    PosInfinity,
}

impl ExtendedReal {
    pub fn from_f64(v: f64) -> Self {
        if v == f64::INFINITY {
            ExtendedReal::PosInfinity
        } else if v == f64::NEG_INFINITY {
            ExtendedReal::NegInfinity
        } else {
            ExtendedReal::Finite(v)
        }
    }

    pub fn to_f64(self) -> f64 {
        match self {
            ExtendedReal::NegInfinity => f64::NEG_INFINITY,
            ExtendedReal::Finite(v) => v,
            ExtendedReal::PosInfinity => f64::INFINITY,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtendedReal::Finite(_))
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            ExtendedReal::Finite(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedReal::NegInfinity => f.write_str("-inf"),
            ExtendedReal::Finite(v) => write!(f, "{v}"),
            ExtendedReal::PosInfinity => f.write_str("+inf"),
        }
    }
}

impl Serialize for ExtendedReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtendedReal::Finite(v) => serializer.serialize_f64(*v),
            other => serializer.serialize_str(&other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

/// Sign of the gap beyond `pos_cutoff` (as `r -> +inf`) and below
/// `neg_cutoff` (as `r -> -inf`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TailSigns {
    pub pos: Sign,
    pub neg: Sign,
    pub pos_cutoff: f64,
    pub neg_cutoff: f64,
}

/// `ln sum x^r` over the positive entries, stable for any `r`.
fn log_power_sum(values: &[f64], r: f64) -> f64 {
    let logs = values.iter().filter(|&&v| v > 0.0).map(|v| v.ln());
    let pivot = logs
        .clone()
        .map(|l| r * l)
        .fold(f64::NEG_INFINITY, f64::max);
    if pivot == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    pivot + logs.map(|l| (r * l - pivot).exp()).sum::<f64>().ln()
}

/// The piecewise Klimesh functional `f_r(x)`.
pub fn klimesh_f(r: f64, x: &DVector) -> ExtendedReal {
    if r <= 0.0 && x.has_zero() {
        return ExtendedReal::PosInfinity;
    }
    let v = x.values();
    let value = if r == 1.0 {
        v.iter().filter(|&&a| a > 0.0).map(|&a| a * a.ln()).sum()
    } else if r == 0.0 {
        -v.iter().map(|a| a.ln()).sum::<f64>()
    } else if r > 0.0 && r < 1.0 {
        -log_power_sum(v, r)
    } else {
        log_power_sum(v, r)
    };
    ExtendedReal::from_f64(value)
}

/// Power mean `A_nu(x) = (sum x^nu / d)^(1/nu)`, geometric mean at `nu = 0`.
pub fn power_mean(nu: f64, x: &DVector) -> Result<f64> {
    if nu <= 0.0 && x.has_zero() {
        return Err(Error::Domain(format!(
            "power mean of order {nu} needs positive components"
        )));
    }
    let d = x.dim() as f64;
    if nu == 0.0 {
        let mean_log = x.values().iter().map(|v| v.ln()).sum::<f64>() / d;
        return Ok(mean_log.exp());
    }
    Ok(((log_power_sum(x.values(), nu) - d.ln()) / nu).exp())
}

/// `f_r(y) - f_r(x)` in extended-real arithmetic.
pub fn gap(r: f64, x: &DVector, y: &DVector) -> Result<ExtendedReal> {
    let fx = klimesh_f(r, x);
    let fy = klimesh_f(r, y);
    match (fy, fx) {
        (ExtendedReal::PosInfinity, ExtendedReal::PosInfinity) => Err(Error::UndefinedGap),
        (ExtendedReal::PosInfinity, _) => Ok(ExtendedReal::PosInfinity),
        (_, ExtendedReal::PosInfinity) => Ok(ExtendedReal::NegInfinity),
        (a, b) => Ok(ExtendedReal::from_f64(a.to_f64() - b.to_f64())),
    }
}

/// Sign and cutoff for `sum y^r - sum x^r` as `r -> +inf`, from the
/// descending views. After the common prefix, the first differing entries
/// `a` (of y) and `b` (of x) decide: with `m` entries left,
/// `a^r > m b^r` once `r > ln m / ln(a/b)`.
fn tail_pos(x_desc: &[f64], y_desc: &[f64]) -> (Sign, f64) {
    let d = x_desc.len();
    for k in 0..d {
        let (a, b) = (y_desc[k], x_desc[k]);
        if a == b {
            continue;
        }
        let m = (d - k) as f64;
        let (sign, hi, lo) = if a > b {
            (Sign::Positive, a, b)
        } else {
            (Sign::Negative, b, a)
        };
        let cutoff = if lo == 0.0 {
            0.0
        } else {
            m.ln() / (hi / lo).ln()
        };
        return (sign, cutoff.max(1.0));
    }
    (Sign::Zero, 1.0)
}

/// Mirror of [`tail_pos`] on the ascending views for `r -> -inf`, where the
/// smallest entries dominate.
fn tail_neg(x_asc: &[f64], y_asc: &[f64]) -> (Sign, f64) {
    let d = x_asc.len();
    for k in 0..d {
        let (a, b) = (y_asc[k], x_asc[k]);
        if a == b {
            continue;
        }
        let m = (d - k) as f64;
        let (sign, lo, hi) = if a < b {
            (Sign::Positive, a, b)
        } else {
            (Sign::Negative, b, a)
        };
        let cutoff = if lo == 0.0 {
            0.0
        } else {
            -m.ln() / (hi / lo).ln()
        };
        return (sign, cutoff.min(0.0));
    }
    (Sign::Zero, 0.0)
}

pub(crate) fn tails_unchecked(x: &DVector, y: &DVector) -> TailSigns {
    let (pos, pos_cutoff) = tail_pos(x.sorted_desc(), y.sorted_desc());
    let (neg, neg_cutoff) = tail_neg(x.sorted_asc(), y.sorted_asc());
    TailSigns {
        pos,
        neg,
        pos_cutoff,
        neg_cutoff,
    }
}

/// Asymptotic signs of `gap(r)` as `r -> +-inf`, with explicit cutoffs past
/// which the sign is guaranteed.
pub fn tail_signs(x: &DVector, y: &DVector) -> Result<TailSigns> {
    if !x.is_strictly_positive() || !y.is_strictly_positive() {
        return Err(Error::Domain(
            "tail analysis needs strictly positive vectors".into(),
        ));
    }
    if x.dim() != y.dim() {
        return Err(Error::Precondition("dimensions differ".into()));
    }
    Ok(tails_unchecked(x, y))
}

/// Positive entries of a probability vector with their logarithms.
#[derive(Debug, Clone)]
pub(crate) struct LogVec {
    vals: Vec<f64>,
    logs: Vec<f64>,
    zeros: usize,
}

impl LogVec {
    pub fn new(v: &DVector) -> Self {
        let vals: Vec<f64> = v.values().iter().copied().filter(|&a| a > 0.0).collect();
        let logs = vals.iter().map(|a| a.ln()).collect();
        Self {
            zeros: v.dim() - vals.len(),
            vals,
            logs,
        }
    }

    /// `ln sum v^r`, treating the total as exactly one.
    fn ln_power_sum(&self, r: f64) -> f64 {
        if r <= 0.0 && self.zeros > 0 {
            return f64::INFINITY;
        }
        if (r - 1.0).abs() <= 0.5 {
            // sum v^r = 1 + sum v (v^(r-1) - 1)
            let excess: f64 = self
                .vals
                .iter()
                .zip(&self.logs)
                .map(|(v, l)| v * ((r - 1.0) * l).exp_m1())
                .sum();
            return excess.ln_1p();
        }
        if r.abs() <= 0.5 {
            // sum v^r = m (1 + mean(v^r - 1))
            let m = self.vals.len() as f64;
            let excess = self.logs.iter().map(|l| (r * l).exp_m1()).sum::<f64>() / m;
            return m.ln() + excess.ln_1p();
        }
        let pivot = self
            .logs
            .iter()
            .map(|l| r * l)
            .fold(f64::NEG_INFINITY, f64::max);
        pivot
            + self
                .logs
                .iter()
                .map(|l| (r * l - pivot).exp())
                .sum::<f64>()
                .ln()
    }

    fn mean_log(&self) -> f64 {
        if self.zeros > 0 {
            return f64::NEG_INFINITY;
        }
        self.logs.iter().sum::<f64>() / self.logs.len() as f64
    }

    fn neg_entropy(&self) -> f64 {
        self.vals.iter().zip(&self.logs).map(|(v, l)| v * l).sum()
    }
}

/// The scanned objective `s(r)` for a pair of probability vectors.
#[derive(Debug, Clone)]
pub(crate) struct NormalizedGap {
    x: LogVec,
    y: LogVec,
}

impl NormalizedGap {
    pub fn new(x: &ProbVector, y: &ProbVector) -> Self {
        Self {
            x: LogVec::new(x),
            y: LogVec::new(y),
        }
    }

    pub fn at_zero(&self) -> f64 {
        match (self.x.zeros > 0, self.y.zeros > 0) {
            (false, false) => self.x.mean_log() - self.y.mean_log(),
            (false, true) => f64::INFINITY,
            (true, false) => f64::NEG_INFINITY,
            (true, true) => f64::NAN,
        }
    }

    pub fn at_one(&self) -> f64 {
        self.y.neg_entropy() - self.x.neg_entropy()
    }

    pub fn eval(&self, r: f64) -> f64 {
        if r == 0.0 {
            return self.at_zero();
        }
        if r == 1.0 {
            return self.at_one();
        }
        (self.y.ln_power_sum(r) - self.x.ln_power_sum(r)) / (r * (r - 1.0))
    }
}

/// `s(r)` for two probability vectors of equal dimension.
pub fn normalized_gap(r: f64, x: &ProbVector, y: &ProbVector) -> f64 {
    NormalizedGap::new(x, y).eval(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryGaps {
    /// `s(0) = (f_0(y) - f_0(x)) / d`.
    pub at_zero: f64,
    /// `s(1) = f_1(y) - f_1(x)`.
    pub at_one: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub verdict: Verdict,
    pub witness_r: Option<f64>,
    pub min_gap: f64,
    pub argmin_r: f64,
    pub tail_signs: TailSigns,
    pub window: [f64; 2],
    pub boundary: BoundaryGaps,
    pub refinements: Vec<Refinement>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub samples: Vec<Sample>,
}

/// Decides `min s > margin` (Holds), `< -margin` (Fails) or neither.
pub(crate) fn decide(
    raw: Option<&RawScan>,
    min: Sample,
    tails: &TailSigns,
    cfg: &ScanConfig,
) -> Verdict {
    let nan = raw.map_or(0, |r| r.nan_count);
    if min.gap < -cfg.margin_tol {
        return Verdict::Fails {
            witness: Witness::Parameter {
                r: min.r,
                value: min.gap,
            },
        };
    }
    let tails_ok = tails.pos == Sign::Positive && tails.neg == Sign::Positive;
    if min.gap > cfg.margin_tol && tails_ok && nan == 0 {
        return Verdict::Holds;
    }
    let reason = if nan > 0 {
        format!("{nan} samples could not be evaluated")
    } else {
        "minimum gap within the margin tolerance".to_string()
    };
    Verdict::Inconclusive {
        reason,
        min_gap: Some(min.gap),
        argmin_r: Some(min.r),
    }
}

/// Verdict from a negative tail sign. Rescaling can flip the sign of a tie
/// in the extreme entries, so the witness must still clear the margin.
pub(crate) fn tail_verdict(r: f64, value: f64, cfg: &ScanConfig) -> Verdict {
    if value < -cfg.margin_tol {
        Verdict::Fails {
            witness: Witness::Parameter { r, value },
        }
    } else {
        Verdict::Inconclusive {
            reason: "negative tail sign with a witness inside the margin tolerance".into(),
            min_gap: Some(value),
            argmin_r: Some(r),
        }
    }
}

/// Prepares a same-dimension pair of probability vectors.
pub(crate) fn prob_pair(x: &DVector, y: &DVector) -> Result<(ProbVector, ProbVector)> {
    let pair = normalize_pair(x, y);
    Ok((
        ProbVector::from_unnormalized(&pair.x.to_float())?,
        ProbVector::from_unnormalized(&pair.y.to_float())?,
    ))
}

/// Core of the f_r scans once the inputs are probability vectors.
pub(crate) fn scan_normalized_gap(
    x: &ProbVector,
    y: &ProbVector,
    cfg: &ScanConfig,
) -> Result<ScanReport> {
    cfg.validate()?;
    let objective = NormalizedGap::new(x, y);
    let tails = tails_unchecked(x, y);
    let boundary = BoundaryGaps {
        at_zero: objective.at_zero(),
        at_one: objective.at_one(),
    };
    let tail_witness = if tails.pos == Sign::Negative {
        Some(tails.pos_cutoff + 1.0)
    } else if tails.neg == Sign::Negative {
        Some(tails.neg_cutoff - 1.0)
    } else {
        None
    };
    if let Some(r) = tail_witness {
        let value = objective.eval(r);
        let verdict = tail_verdict(r, value, cfg);
        return Ok(ScanReport {
            witness_r: verdict.is_fails().then_some(r),
            verdict,
            min_gap: value,
            argmin_r: r,
            tail_signs: tails,
            window: [cfg.r_lo, cfg.r_hi],
            boundary,
            refinements: Vec::new(),
            samples: Vec::new(),
        });
    }
    let Some(window) = scan::window_for(cfg, tails.neg_cutoff, tails.pos_cutoff) else {
        return Ok(ScanReport {
            verdict: Verdict::inconclusive("tail cutoff lies beyond the maximum scan window"),
            witness_r: None,
            min_gap: f64::NAN,
            argmin_r: f64::NAN,
            tail_signs: tails,
            window: [cfg.r_lo, cfg.r_hi],
            boundary,
            refinements: Vec::new(),
            samples: Vec::new(),
        });
    };
    let raw = scan::scan(|r| objective.eval(r), window, cfg, &[0.0, 1.0]);
    let min = raw.min().unwrap_or(Sample {
        r: f64::NAN,
        gap: f64::NAN,
    });
    let verdict = decide(Some(&raw), min, &tails, cfg);
    Ok(ScanReport {
        witness_r: verdict.is_fails().then_some(min.r),
        verdict,
        min_gap: min.gap,
        argmin_r: min.r,
        tail_signs: tails,
        window: raw.window,
        boundary,
        refinements: raw.refinements,
        samples: if cfg.keep_samples {
            raw.samples
        } else {
            Vec::new()
        },
    })
}

/// Decides `f_r(x) < f_r(y)` for every real `r` (inputs are rescaled to
/// unit total first).
pub fn scan_strict_dominance(x: &DVector, y: &DVector, cfg: &ScanConfig) -> Result<ScanReport> {
    let pair = normalize_pair(x, y);
    if !pair.x.is_strictly_positive() {
        return Err(Error::Precondition("x must be strictly positive".into()));
    }
    if pair.x.is_permutation_of(&pair.y) {
        return Err(Error::Precondition(
            "x and y are rearrangements of each other".into(),
        ));
    }
    let (px, py) = prob_pair(&pair.x, &pair.y)?;
    scan_normalized_gap(&px, &py, cfg)
}

/// Outcome of one Turgut condition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Condition {
    pub holds: bool,
    /// Infimum estimate of the normalized margin for the condition.
    pub min_margin: f64,
    pub argmin: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TurgutConditions {
    /// `A_nu(x) > A_nu(y)` for all `nu < 1`.
    pub below_one: Condition,
    /// `A_nu(x) < A_nu(y)` for all `nu > 1`.
    pub above_one: Condition,
    /// `sigma(x) > sigma(y)`.
    pub entropy: Condition,
}

impl TurgutConditions {
    pub fn as_tuple(&self) -> (bool, bool, bool) {
        (
            self.below_one.holds,
            self.above_one.holds,
            self.entropy.holds,
        )
    }

    pub fn all(&self) -> bool {
        self.below_one.holds && self.above_one.holds && self.entropy.holds
    }
}

/// `ln A_nu(v)` up to the additive `-ln d` / `nu` term, split so that the
/// difference between two vectors cancels that term exactly.
fn ln_mean_power_excess(v: &LogVec, d: f64, nu: f64) -> f64 {
    if nu == 0.0 {
        return v.mean_log();
    }
    if nu < 0.0 && v.zeros > 0 {
        return f64::NEG_INFINITY;
    }
    if nu.abs() <= 0.5 {
        // mean v^nu = 1 + mean(v^nu - 1); zeros contribute -1 each
        let s = v.logs.iter().map(|l| (nu * l).exp_m1()).sum::<f64>() - v.zeros as f64;
        return (s / d).ln_1p() / nu;
    }
    let total = if (nu - 1.0).abs() <= 0.5 {
        v.vals
            .iter()
            .zip(&v.logs)
            .map(|(a, l)| a * ((nu - 1.0) * l).exp_m1())
            .sum::<f64>()
            .ln_1p()
    } else {
        let pivot = v
            .logs
            .iter()
            .map(|l| nu * l)
            .fold(f64::NEG_INFINITY, f64::max);
        pivot
            + v.logs
                .iter()
                .map(|l| (nu * l - pivot).exp())
                .sum::<f64>()
                .ln()
    };
    total / nu
}

/// `(ln A_nu(y) - ln A_nu(x)) / (nu - 1)`, positive exactly where the
/// relevant Turgut inequality holds.
fn turgut_objective(x: &LogVec, y: &LogVec, d: f64, nu: f64) -> f64 {
    if nu == 1.0 {
        return y.neg_entropy() - x.neg_entropy();
    }
    let diff = ln_mean_power_excess(y, d, nu) - ln_mean_power_excess(x, d, nu);
    if diff.is_nan() {
        return f64::NAN;
    }
    diff / (nu - 1.0)
}

/// Numerically checks Turgut's three strict inequalities.
pub fn turgut_conditions(x: &DVector, y: &DVector, cfg: &ScanConfig) -> Result<TurgutConditions> {
    cfg.validate()?;
    let pair = normalize_pair(x, y);
    if !pair.x.is_strictly_positive() {
        return Err(Error::Precondition("x must be strictly positive".into()));
    }
    if pair.x.is_permutation_of(&pair.y) {
        return Err(Error::Precondition(
            "x and y are rearrangements of each other".into(),
        ));
    }
    let (px, py) = prob_pair(&pair.x, &pair.y)?;
    let (lx, ly) = (LogVec::new(&px), LogVec::new(&py));
    let d = px.dim() as f64;

    let entropy_margin = entropy(&px) - entropy(&py);
    let entropy = Condition {
        holds: entropy_margin > cfg.margin_tol,
        min_margin: entropy_margin,
        argmin: 1.0,
    };

    let tails = tails_unchecked(&px, &py);
    let window = scan::window_for(cfg, tails.neg_cutoff, tails.pos_cutoff);
    let (below_one, above_one) = match window {
        None => {
            let unknown = Condition {
                holds: false,
                min_margin: f64::NAN,
                argmin: f64::NAN,
            };
            (unknown, unknown)
        }
        Some(window) => {
            let raw = scan::scan(
                |nu| turgut_objective(&lx, &ly, d, nu),
                window,
                cfg,
                &[0.0, 1.0],
            );
            let side = |keep: &dyn Fn(f64) -> bool, tail: Sign| {
                let m = raw.min_where(keep).unwrap_or(Sample {
                    r: f64::NAN,
                    gap: f64::NAN,
                });
                Condition {
                    holds: m.gap > cfg.margin_tol && tail == Sign::Positive && raw.nan_count == 0,
                    min_margin: m.gap,
                    argmin: m.r,
                }
            };
            (
                side(&|nu| nu <= 1.0, tails.neg),
                side(&|nu| nu >= 1.0, tails.pos),
            )
        }
    };
    Ok(TurgutConditions {
        below_one,
        above_one,
        entropy,
    })
}
