//! Relation checks: majorization and its weak variants, power
//! majorization, trumping, and the exact integer trumping certificate.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::functionals::{
    self, prob_pair, scan_normalized_gap, tails_unchecked, BoundaryGaps, ScanReport, Sign,
};
use crate::scan::{self, Sample, ScanConfig};
use crate::vectors::{normalize_pair, rational_to_f64, DVector, ProbVector};
use crate::verdict::{Relation, Summary, Verdict, Witness};

/// Relative tolerance on partial sums in float mode.
pub const PARTIAL_SUM_RTOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MajorizationVerdict {
    pub relation: Relation,
    pub holds: bool,
    /// 1-based index of the first violated inequality.
    pub first_violation_k: Option<usize>,
    /// 1-based index where the ascending inequalities first flip direction.
    pub ascending_flip_k: Option<usize>,
    /// `sum_k y_desc - sum_k x_desc` for each k.
    pub margins: Vec<f64>,
    /// `sum_k x_asc - sum_k y_asc` for each k.
    pub ascending_margins: Vec<f64>,
    pub padded: bool,
    pub exact: bool,
}

impl MajorizationVerdict {
    pub fn verdict(&self) -> Verdict {
        match self.first_violation_k {
            None => Verdict::Holds,
            Some(k) => {
                let deficit = if self.relation == Relation::Supermajorize {
                    self.ascending_margins[k - 1]
                } else {
                    self.margins[k - 1]
                };
                Verdict::Fails {
                    witness: Witness::Prefix { k, deficit },
                }
            }
        }
    }

    pub fn summary(&self) -> Summary {
        let verdict = self.verdict();
        Summary {
            relation: self.relation,
            outcome: verdict.outcome(),
            witness: verdict.witness().cloned(),
            margins: self.margins.clone(),
            exact: self.exact,
        }
    }
}

struct Prefixes {
    desc: Vec<f64>,
    desc_sign: Vec<Ordering>,
    asc: Vec<f64>,
    asc_sign: Vec<Ordering>,
    exact: bool,
}

fn prefixes(x: &DVector, y: &DVector) -> Prefixes {
    let d = x.dim();
    if let (Some(xe), Some(ye)) = (x.exact_sorted_desc(), y.exact_sorted_desc()) {
        let mut desc = Vec::with_capacity(d);
        let mut acc = BigRational::zero();
        for k in 0..d {
            acc += &ye[k] - &xe[k];
            desc.push(acc.clone());
        }
        let mut asc = Vec::with_capacity(d);
        let mut acc = BigRational::zero();
        for k in (0..d).rev() {
            acc += &xe[k] - &ye[k];
            asc.push(acc.clone());
        }
        let sign = |q: &BigRational| q.cmp(&BigRational::zero());
        return Prefixes {
            desc_sign: desc.iter().map(sign).collect(),
            asc_sign: asc.iter().map(sign).collect(),
            desc: desc.iter().map(rational_to_f64).collect(),
            asc: asc.iter().map(rational_to_f64).collect(),
            exact: true,
        };
    }
    let tol = PARTIAL_SUM_RTOL * x.sum().max(y.sum()).max(f64::MIN_POSITIVE);
    let running = |a: &[f64], b: &[f64]| {
        a.iter()
            .zip(b)
            .scan((0.0, 0.0), |(sa, sb), (p, q)| {
                *sa += p;
                *sb += q;
                Some(*sa - *sb)
            })
            .collect::<Vec<f64>>()
    };
    let desc = running(y.sorted_desc(), x.sorted_desc());
    let asc = running(x.sorted_asc(), y.sorted_asc());
    let sign = |m: &f64| {
        if *m > tol {
            Ordering::Greater
        } else if *m < -tol {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    };
    Prefixes {
        desc_sign: desc.iter().map(sign).collect(),
        asc_sign: asc.iter().map(sign).collect(),
        desc,
        asc,
        exact: false,
    }
}

fn first_less(signs: &[Ordering]) -> Option<usize> {
    signs
        .iter()
        .position(|s| *s == Ordering::Less)
        .map(|i| i + 1)
}

fn prefix_check(x: &DVector, y: &DVector, relation: Relation) -> MajorizationVerdict {
    let pair = normalize_pair(x, y);
    let p = prefixes(&pair.x, &pair.y);
    let d = pair.x.dim();
    let first_violation_k = match relation {
        Relation::Majorize => first_less(&p.desc_sign)
            .or_else(|| (p.desc_sign[d - 1] != Ordering::Equal).then_some(d)),
        Relation::Submajorize => first_less(&p.desc_sign),
        Relation::Supermajorize => first_less(&p.asc_sign),
        other => unreachable!("{other:?} is not a prefix relation"),
    };
    MajorizationVerdict {
        relation,
        holds: first_violation_k.is_none(),
        first_violation_k,
        ascending_flip_k: first_less(&p.asc_sign),
        margins: p.desc,
        ascending_margins: p.asc,
        padded: pair.padded,
        exact: p.exact,
    }
}

/// `x ≺ y`: descending prefix sums of x bounded by those of y, equal totals.
pub fn majorize(x: &DVector, y: &DVector) -> MajorizationVerdict {
    prefix_check(x, y, Relation::Majorize)
}

/// `x ≺_w y`: descending prefix sums only.
pub fn submajorize(x: &DVector, y: &DVector) -> MajorizationVerdict {
    prefix_check(x, y, Relation::Submajorize)
}

/// `x ≺^w y`: ascending prefix sums of x dominate those of y.
pub fn supermajorize(x: &DVector, y: &DVector) -> MajorizationVerdict {
    prefix_check(x, y, Relation::Supermajorize)
}

/// Equal totals, exactly in exact mode, else to relative 1e-12.
pub fn equal_totals(x: &DVector, y: &DVector) -> bool {
    match (x.exact_sum(), y.exact_sum()) {
        (Some(a), Some(b)) => a == b,
        _ => {
            let (a, b) = (x.sum(), y.sum());
            (a - b).abs() <= PARTIAL_SUM_RTOL * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PowerRoute {
    /// Power sums `sum y^p - sum x^p` scanned directly.
    PowerSums,
    /// Non-strict dominance of the Klimesh functionals.
    Klimesh,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerVerdict {
    pub verdict: Verdict,
    /// Every inequality off `p in {0, 1}` is strict (and the margin is
    /// clear of the tolerance).
    pub strict: bool,
    pub boundary_equalities: BoundaryGaps,
    pub min_gap: f64,
    pub argmin_p: f64,
    pub route: PowerRoute,
}

impl PowerVerdict {
    pub fn summary(&self) -> Summary {
        Summary {
            relation: Relation::Power,
            outcome: self.verdict.outcome(),
            witness: self.verdict.witness().cloned(),
            margins: vec![self.min_gap],
            exact: false,
        }
    }

    fn trivial(route: PowerRoute, verdict: Verdict, at_one: f64) -> Self {
        Self {
            verdict,
            strict: false,
            boundary_equalities: BoundaryGaps {
                at_zero: 0.0,
                at_one,
            },
            min_gap: 0.0,
            argmin_p: 1.0,
            route,
        }
    }
}

/// `(sum y^p - sum x^p) / (p (p - 1) max(sum x^p, sum y^p))` for
/// probability vectors: non-negative everywhere exactly when `x` is power
/// majorized by `y`, with continuous values at `p = 0, 1`.
struct PowerSumGap {
    x: Vec<f64>,
    y: Vec<f64>,
    lx: Vec<f64>,
    ly: Vec<f64>,
}

impl PowerSumGap {
    fn new(x: &ProbVector, y: &ProbVector) -> Self {
        let logs = |v: &[f64]| v.iter().map(|a| a.ln()).collect::<Vec<_>>();
        Self {
            x: x.values().to_vec(),
            y: y.values().to_vec(),
            lx: logs(x.values()),
            ly: logs(y.values()),
        }
    }

    fn eval(&self, p: f64) -> f64 {
        let d = self.x.len() as f64;
        if p == 0.0 {
            return (self.lx.iter().sum::<f64>() - self.ly.iter().sum::<f64>()) / d;
        }
        if p == 1.0 {
            let s = |v: &[f64], l: &[f64]| v.iter().zip(l).map(|(a, b)| a * b).sum::<f64>();
            return s(&self.y, &self.ly) - s(&self.x, &self.lx);
        }
        let (num, scale) = if p.abs() <= 0.5 {
            let e = |l: &[f64]| l.iter().map(|b| (p * b).exp_m1()).sum::<f64>();
            let (ex, ey) = (e(&self.lx), e(&self.ly));
            (ey - ex, d + ex.max(ey))
        } else if (p - 1.0).abs() <= 0.5 {
            let e = |v: &[f64], l: &[f64]| {
                v.iter()
                    .zip(l)
                    .map(|(a, b)| a * ((p - 1.0) * b).exp_m1())
                    .sum::<f64>()
            };
            let (ex, ey) = (e(&self.x, &self.lx), e(&self.y, &self.ly));
            (ey - ex, 1.0 + ex.max(ey))
        } else {
            let k = self
                .lx
                .iter()
                .chain(&self.ly)
                .map(|b| p * b)
                .fold(f64::NEG_INFINITY, f64::max);
            let e = |l: &[f64]| l.iter().map(|b| (p * b - k).exp()).sum::<f64>();
            let (ex, ey) = (e(&self.lx), e(&self.ly));
            (ey - ex, ex.max(ey))
        };
        num / (p * (p - 1.0) * scale)
    }
}

enum PowerPrep {
    Done(PowerVerdict),
    Scan(ProbVector, ProbVector),
}

fn power_prepare(
    x: &DVector,
    y: &DVector,
    cfg: &ScanConfig,
    route: PowerRoute,
) -> Result<PowerPrep> {
    cfg.validate()?;
    let pair = normalize_pair(x, y);
    if !pair.x.is_strictly_positive() || !pair.y.is_strictly_positive() {
        return Err(Error::Precondition(
            "power majorization needs strictly positive components".into(),
        ));
    }
    if pair.x.is_permutation_of(&pair.y) {
        return Ok(PowerPrep::Done(PowerVerdict::trivial(
            route,
            Verdict::Holds,
            0.0,
        )));
    }
    if !equal_totals(&pair.x, &pair.y) {
        let value = pair.y.sum() - pair.x.sum();
        let verdict = Verdict::Fails {
            witness: Witness::Parameter { r: 1.0, value },
        };
        return Ok(PowerPrep::Done(PowerVerdict::trivial(
            route, verdict, value,
        )));
    }
    let (px, py) = prob_pair(&pair.x, &pair.y)?;
    Ok(PowerPrep::Scan(px, py))
}

/// Decides `x ⪯_p y` by scanning the power sums over all real `p`.
pub fn power_majorize(x: &DVector, y: &DVector, cfg: &ScanConfig) -> Result<PowerVerdict> {
    let (px, py) = match power_prepare(x, y, cfg, PowerRoute::PowerSums)? {
        PowerPrep::Done(v) => return Ok(v),
        PowerPrep::Scan(px, py) => (px, py),
    };
    let objective = PowerSumGap::new(&px, &py);
    let boundary = BoundaryGaps {
        at_zero: objective.eval(0.0),
        at_one: objective.eval(1.0),
    };
    let tails = tails_unchecked(&px, &py);
    let tail_witness = if tails.pos == Sign::Negative {
        Some(tails.pos_cutoff + 1.0)
    } else if tails.neg == Sign::Negative {
        Some(tails.neg_cutoff - 1.0)
    } else {
        None
    };
    let (verdict, min) = if let Some(p) = tail_witness {
        let value = objective.eval(p);
        (
            functionals::tail_verdict(p, value, cfg),
            Sample { r: p, gap: value },
        )
    } else if let Some(window) = scan::window_for(cfg, tails.neg_cutoff, tails.pos_cutoff) {
        let raw = scan::scan(|p| objective.eval(p), window, cfg, &[0.0, 1.0]);
        let min = raw.min().unwrap_or(Sample {
            r: f64::NAN,
            gap: f64::NAN,
        });
        (functionals::decide(Some(&raw), min, &tails, cfg), min)
    } else {
        (
            Verdict::inconclusive("tail cutoff lies beyond the maximum scan window"),
            Sample {
                r: f64::NAN,
                gap: f64::NAN,
            },
        )
    };
    Ok(PowerVerdict {
        strict: verdict.is_holds(),
        verdict,
        boundary_equalities: boundary,
        min_gap: min.gap,
        argmin_p: min.r,
        route: PowerRoute::PowerSums,
    })
}

/// Decides `x ⪯_p y` through `f_r(x) <= f_r(y)` for all real `r`.
pub fn power_majorize_via_klimesh(
    x: &DVector,
    y: &DVector,
    cfg: &ScanConfig,
) -> Result<PowerVerdict> {
    let (px, py) = match power_prepare(x, y, cfg, PowerRoute::Klimesh)? {
        PowerPrep::Done(v) => return Ok(v),
        PowerPrep::Scan(px, py) => (px, py),
    };
    let report = scan_normalized_gap(&px, &py, cfg)?;
    Ok(PowerVerdict {
        strict: report.verdict.is_holds(),
        verdict: report.verdict,
        boundary_equalities: report.boundary,
        min_gap: report.min_gap,
        argmin_p: report.argmin_r,
        route: PowerRoute::Klimesh,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TrumpRoute {
    /// x and y are rearrangements of each other.
    Identical,
    UnequalTotals,
    /// d <= 3, where trumping and majorization coincide.
    Majorization,
    /// x has a zero component while y does not.
    ZeroInX,
    Scanner,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrumpReport {
    pub verdict: Verdict,
    pub route: TrumpRoute,
    pub padded: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub majorization: Option<MajorizationVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scan: Option<ScanReport>,
}

impl TrumpReport {
    pub fn summary(&self) -> Summary {
        let margins = match (&self.majorization, &self.scan) {
            (Some(m), _) => m.margins.clone(),
            (_, Some(s)) => vec![s.min_gap],
            _ => Vec::new(),
        };
        Summary {
            relation: Relation::Trump,
            outcome: self.verdict.outcome(),
            witness: self.verdict.witness().cloned(),
            margins,
            exact: self.majorization.as_ref().is_some_and(|m| m.exact),
        }
    }
}

/// Decides `x ≺_T y` (existence of a catalyst).
pub fn trumped(x: &DVector, y: &DVector, cfg: &ScanConfig) -> Result<TrumpReport> {
    cfg.validate()?;
    let pair = normalize_pair(x, y);
    if pair.x.has_zero() && pair.y.has_zero() {
        return Err(Error::Precondition(
            "both vectors contain zeros after normalization; delete matched zeros first".into(),
        ));
    }
    let report = |verdict, route, majorization, scan| TrumpReport {
        verdict,
        route,
        padded: pair.padded,
        majorization,
        scan,
    };
    if !equal_totals(&pair.x, &pair.y) {
        let verdict = Verdict::fails_with(format!(
            "totals differ ({} vs {}); trumping preserves the total",
            pair.x.sum(),
            pair.y.sum()
        ));
        return Ok(report(verdict, TrumpRoute::UnequalTotals, None, None));
    }
    if pair.x.is_permutation_of(&pair.y) {
        return Ok(report(Verdict::Holds, TrumpRoute::Identical, None, None));
    }
    if pair.x.dim() <= 3 {
        let m = majorize(&pair.x, &pair.y);
        return Ok(report(m.verdict(), TrumpRoute::Majorization, Some(m), None));
    }
    if pair.x.has_zero() {
        let verdict = Verdict::Fails {
            witness: Witness::Parameter {
                r: 0.0,
                value: f64::NEG_INFINITY,
            },
        };
        return Ok(report(verdict, TrumpRoute::ZeroInX, None, None));
    }
    let (px, py) = prob_pair(&pair.x, &pair.y)?;
    let scan = scan_normalized_gap(&px, &py, cfg)?;
    Ok(report(
        scan.verdict.clone(),
        TrumpRoute::Scanner,
        None,
        Some(scan),
    ))
}

fn as_decimal<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateRoute {
    Identical,
    UnequalTotals,
    Majorization,
    PowerMajorization,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificateReport {
    pub verdict: Verdict,
    pub route: CertificateRoute,
    #[serde(serialize_with = "as_decimal")]
    pub product_x: BigInt,
    #[serde(serialize_with = "as_decimal")]
    pub product_y: BigInt,
    pub products_differ: bool,
    #[serde(serialize_with = "as_decimal")]
    pub self_power_x: BigInt,
    #[serde(serialize_with = "as_decimal")]
    pub self_power_y: BigInt,
    pub self_powers_differ: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub power: Option<PowerVerdict>,
}

impl CertificateReport {
    pub fn summary(&self) -> Summary {
        Summary {
            relation: Relation::Certificate,
            outcome: self.verdict.outcome(),
            witness: self.verdict.witness().cloned(),
            margins: self.power.iter().map(|p| p.min_gap).collect(),
            exact: true,
        }
    }
}

fn positive_integers(v: &DVector) -> Result<Vec<BigInt>> {
    let Some(ints) = v.integers() else {
        let index = v
            .values()
            .iter()
            .position(|a| a.fract() != 0.0)
            .unwrap_or(0);
        return Err(Error::NotInteger { index });
    };
    if ints.iter().any(|i| !i.is_positive()) {
        return Err(Error::Precondition(
            "certificate needs positive integer components".into(),
        ));
    }
    Ok(ints)
}

/// `prod v_i^{v_i}` exactly.
pub fn self_power_product(v: &[BigInt]) -> Result<BigInt> {
    v.iter().try_fold(BigInt::one(), |acc, a| {
        let e = a
            .to_usize()
            .ok_or_else(|| Error::Domain(format!("exponent {a} too large")))?;
        Ok(acc * num_traits::pow(a.clone(), e))
    })
}

/// Trumping certificate for positive integer vectors: strict power
/// majorization together with `prod x != prod y` and
/// `prod x^x != prod y^y`, the products compared exactly.
pub fn integer_trump_certificate(
    x: &DVector,
    y: &DVector,
    cfg: &ScanConfig,
) -> Result<CertificateReport> {
    let xi = positive_integers(x)?;
    let yi = positive_integers(y)?;
    if xi.len() != yi.len() {
        return Err(Error::Precondition(
            "certificate needs vectors of equal dimension".into(),
        ));
    }
    let product_x: BigInt = xi.iter().product();
    let product_y: BigInt = yi.iter().product();
    let self_power_x = self_power_product(&xi)?;
    let self_power_y = self_power_product(&yi)?;
    let products_differ = product_x != product_y;
    let self_powers_differ = self_power_x != self_power_y;

    let (verdict, route, power) = if x.is_permutation_of(y) {
        (
            Verdict::inconclusive("certificate inapplicable: products are equal"),
            CertificateRoute::Identical,
            None,
        )
    } else if !equal_totals(x, y) {
        (
            Verdict::fails_with("totals differ"),
            CertificateRoute::UnequalTotals,
            None,
        )
    } else if x.dim() <= 3 {
        (
            majorize(x, y).verdict(),
            CertificateRoute::Majorization,
            None,
        )
    } else {
        let power = power_majorize(x, y, cfg)?;
        let verdict = match &power.verdict {
            Verdict::Fails { witness } => Verdict::Fails {
                witness: witness.clone(),
            },
            _ if !power.strict => {
                Verdict::inconclusive("strict power majorization not established")
            }
            _ if !products_differ => {
                Verdict::inconclusive("certificate inapplicable: prod x = prod y")
            }
            _ if !self_powers_differ => {
                Verdict::inconclusive("certificate inapplicable: prod x^x = prod y^y")
            }
            _ => Verdict::Holds,
        };
        (verdict, CertificateRoute::PowerMajorization, Some(power))
    };
    Ok(CertificateReport {
        verdict,
        route,
        product_x,
        product_y,
        products_differ,
        self_power_x,
        self_power_y,
        self_powers_differ,
        power,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(values: &[f64]) -> DVector {
        DVector::new(values.to_vec()).unwrap()
    }

    #[test]
    fn majorize_examples() {
        let m = majorize(
            &v(&[7., 9., 11., 21., 27., 33.]),
            &v(&[5., 7., 15., 21., 25., 35.]),
        );
        assert!(m.holds && m.exact);

        let m = majorize(
            &v(&[3., 3., 3., 9., 9., 9.]),
            &v(&[2., 2., 6., 6., 10., 10.]),
        );
        assert!(!m.holds);
        assert_eq!(m.ascending_flip_k, Some(3));
        assert_eq!(m.ascending_margins[..3], [1.0, 2.0, -1.0]);
        assert!(m.verdict().is_fails());

        let x = v(&[0.1, 0.7, 0.2]);
        assert!(majorize(&x, &x).holds);
    }

    #[test]
    fn majorize_unequal_totals_fails_at_last_prefix() {
        let m = majorize(&v(&[1., 1.]), &v(&[3., 1.]));
        assert_eq!(m.first_violation_k, Some(2));
    }

    #[test]
    fn weak_examples() {
        assert!(submajorize(&v(&[1., 1.]), &v(&[3., 1.])).holds);
        assert_eq!(
            submajorize(&v(&[3., 1.]), &v(&[1., 1.])).first_violation_k,
            Some(1)
        );
        let m = submajorize(&v(&[2., 2.]), &v(&[3., 1.]));
        assert!(m.holds && majorize(&v(&[2., 2.]), &v(&[3., 1.])).holds);

        assert!(supermajorize(&v(&[2., 2.]), &v(&[1., 3.])).holds);
        assert_eq!(
            supermajorize(&v(&[1., 3.]), &v(&[2., 2.])).first_violation_k,
            Some(1)
        );
        assert!(supermajorize(&v(&[5., 5.]), &v(&[1., 2.])).holds);
    }

    #[test]
    fn power_examples() {
        let cfg = ScanConfig::default();
        for (x, y) in [
            (vec![3., 3., 3., 9., 9., 9.], vec![2., 2., 6., 6., 10., 10.]),
            (
                vec![7., 9., 11., 21., 27., 33.],
                vec![5., 7., 15., 21., 25., 35.],
            ),
        ] {
            let p = power_majorize(&v(&x), &v(&y), &cfg).unwrap();
            assert!(p.verdict.is_holds() && p.strict, "{p:?}");
            let k = power_majorize_via_klimesh(&v(&x), &v(&y), &cfg).unwrap();
            assert!(k.verdict.is_holds() && k.strict);
        }
        let p = power_majorize(&v(&[1., 3.]), &v(&[2., 2.]), &cfg).unwrap();
        assert!(p.verdict.is_fails());
        let x = v(&[0.2, 0.5, 0.3]);
        let k = power_majorize_via_klimesh(&x, &x, &cfg).unwrap();
        assert!(k.verdict.is_holds() && !k.strict);
        let k = power_majorize_via_klimesh(&v(&[2., 2.]), &v(&[1., 3.]), &cfg).unwrap();
        assert!(k.verdict.is_holds());
        assert!(power_majorize(&v(&[0., 2.]), &v(&[1., 1.]), &cfg).is_err());
    }

    #[test]
    fn power_witness_is_a_violated_power_sum() {
        let cfg = ScanConfig::default();
        let p = power_majorize(&v(&[1., 3.]), &v(&[2., 2.]), &cfg).unwrap();
        let Some(Witness::Parameter { r, .. }) = p.verdict.witness() else {
            panic!("expected a parameter witness");
        };
        let (sx, sy) = (1f64.powf(*r) + 3f64.powf(*r), 2.0 * 2f64.powf(*r));
        let violated = if *r > 0.0 && *r < 1.0 {
            sx < sy
        } else {
            sx > sy
        };
        assert!(violated, "p = {r}");
    }

    #[test]
    fn trumped_examples() {
        let cfg = ScanConfig::default();
        let t = trumped(
            &v(&[3., 3., 3., 9., 9., 9.]),
            &v(&[2., 2., 6., 6., 10., 10.]),
            &cfg,
        )
        .unwrap();
        assert!(t.verdict.is_holds());
        assert_eq!(t.route, TrumpRoute::Scanner);

        let x = DVector::float(vec![0.5, 0.3, 0.2]).unwrap();
        let y = DVector::float(vec![0.6, 0.2, 0.2]).unwrap();
        let t = trumped(&x, &y, &cfg).unwrap();
        assert_eq!(t.route, TrumpRoute::Majorization);
        assert!(t.verdict.is_holds());

        assert!(trumped(&v(&[1., 3.]), &v(&[2., 2.]), &cfg)
            .unwrap()
            .verdict
            .is_fails());
        let t = trumped(&v(&[1., 2.]), &v(&[1., 1.]), &cfg).unwrap();
        assert_eq!(t.route, TrumpRoute::UnequalTotals);
        assert!(t.verdict.is_fails());
        assert!(trumped(&v(&[1., 2.]), &v(&[3., 0., 0.]), &cfg).is_err());
    }

    #[test]
    fn trumped_zero_in_x_fails() {
        let cfg = ScanConfig::default();
        let t = trumped(&v(&[0., 2., 3., 5.]), &v(&[1., 2., 3., 4.]), &cfg).unwrap();
        assert_eq!(t.route, TrumpRoute::ZeroInX);
        assert!(t.verdict.is_fails());
    }

    #[test]
    fn certificate_examples() {
        let cfg = ScanConfig::default();
        let c = integer_trump_certificate(
            &v(&[3., 3., 3., 9., 9., 9.]),
            &v(&[2., 2., 6., 6., 10., 10.]),
            &cfg,
        )
        .unwrap();
        assert_eq!(c.product_x, BigInt::from(19683));
        assert_eq!(c.product_y, BigInt::from(14400));
        assert!(c.products_differ && c.self_powers_differ);
        assert!(c.verdict.is_holds());

        let c = integer_trump_certificate(&v(&[2., 2.]), &v(&[1., 3.]), &cfg).unwrap();
        assert_eq!(
            (c.product_x.clone(), c.product_y.clone()),
            (4.into(), 3.into())
        );
        assert_eq!(c.route, CertificateRoute::Majorization);
        assert!(c.verdict.is_holds());

        let x = v(&[4., 1., 7., 2.]);
        let c = integer_trump_certificate(&x, &x, &cfg).unwrap();
        assert!(c.verdict.is_inconclusive());

        assert_eq!(
            integer_trump_certificate(
                &DVector::float(vec![0.5, 1.5]).unwrap(),
                &v(&[1., 1.]),
                &cfg
            )
            .unwrap_err(),
            Error::NotInteger { index: 0 }
        );
    }

    #[test]
    fn self_power_product_small() {
        let p = self_power_product(&[2.into(), 3.into()]).unwrap();
        assert_eq!(p, BigInt::from(4 * 27));
    }
}
