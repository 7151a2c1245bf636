//! The sets S(y) ⊆ T(y) ⊆ P(y) of positive vectors majorized, trumped and
//! power-majorized by `y`, extreme points of P(y), and convex decompositions
//! over the permutations of `y`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::functionals::prob_pair;
use crate::functionals::scan_normalized_gap;
use crate::relations::{majorize, power_majorize, trumped};
use crate::scan::ScanConfig;
use crate::vectors::{check_permutation, normalize_pair, DVector};
use crate::verdict::Verdict;

fn require_positive(x: &DVector) -> Result<()> {
    if x.is_strictly_positive() {
        Ok(())
    } else {
        Err(Error::Precondition("x must be strictly positive".into()))
    }
}

/// `x ∈ S(y)`.
pub fn in_s(x: &DVector, y: &DVector) -> Result<bool> {
    require_positive(x)?;
    Ok(majorize(x, y).holds)
}

/// `x ∈ T(y)`.
pub fn in_t(x: &DVector, y: &DVector, cfg: &ScanConfig) -> Result<Verdict> {
    require_positive(x)?;
    Ok(trumped(x, y, cfg)?.verdict)
}

/// `x ∈ P(y)`.
pub fn in_p(x: &DVector, y: &DVector, cfg: &ScanConfig) -> Result<Verdict> {
    require_positive(x)?;
    Ok(power_majorize(x, y, cfg)?.verdict)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremePointReport {
    pub in_p: bool,
    pub power_verdict: Verdict,
    /// Some `r` where `f_r(x) = f_r(y)` up to the margin tolerance.
    pub criterion_equality: Option<f64>,
    /// Smallest normalized gap seen, including `r = 0` and `r = 1`.
    pub min_gap: f64,
    pub is_permutation_of_y: bool,
    pub trumped_by_y: Verdict,
    /// "Not trumped, or a permutation of y"; absent when the trumping
    /// verdict is inconclusive.
    pub criterion_three: Option<bool>,
    pub classified_extreme: bool,
    /// Whether the two criteria agree; absent when criterion three is.
    pub criteria_agree: Option<bool>,
    pub diagnostics: Vec<String>,
}

/// Classifies `x ∈ P(y)` as an extreme point by the equality criterion and
/// records the permutation/trumping criterion next to it.
pub fn classify_extreme_point(
    x: &DVector,
    y: &DVector,
    cfg: &ScanConfig,
) -> Result<ExtremePointReport> {
    require_positive(x)?;
    let power = power_majorize(x, y, cfg)?;
    if power.verdict.is_fails() {
        return Err(Error::NotInP(format!("{x} is not power-majorized by {y}")));
    }
    let pair = normalize_pair(x, y);
    let is_perm = pair.x.is_permutation_of(&pair.y);
    let trump = trumped(x, y, cfg)?.verdict;

    let (criterion_equality, min_gap) = if is_perm {
        (Some(1.0), 0.0)
    } else {
        let (px, py) = prob_pair(&pair.x, &pair.y)?;
        let scan = scan_normalized_gap(&px, &py, cfg)?;
        let (r, value) = [
            (scan.argmin_r, scan.min_gap),
            (0.0, scan.boundary.at_zero),
            (1.0, scan.boundary.at_one),
        ]
        .into_iter()
        .filter(|(_, v)| !v.is_nan())
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap_or((f64::NAN, f64::NAN));
        ((value <= cfg.margin_tol).then_some(r), value)
    };

    let criterion_three = if is_perm {
        Some(true)
    } else {
        match &trump {
            Verdict::Holds => Some(false),
            Verdict::Fails { .. } => Some(true),
            Verdict::Inconclusive { .. } => None,
        }
    };
    let classified_extreme = criterion_equality.is_some();
    let criteria_agree = criterion_three.map(|c| c == classified_extreme);
    let mut diagnostics = Vec::new();
    if criteria_agree == Some(false) {
        diagnostics.push(format!(
            "equality criterion says {classified_extreme} but the trumping criterion says {}",
            !classified_extreme
        ));
    }
    Ok(ExtremePointReport {
        in_p: true,
        power_verdict: power.verdict,
        criterion_equality,
        min_gap,
        is_permutation_of_y: is_perm,
        trumped_by_y: trump,
        criterion_three,
        classified_extreme,
        criteria_agree,
        diagnostics,
    })
}

/// `(max x == max y, min x == min y)`; exact when both vectors are exact.
pub fn boundary_extreme_values(x: &DVector, y: &DVector) -> (bool, bool) {
    if let (Some(ex), Some(ey)) = (x.exact_sorted_desc(), y.exact_sorted_desc()) {
        return (ex.first() == ey.first(), ex.last() == ey.last());
    }
    let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0);
    (close(x.max(), y.max()), close(x.min(), y.min()))
}

/// `t·x + (1-t)·x'` where `x'` is `x` rearranged by `perm`.
pub fn interior_path(x: &DVector, perm: &[usize], t: f64) -> Result<DVector> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::Domain(format!("t = {t} must lie in (0, 1)")));
    }
    let moved = x.permuted(perm)?;
    if moved == *x {
        return Err(Error::Precondition(
            "the permutation leaves x unchanged".into(),
        ));
    }
    if let (Some(a), Some(b)) = (x.exact_values(), moved.exact_values()) {
        let t = BigRational::from_float(t).expect("finite t");
        let s = BigRational::from_integer(1.into()) - &t;
        return DVector::from_rationals(a.iter().zip(b).map(|(a, b)| &t * a + &s * b).collect());
    }
    DVector::float(
        x.values()
            .iter()
            .zip(moved.values())
            .map(|(a, b)| t * a + (1.0 - t) * b)
            .collect(),
    )
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecompositionTerm {
    pub weight: f64,
    /// `x ≈ Σ weight · y[permutation[i]]`.
    pub permutation: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvexDecomposition {
    pub terms: Vec<DecompositionTerm>,
    pub reconstruction_error: f64,
}

impl ConvexDecomposition {
    pub fn reconstruct(&self, y: &DVector) -> Vec<f64> {
        let mut out = vec![0.0; y.dim()];
        for term in &self.terms {
            for (o, &p) in out.iter_mut().zip(&term.permutation) {
                *o += term.weight * y.values()[p];
            }
        }
        out
    }

    pub fn weight_sum(&self) -> f64 {
        self.terms.iter().map(|t| t.weight).sum()
    }
}

fn sorting_indices(v: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| v[b].total_cmp(&v[a]).then(a.cmp(&b)));
    idx
}

/// Writes `x` as a convex combination of rearrangements of `y`.
///
/// A chain of at most `d - 1` T-transforms carries sorted `y` to sorted `x`;
/// each transform splits every term in two.
pub fn rado_decompose(x: &DVector, y: &DVector) -> Result<ConvexDecomposition> {
    if x.dim() != y.dim() {
        return Err(Error::Precondition(
            "x and y must have the same dimension".into(),
        ));
    }
    if !majorize(x, y).holds {
        return Err(Error::NotMajorized);
    }
    let d = x.dim();
    let (xs, ys) = (x.values(), y.values());
    let (sx, sy) = (sorting_indices(xs), sorting_indices(ys));
    let a: Vec<f64> = sx.iter().map(|&i| xs[i]).collect();
    let mut b: Vec<f64> = sy.iter().map(|&i| ys[i]).collect();
    let scale = a.iter().chain(&b).fold(0.0f64, |m, v| m.max(v.abs()));
    let eq = |u: f64, v: f64| (u - v).abs() <= 1e-15 * scale;

    let mut terms: Vec<(f64, Vec<usize>)> = vec![(1.0, (0..d).collect())];
    for _ in 0..d {
        let Some(j) = (0..d).rev().find(|&i| b[i] > a[i] && !eq(b[i], a[i])) else {
            break;
        };
        let Some(k) = (j + 1..d).find(|&i| b[i] < a[i] && !eq(b[i], a[i])) else {
            break;
        };
        let (over, under) = (b[j] - a[j], a[k] - b[k]);
        let delta = over.min(under);
        let mix = delta / (b[j] - b[k]);
        if over <= under {
            b[k] += delta;
            b[j] = a[j];
        } else {
            b[j] -= delta;
            b[k] = a[k];
        }
        terms = terms
            .into_iter()
            .flat_map(|(w, sigma)| {
                let mut swapped = sigma.clone();
                swapped.swap(j, k);
                [(w * (1.0 - mix), sigma), (w * mix, swapped)]
            })
            .filter(|(w, _)| *w > 0.0)
            .collect();
    }

    let mut merged: BTreeMap<Vec<usize>, f64> = BTreeMap::new();
    for (w, sigma) in terms {
        let mut perm = vec![0; d];
        for i in 0..d {
            perm[sx[i]] = sy[sigma[i]];
        }
        *merged.entry(perm).or_default() += w;
    }
    let mut decomposition = ConvexDecomposition {
        terms: merged
            .into_iter()
            .map(|(permutation, weight)| DecompositionTerm {
                weight,
                permutation,
            })
            .collect(),
        reconstruction_error: 0.0,
    };
    for term in &decomposition.terms {
        check_permutation(&term.permutation, d)?;
    }
    decomposition.reconstruction_error = decomposition
        .reconstruct(y)
        .iter()
        .zip(xs)
        .map(|(r, x)| (r - x).abs())
        .fold(0.0, f64::max);
    Ok(decomposition)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(values: &[f64]) -> DVector {
        DVector::new(values.to_vec()).unwrap()
    }

    fn cfg() -> ScanConfig {
        ScanConfig::default()
    }

    #[test]
    fn membership_of_permutation() {
        let y = v(&[1., 2., 3., 4.]);
        let x = v(&[4., 1., 3., 2.]);
        assert!(in_s(&x, &y).unwrap());
        assert!(in_t(&x, &y, &cfg()).unwrap().is_holds());
        assert!(in_p(&x, &y, &cfg()).unwrap().is_holds());
    }

    #[test]
    fn trumped_not_majorized_membership() {
        let x = v(&[3., 3., 3., 9., 9., 9.]);
        let y = v(&[2., 2., 6., 6., 10., 10.]);
        assert!(!in_s(&x, &y).unwrap());
        assert!(in_t(&x, &y, &cfg()).unwrap().is_holds());
        assert!(in_p(&x, &y, &cfg()).unwrap().is_holds());
    }

    #[test]
    fn unequal_totals_membership() {
        let (x, y) = (v(&[1., 2., 3., 4.]), v(&[1., 2., 3., 5.]));
        assert!(!in_s(&x, &y).unwrap());
        assert!(in_t(&x, &y, &cfg()).unwrap().is_fails());
    }

    #[test]
    fn membership_rejects_zero() {
        assert!(in_s(&v(&[0., 2.]), &v(&[1., 1.])).is_err());
    }

    #[test]
    fn permutation_is_extreme() {
        let r = classify_extreme_point(&v(&[3., 1., 2.]), &v(&[1., 2., 3.]), &cfg()).unwrap();
        assert!(r.classified_extreme && r.is_permutation_of_y);
        assert_eq!(r.criteria_agree, Some(true));
    }

    #[test]
    fn uniform_point_is_not_extreme() {
        let y = v(&[0.1, 0.2, 0.3, 0.4]);
        let r = classify_extreme_point(&v(&[0.25; 4]), &y, &cfg()).unwrap();
        assert!(!r.classified_extreme);
        assert!(r.min_gap > 1e-3);
        assert_eq!(r.criteria_agree, Some(true));
    }

    #[test]
    fn entropy_equality_point_is_extreme() {
        let y = v(&[0.1, 0.2, 0.3, 0.4]);
        let x = v(&[
            0.1782,
            0.105_464_737_441_489_94,
            0.348_816_689_862_722_13,
            0.367_518_572_695_787_9,
        ]);
        let r = classify_extreme_point(&x, &y, &cfg()).unwrap();
        assert!(r.in_p && !r.is_permutation_of_y);
        assert!(r.classified_extreme, "{r:?}");
        assert!((r.criterion_equality.unwrap() - 1.0).abs() < 1e-3);
        assert!(!r.trumped_by_y.is_holds());
    }

    #[test]
    fn outside_p_is_an_error() {
        let err = classify_extreme_point(&v(&[1., 3.]), &v(&[2., 2.]), &cfg());
        assert!(matches!(err, Err(Error::NotInP(_))));
    }

    #[test]
    fn boundary_values() {
        let x = v(&[3., 3., 3., 9., 9., 9.]);
        let y = v(&[2., 2., 6., 6., 10., 10.]);
        assert_eq!(boundary_extreme_values(&x, &y), (false, false));
        assert_eq!(boundary_extreme_values(&y, &y), (true, true));
        assert_eq!(
            boundary_extreme_values(&v(&[8., 2.]), &v(&[2., 8.])),
            (true, true)
        );
    }

    #[test]
    fn path_midpoint_and_limit() {
        let x = v(&[1., 3.]);
        assert_eq!(interior_path(&x, &[1, 0], 0.5).unwrap(), v(&[2., 2.]));
        let near = interior_path(&x.to_float(), &[1, 0], 1.0 - 1e-12).unwrap();
        assert!((near.values()[0] - 1.0).abs() < 1e-11);
        assert!(interior_path(&v(&[2., 2.]), &[1, 0], 0.5).is_err());
        assert!(interior_path(&x, &[1, 0], 1.0).is_err());
    }

    #[test]
    fn path_point_is_trumped() {
        let y = v(&[2., 2., 6., 6., 10., 10.]);
        assert!(interior_path(&y, &[0, 1, 2, 3, 5, 4], 0.5).is_err());
        let z = interior_path(&y, &[5, 1, 2, 3, 4, 0], 0.5).unwrap();
        assert!(in_t(&z, &y, &cfg()).unwrap().is_holds());
    }

    fn check_decomposition(x: &DVector, y: &DVector) -> ConvexDecomposition {
        let dec = rado_decompose(x, y).unwrap();
        assert!(dec.reconstruction_error <= 1e-12, "{dec:?}");
        assert!((dec.weight_sum() - 1.0).abs() <= 1e-12);
        assert!(dec.terms.iter().all(|t| t.weight > 0.0 && t.weight <= 1.0));
        assert!(dec.terms.len() <= 1 << (x.dim() - 1));
        dec
    }

    #[test]
    fn rado_two_by_two() {
        let dec = check_decomposition(&v(&[1.5, 1.5]), &v(&[1., 2.]));
        assert_eq!(dec.terms.len(), 2);
        assert!(dec.terms.iter().all(|t| (t.weight - 0.5).abs() < 1e-15));
    }

    #[test]
    fn rado_identity_and_mixing() {
        let y = v(&[5., 3., 2.]);
        let dec = check_decomposition(&y, &y);
        assert_eq!(
            dec.terms,
            vec![DecompositionTerm {
                weight: 1.0,
                permutation: vec![0, 1, 2]
            }]
        );
        check_decomposition(&v(&[4., 3., 3.]), &y);
        check_decomposition(&v(&[3., 4., 3.]), &y);
    }

    #[test]
    fn rado_rejects_non_majorized() {
        assert!(matches!(
            rado_decompose(&v(&[1., 3.]), &v(&[2., 2.])),
            Err(Error::NotMajorized)
        ));
    }
}
