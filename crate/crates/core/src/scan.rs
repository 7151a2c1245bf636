//! Grid-plus-refinement minimization of a one-parameter objective over the
//! real line, used to decide "for all r" inequalities numerically.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::optimize::golden_section;

/// Scan windows wider than this are not attempted.
pub const MAX_WINDOW: f64 = 1e6;
const MAX_GRID: usize = 400_001;
const MAX_REFINEMENTS: usize = 48;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanConfig {
    pub r_lo: f64,
    pub r_hi: f64,
    pub grid_points: usize,
    pub refine_tol: f64,
    pub margin_tol: f64,
    pub max_refine_depth: usize,
    /// Keep every grid sample in the report.
    pub keep_samples: bool,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            r_lo: -60.0,
            r_hi: 60.0,
            grid_points: 2001,
            refine_tol: 1e-10,
            margin_tol: 1e-9,
            max_refine_depth: 60,
            keep_samples: false,
        }
    }
}

impl ScanConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.r_lo < 0.0 && self.r_hi > 1.0) {
            return Err(Error::Precondition(
                "scan window must satisfy r_lo < 0 < 1 < r_hi".into(),
            ));
        }
        if self.grid_points < 3 {
            return Err(Error::Precondition("grid_points must be at least 3".into()));
        }
        if !(self.refine_tol > 0.0 && self.margin_tol > 0.0) {
            return Err(Error::Precondition("tolerances must be positive".into()));
        }
        Ok(())
    }

    /// Symmetric window `[-r_max, r_max]`.
    pub fn with_r_max(mut self, r_max: f64) -> Self {
        self.r_lo = -r_max;
        self.r_hi = r_max;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub r: f64,
    pub gap: f64,
}

/// One golden-section refinement of a sampled local minimum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Refinement {
    pub bracket: [f64; 2],
    pub r: f64,
    pub gap: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone)]
pub(crate) struct RawScan {
    pub window: [f64; 2],
    pub samples: Vec<Sample>,
    pub refinements: Vec<Refinement>,
    pub nan_count: usize,
}

impl RawScan {
    /// Smallest value over samples and refinements restricted to `keep(r)`.
    pub fn min_where(&self, keep: impl Fn(f64) -> bool) -> Option<Sample> {
        self.samples
            .iter()
            .copied()
            .chain(
                self.refinements
                    .iter()
                    .map(|f| Sample { r: f.r, gap: f.gap }),
            )
            .filter(|s| keep(s.r) && !s.gap.is_nan())
            .min_by(|a, b| a.gap.total_cmp(&b.gap))
    }

    pub fn min(&self) -> Option<Sample> {
        self.min_where(|_| true)
    }
}

/// Window covering the configured range and the tail cutoffs.
pub(crate) fn window_for(cfg: &ScanConfig, neg_cutoff: f64, pos_cutoff: f64) -> Option<[f64; 2]> {
    let lo = cfg.r_lo.min(neg_cutoff - 1.0);
    let hi = cfg.r_hi.max(pos_cutoff + 1.0);
    (lo >= -MAX_WINDOW && hi <= MAX_WINDOW).then_some([lo, hi])
}

/// Samples `f` on a uniform grid over `window` (plus `extra` points), then
/// refines every sampled local minimum by golden-section search.
pub(crate) fn scan<F>(f: F, window: [f64; 2], cfg: &ScanConfig, extra: &[f64]) -> RawScan
where
    F: Fn(f64) -> f64,
{
    let [lo, hi] = window;
    let base_step = (cfg.r_hi - cfg.r_lo) / (cfg.grid_points - 1) as f64;
    let n = (((hi - lo) / base_step).ceil() as usize + 1)
        .max(cfg.grid_points)
        .min(MAX_GRID);
    let step = (hi - lo) / (n - 1) as f64;

    let mut rs: Vec<f64> = (0..n).map(|i| lo + step * i as f64).collect();
    rs[n - 1] = hi;
    rs.extend(extra.iter().copied().filter(|r| (lo..=hi).contains(r)));
    rs.sort_by(f64::total_cmp);
    rs.dedup();

    let samples: Vec<Sample> = rs.iter().map(|&r| Sample { r, gap: f(r) }).collect();
    let nan_count = samples.iter().filter(|s| s.gap.is_nan()).count();

    let value = |i: usize| {
        let g = samples[i].gap;
        if g.is_nan() {
            f64::INFINITY
        } else {
            g
        }
    };
    let mut candidates: Vec<usize> = (0..samples.len())
        .filter(|&i| {
            let v = value(i);
            v.is_finite()
                && (i == 0 || v <= value(i - 1))
                && (i + 1 == samples.len() || v <= value(i + 1))
        })
        .collect();
    candidates.sort_by(|&a, &b| value(a).total_cmp(&value(b)));
    candidates.truncate(MAX_REFINEMENTS);

    let refinements = candidates
        .into_iter()
        .map(|i| {
            let a = samples[i.saturating_sub(1)].r;
            let b = samples[(i + 1).min(samples.len() - 1)].r;
            let m = golden_section(
                |r| {
                    let v = f(r);
                    if v.is_nan() {
                        f64::INFINITY
                    } else {
                        v
                    }
                },
                a,
                b,
                cfg.refine_tol,
                cfg.max_refine_depth,
            );
            Refinement {
                bracket: [a, b],
                r: m.x,
                gap: m.value,
                iterations: m.iterations,
            }
        })
        .collect();

    RawScan {
        window,
        samples,
        refinements,
        nan_count,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        assert!(ScanConfig::default().validate().is_ok());
        let bad = ScanConfig {
            r_lo: 0.5,
            ..ScanConfig::default()
        };
        assert!(bad.validate().is_err());
        let bad = ScanConfig {
            grid_points: 2,
            ..ScanConfig::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn refines_a_narrow_dip() {
        let cfg = ScanConfig::default();
        let f = |r: f64| (r - 0.123_456).powi(2) - 1e-3;
        let raw = scan(f, [-60.0, 60.0], &cfg, &[0.0, 1.0]);
        let m = raw.min().unwrap();
        assert!((m.r - 0.123_456).abs() < 1e-6);
        assert!((m.gap + 1e-3).abs() < 1e-12);
    }

    #[test]
    fn extends_grid_with_window() {
        let cfg = ScanConfig::default();
        let raw = scan(|r| r, [-120.0, 60.0], &cfg, &[]);
        assert!(raw.samples.len() > cfg.grid_points);
        assert_eq!(raw.samples.first().unwrap().r, -120.0);
        assert_eq!(raw.samples.last().unwrap().r, 60.0);
    }

    #[test]
    fn window_rejects_huge_cutoffs() {
        let cfg = ScanConfig::default();
        assert_eq!(window_for(&cfg, -5.0, 80.0), Some([-60.0, 81.0]));
        assert_eq!(window_for(&cfg, 0.0, 1e9), None);
    }
}
