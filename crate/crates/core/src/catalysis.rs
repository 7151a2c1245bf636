//! Catalysts: verification of `x ⊗ z ≺ y ⊗ z`, the weak variants, and a
//! seeded randomized search for a catalyst of small dimension.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::relations::{equal_totals, majorize, submajorize, supermajorize, trumped, TrumpReport};
use crate::scan::ScanConfig;
use crate::vectors::{normalize_pair, tensor, DVector};

/// A catalyst vector; every component is strictly positive.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Catalyst(DVector);

impl Catalyst {
    pub fn new(z: DVector) -> Result<Self> {
        if !z.is_strictly_positive() {
            return Err(Error::Precondition(
                "catalyst components must be strictly positive".into(),
            ));
        }
        Ok(Self(z))
    }

    /// The one-dimensional catalyst `(1)`.
    pub fn trivial() -> Self {
        Self(DVector::new(vec![1.0]).expect("valid"))
    }

    pub fn vector(&self) -> &DVector {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    /// Exact copy of the catalyst; float components convert without rounding.
    fn exact(&self) -> DVector {
        if self.0.is_exact() {
            return self.0.clone();
        }
        let values = self
            .0
            .values()
            .iter()
            .map(|&v| BigRational::from_float(v).expect("finite component"))
            .collect();
        DVector::from_rationals(values).expect("non-negative")
    }
}

fn require_equal_totals(x: &DVector, y: &DVector) -> Result<()> {
    if equal_totals(x, y) {
        Ok(())
    } else {
        Err(Error::UnequalTotals {
            left: x.sum(),
            right: y.sum(),
        })
    }
}

/// True when `x ⊗ z ≺ y ⊗ z`. Exact when x and y are exact.
pub fn check_catalyst(x: &DVector, y: &DVector, z: &Catalyst) -> Result<bool> {
    require_equal_totals(x, y)?;
    let pair = normalize_pair(x, y);
    let z = if pair.x.is_exact() && pair.y.is_exact() {
        z.exact()
    } else {
        z.vector().to_float()
    };
    Ok(majorize(&tensor(&pair.x, &z), &tensor(&pair.y, &z)).holds)
}

/// Descending-prefix violation of `x ⊗ z ≺ y ⊗ z`, evaluated in `f64`.
struct Objective {
    x: Vec<f64>,
    y: Vec<f64>,
    tx: Vec<f64>,
    ty: Vec<f64>,
}

impl Objective {
    fn new(x: &DVector, y: &DVector) -> Self {
        Self {
            x: x.values().to_vec(),
            y: y.values().to_vec(),
            tx: Vec::new(),
            ty: Vec::new(),
        }
    }

    /// `sum_k max(0, P_x(k) - P_y(k) + shift)` over all but the last prefix
    /// (the totals agree by precondition).
    fn eval(&mut self, z: &[f64], shift: f64) -> f64 {
        fill_sorted(&mut self.tx, &self.x, z);
        fill_sorted(&mut self.ty, &self.y, z);
        let n = self.tx.len();
        let (mut px, mut py, mut total) = (0.0, 0.0, 0.0);
        for k in 0..n.saturating_sub(1) {
            px += self.tx[k];
            py += self.ty[k];
            total += (px - py + shift).max(0.0);
        }
        total
    }
}

fn fill_sorted(buf: &mut Vec<f64>, v: &[f64], z: &[f64]) {
    buf.clear();
    buf.extend(v.iter().flat_map(|a| z.iter().map(move |b| a * b)));
    buf.sort_by(|a, b| b.total_cmp(a));
}

/// `sum_k max(0, prefix_k(x ⊗ z) - prefix_k(y ⊗ z))`; zero exactly when
/// `z` is a catalyst (up to rounding).
pub fn violation(x: &DVector, y: &DVector, z: &Catalyst) -> Result<f64> {
    require_equal_totals(x, y)?;
    let pair = normalize_pair(x, y);
    Ok(Objective::new(&pair.x, &pair.y).eval(z.vector().values(), 0.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WeakMode {
    Sub,
    Super,
}

/// Sub- or super-majorization of the tensored pair.
pub fn check_weak_catalyst(x: &DVector, y: &DVector, z: &Catalyst, mode: WeakMode) -> bool {
    let pair = normalize_pair(x, y);
    let z = if pair.x.is_exact() && pair.y.is_exact() {
        z.exact()
    } else {
        z.vector().to_float()
    };
    let (tx, ty) = (tensor(&pair.x, &z), tensor(&pair.y, &z));
    match mode {
        WeakMode::Sub => submajorize(&tx, &ty).holds,
        WeakMode::Super => supermajorize(&tx, &ty).holds,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SearchConfig {
    pub max_dim: usize,
    pub restarts_per_dim: usize,
    pub seed: u64,
    pub descent_iters: usize,
    pub step_init: f64,
    /// Violation accepted before the final recheck.
    pub violation_tol: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            max_dim: 8,
            restarts_per_dim: 64,
            seed: 0,
            descent_iters: 500,
            step_init: 0.25,
            violation_tol: 0.0,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_dim < 1 || self.restarts_per_dim < 1 {
            return Err(Error::Precondition(
                "max_dim and restarts_per_dim must be at least 1".into(),
            ));
        }
        if self.step_init.is_nan() || self.step_init <= 0.0 || self.violation_tol < 0.0 {
            return Err(Error::Precondition(
                "step_init must be positive and violation_tol non-negative".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CatalystSearchReport {
    pub found: bool,
    pub catalyst: Option<Catalyst>,
    pub found_dim: Option<usize>,
    pub dim_tried: Vec<usize>,
    pub best_violation_per_dim: Vec<f64>,
    /// Trumping verdict computed before searching; a failure means no
    /// catalyst of any dimension exists.
    pub prefilter: TrumpReport,
    pub seed: u64,
    pub seeds_used: u64,
    /// The accepted catalyst was rechecked in exact arithmetic.
    pub exact_recheck: bool,
}

impl CatalystSearchReport {
    pub fn prefilter_failed(&self) -> bool {
        self.prefilter.verdict.is_fails()
    }
}

fn restart_seed(seed: u64, dim: usize, restart: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ ((dim as u64) << 32 | restart as u64)
}

/// Uniform point of the open simplex, sorted non-increasing.
fn sample_simplex(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let mut z: Vec<f64> = (0..n)
        .map(|_| -(1.0 - rng.gen::<f64>()).ln() + 1e-12)
        .collect();
    normalize_sorted(&mut z);
    z
}

fn normalize_sorted(z: &mut [f64]) {
    let s: f64 = z.iter().sum();
    z.iter_mut().for_each(|v| *v /= s);
    z.sort_by(|a, b| b.total_cmp(a));
}

/// Multiplicative coordinate descent with a geometrically shrinking step.
fn descend(
    obj: &mut Objective,
    mut z: Vec<f64>,
    shift: f64,
    cfg: &SearchConfig,
) -> (Vec<f64>, f64) {
    let mut value = obj.eval(&z, shift);
    let mut step = cfg.step_init;
    let mut cand = z.clone();
    for _ in 0..cfg.descent_iters {
        if value <= cfg.violation_tol {
            break;
        }
        let mut improved = false;
        for i in 0..z.len() {
            for dir in [1.0, -1.0] {
                cand.copy_from_slice(&z);
                cand[i] *= (dir * step).exp();
                normalize_sorted(&mut cand);
                let v = obj.eval(&cand, shift);
                if v < value {
                    z.copy_from_slice(&cand);
                    value = v;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
            if step < 1e-12 {
                break;
            }
        }
    }
    (z, value)
}

/// Searches catalysts of dimension `1..=max_dim`.
///
/// A failing trumping prefilter ends the search early. Reaching `max_dim`
/// without success means only that no catalyst was found up to that
/// dimension.
pub fn search_catalyst(
    x: &DVector,
    y: &DVector,
    cfg: &SearchConfig,
) -> Result<CatalystSearchReport> {
    cfg.validate()?;
    require_equal_totals(x, y)?;
    let pair = normalize_pair(x, y);
    if !pair.x.is_strictly_positive() {
        return Err(Error::Precondition("x must be strictly positive".into()));
    }
    let prefilter = trumped(&pair.x, &pair.y, &ScanConfig::default())?;
    let exact = pair.x.is_exact() && pair.y.is_exact();
    let mut report = CatalystSearchReport {
        found: false,
        catalyst: None,
        found_dim: None,
        dim_tried: Vec::new(),
        best_violation_per_dim: Vec::new(),
        prefilter,
        seed: cfg.seed,
        seeds_used: 0,
        exact_recheck: exact,
    };
    if report.prefilter_failed() {
        return Ok(report);
    }

    let trivial = Catalyst::trivial();
    report.dim_tried.push(1);
    report
        .best_violation_per_dim
        .push(violation(&pair.x, &pair.y, &trivial)?);
    if check_catalyst(&pair.x, &pair.y, &trivial)? {
        report.found = true;
        report.catalyst = Some(trivial);
        report.found_dim = Some(1);
        return Ok(report);
    }

    let mut obj = Objective::new(&pair.x, &pair.y);
    // Aim slightly inside the feasible region so the recheck is not
    // decided by the last bit of a tight prefix.
    let shift = 1e-9 * pair.x.sum();
    for dim in 2..=cfg.max_dim {
        report.dim_tried.push(dim);
        let mut best = f64::INFINITY;
        for restart in 0..cfg.restarts_per_dim {
            report.seeds_used += 1;
            let mut rng = ChaCha8Rng::seed_from_u64(restart_seed(cfg.seed, dim, restart));
            let start = sample_simplex(&mut rng, dim);
            let (z, shifted) = descend(&mut obj, start, shift, cfg);
            let plain = obj.eval(&z, 0.0);
            best = best.min(plain);
            if shifted > cfg.violation_tol && plain > cfg.violation_tol {
                continue;
            }
            let candidate = Catalyst::new(DVector::float(z)?)?;
            if check_catalyst(&pair.x, &pair.y, &candidate)? {
                report.best_violation_per_dim.push(best);
                report.found = true;
                report.catalyst = Some(candidate);
                report.found_dim = Some(dim);
                return Ok(report);
            }
        }
        report.best_violation_per_dim.push(best);
    }
    Ok(report)
}
