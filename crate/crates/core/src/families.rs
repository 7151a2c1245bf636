//! Integer pair families, midpoint Riemann sums of `x^p`, and a quadrature
//! check of the convex interval inequality.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::vectors::DVector;

/// Cross-multiplied pair from the n-th inequality of the Bennett system.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BennettPair {
    pub n: usize,
    pub x: DVector,
    pub y: DVector,
}

fn integer_vector(mut values: Vec<u64>) -> DVector {
    values.sort_unstable();
    DVector::from_integers(values).expect("non-negative integers")
}

/// x: each of `(2k-1)(n+1)`, k = 1..n, repeated n+1 times.
/// y: each of `(2k-1)n`, k = 1..n+1, repeated n times.
pub fn bennett_pair(n: usize) -> Result<BennettPair> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let m = n as u64;
    let x = (1..=m)
        .flat_map(|k| std::iter::repeat_n((2 * k - 1) * (m + 1), n + 1))
        .collect();
    let y = (1..=m + 1)
        .flat_map(|k| std::iter::repeat_n((2 * k - 1) * m, n))
        .collect();
    Ok(BennettPair {
        n,
        x: integer_vector(x),
        y: integer_vector(y),
    })
}

/// Products `(2i-1)(2j-1)` over i in 1..=n, j in n+2..=2n+2 (x) and
/// i in n+1..=2n, j in 1..=n+1 (y).
pub fn bennett05_pair(n: usize) -> Result<(DVector, DVector)> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let m = n as u64;
    let odd = |i: u64| 2 * i - 1;
    let grid = |is: std::ops::RangeInclusive<u64>, js: std::ops::RangeInclusive<u64>| {
        is.flat_map(|i| js.clone().map(move |j| odd(i) * odd(j)))
            .collect::<Vec<_>>()
    };
    Ok((
        integer_vector(grid(1..=m, m + 2..=2 * m + 2)),
        integer_vector(grid(m + 1..=2 * m, 1..=m + 1)),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FlipPattern {
    /// Leading ascending prefixes with `sum x↑ >= sum y↑`.
    pub held_prefixes: usize,
    /// First (1-based) prefix where the inequality reverses.
    pub flip_index: Option<usize>,
}

/// Ascending-prefix comparison of `x` against `y`; exact for exact input.
pub fn flip_pattern(x: &DVector, y: &DVector) -> FlipPattern {
    let first_flip = match (x.exact_values(), y.exact_values()) {
        (Some(ex), Some(ey)) => {
            let (mut ex, mut ey) = (ex.to_vec(), ey.to_vec());
            ex.sort();
            ey.sort();
            let zero = BigRational::from_integer(BigInt::from(0));
            let (mut px, mut py) = (zero.clone(), zero);
            ex.iter().zip(&ey).position(|(a, b)| {
                px += a;
                py += b;
                px < py
            })
        }
        _ => {
            let (mut px, mut py) = (0.0, 0.0);
            x.sorted_asc()
                .iter()
                .zip(y.sorted_asc())
                .position(|(a, b)| {
                    px += a;
                    py += b;
                    px < py
                })
        }
    };
    match first_flip {
        Some(i) => FlipPattern {
            held_prefixes: i,
            flip_index: Some(i + 1),
        },
        None => FlipPattern {
            held_prefixes: x.dim().min(y.dim()),
            flip_index: None,
        },
    }
}

impl BennettPair {
    pub fn flip_pattern(&self) -> FlipPattern {
        flip_pattern(&self.x, &self.y)
    }
}

/// `(1/n) Σ f(a + (k - 1/2)(b - a)/n)` for `f(t) = t^p`.
pub fn midpoint_sum(p: f64, n: usize, a: f64, b: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    if a.is_nan() || b.is_nan() || a >= b || !p.is_finite() {
        return Err(Error::Domain(format!(
            "need a < b and finite p, got [{a}, {b}], p = {p}"
        )));
    }
    let h = (b - a) / n as f64;
    let first = a + 0.5 * h;
    if first < 0.0 || (first == 0.0 && p <= 0.0) {
        return Err(Error::Domain(format!(
            "t^{p} is undefined at the midpoint {first}"
        )));
    }
    let sum: f64 = (0..n).map(|k| (a + (k as f64 + 0.5) * h).powf(p)).sum();
    Ok(sum / n as f64)
}

/// `(1^p + 3^p + ... + (2n-1)^p) / n^(p+1)`.
pub fn bennett_term(p: f64, n: usize) -> f64 {
    let sum: f64 = (1..=n).map(|k| ((2 * k - 1) as f64).powf(p)).sum();
    sum / (n as f64).powf(p + 1.0)
}

/// Smallest step `M_{n+1} - M_n` over n < n_max, signed so that the
/// expected direction is positive (increasing for convex `t^p`,
/// decreasing for concave).
pub fn midpoint_min_step(p: f64, n_max: usize, a: f64, b: f64) -> Result<f64> {
    if p == 0.0 || p == 1.0 {
        return Err(Error::Precondition(
            "t^p must be strictly convex or concave".into(),
        ));
    }
    if n_max < 2 {
        return Err(Error::Precondition("n_max must be at least 2".into()));
    }
    let sign = if p > 0.0 && p < 1.0 { -1.0 } else { 1.0 };
    let sums = (1..=n_max)
        .map(|n| midpoint_sum(p, n, a, b))
        .collect::<Result<Vec<_>>>()?;
    Ok(sums
        .windows(2)
        .map(|w| sign * (w[1] - w[0]))
        .fold(f64::INFINITY, f64::min))
}

/// Strict monotonicity of `M_n(t^p)` for n = 1..=n_max, steps above 1e-13.
pub fn midpoint_monotone_check(p: f64, n_max: usize, a: f64, b: f64) -> Result<bool> {
    Ok(midpoint_min_step(p, n_max, a, b)? > 1e-13)
}

/// Data for `q ∫_b^c g < p ∫_a^b g + r ∫_c^d g`.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureCase<G> {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub p: f64,
    pub q: f64,
    pub r: f64,
    pub g: G,
}

impl<G: Fn(f64) -> f64> QuadratureCase<G> {
    /// Builds a case with `q` chosen to satisfy the weight balance.
    pub fn balanced(a: f64, b: f64, c: f64, d: f64, p: f64, r: f64, g: G) -> Self {
        let q = (p * (b - a) + r * (d - c)) / (c - b);
        Self {
            a,
            b,
            c,
            d,
            p,
            q,
            r,
            g,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let Self {
            a,
            b,
            c,
            d,
            p,
            q,
            r,
            ..
        } = *self;
        let fail = |msg: &str| Err(Error::Precondition(msg.to_string()));
        if !(a < b && b < c && c < d) {
            return fail("need a < b < c < d");
        }
        if !(p >= 0.0 && q >= 0.0 && r >= 0.0) {
            return fail("weights must be non-negative");
        }
        if b - a > d - c {
            return fail("need b - a <= d - c");
        }
        if p.is_nan() || r.is_nan() || p >= r {
            return fail("need p < r");
        }
        let lhs = q * (c - b);
        let rhs = p * (b - a) + r * (d - c);
        if (lhs - rhs).abs() > 1e-12 * lhs.abs().max(rhs.abs()).max(1.0) {
            return fail("weights must satisfy q(c - b) = p(b - a) + r(d - c)");
        }
        let (gb, gc) = ((self.g)(b), (self.g)(c));
        if gb.is_nan() || gc.is_nan() || gc <= gb {
            return fail("need g(c) > g(b)");
        }
        Ok(())
    }
}

/// Composite Simpson with doubling until successive estimates agree to
/// 1e-10 relative.
fn integrate(g: &impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    let simpson = |n: usize| {
        let h = (hi - lo) / n as f64;
        let inner: f64 = (1..n)
            .map(|i| g(lo + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 })
            .sum();
        (g(lo) + g(hi) + inner) * h / 3.0
    };
    let mut n = 2;
    let mut prev = simpson(n);
    while n < 1 << 22 {
        n *= 2;
        let next = simpson(n);
        if (next - prev).abs() <= 1e-10 * next.abs().max(f64::MIN_POSITIVE) {
            return next;
        }
        prev = next;
    }
    prev
}

/// Evaluates both sides by quadrature and reports the strict inequality.
pub fn lemma_interval_inequality<G: Fn(f64) -> f64>(case: &QuadratureCase<G>) -> Result<bool> {
    case.validate()?;
    let g = &case.g;
    let middle = case.q * integrate(g, case.b, case.c);
    let outer = case.p * integrate(g, case.a, case.b) + case.r * integrate(g, case.c, case.d);
    Ok(middle < outer)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::{integer_trump_certificate, majorize};
    use num_traits::{One, Zero};

    fn ints(v: &[u64]) -> DVector {
        DVector::from_integers(v.iter().copied()).unwrap()
    }

    #[test]
    fn bennett_small_cases() {
        let p = bennett_pair(2).unwrap();
        assert_eq!(p.x, ints(&[3, 3, 3, 9, 9, 9]));
        assert_eq!(p.y, ints(&[2, 2, 6, 6, 10, 10]));
        let p = bennett_pair(1).unwrap();
        assert_eq!((p.x.clone(), p.y.clone()), (ints(&[2, 2]), ints(&[1, 3])));
        assert!(majorize(&p.x, &p.y).holds);
        let p = bennett_pair(3).unwrap();
        assert_eq!(p.x, ints(&[4, 4, 4, 4, 12, 12, 12, 12, 20, 20, 20, 20]));
        assert_eq!(p.y, ints(&[3, 3, 3, 9, 9, 9, 15, 15, 15, 21, 21, 21]));
        assert_eq!(p.x.exact_sum(), Some(BigRational::from_integer(144.into())));
        assert!(bennett_pair(0).is_err());
    }

    #[test]
    fn bennett_invariants() {
        for n in 1..=8 {
            let p = bennett_pair(n).unwrap();
            assert_eq!(p.x.dim(), n * (n + 1));
            assert_eq!(p.x.exact_sum(), p.y.exact_sum());
            let xi = p.x.integers().unwrap();
            let yi = p.y.integers().unwrap();
            let parity = |v: &[BigInt]| {
                let two = BigInt::from(2);
                let first = &v[0] % &two;
                v.iter().all(|e| e % &two == first).then_some(first)
            };
            let (px, py) = (parity(&xi).unwrap(), parity(&yi).unwrap());
            assert_ne!(px, py, "n = {n}");
        }
    }

    #[test]
    fn bennett_flip_and_certificate() {
        for n in 2..=8 {
            let p = bennett_pair(n).unwrap();
            let m = majorize(&p.x, &p.y);
            assert!(!m.holds);
            assert_eq!(m.ascending_flip_k, Some(n + 1));
            assert_eq!(
                p.flip_pattern(),
                FlipPattern {
                    held_prefixes: n,
                    flip_index: Some(n + 1)
                }
            );
            let cert = integer_trump_certificate(&p.x, &p.y, &Default::default()).unwrap();
            assert!(cert.verdict.is_holds(), "n = {n}");
        }
        assert_eq!(
            bennett_pair(1).unwrap().flip_pattern(),
            FlipPattern {
                held_prefixes: 2,
                flip_index: None
            }
        );
    }

    #[test]
    fn nonexample_pairs() {
        let (x, y) = bennett05_pair(2).unwrap();
        assert_eq!(x, ints(&[7, 9, 11, 21, 27, 33]));
        assert_eq!(y, ints(&[5, 7, 15, 21, 25, 35]));
        let (x, y) = bennett05_pair(1).unwrap();
        assert_eq!((x.clone(), y.clone()), (ints(&[5, 7]), ints(&[3, 9])));
        for n in 1..=6 {
            let (x, y) = bennett05_pair(n).unwrap();
            assert_eq!(x.exact_sum(), y.exact_sum());
            let m = majorize(&x, &y);
            assert!(m.holds && m.exact, "n = {n}");
        }
    }

    fn exact_power_sum(v: &DVector, p: i32) -> BigRational {
        v.exact_values()
            .unwrap()
            .iter()
            .map(|e| {
                if p >= 0 {
                    num_traits::pow(e.clone(), p as usize)
                } else {
                    BigRational::one() / num_traits::pow(e.clone(), (-p) as usize)
                }
            })
            .fold(BigRational::zero(), |s, t| s + t)
    }

    #[test]
    fn cross_multiplication_soundness() {
        for n in 2..=6 {
            let pair = bennett_pair(n).unwrap();
            for p in [-2, 2, 3] {
                assert!(
                    exact_power_sum(&pair.x, p) < exact_power_sum(&pair.y, p),
                    "n = {n}, p = {p}"
                );
            }
            for p in [-0.5, 0.5] {
                let s = |v: &DVector| v.values().iter().map(|e| e.powf(p)).sum::<f64>();
                let (sx, sy) = (s(&pair.x), s(&pair.y));
                if p < 0.0 {
                    assert!(sx < sy);
                } else {
                    assert!(sx > sy);
                }
            }
        }
    }

    #[test]
    fn midpoint_values() {
        assert_eq!(midpoint_sum(2.0, 2, 0.0, 2.0).unwrap(), 1.25);
        assert!((midpoint_sum(2.0, 3, 0.0, 2.0).unwrap() - 35.0 / 27.0).abs() < 1e-15);
        for n in 1..10 {
            assert!((midpoint_sum(1.0, n, 0.0, 2.0).unwrap() - 1.0).abs() < 1e-15);
        }
        assert!(midpoint_sum(2.0, 0, 0.0, 2.0).is_err());
        assert!(midpoint_sum(-1.0, 2, -2.0, 2.0).is_err());
    }

    #[test]
    fn midpoint_monotone() {
        for p in [-2.0, -1.0, -0.5, 0.25, 0.5, 0.75, 2.0, 3.0, 5.0] {
            assert!(midpoint_monotone_check(p, 50, 0.0, 2.0).unwrap(), "p = {p}");
        }
        assert!(midpoint_monotone_check(1.0, 10, 0.0, 2.0).is_err());
        assert!(midpoint_monotone_check(2.0, 1, 0.0, 2.0).is_err());
    }

    #[test]
    fn midpoint_matches_bennett_term() {
        for p in [-1.0, 0.5, 2.0] {
            for n in 1..=20 {
                let m = midpoint_sum(p, n, 0.0, 2.0).unwrap();
                assert!((m - bennett_term(p, n)).abs() < 1e-13, "p = {p}, n = {n}");
            }
        }
    }

    #[test]
    fn lemma_examples() {
        let case = QuadratureCase::balanced(0.0, 1.0, 2.0, 3.5, 1.0, 2.0, |t: f64| t * t);
        assert_eq!(case.q, 4.0);
        assert!(lemma_interval_inequality(&case).unwrap());
        let linear = QuadratureCase::balanced(0.0, 1.0, 3.0, 5.0, 0.5, 1.0, |t: f64| 2.0 * t + 1.0);
        assert!(lemma_interval_inequality(&linear).unwrap());
        let bad = QuadratureCase { q: 1.0, ..case };
        assert!(lemma_interval_inequality(&bad).is_err());
    }

    #[test]
    fn simpson_is_exact_on_cubics() {
        let v = integrate(&|t: f64| t * t * t, 0.0, 2.0);
        assert!((v - 4.0).abs() < 1e-12);
    }
}
