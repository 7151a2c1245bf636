//! Non-negative vectors, sorted views, tensor products and the zero-handling
//! conventions shared by every relation check.
//!
//! A [`DVector`] always carries its `f64` components. When every component is
//! known exactly (integers, or rationals supplied as such) it also carries an
//! exact copy as [`BigRational`]s, and the relation checks switch to exact
//! partial-sum arithmetic.

use std::fmt;
use std::ops::Deref;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest magnitude at which every integer is representable as an `f64`.
const MAX_EXACT_INT: f64 = 9_007_199_254_740_992.0;

/// Absolute tolerance on the total of a probability vector in float mode.
pub const PROB_SUM_TOL: f64 = 1e-12;

/// Finite non-negative real vector with cached sorted views.
#[derive(Debug, Clone)]
pub struct DVector {
    values: Vec<f64>,
    desc: Vec<f64>,
    asc: Vec<f64>,
    exact: Option<Exact>,
}

#[derive(Debug, Clone)]
struct Exact {
    values: Vec<BigRational>,
    desc: Vec<BigRational>,
}

impl DVector {
    /// Builds a vector, switching to exact mode when every component is an
    /// integer.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        validate(&values)?;
        let exact = if values
            .iter()
            .all(|v| v.fract() == 0.0 && *v < MAX_EXACT_INT)
        {
            let ints = values
                .iter()
                .map(|&v| BigRational::from_integer(BigInt::from(v as u64)))
                .collect();
            Some(ints)
        } else {
            None
        };
        Ok(Self::assemble(values, exact))
    }

    /// Builds a vector that never uses exact arithmetic.
    pub fn float(values: Vec<f64>) -> Result<Self> {
        validate(&values)?;
        Ok(Self::assemble(values, None))
    }

    pub fn from_rationals(values: Vec<BigRational>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Empty);
        }
        let mut approx = Vec::with_capacity(values.len());
        for (index, q) in values.iter().enumerate() {
            if q.is_negative() {
                return Err(Error::Negative {
                    index,
                    value: q.to_f64().unwrap_or(f64::NEG_INFINITY),
                });
            }
            let v = rational_to_f64(q);
            if !v.is_finite() {
                return Err(Error::NonFinite { index });
            }
            approx.push(v);
        }
        Ok(Self::assemble(approx, Some(values)))
    }

    pub fn from_integers<I, T>(values: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::from_rationals(
            values
                .into_iter()
                .map(|v| BigRational::from_integer(v.into()))
                .collect(),
        )
    }

    fn assemble(values: Vec<f64>, exact: Option<Vec<BigRational>>) -> Self {
        let mut desc = values.clone();
        desc.sort_by(|a, b| b.total_cmp(a));
        let mut asc = values.clone();
        asc.sort_by(|a, b| a.total_cmp(b));
        let exact = exact.map(|values| {
            let mut desc = values.clone();
            desc.sort_by(|a, b| b.cmp(a));
            Exact { values, desc }
        });
        Self {
            values,
            desc,
            asc,
            exact,
        }
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn sorted_desc(&self) -> &[f64] {
        &self.desc
    }

    pub fn sorted_asc(&self) -> &[f64] {
        &self.asc
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub fn exact_values(&self) -> Option<&[BigRational]> {
        self.exact.as_ref().map(|e| e.values.as_slice())
    }

    pub fn exact_sorted_desc(&self) -> Option<&[BigRational]> {
        self.exact.as_ref().map(|e| e.desc.as_slice())
    }

    /// Integer components, when the vector is exact and every entry is whole.
    pub fn integers(&self) -> Option<Vec<BigInt>> {
        let exact = self.exact_values()?;
        exact
            .iter()
            .map(|q| q.is_integer().then(|| q.to_integer()))
            .collect()
    }

    /// Drops the exact representation.
    pub fn to_float(&self) -> DVector {
        Self::assemble(self.values.clone(), None)
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn exact_sum(&self) -> Option<BigRational> {
        self.exact_values()
            .map(|v| v.iter().fold(BigRational::zero(), |acc, q| acc + q))
    }

    pub fn max(&self) -> f64 {
        self.desc[0]
    }

    pub fn min(&self) -> f64 {
        self.asc[0]
    }

    pub fn zero_count(&self) -> usize {
        self.values.iter().filter(|&&v| v == 0.0).count()
    }

    pub fn has_zero(&self) -> bool {
        self.asc[0] == 0.0
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.asc[0] > 0.0
    }

    /// True when the two vectors are rearrangements of each other.
    pub fn is_permutation_of(&self, other: &DVector) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        match (self.exact_sorted_desc(), other.exact_sorted_desc()) {
            (Some(a), Some(b)) => a == b,
            _ => self.desc == other.desc,
        }
    }

    /// Multiplies every component by `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<DVector> {
        DVector::float(self.values.iter().map(|v| v * c).collect())
    }

    /// Rescales to unit total (float mode).
    pub fn normalized(&self) -> Result<DVector> {
        let s = self.sum();
        if s <= 0.0 {
            return Err(Error::Domain("cannot normalize a zero vector".into()));
        }
        self.scaled(1.0 / s)
    }

    /// Reorders components so that entry `i` of the result is `self[perm[i]]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<DVector> {
        check_permutation(perm, self.dim())?;
        let values = perm.iter().map(|&i| self.values[i]).collect();
        let exact = self
            .exact_values()
            .map(|e| perm.iter().map(|&i| e[i].clone()).collect());
        Ok(Self::assemble(values, exact))
    }

    fn filtered(&self, keep: &[bool]) -> DVector {
        let values = self
            .values
            .iter()
            .zip(keep)
            .filter_map(|(v, k)| k.then_some(*v))
            .collect();
        let exact = self.exact_values().map(|e| {
            e.iter()
                .zip(keep)
                .filter(|&(_, k)| *k)
                .map(|(v, _)| v.clone())
                .collect()
        });
        Self::assemble(values, exact)
    }

    fn padded(&self, dim: usize) -> DVector {
        let mut values = self.values.clone();
        values.resize(dim, 0.0);
        let exact = self.exact_values().map(|e| {
            let mut e = e.to_vec();
            e.resize(dim, BigRational::zero());
            e
        });
        Self::assemble(values, exact)
    }
}

impl PartialEq for DVector {
    fn eq(&self, other: &Self) -> bool {
        match (self.exact_values(), other.exact_values()) {
            (Some(a), Some(b)) => a == b,
            _ => self.values == other.values,
        }
    }
}

impl Serialize for DVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.values.serialize(serializer)
    }
}

/// Whitespace-separated components. Exact entries print as integers or `p/q`.
impl fmt::Display for DVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match self.exact_values() {
                Some(e) if e[i].is_integer() => write!(f, "{}", e[i].numer())?,
                Some(e) => write!(f, "{}/{}", e[i].numer(), e[i].denom())?,
                None => write!(f, "{}", self.values[i])?,
            }
        }
        Ok(())
    }
}

fn validate(values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::Empty);
    }
    for (index, &value) in values.iter().enumerate() {
        if !value.is_finite() {
            return Err(Error::NonFinite { index });
        }
        if value < 0.0 {
            return Err(Error::Negative { index, value });
        }
    }
    Ok(())
}

pub(crate) fn check_permutation(perm: &[usize], dim: usize) -> Result<()> {
    if perm.len() != dim {
        return Err(Error::Precondition(format!(
            "permutation has length {}, expected {dim}",
            perm.len()
        )));
    }
    let mut seen = vec![false; dim];
    for &i in perm {
        if i >= dim || seen[i] {
            return Err(Error::Precondition("not a permutation".into()));
        }
        seen[i] = true;
    }
    Ok(())
}

/// Nearest `f64` to a rational, robust to huge numerators and denominators.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() {
            return n / d;
        }
    }
    q.to_f64().unwrap_or(f64::NAN)
}

/// Probability vector: non-negative with unit total.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ProbVector(DVector);

impl ProbVector {
    pub fn new(v: DVector) -> Result<Self> {
        let ok = match v.exact_sum() {
            Some(s) => s.is_one(),
            None => (v.sum() - 1.0).abs() <= PROB_SUM_TOL,
        };
        if ok {
            Ok(Self(v))
        } else {
            Err(Error::Precondition(format!(
                "components sum to {}, not 1",
                v.sum()
            )))
        }
    }

    /// Divides by the total, exactly when the input is exact.
    pub fn from_unnormalized(v: &DVector) -> Result<Self> {
        match v.exact_values() {
            Some(e) => {
                let s = v.exact_sum().unwrap_or_else(BigRational::zero);
                if s.is_zero() {
                    return Err(Error::Domain("cannot normalize a zero vector".into()));
                }
                Ok(Self(DVector::from_rationals(
                    e.iter().map(|q| q / &s).collect(),
                )?))
            }
            None => Ok(Self(v.normalized()?)),
        }
    }

    pub fn into_inner(self) -> DVector {
        self.0
    }
}

impl Deref for ProbVector {
    type Target = DVector;

    fn deref(&self) -> &DVector {
        &self.0
    }
}

/// Non-increasing rearrangement.
pub fn sort_desc(v: &DVector) -> DVector {
    match v.exact_sorted_desc() {
        Some(e) => DVector::assemble(v.desc.clone(), Some(e.to_vec())),
        None => DVector::assemble(v.desc.clone(), None),
    }
}

/// Non-decreasing rearrangement.
pub fn sort_asc(v: &DVector) -> DVector {
    let exact = v
        .exact_sorted_desc()
        .map(|e| e.iter().rev().cloned().collect());
    DVector::assemble(v.asc.clone(), exact)
}

/// All pairwise products `x_i * z_j`, row-major in `x`.
pub fn tensor(x: &DVector, z: &DVector) -> DVector {
    let values = x
        .values
        .iter()
        .flat_map(|a| z.values.iter().map(move |b| a * b))
        .collect();
    let exact = match (x.exact_values(), z.exact_values()) {
        (Some(a), Some(b)) => Some(
            a.iter()
                .flat_map(|p| b.iter().map(move |q| p * q))
                .collect(),
        ),
        _ => None,
    };
    DVector::assemble(values, exact)
}

/// A pair brought to a common dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedPair {
    pub x: DVector,
    pub y: DVector,
    /// Zeros were appended to one side.
    pub padded: bool,
    /// Number of matched zeros removed from each side.
    pub zeros_removed: usize,
}

/// Deletes matched zeros from both vectors, then zero-pads the shorter one.
pub fn normalize_pair(x: &DVector, y: &DVector) -> NormalizedPair {
    let remove = x.zero_count().min(y.zero_count());
    let strip = |v: &DVector| {
        if remove == 0 {
            return v.clone();
        }
        // Drop the trailing `remove` zeros so the surviving order is stable.
        let mut keep = vec![true; v.dim()];
        let mut left = remove;
        for i in (0..v.dim()).rev() {
            if left == 0 {
                break;
            }
            if v.values[i] == 0.0 {
                keep[i] = false;
                left -= 1;
            }
        }
        v.filtered(&keep)
    };
    let (mut x, mut y) = (strip(x), strip(y));
    // A vector of all zeros on both sides would vanish entirely.
    if x.values.is_empty() || y.values.is_empty() {
        x = DVector::assemble(vec![0.0], Some(vec![BigRational::zero()]));
        y = x.clone();
    }
    let dim = x.dim().max(y.dim());
    let padded = x.dim() != y.dim();
    if x.dim() < dim {
        x = x.padded(dim);
    }
    if y.dim() < dim {
        y = y.padded(dim);
    }
    NormalizedPair {
        x,
        y,
        padded,
        zeros_removed: remove,
    }
}

/// Shannon/von Neumann entropy `-sum x ln x`, with `0 ln 0 = 0`.
pub fn entropy(x: &DVector) -> f64 {
    -x.values
        .iter()
        .filter(|&&v| v > 0.0)
        .map(|&v| v * v.ln())
        .sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(values: &[f64]) -> DVector {
        DVector::new(values.to_vec()).unwrap()
    }

    #[test]
    fn sorting() {
        assert_eq!(sort_desc(&v(&[1., 3., 2.])).values(), &[3., 2., 1.]);
        assert_eq!(sort_desc(&v(&[5., 5., 5.])).values(), &[5., 5., 5.]);
        assert_eq!(
            sort_desc(&v(&[2., 2., 6., 6., 10., 10.])).values(),
            &[10., 10., 6., 6., 2., 2.]
        );
        assert_eq!(sort_asc(&v(&[1., 3., 2.])).values(), &[1., 2., 3.]);
        assert_eq!(sort_asc(&v(&[0., 0.])).values(), &[0., 0.]);
        assert_eq!(
            sort_asc(&v(&[9., 3., 9., 3., 9., 3.])).values(),
            &[3., 3., 3., 9., 9., 9.]
        );
        let once = sort_desc(&v(&[0.3, 0.1, 0.7]));
        assert_eq!(sort_desc(&once), once);
    }

    #[test]
    fn tensor_products() {
        assert_eq!(tensor(&v(&[1., 2.]), &v(&[3.])).values(), &[3., 6.]);
        assert_eq!(tensor(&v(&[1., 1.]), &v(&[1., 1.])).values(), &[1.; 4]);
        let t = tensor(&v(&[0.4, 0.1]), &v(&[0.6, 0.4]));
        for (a, b) in t.values().iter().zip([0.24, 0.16, 0.06, 0.04]) {
            assert!((a - b).abs() < 1e-15);
        }
        assert!(t.exact_values().is_none());
        assert!(tensor(&v(&[1., 2.]), &v(&[3., 4.])).is_exact());
    }

    #[test]
    fn normalize_pair_cases() {
        let p = normalize_pair(&v(&[1., 0., 2.]), &v(&[3., 0., 0.]));
        assert_eq!(p.x.values(), &[1., 2.]);
        assert_eq!(p.y.values(), &[3., 0.]);
        assert!(!p.padded);

        let p = normalize_pair(&v(&[1., 2.]), &v(&[3., 0., 0.]));
        assert_eq!(p.x.values(), &[1., 2., 0.]);
        assert_eq!(p.y.values(), &[3., 0., 0.]);
        assert!(p.padded);

        let p = normalize_pair(&v(&[1., 2.]), &v(&[1., 2.]));
        assert_eq!(p.x.values(), &[1., 2.]);
        assert_eq!(p.y.values(), &[1., 2.]);
    }

    #[test]
    fn entropy_values() {
        assert_eq!(entropy(&v(&[1., 0., 0.])), 0.0);
        assert!((entropy(&v(&[0.25; 4])) - 4f64.ln()).abs() < 1e-15);
        assert!((entropy(&v(&[0.5, 0.25, 0.25])) - 1.5 * 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_components() {
        assert_eq!(DVector::new(vec![]), Err(Error::Empty));
        assert!(matches!(
            DVector::new(vec![1.0, -2.0]),
            Err(Error::Negative { index: 1, .. })
        ));
        assert!(matches!(
            DVector::new(vec![f64::NAN]),
            Err(Error::NonFinite { index: 0 })
        ));
    }

    #[test]
    fn exactness_detection() {
        assert!(v(&[1., 2., 3.]).is_exact());
        assert!(!v(&[0.5, 0.5]).is_exact());
        assert_eq!(
            v(&[3., 1.]).exact_sum().unwrap(),
            BigRational::from_integer(4.into())
        );
    }

    #[test]
    fn prob_vector() {
        assert!(ProbVector::new(v(&[0.5, 0.25, 0.25])).is_ok());
        assert!(ProbVector::new(v(&[0.5, 0.25])).is_err());
        let p = ProbVector::from_unnormalized(&v(&[1., 3.])).unwrap();
        assert!(p.is_exact());
        assert_eq!(p.values(), &[0.25, 0.75]);
    }

    #[test]
    fn display_forms() {
        assert_eq!(v(&[1., 2., 3.]).to_string(), "1 2 3");
        assert_eq!(v(&[0.5, 0.25]).to_string(), "0.5 0.25");
        let q = DVector::from_rationals(vec![BigRational::new(1.into(), 3.into())]).unwrap();
        assert_eq!(q.to_string(), "1/3");
    }
}
