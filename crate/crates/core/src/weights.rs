//! Allocation weight vectors: points on the probability simplex.

use std::collections::HashSet;
use std::ops::Index;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Non-negative weights summing to one, optionally labelled.
///
/// For exact scalars both constraints hold exactly; for floats they hold
/// up to [`Scalar::tolerance`].
#[derive(Clone, Debug, PartialEq)]
pub struct Weights<T> {
    weights: Vec<T>,
    labels: Option<Vec<String>>,
}

impl<T: Scalar> Weights<T> {
    pub fn new(weights: Vec<T>) -> Result<Self> {
        validate(&weights)?;
        Ok(Self { weights, labels: None })
    }

    pub fn with_labels(weights: Vec<T>, labels: Vec<String>) -> Result<Self> {
        validate(&weights)?;
        if labels.len() != weights.len() {
            return Err(Error::LengthMismatch(weights.len(), labels.len()));
        }
        let mut seen = HashSet::new();
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(Error::InvalidWeights(format!("duplicate label {label:?}")));
            }
        }
        Ok(Self { weights, labels: Some(labels) })
    }

    /// The equal-weighted vector `(1/n, ..., 1/n)`.
    ///
    /// # Panics
    /// If `n == 0`.
    pub fn uniform(n: usize) -> Self {
        assert!(n >= 1, "uniform vector needs n >= 1");
        let w = T::from_ratio(1, n as i64);
        Self { weights: vec![w; n], labels: None }
    }

    /// The basis vector with all weight on coordinate `i`.
    pub fn basis(i: usize, n: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, order: n });
        }
        let mut weights = vec![T::zero(); n];
        weights[i] = T::one();
        Ok(Self { weights, labels: None })
    }

    /// Builds from weights that are already known to be valid. Debug builds still check.
    pub(crate) fn from_valid(weights: Vec<T>, labels: Option<Vec<String>>) -> Self {
        debug_assert!(validate(&weights).is_ok(), "invalid weights {weights:?}");
        Self { weights, labels }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.weights
    }

    pub fn into_vec(self) -> Vec<T> {
        self.weights
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Label of coordinate `i`, falling back to its 1-based position.
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(labels) => labels[i].clone(),
            None => format!("{}", i + 1),
        }
    }

    /// Replaces (or removes) the labels.
    pub fn relabel(self, labels: Option<Vec<String>>) -> Result<Self> {
        match labels {
            Some(labels) => Self::with_labels(self.weights, labels),
            None => Ok(Self { weights: self.weights, labels: None }),
        }
    }

    /// Output coordinate `i` takes the input coordinate `perm[i]`. Labels move along.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.len())?;
        let weights = perm.iter().map(|&p| self.weights[p].clone()).collect();
        let labels = self
            .labels
            .as_ref()
            .map(|l| perm.iter().map(|&p| l[p].clone()).collect());
        Ok(Self { weights, labels })
    }

    pub fn is_uniform(&self) -> bool {
        let u = T::from_ratio(1, self.len() as i64);
        self.weights.iter().all(|w| w.approx_eq(&u))
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.weights.iter().map(Scalar::to_f64_lossy).collect()
    }

    /// Converts into another scalar type, re-validating the simplex constraints.
    pub fn convert<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Result<Weights<U>> {
        let weights: Vec<U> = self.weights.iter().map(f).collect();
        validate(&weights)?;
        Ok(Weights { weights, labels: self.labels.clone() })
    }

    /// Zero-pads to length `n`. Padding coordinates get labels `_pad{i}` when labelled.
    pub fn padded(&self, n: usize) -> Result<Self> {
        if n < self.len() {
            return Err(Error::LengthMismatch(self.len(), n));
        }
        let mut weights = self.weights.clone();
        weights.resize(n, T::zero());
        let labels = self.labels.as_ref().map(|l| {
            let mut l = l.clone();
            l.extend((l.len()..n).map(|i| format!("_pad{}", i + 1)));
            l
        });
        Ok(Self { weights, labels })
    }

    /// Convex mixture `t * self + (1 - t) * other`; labels of `self` are kept.
    pub fn mix(&self, other: &Self, t: &T) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch(self.len(), other.len()));
        }
        if *t < T::zero() || *t > T::one() {
            return Err(Error::DomainError("mixing weight outside [0, 1]".into()));
        }
        let s = T::one() - t.clone();
        let weights = self
            .weights
            .iter()
            .zip(&other.weights)
            .map(|(a, b)| t.clone() * a.clone() + s.clone() * b.clone())
            .collect();
        Ok(Self { weights, labels: self.labels.clone() })
    }
}

impl<T> Index<usize> for Weights<T> {
    type Output = T;

    fn index(&self, i: usize) -> &T {
        &self.weights[i]
    }
}

fn validate<T: Scalar>(weights: &[T]) -> Result<()> {
    if weights.is_empty() {
        return Err(Error::InvalidWeights("empty weight vector".into()));
    }
    if let Some((i, w)) = weights.iter().enumerate().find(|(_, w)| w.is_negative()) {
        // floats within tolerance of zero are accepted
        if !w.is_approx_zero() {
            return Err(Error::InvalidWeights(format!("negative weight at position {}", i + 1)));
        }
    }
    let total = weights.iter().cloned().fold(T::zero(), |a, b| a + b);
    if !total.approx_eq(&T::one()) {
        return Err(Error::InvalidWeights(format!(
            "weights sum to {} instead of 1",
            total.to_f64_lossy()
        )));
    }
    Ok(())
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::LengthMismatch(n, perm.len()));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::DomainError(format!("{perm:?} is not a permutation")));
        }
    }
    Ok(())
}
