//! The majorization preorder on weight vectors.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::weights::Weights;

/// Outcome of comparing two allocations under majorization.
///
/// "More equal" means majorized by the other vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MajorizationRelation {
    EqualUpToPermutation,
    FirstMoreEqual,
    SecondMoreEqual,
    Incomparable,
}

impl std::fmt::Display for MajorizationRelation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Debug::fmt(self, f)
    }
}

pub(crate) fn desc_cmp<T: Scalar>(a: &T, b: &T) -> Ordering {
    b.partial_cmp(a).unwrap_or(Ordering::Equal)
}

/// Indices that sort `values` in non-increasing order (stable).
pub fn decreasing_order<T: Scalar>(values: &[T]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&i, &j| desc_cmp(&values[i], &values[j]));
    idx
}

pub fn sorted_desc<T: Scalar>(values: &[T]) -> Vec<T> {
    let mut v = values.to_vec();
    v.sort_by(desc_cmp);
    v
}

/// The decreasing rearrangement; labels are reordered in lockstep.
pub fn decreasing_rearrangement<T: Scalar>(w: &Weights<T>) -> Weights<T> {
    let order = decreasing_order(w.as_slice());
    w.permuted(&order).expect("sort order is a permutation")
}

/// Differences of descending partial sums, `S_beta(k) - S_alpha(k)` for `k = 1..n`.
fn partial_sum_gaps<T: Scalar>(beta: &[T], alpha: &[T]) -> Vec<T> {
    let b = sorted_desc(beta);
    let a = sorted_desc(alpha);
    let mut gap = T::zero();
    b.into_iter()
        .zip(a)
        .map(|(x, y)| {
            gap = gap.clone() + x - y;
            gap.clone()
        })
        .collect()
}

/// Slice form of [`majorizes`]; both slices must carry equal totals.
pub fn majorizes_slices<T: Scalar>(beta: &[T], alpha: &[T]) -> Result<bool> {
    if beta.len() != alpha.len() {
        return Err(Error::LengthMismatch(beta.len(), alpha.len()));
    }
    Ok(partial_sum_gaps(beta, alpha)
        .iter()
        .all(|g| !g.is_negative() || g.is_approx_zero()))
}

/// True iff `beta` majorizes `alpha`: every descending partial sum of `beta`
/// is at least the corresponding one of `alpha`.
pub fn majorizes<T: Scalar>(beta: &Weights<T>, alpha: &Weights<T>) -> Result<bool> {
    majorizes_slices(beta.as_slice(), alpha.as_slice())
}

pub fn equal_up_to_permutation<T: Scalar>(a: &[T], b: &[T]) -> bool {
    a.len() == b.len()
        && sorted_desc(a)
            .iter()
            .zip(sorted_desc(b))
            .all(|(x, y)| x.approx_eq(&y))
}

pub fn compare<T: Scalar>(alpha: &Weights<T>, beta: &Weights<T>) -> Result<MajorizationRelation> {
    compare_slices(alpha.as_slice(), beta.as_slice())
}

pub fn compare_slices<T: Scalar>(alpha: &[T], beta: &[T]) -> Result<MajorizationRelation> {
    if alpha.len() != beta.len() {
        return Err(Error::LengthMismatch(alpha.len(), beta.len()));
    }
    if equal_up_to_permutation(alpha, beta) {
        return Ok(MajorizationRelation::EqualUpToPermutation);
    }
    Ok(match (majorizes_slices(beta, alpha)?, majorizes_slices(alpha, beta)?) {
        (true, _) => MajorizationRelation::FirstMoreEqual,
        (false, true) => MajorizationRelation::SecondMoreEqual,
        (false, false) => MajorizationRelation::Incomparable,
    })
}
