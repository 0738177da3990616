//! T-transforms (Pigou-Dalton transfers) and the constructive
//! Muirhead / Hardy-Littlewood-Polya decomposition.

use std::fmt;

use crate::error::{Error, Result};
use crate::majorization::{decreasing_order, majorizes_slices, sorted_desc};
use crate::matrix::{DoublyStochastic, Matrix};
use crate::scalar::Scalar;
use crate::weights::Weights;

/// `λ I + (1 - λ) Π_{jk}`: averages coordinates `j` and `k`.
///
/// Indices are zero-based; [`fmt::Display`] and the serialized plan format use
/// one-based positions.
#[derive(Clone, Debug, PartialEq)]
pub struct TTransform<T> {
    pub j: usize,
    pub k: usize,
    pub lambda: T,
}

impl<T: Scalar> TTransform<T> {
    pub fn new(j: usize, k: usize, lambda: T) -> Result<Self> {
        if j == k {
            return Err(Error::InvalidTransform(format!("indices must differ, got {j} twice")));
        }
        if lambda < T::zero() || lambda > T::one() {
            return Err(Error::InvalidTransform("lambda outside [0, 1]".into()));
        }
        Ok(Self { j, k, lambda })
    }

    fn check_order(&self, n: usize) -> Result<()> {
        for index in [self.j, self.k] {
            if index >= n {
                return Err(Error::IndexOutOfRange { index, order: n });
            }
        }
        Ok(())
    }

    /// In-place `v ← v T`.
    pub fn apply_slice(&self, v: &mut [T]) -> Result<()> {
        self.check_order(v.len())?;
        let (a, b) = (v[self.j].clone(), v[self.k].clone());
        let mu = T::one() - self.lambda.clone();
        v[self.j] = self.lambda.clone() * a.clone() + mu.clone() * b.clone();
        v[self.k] = self.lambda.clone() * b + mu * a;
        Ok(())
    }

    pub fn apply(&self, w: &Weights<T>) -> Result<Weights<T>> {
        let mut v = w.as_slice().to_vec();
        self.apply_slice(&mut v)?;
        Ok(Weights::from_valid(v, w.labels().map(<[String]>::to_vec)))
    }

    pub fn to_matrix(&self, n: usize) -> Result<DoublyStochastic<T>> {
        self.check_order(n)?;
        let mu = T::one() - self.lambda.clone();
        let mut m = Matrix::identity(n);
        m.set(self.j, self.j, self.lambda.clone());
        m.set(self.k, self.k, self.lambda.clone());
        m.set(self.j, self.k, mu.clone());
        m.set(self.k, self.j, mu);
        Ok(DoublyStochastic::from_valid(m))
    }

    /// True when the transform leaves `v` unchanged or merely swaps two coordinates.
    pub fn permutes(&self, v: &[T]) -> bool {
        self.lambda.is_zero() || self.lambda.is_one() || v[self.j].approx_eq(&v[self.k])
    }
}

impl<T: Scalar> fmt::Display for TTransform<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({}, {}; {:?})", self.j + 1, self.k + 1, self.lambda)
    }
}

/// Ordered T-transforms followed by an optional relabelling permutation.
///
/// The relabelling is only present when the target is not ordered like the
/// source; it does not count toward the `n - 1` step bound.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition<T> {
    pub steps: Vec<TTransform<T>>,
    /// Output position `i` takes coordinate `relabel[i]`, as in [`Weights::permuted`].
    pub relabel: Option<Vec<usize>>,
}

impl<T: Scalar> Decomposition<T> {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty() && self.relabel.is_none()
    }

    /// Applies every step and the relabelling, returning all intermediate vectors.
    pub fn trajectory(&self, source: &Weights<T>) -> Result<Vec<Weights<T>>> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut current = source.clone();
        for step in &self.steps {
            current = step.apply(&current)?;
            out.push(current.clone());
        }
        if let Some(perm) = &self.relabel {
            let values = current.permuted(perm)?.into_vec();
            current = Weights::from_valid(values, source.labels().map(<[String]>::to_vec));
            out.push(current);
        }
        Ok(out)
    }

    pub fn apply(&self, source: &Weights<T>) -> Result<Weights<T>> {
        Ok(self.trajectory(source)?.pop().unwrap_or_else(|| source.clone()))
    }

    /// The product of all step matrices and the relabelling.
    pub fn matrix(&self, n: usize) -> Result<DoublyStochastic<T>> {
        let mut acc = DoublyStochastic::identity(n);
        for step in &self.steps {
            acc = acc.compose(&step.to_matrix(n)?)?;
        }
        if let Some(perm) = &self.relabel {
            acc = acc.compose(&DoublyStochastic::permutation(perm)?)?;
        }
        Ok(acc)
    }
}

/// Decomposes the passage from `beta` to `alpha` (with `beta` majorizing `alpha`)
/// into at most `n - 1` T-transforms.
///
/// Works against the target sorted like `beta`. At each step the last surplus
/// position (current value above target) sends weight to the last deficit
/// position, which always lies after it. The transfer stops as soon as one of
/// the two reaches its target, so every step settles at least one coordinate
/// and the descending partial-sum dominance over the target is preserved.
pub fn muirhead_decompose<T: Scalar>(beta: &Weights<T>, alpha: &Weights<T>) -> Result<Decomposition<T>> {
    let n = beta.len();
    if alpha.len() != n {
        return Err(Error::LengthMismatch(n, alpha.len()));
    }
    if !majorizes_slices(beta.as_slice(), alpha.as_slice())? {
        return Err(Error::NotMajorized);
    }

    // position i of the sorted frame is coordinate order[i] of beta
    let order = decreasing_order(beta.as_slice());
    let target_sorted = sorted_desc(alpha.as_slice());
    let mut target = vec![T::zero(); n];
    for (pos, &idx) in order.iter().enumerate() {
        target[idx] = target_sorted[pos].clone();
    }

    let mut current = beta.as_slice().to_vec();
    let mut steps = Vec::new();
    // each step settles a coordinate; the bound only guards float round-off
    for _ in 0..n {
        let gap = |pos: usize| current[order[pos]].clone() - target[order[pos]].clone();
        let surplus = (0..n).rev().find(|&p| gap(p).definitely_gt(&T::zero()));
        let deficit = (0..n).rev().find(|&p| T::zero().definitely_gt(&gap(p)));
        let (sp, dp) = match (surplus, deficit) {
            (Some(s), Some(d)) => (s, d),
            _ => break,
        };
        debug_assert!(sp < dp);
        let (j, k) = (order[sp], order[dp]);
        let give = gap(sp);
        let need = -gap(dp);
        let delta = if give < need { give } else { need };
        let spread = current[j].clone() - current[k].clone();
        let lambda = T::one() - delta.clone() / spread;
        current[j] = current[j].clone() - delta.clone();
        current[k] = current[k].clone() + delta;
        steps.push(TTransform { j, k, lambda });
    }

    let relabel = relabelling(&current, alpha.as_slice());
    Ok(Decomposition { steps, relabel })
}

/// Permutation taking `from` onto `to` (equal multisets), or `None` when they already agree.
fn relabelling<T: Scalar>(from: &[T], to: &[T]) -> Option<Vec<usize>> {
    if from.iter().zip(to).all(|(a, b)| a.approx_eq(b)) {
        return None;
    }
    let mut used = vec![false; from.len()];
    let mut perm = Vec::with_capacity(to.len());
    for (i, t) in to.iter().enumerate() {
        // keep coordinates that already match in place
        let pick = if !used[i] && from[i].approx_eq(t) {
            i
        } else {
            (0..from.len())
                .find(|&c| !used[c] && from[c].approx_eq(t) && !from[c].approx_eq(&to[c]))
                .or_else(|| (0..from.len()).find(|&c| !used[c] && from[c].approx_eq(t)))
                .expect("majorization pair must end on a rearrangement of the target")
        };
        used[pick] = true;
        perm.push(pick);
    }
    Some(perm)
}

/// Doubly stochastic `P` with `alpha = beta · P`, built as the product of the
/// Muirhead decomposition.
pub fn hlp_witness<T: Scalar>(beta: &Weights<T>, alpha: &Weights<T>) -> Result<DoublyStochastic<T>> {
    muirhead_decompose(beta, alpha)?.matrix(beta.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{apply, is_doubly_stochastic, is_permutation};
    use crate::{Rational, WeightVector};

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn w(v: &[(i64, i64)]) -> WeightVector {
        Weights::new(v.iter().map(|&(n, d)| q(n, d)).collect()).unwrap()
    }

    fn p00() -> Matrix<Rational> {
        let h = q(1, 2);
        let (z, o) = (q(0, 1), q(1, 1));
        Matrix::from_rows(vec![
            vec![h.clone(), z.clone(), h.clone()],
            vec![z.clone(), o, z],
            vec![h.clone(), q(0, 1), h],
        ])
        .unwrap()
    }

    #[test]
    fn t_matrix_examples() {
        let t = TTransform::new(0, 2, q(1, 2)).unwrap();
        assert_eq!(t.to_matrix(3).unwrap().matrix(), &p00());
        let id = TTransform::new(0, 1, q(1, 1)).unwrap().to_matrix(2).unwrap();
        assert_eq!(id.matrix(), &Matrix::identity(2));
        let swap = TTransform::new(0, 1, q(0, 1)).unwrap().to_matrix(2).unwrap();
        assert!(is_permutation(swap.matrix()) && swap.matrix()[(0, 1)] == q(1, 1));
        assert_eq!(
            TTransform::new(0, 3, q(1, 2)).unwrap().to_matrix(3),
            Err(Error::IndexOutOfRange { index: 3, order: 3 })
        );
    }

    #[test]
    fn t_transform_validation() {
        assert!(TTransform::new(1, 1, q(1, 2)).is_err());
        assert!(TTransform::new(0, 1, q(3, 2)).is_err());
        assert!(TTransform::new(0, 1, q(-1, 2)).is_err());
    }

    #[test]
    fn matrix_and_slice_action_agree() {
        let t = TTransform::new(2, 0, q(1, 3)).unwrap();
        let b = w(&[(1, 2), (1, 3), (1, 6)]);
        let by_matrix = apply(&b, &t.to_matrix(3).unwrap()).unwrap();
        assert_eq!(t.apply(&b).unwrap(), by_matrix);
        assert_eq!(by_matrix, w(&[(5, 18), (1, 3), (7, 18)]));
    }

    #[test]
    fn decompose_single_step_example() {
        let d = muirhead_decompose(&w(&[(1, 2), (1, 3), (1, 6)]), &WeightVector::uniform(3)).unwrap();
        assert_eq!(d.steps, vec![TTransform { j: 0, k: 2, lambda: q(1, 2) }]);
        assert!(d.relabel.is_none());
    }

    #[test]
    fn decompose_two_step_example() {
        let beta = w(&[(7, 10), (1, 5), (1, 10)]);
        let d = muirhead_decompose(&beta, &WeightVector::uniform(3)).unwrap();
        assert_eq!(
            d.steps,
            vec![TTransform { j: 0, k: 2, lambda: q(11, 18) }, TTransform { j: 0, k: 1, lambda: q(1, 2) }]
        );
        // exact product oracle
        let t1 = d.steps[0].to_matrix(3).unwrap();
        let t2 = d.steps[1].to_matrix(3).unwrap();
        let prod = t1.compose(&t2).unwrap();
        assert_eq!(apply(&beta, &prod).unwrap(), WeightVector::uniform(3));
    }

    #[test]
    fn decompose_identical_is_empty() {
        let b = w(&[(3, 5), (3, 10), (1, 10)]);
        let d = muirhead_decompose(&b, &b).unwrap();
        assert!(d.is_empty());
        assert_eq!(hlp_witness(&b, &b).unwrap().matrix(), &Matrix::identity(3));
    }

    #[test]
    fn decompose_rejects_non_majorized() {
        let a = w(&[(3, 5), (1, 5), (1, 5)]);
        let b = w(&[(1, 2), (9, 20), (1, 20)]);
        assert_eq!(muirhead_decompose(&b, &a), Err(Error::NotMajorized));
        assert_eq!(muirhead_decompose(&b, &WeightVector::uniform(2)), Err(Error::LengthMismatch(3, 2)));
    }

    #[test]
    fn decompose_with_relabelling() {
        let beta = w(&[(1, 10), (7, 10), (1, 5)]);
        let alpha = w(&[(1, 2), (1, 6), (1, 3)]);
        let d = muirhead_decompose(&beta, &alpha).unwrap();
        assert!(d.steps.len() <= 2);
        assert_eq!(d.apply(&beta).unwrap(), alpha);
        let p = hlp_witness(&beta, &alpha).unwrap();
        assert!(is_doubly_stochastic(p.matrix()));
        assert_eq!(apply(&beta, &p).unwrap(), alpha);
    }

    #[test]
    fn witness_examples() {
        let p = hlp_witness(&w(&[(1, 2), (1, 3), (1, 6)]), &WeightVector::uniform(3)).unwrap();
        assert_eq!(p.matrix(), &p00());
    }

    #[test]
    fn float_decomposition() {
        let beta = Weights::new(vec![0.7f64, 0.2, 0.1]).unwrap();
        let d = muirhead_decompose(&beta, &Weights::uniform(3)).unwrap();
        assert_eq!(d.steps.len(), 2);
        assert!((d.steps[0].lambda - 11.0 / 18.0).abs() < 1e-12);
        let out = d.apply(&beta).unwrap();
        assert!(out.as_slice().iter().all(|x| (x - 1.0 / 3.0).abs() < 1e-12));
    }
}
