//! Lorenz curves and the unequal-length Lorenz order.

use crate::error::{Error, Result};
use crate::majorization::MajorizationRelation;
use crate::scalar::Scalar;
use crate::weights::Weights;

/// Piecewise-linear curve through `(k/n, cumulative ascending share)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LorenzCurve<T> {
    points: Vec<(T, T)>,
}

impl<T: Scalar> LorenzCurve<T> {
    /// Builds a curve from explicit breakpoints, checking the curve invariants.
    pub fn from_points(points: Vec<(T, T)>) -> Result<Self> {
        let curve = Self { points };
        curve.validate()?;
        Ok(curve)
    }

    pub fn points(&self) -> &[(T, T)] {
        &self.points
    }

    /// Checks endpoints, monotonicity, convexity and that the curve sits below the diagonal.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::DomainError(format!("invalid Lorenz curve: {msg}")));
        let (first, last) = match (self.points.first(), self.points.last()) {
            (Some(f), Some(l)) if self.points.len() >= 2 => (f, l),
            _ => return bad("needs at least two points"),
        };
        if !first.0.approx_eq(&T::zero()) || !first.1.approx_eq(&T::zero()) {
            return bad("must start at (0, 0)");
        }
        if !last.0.approx_eq(&T::one()) || !last.1.approx_eq(&T::one()) {
            return bad("must end at (1, 1)");
        }
        let mut prev_slope: Option<T> = None;
        for pair in self.points.windows(2) {
            let (x0, y0) = &pair[0];
            let (x1, y1) = &pair[1];
            if !x1.definitely_gt(x0) {
                return bad("abscissas must be strictly increasing");
            }
            if y1.definitely_gt(&T::one()) || y0.definitely_gt(y1) {
                return bad("ordinates must be non-decreasing within [0, 1]");
            }
            if y1.definitely_gt(x1) {
                return bad("curve rises above the diagonal");
            }
            let slope = (y1.clone() - y0.clone()) / (x1.clone() - x0.clone());
            if let Some(p) = &prev_slope {
                if p.definitely_gt(&slope) {
                    return bad("curve is not convex");
                }
            }
            prev_slope = Some(slope);
        }
        Ok(())
    }

    /// Linear interpolation at `t` in `[0, 1]`.
    pub fn value_at(&self, t: &T) -> T {
        let pts = &self.points;
        if *t <= pts[0].0 {
            return pts[0].1.clone();
        }
        for pair in pts.windows(2) {
            let (x0, y0) = &pair[0];
            let (x1, y1) = &pair[1];
            if t <= x1 {
                let frac = (t.clone() - x0.clone()) / (x1.clone() - x0.clone());
                return y0.clone() + frac * (y1.clone() - y0.clone());
            }
        }
        pts[pts.len() - 1].1.clone()
    }
}

/// Lorenz curve of `w`: cumulative sums of the ascending rearrangement at `k/n`.
pub fn lorenz_curve<T: Scalar>(w: &Weights<T>) -> LorenzCurve<T> {
    let n = w.len();
    let mut ascending = w.as_slice().to_vec();
    ascending.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    let mut points = Vec::with_capacity(n + 1);
    points.push((T::zero(), T::zero()));
    let mut acc = T::zero();
    for (k, a) in ascending.into_iter().enumerate() {
        acc = acc + a;
        let y = if k + 1 == n { T::one() } else { acc.clone() };
        points.push((T::from_ratio(k as i64 + 1, n as i64), y));
    }
    LorenzCurve { points }
}

/// Compares two curves pointwise at the union of their breakpoints.
///
/// `FirstMoreEqual` means `a` lies weakly above `b` everywhere and strictly somewhere.
/// Curves may come from vectors of different lengths.
pub fn lorenz_dominates<T: Scalar>(a: &LorenzCurve<T>, b: &LorenzCurve<T>) -> MajorizationRelation {
    let mut abscissas: Vec<T> = a.points.iter().chain(&b.points).map(|p| p.0.clone()).collect();
    abscissas.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    abscissas.dedup_by(|x, y| x.approx_eq(y));

    let (mut above, mut below) = (false, false);
    for t in &abscissas {
        let (ya, yb) = (a.value_at(t), b.value_at(t));
        if ya.definitely_gt(&yb) {
            above = true;
        } else if yb.definitely_gt(&ya) {
            below = true;
        }
    }
    match (above, below) {
        (false, false) => MajorizationRelation::EqualUpToPermutation,
        (true, false) => MajorizationRelation::FirstMoreEqual,
        (false, true) => MajorizationRelation::SecondMoreEqual,
        (true, true) => MajorizationRelation::Incomparable,
    }
}
