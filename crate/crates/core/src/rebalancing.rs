//! Turnover accounting and minimal-turnover rebalancing toward equal weights.
//!
//! The rebalancing polytope of `w` is the set of doubly stochastic `P` with
//! `w · P = u_n`. Every member moves the same theoretical turnover
//! `½ Σ |wᵢ - 1/n|`; the practical turnover scales it by the Frobenius
//! distance of `P` from the nearest permutation matrix.

use itertools::Itertools;
use rand::Rng;

use crate::error::{Error, Result};
use crate::majorization::majorizes;
use crate::matrix::{is_doubly_stochastic, DoublyStochastic, Matrix};
use crate::sampling::{random_permutation, rng_from_seed};
use crate::scalar::Scalar;
use crate::transform::{muirhead_decompose, TTransform};
use crate::weights::Weights;

/// Largest order for which the nearest permutation is found by enumeration.
const ENUMERATION_LIMIT: usize = 6;

/// `w - u_n`; components sum to zero.
#[derive(Clone, Debug, PartialEq)]
pub struct TurnoverVector<T> {
    pub deltas: Vec<T>,
}

pub fn turnover_vector<T: Scalar>(w: &Weights<T>) -> TurnoverVector<T> {
    let u = T::from_ratio(1, w.len() as i64);
    TurnoverVector { deltas: w.as_slice().iter().map(|x| x.clone() - u.clone()).collect() }
}

fn half_l1<T: Scalar>(a: &[T], b: &[T]) -> T {
    let total = a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + (x.clone() - y.clone()).abs());
    total / T::from_usize(2)
}

/// `½ Σ |wᵢ - 1/n|`, in `[0, 1 - 1/n]`.
pub fn turnover<T: Scalar>(w: &Weights<T>) -> T {
    let u = Weights::<T>::uniform(w.len());
    half_l1(w.as_slice(), u.as_slice())
}

/// `½ Σ |wᵢ - targetᵢ|`.
pub fn turnover_between<T: Scalar>(w: &Weights<T>, target: &Weights<T>) -> Result<T> {
    if w.len() != target.len() {
        return Err(Error::LengthMismatch(w.len(), target.len()));
    }
    Ok(half_l1(w.as_slice(), target.as_slice()))
}

/// Whether `p` is doubly stochastic and maps `w` exactly onto equal weights.
pub fn polytope_membership<T: Scalar>(p: &Matrix<T>, w: &Weights<T>) -> Result<bool> {
    if !p.is_square() || p.order() != w.len() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix against a vector of length {}",
            p.rows(),
            p.cols(),
            w.len()
        )));
    }
    if !is_doubly_stochastic(p) {
        return Ok(false);
    }
    let u = T::from_ratio(1, w.len() as i64);
    Ok(p.left_mul(w.as_slice())?.iter().all(|x| x.approx_eq(&u)))
}

/// The two-parameter family of 3×3 matrices rebalancing `(1/2, 1/3, 1/6)`,
/// with `u = p₁₂` and `v = p₂₁`. Validity (non-negativity) is left to the caller.
pub fn example_family<T: Scalar>(u: &T, v: &T) -> Matrix<T> {
    let half = T::from_ratio(1, 2);
    let two = T::from_usize(2);
    let corner = half.clone() - v.clone() * half.clone();
    let last = half.clone() + v.clone() * half - u.clone();
    let outer = vec![corner, u.clone(), last];
    let middle = vec![v.clone(), T::one() - two.clone() * u.clone(), two * u.clone() - v.clone()];
    Matrix::from_rows(vec![outer.clone(), middle, outer]).expect("3x3")
}

/// `min_Π ‖P - Π‖²_F` by enumerating every permutation.
pub fn min_permutation_distance_sq_enumerated<T: Scalar>(p: &Matrix<T>) -> T {
    let n = p.order();
    let best = (0..n)
        .permutations(n)
        .map(|perm| perm.iter().enumerate().fold(T::zero(), |acc, (i, &j)| acc + p[(i, j)].clone()))
        .fold(None::<T>, |best, s| match best {
            Some(b) if b >= s => Some(b),
            _ => Some(s),
        })
        .unwrap_or_else(T::zero);
    distance_from_diagonal_sum(p, best)
}

/// `min_Π ‖P - Π‖²_F` through a maximum-weight assignment.
pub fn min_permutation_distance_sq_assignment<T: Scalar>(p: &Matrix<T>) -> T {
    let cols = max_weight_assignment(p);
    let best = cols.iter().enumerate().fold(T::zero(), |acc, (i, &j)| acc + p[(i, j)].clone());
    distance_from_diagonal_sum(p, best)
}

/// `min_Π ‖P - Π‖²_F = ‖P‖² + n - 2 max_π Σ P_{i,π(i)}`.
pub fn min_permutation_distance_sq<T: Scalar>(p: &Matrix<T>) -> T {
    if p.order() <= ENUMERATION_LIMIT {
        min_permutation_distance_sq_enumerated(p)
    } else {
        min_permutation_distance_sq_assignment(p)
    }
}

fn distance_from_diagonal_sum<T: Scalar>(p: &Matrix<T>, diag: T) -> T {
    p.frobenius_sq() + T::from_usize(p.order()) - T::from_usize(2) * diag
}

/// Hungarian algorithm (shortest augmenting paths with potentials) on costs `-P`.
/// Returns the column assigned to each row.
fn max_weight_assignment<T: Scalar>(p: &Matrix<T>) -> Vec<usize> {
    let n = p.order();
    let cost = |i: usize, j: usize| -p[(i - 1, j - 1)].clone();
    let mut row_pot = vec![T::zero(); n + 1];
    let mut col_pot = vec![T::zero(); n + 1];
    let mut owner = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        owner[0] = i;
        let mut j0 = 0;
        let mut min_slack: Vec<Option<T>> = vec![None; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = owner[j0];
            let mut delta: Option<T> = None;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let reduced = cost(i0, j) - row_pot[i0].clone() - col_pot[j].clone();
                if min_slack[j].as_ref().is_none_or(|m| reduced < *m) {
                    min_slack[j] = Some(reduced);
                    way[j] = j0;
                }
                let slack = min_slack[j].clone().expect("set above");
                if delta.as_ref().is_none_or(|d| slack < *d) {
                    delta = Some(slack);
                    j1 = j;
                }
            }
            let delta = delta.expect("an unused column remains");
            for j in 0..=n {
                if used[j] {
                    row_pot[owner[j]] = row_pot[owner[j]].clone() + delta.clone();
                    col_pot[j] = col_pot[j].clone() - delta.clone();
                } else if let Some(m) = min_slack[j].as_mut() {
                    *m = m.clone() - delta.clone();
                }
            }
            j0 = j1;
            if owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            owner[j0] = owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assignment = vec![0; n];
    for j in 1..=n {
        assignment[owner[j] - 1] = j - 1;
    }
    assignment
}

/// `τ(w) · min_Π ‖P - Π‖_F` for a member `P` of the rebalancing polytope of `w`.
pub fn practical_turnover<T: Scalar>(w: &Weights<T>, p: &DoublyStochastic<T>) -> Result<f64> {
    if !polytope_membership(p.matrix(), w)? {
        return Err(Error::NotInPolytope);
    }
    let distance = min_permutation_distance_sq(p.matrix()).to_f64_lossy().max(0.0).sqrt();
    Ok(turnover(w).to_f64_lossy() * distance)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trade<T> {
    pub label: String,
    /// `target - source` for this alternative.
    pub delta: T,
}

/// Ordered T-transform steps taking `source` to `target`, with turnover and cost.
#[derive(Clone, Debug, PartialEq)]
pub struct RebalancePlan<T> {
    pub source: Weights<T>,
    pub target: Weights<T>,
    pub steps: Vec<TTransform<T>>,
    /// Final relabelling applied after the steps, when the target is ordered differently.
    pub relabel: Option<Vec<usize>>,
    /// Allocation after each step (and after the relabelling, if any).
    pub intermediates: Vec<Weights<T>>,
    pub turnover: T,
    /// Only defined when the target is equal weights.
    pub practical_turnover: Option<f64>,
    pub trades: Vec<Trade<T>>,
    pub cost: f64,
    pub cost_rate: f64,
}

impl<T: Scalar> RebalancePlan<T> {
    /// Replays the steps from `source`; `Ok(true)` when the result equals `target`.
    pub fn verify(&self) -> Result<bool> {
        let decomposition = crate::transform::Decomposition { steps: self.steps.clone(), relabel: self.relabel.clone() };
        let end = decomposition.apply(&self.source)?;
        Ok(end.as_slice().iter().zip(self.target.as_slice()).all(|(a, b)| a.approx_eq(b)))
    }

    pub fn traded_notional(&self) -> T {
        self.trades.iter().fold(T::zero(), |acc, t| acc + t.delta.abs())
    }
}

fn build_plan<T: Scalar>(w: &Weights<T>, target: &Weights<T>, cost_rate: f64, equalizing: bool) -> Result<RebalancePlan<T>> {
    let decomposition = muirhead_decompose(w, target)?;
    let intermediates = decomposition.trajectory(w)?;
    let trades: Vec<Trade<T>> = (0..w.len())
        .map(|i| Trade { label: w.label(i), delta: target[i].clone() - w[i].clone() })
        .collect();
    let turnover = turnover_between(w, target)?;
    let practical_turnover = if equalizing {
        let q = decomposition.matrix(w.len())?;
        Some(practical_turnover(w, &q)?)
    } else {
        None
    };
    let notional = trades.iter().fold(T::zero(), |acc, t| acc + t.delta.abs());
    let target = target.clone().relabel(w.labels().map(<[String]>::to_vec))?;
    Ok(RebalancePlan {
        source: w.clone(),
        target,
        steps: decomposition.steps,
        relabel: decomposition.relabel,
        intermediates,
        turnover,
        practical_turnover,
        trades,
        cost: cost_rate * notional.to_f64_lossy(),
        cost_rate,
    })
}

/// Plan to equal weights through at most `n - 1` T-transforms.
pub fn minimal_turnover_plan<T: Scalar>(w: &Weights<T>, cost_rate: f64) -> RebalancePlan<T> {
    build_plan(w, &Weights::uniform(w.len()), cost_rate, true).expect("every allocation majorizes equal weights")
}

/// Plan to any target majorized by `w`. Practical turnover is only reported for equal weights.
pub fn rebalance_to<T: Scalar>(w: &Weights<T>, target: &Weights<T>, cost_rate: f64) -> Result<RebalancePlan<T>> {
    if w.len() != target.len() {
        return Err(Error::LengthMismatch(w.len(), target.len()));
    }
    if !majorizes(w, target)? {
        return Err(Error::NotMajorized);
    }
    build_plan(w, target, cost_rate, target.is_uniform())
}

/// Equalizing product of T-transforms that pairs a random surplus coordinate with
/// a random deficit coordinate at each step.
fn random_equalizing_product<T: Scalar, R: Rng>(rng: &mut R, w: &Weights<T>) -> Result<DoublyStochastic<T>> {
    let n = w.len();
    let u = T::from_ratio(1, n as i64);
    let mut current = w.as_slice().to_vec();
    let mut acc = DoublyStochastic::identity(n);
    for _ in 0..n {
        let surplus: Vec<usize> = (0..n).filter(|&i| current[i].definitely_gt(&u)).collect();
        let deficit: Vec<usize> = (0..n).filter(|&i| u.definitely_gt(&current[i])).collect();
        if surplus.is_empty() || deficit.is_empty() {
            break;
        }
        let j = surplus[rng.gen_range(0..surplus.len())];
        let k = deficit[rng.gen_range(0..deficit.len())];
        let give = current[j].clone() - u.clone();
        let need = u.clone() - current[k].clone();
        let delta = if give < need { give } else { need };
        let lambda = T::one() - delta.clone() / (current[j].clone() - current[k].clone());
        let t = TTransform::new(j, k, lambda)?;
        t.apply_slice(&mut current)?;
        acc = acc.compose(&t.to_matrix(n)?)?;
    }
    Ok(acc)
}

/// `k` seeded members of the rebalancing polytope of `w`: random convex
/// combinations of the constant matrix, equalizing T-transform products, and
/// their right-multiplications by permutations. Each is re-verified.
pub fn sample_polytope<T: Scalar>(w: &Weights<T>, seed: u64, k: usize) -> Result<Vec<DoublyStochastic<T>>> {
    let n = w.len();
    let mut rng = rng_from_seed(seed);
    let mut generators = vec![DoublyStochastic::constant(n)];
    generators.push(muirhead_decompose(w, &Weights::uniform(n))?.matrix(n)?);
    let mut out = Vec::with_capacity(k);
    while out.len() < k {
        let parts = rng.gen_range(1..=3);
        let mut members = Vec::with_capacity(parts);
        for _ in 0..parts {
            let base = match rng.gen_range(0..3) {
                0 => generators[rng.gen_range(0..generators.len())].clone(),
                _ => random_equalizing_product(&mut rng, w)?,
            };
            let perm = DoublyStochastic::permutation(&random_permutation(&mut rng, n))?;
            members.push(if rng.gen_bool(0.5) { base.compose(&perm)? } else { base });
        }
        let mut combined = Matrix::<T>::zeros(n, n);
        let raw: Vec<i64> = (0..members.len()).map(|_| rng.gen_range(1..=20)).collect();
        let total: i64 = raw.iter().sum();
        for (m, c) in members.iter().zip(&raw) {
            let weight = T::from_ratio(*c, total);
            combined = Matrix::from_fn(n, n, |i, j| combined[(i, j)].clone() + weight.clone() * m.matrix()[(i, j)].clone());
        }
        if polytope_membership(&combined, w)? {
            out.push(DoublyStochastic::from_valid(combined));
        }
    }
    Ok(out)
}
