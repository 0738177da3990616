//! Independent oracles and generators shared by the integration suites.
#![allow(dead_code)]

use diversify::{Matrix, Rational, Scalar, WeightVector, Weights};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

pub fn w(v: &[(i64, i64)]) -> WeightVector {
    Weights::new(v.iter().map(|&(n, d)| q(n, d)).collect()).unwrap()
}

/// Normalizes non-negative integer masses (not all zero) onto the simplex.
pub fn from_masses(masses: &[u32]) -> WeightVector {
    let total: i64 = masses.iter().map(|&m| m as i64).sum();
    Weights::new(masses.iter().map(|&m| q(m as i64, total)).collect()).unwrap()
}

/// Simplex points of length `lo..=hi`, with zeros allowed.
pub fn simplex(lo: usize, hi: usize) -> impl Strategy<Value = WeightVector> {
    prop::collection::vec(prop_oneof![1 => Just(0u32), 4 => 1u32..200], lo..=hi)
        .prop_filter("nonzero mass", |m| m.iter().any(|&x| x > 0))
        .prop_map(|m| from_masses(&m))
}

/// Two simplex points of the same length.
pub fn simplex_pair(lo: usize, hi: usize) -> impl Strategy<Value = (WeightVector, WeightVector)> {
    (lo..=hi).prop_flat_map(|n| (simplex(n, n), simplex(n, n)))
}

fn excess(v: &[Rational], t: &Rational) -> Rational {
    v.iter().filter(|x| *x > t).fold(Rational::zero(), |acc, x| acc + (x - t))
}

/// `beta` majorizes `alpha` iff totals match and `Σ (βᵢ - t)₊ >= Σ (αᵢ - t)₊`
/// at every threshold `t`; it suffices to check thresholds at the entries.
pub fn majorizes_oracle(beta: &[Rational], alpha: &[Rational]) -> bool {
    let total = |v: &[Rational]| v.iter().fold(Rational::zero(), |a, x| a + x);
    if beta.len() != alpha.len() || total(beta) != total(alpha) {
        return false;
    }
    beta.iter().chain(alpha).all(|t| excess(beta, t) >= excess(alpha, t))
}

/// Largest vertical gap between the diagonal and the Lorenz curve at `k/n`.
pub fn turnover_oracle(v: &[Rational]) -> Rational {
    let mut sorted = v.to_vec();
    sorted.sort();
    let n = v.len() as i64;
    let mut cum = Rational::zero();
    let mut best = Rational::zero();
    for (k, x) in sorted.iter().enumerate() {
        cum += x;
        let gap = q(k as i64 + 1, n) - &cum;
        if gap > best {
            best = gap;
        }
    }
    best
}

pub fn doubly_stochastic_oracle(m: &Matrix<Rational>) -> bool {
    let n = m.rows();
    if m.cols() != n {
        return false;
    }
    let nonneg = (0..n).all(|i| (0..n).all(|j| !m[(i, j)].is_negative()));
    let rows = (0..n).all(|i| (0..n).fold(Rational::zero(), |a, j| a + &m[(i, j)]).is_one());
    let cols = (0..n).all(|j| (0..n).fold(Rational::zero(), |a, i| a + &m[(i, j)]).is_one());
    nonneg && rows && cols
}

/// `v · M` computed directly.
pub fn row_times(v: &[Rational], m: &Matrix<Rational>) -> Vec<Rational> {
    (0..m.cols()).map(|j| (0..m.rows()).fold(Rational::zero(), |a, i| a + &v[i] * &m[(i, j)])).collect()
}

pub fn sorted(v: &[Rational]) -> Vec<Rational> {
    let mut s = v.to_vec();
    s.sort();
    s
}
