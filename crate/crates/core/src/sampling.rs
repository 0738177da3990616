//! Seeded generators for simplex points, permutations, T-transforms and
//! doubly stochastic matrices. Every routine takes its RNG explicitly.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matrix::{DoublyStochastic, Matrix};
use crate::scalar::{Rational, Scalar};
use crate::transform::TTransform;
use crate::weights::Weights;
use crate::WeightVector;

/// Resolution of the exponential draws behind [`random_simplex`].
const GRID: f64 = 1000.0;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Exact rational point drawn approximately uniformly (Dirichlet(1)) from the simplex:
/// independent exponential draws, quantized to integers, then normalized.
pub fn random_simplex<R: Rng + ?Sized>(rng: &mut R, n: usize) -> WeightVector {
    let draws: Vec<i64> = (0..n)
        .map(|_| {
            let u: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
            ((-u.ln() * GRID).ceil() as i64).max(1)
        })
        .collect();
    let total: i64 = draws.iter().sum();
    let weights = draws
        .into_iter()
        .map(|k| Rational::new(BigInt::from(k), BigInt::from(total)))
        .collect();
    Weights::from_valid(weights, None)
}

/// Like [`random_simplex`] but every weight is at least `floor`.
pub fn random_interior<R: Rng + ?Sized>(rng: &mut R, n: usize, floor: f64) -> WeightVector {
    loop {
        let w = random_simplex(rng, n);
        if w.to_f64().iter().all(|&x| x > floor) {
            return w;
        }
    }
}

/// Random simplex point whose support is a random subset of size `support` (zeros elsewhere).
pub fn random_sparse_simplex<R: Rng + ?Sized>(rng: &mut R, n: usize, support: usize) -> WeightVector {
    let support = support.clamp(1, n);
    let inner = random_simplex(rng, support).into_vec();
    let mut weights = inner;
    weights.resize(n, Rational::from_ratio(0, 1));
    weights.shuffle(rng);
    Weights::from_valid(weights, None)
}

pub fn random_permutation<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

/// Random rational in `[0, 1]` with denominator `den`.
pub fn random_unit_rational<R: Rng + ?Sized>(rng: &mut R, den: i64) -> Rational {
    Rational::from_ratio(rng.gen_range(0..=den), den)
}

/// T-transform on a random pair with `lambda = m / den`, `m` uniform in `0..=den`.
pub fn random_t_transform<R: Rng + ?Sized>(rng: &mut R, n: usize, den: i64) -> TTransform<Rational> {
    assert!(n >= 2, "T-transforms need n >= 2");
    let j = rng.gen_range(0..n);
    let mut k = rng.gen_range(0..n - 1);
    if k >= j {
        k += 1;
    }
    TTransform { j, k, lambda: random_unit_rational(rng, den) }
}

/// A pair `(alpha, beta)` with `beta` majorizing `alpha`: `alpha` is `beta` pushed
/// through up to `max_steps` random T-transforms and then randomly permuted.
pub fn random_majorization_pair<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    max_steps: usize,
) -> (WeightVector, WeightVector) {
    let beta = random_simplex(rng, n);
    let mut alpha = beta.as_slice().to_vec();
    let steps = rng.gen_range(1..=max_steps.max(1));
    for _ in 0..steps {
        random_t_transform(rng, n, 20).apply_slice(&mut alpha).expect("indices in range");
    }
    alpha.shuffle(rng);
    (Weights::from_valid(alpha, None), beta)
}

/// Convex combination of `k` random permutation matrices with random rational weights.
pub fn random_doubly_stochastic_with<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> DoublyStochastic<Rational> {
    assert!(k >= 1, "need at least one permutation");
    let raw: Vec<i64> = (0..k).map(|_| rng.gen_range(1..=100)).collect();
    let total: i64 = raw.iter().sum();
    let mut acc = Matrix::<Rational>::zeros(n, n);
    for c in raw {
        let perm = random_permutation(rng, n);
        let weight = Rational::from_ratio(c, total);
        for (i, &p) in perm.iter().enumerate() {
            let v = acc[(p, i)].clone() + weight.clone();
            acc.set(p, i, v);
        }
    }
    DoublyStochastic::from_valid(acc)
}

/// Deterministic in `seed`.
pub fn random_doubly_stochastic(seed: u64, n: usize, k: usize) -> DoublyStochastic<Rational> {
    random_doubly_stochastic_with(&mut rng_from_seed(seed), n, k)
}

/// Random square matrix mixing doubly stochastic, row-stochastic-only and
/// arbitrary-sign entries; used to probe the stochasticity predicates.
pub fn random_square_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix<Rational> {
    match rng.gen_range(0..4) {
        0 => {
            let k = rng.gen_range(1..=4);
            random_doubly_stochastic_with(rng, n, k).into_matrix()
        }
        1 => {
            // row-stochastic only
            let rows = (0..n).map(|_| random_simplex(rng, n).into_vec()).collect();
            Matrix::from_rows(rows).expect("square")
        }
        2 => {
            // doubly stochastic with one entry nudged so a row and column break
            let mut m = random_doubly_stochastic_with(rng, n, 2).into_matrix();
            let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let v = m[(i, j)].clone() + Rational::from_ratio(1, 50);
            m.set(i, j, v);
            m
        }
        _ => {
            let rows = (0..n).map(|_| (0..n).map(|_| Rational::from_ratio(rng.gen_range(-2..=4), 4)).collect()).collect();
            Matrix::from_rows(rows).expect("square")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::majorization::majorizes;
    use crate::matrix::{is_doubly_stochastic, is_permutation};

    #[test]
    fn simplex_points_are_valid() {
        let mut rng = rng_from_seed(7);
        for n in 1..8 {
            let w = random_simplex(&mut rng, n);
            assert_eq!(w.len(), n);
            assert!(w.as_slice().iter().all(|x| *x > Rational::from_ratio(0, 1)));
        }
        let s = random_sparse_simplex(&mut rng, 6, 2);
        assert_eq!(s.as_slice().iter().filter(|x| num_traits::Zero::is_zero(*x)).count(), 4);
    }

    #[test]
    fn single_permutation_is_extreme_point() {
        let p = random_doubly_stochastic(3, 5, 1);
        assert!(is_permutation(p.matrix()));
    }

    #[test]
    fn doubly_stochastic_and_deterministic() {
        for seed in 0..20 {
            let p = random_doubly_stochastic(seed, 4, 3);
            assert!(is_doubly_stochastic(p.matrix()));
            assert_eq!(p, random_doubly_stochastic(seed, 4, 3));
        }
    }

    #[test]
    fn generated_pairs_are_majorized() {
        let mut rng = rng_from_seed(11);
        for _ in 0..50 {
            let (a, b) = random_majorization_pair(&mut rng, 5, 4);
            assert!(majorizes(&b, &a).unwrap());
        }
    }
}
