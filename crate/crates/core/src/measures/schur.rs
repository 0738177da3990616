//! Schur-Ostrowski criterion and the concave-sum characterization of majorization.

use rand::Rng;

use crate::error::{Error, Result};
use crate::majorization::majorizes;
use crate::sampling::{random_permutation, rng_from_seed};
use crate::scalar::Scalar;
use crate::weights::Weights;

const SYMMETRY_TOL: f64 = 1e-10;
const SIGN_TOL: f64 = 1e-8;
const SYMMETRY_TRIALS: usize = 10;
const DEFAULT_SEED: u64 = 42;

/// Central finite-difference gradient of `f` at `x`.
pub fn central_gradient(f: &dyn Fn(&[f64]) -> f64, x: &[f64], step: f64) -> Vec<f64> {
    let mut probe = x.to_vec();
    (0..x.len())
        .map(|i| {
            probe[i] = x[i] + step;
            let up = f(&probe);
            probe[i] = x[i] - step;
            let down = f(&probe);
            probe[i] = x[i];
            (up - down) / (2.0 * step)
        })
        .collect()
}

/// [`schur_ostrowski_check_seeded`] with the crate's default seed.
pub fn schur_ostrowski_check<T: Scalar>(
    f: &dyn Fn(&[f64]) -> f64,
    point: &Weights<T>,
    step: f64,
) -> Result<bool> {
    schur_ostrowski_check_seeded(f, point, step, DEFAULT_SEED)
}

/// Checks the Schur-concavity conditions for `f` at an interior point:
/// symmetry under ten random rearrangements, and
/// `(xᵢ - xⱼ)(∂ᵢf - ∂ⱼf) <= 0` for every pair via central differences.
pub fn schur_ostrowski_check_seeded<T: Scalar>(
    f: &dyn Fn(&[f64]) -> f64,
    point: &Weights<T>,
    step: f64,
    seed: u64,
) -> Result<bool> {
    if step.is_nan() || step <= 0.0 {
        return Err(Error::DomainError("finite-difference step must be positive".into()));
    }
    let x = point.to_f64();
    if x.iter().any(|&v| v <= step) {
        return Err(Error::DomainError(format!("point within {step} of the simplex boundary")));
    }

    let base = f(&x);
    let mut rng = rng_from_seed(seed);
    for _ in 0..SYMMETRY_TRIALS {
        let perm = random_permutation(&mut rng, x.len());
        let shuffled: Vec<f64> = perm.iter().map(|&p| x[p]).collect();
        let symmetric = (f(&shuffled) - base).abs() <= SYMMETRY_TOL;
        if !symmetric {
            return Ok(false);
        }
    }

    let grad = central_gradient(f, &x, step);
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            let product = (x[i] - x[j]) * (grad[i] - grad[j]);
            let sign_ok = product <= SIGN_TOL;
            if !sign_ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A concave test function used by [`concave_sum_rank_family`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ConcaveTest {
    /// `-max(x - t, 0)`
    Angle(f64),
    Sqrt,
    /// `log(x + 1e-6)`
    ShiftedLog,
}

impl ConcaveTest {
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            ConcaveTest::Angle(t) => -(x - t).max(0.0),
            ConcaveTest::Sqrt => x.sqrt(),
            ConcaveTest::ShiftedLog => (x + 1e-6).ln(),
        }
    }
}

/// Angle functions at `family_size` grid thresholds plus as many seeded random
/// thresholds, then `√x` and a shifted log.
pub fn concave_sum_rank_family(seed: u64, family_size: usize) -> Vec<ConcaveTest> {
    let mut family: Vec<ConcaveTest> = match family_size {
        0 => Vec::new(),
        1 => vec![ConcaveTest::Angle(0.0)],
        m => (0..m).map(|i| ConcaveTest::Angle(i as f64 / (m - 1) as f64)).collect(),
    };
    let mut rng = rng_from_seed(seed);
    family.extend((0..family_size).map(|_| ConcaveTest::Angle(rng.gen_range(0.0..=1.0))));
    family.push(ConcaveTest::Sqrt);
    family.push(ConcaveTest::ShiftedLog);
    family
}

/// When `beta` majorizes `alpha`, `Σ g(αᵢ) >= Σ g(βᵢ)` for every concave `g`.
/// Returns whether that holds (to 1e-12) across the sampled family.
pub fn concave_sum_rank<T: Scalar>(
    alpha: &Weights<T>,
    beta: &Weights<T>,
    seed: u64,
    family_size: usize,
) -> Result<bool> {
    if alpha.len() != beta.len() {
        return Err(Error::LengthMismatch(alpha.len(), beta.len()));
    }
    if !majorizes(beta, alpha)? {
        return Err(Error::NotMajorized);
    }
    let (a, b) = (alpha.to_f64(), beta.to_f64());
    Ok(concave_sum_rank_family(seed, family_size).iter().all(|g| {
        let sa: f64 = a.iter().map(|&x| g.eval(x)).sum();
        let sb: f64 = b.iter().map(|&x| g.eval(x)).sum();
        sa >= sb - 1e-12
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::MeasureSpec;
    use crate::{Rational, WeightVector};

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn w(v: &[(i64, i64)]) -> WeightVector {
        Weights::new(v.iter().map(|&(n, d)| q(n, d)).collect()).unwrap()
    }

    fn point() -> WeightVector {
        w(&[(1, 2), (3, 10), (1, 5)])
    }

    #[test]
    fn negative_stddev_passes() {
        let m: MeasureSpec = "stddev".parse().unwrap();
        let f = m.utility_fn();
        assert!(schur_ostrowski_check(&f, &point(), 1e-5).unwrap());
    }

    #[test]
    fn entropy_passes() {
        let m: MeasureSpec = "entropy".parse().unwrap();
        let f = m.utility_fn();
        assert!(schur_ostrowski_check(&f, &point(), 1e-5).unwrap());
    }

    #[test]
    fn projection_fails_symmetry() {
        let f = |x: &[f64]| x[0];
        assert!(!schur_ostrowski_check(&f, &point(), 1e-5).unwrap());
    }

    #[test]
    fn symmetric_schur_convex_fails_sign() {
        // Σ x² is symmetric but Schur-convex
        let f = |x: &[f64]| x.iter().map(|v| v * v).sum::<f64>();
        assert!(!schur_ostrowski_check(&f, &point(), 1e-5).unwrap());
    }

    #[test]
    fn boundary_point_rejected() {
        let f = |x: &[f64]| x.iter().sum::<f64>();
        let e = WeightVector::basis(0, 3).unwrap();
        assert!(matches!(schur_ostrowski_check(&f, &e, 1e-5), Err(Error::DomainError(_))));
    }

    #[test]
    fn concave_rank_examples() {
        let u = WeightVector::uniform(4);
        let e = WeightVector::basis(0, 4).unwrap();
        assert!(concave_sum_rank(&u, &e, 1, 25).unwrap());
        assert!(concave_sum_rank(&w(&[(1, 2), (1, 3), (1, 6)]), &w(&[(3, 5), (3, 10), (1, 10)]), 2, 25).unwrap());
        let a = w(&[(1, 2), (1, 3), (1, 6)]);
        assert!(concave_sum_rank(&a, &a, 3, 25).unwrap());
        assert_eq!(concave_sum_rank(&e, &u, 1, 5), Err(Error::NotMajorized));
    }

    #[test]
    fn family_contents() {
        let fam = concave_sum_rank_family(9, 5);
        assert_eq!(fam.len(), 12);
        assert_eq!(fam[0], ConcaveTest::Angle(0.0));
        assert_eq!(fam[4], ConcaveTest::Angle(1.0));
        assert_eq!(fam, concave_sum_rank_family(9, 5));
    }

    #[test]
    fn gradient_of_quadratic() {
        let f = |x: &[f64]| x[0] * x[0] + 3.0 * x[1];
        let g = central_gradient(&f, &[0.5, 0.2], 1e-5);
        assert!((g[0] - 1.0).abs() < 1e-9 && (g[1] - 3.0).abs() < 1e-9);
    }
}
