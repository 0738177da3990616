//! Averaging-operator feasibility: multivariate majorization and
//! d-stochastic reachability, both posed as exact linear feasibility.

use crate::error::{Error, Result};
use crate::lp::EqualitySystem;
use crate::matrix::{DoublyStochastic, Matrix};
use crate::scalar::Scalar;
use crate::weights::Weights;

fn unknown_square<T: Scalar>(n: usize, x: &[T]) -> Matrix<T> {
    Matrix::from_fn(n, n, |i, j| x[i * n + j].clone())
}

/// Finds a doubly stochastic `P` with `X = Y · P`, where each row of `X` and `Y`
/// is one attribute's allocation across the same `n` alternatives.
///
/// Columns (alternatives) are mixed, rows (attributes) never are.
pub fn multivariate_feasible<T: Scalar>(x: &Matrix<T>, y: &Matrix<T>) -> Result<Option<DoublyStochastic<T>>> {
    if (x.rows(), x.cols()) != (y.rows(), y.cols()) {
        return Err(Error::DimensionMismatch(format!(
            "X is {}x{} but Y is {}x{}",
            x.rows(),
            x.cols(),
            y.rows(),
            y.cols()
        )));
    }
    for (name, m) in [("X", x), ("Y", y)] {
        if let Some(r) = m.row_sums().iter().position(|s| !s.approx_eq(&T::one())) {
            return Err(Error::DimensionMismatch(format!("row {} of {name} does not sum to 1", r + 1)));
        }
    }
    let n = x.cols();
    let var = |i: usize, j: usize| i * n + j;
    let mut system = EqualitySystem::new(n * n);
    for i in 0..n {
        system.add((0..n).map(|j| (var(i, j), T::one())), T::one());
    }
    for j in 0..n {
        system.add((0..n).map(|i| (var(i, j), T::one())), T::one());
    }
    for r in 0..x.rows() {
        for j in 0..n {
            system.add((0..n).map(|i| (var(i, j), y[(r, i)].clone())), x[(r, j)].clone());
        }
    }
    Ok(system.solve().map(|sol| DoublyStochastic::from_valid(unknown_square(n, &sol))))
}

/// Finds a `d`-stochastic `A` (non-negative, unit row sums, `d · A = d`)
/// with `alpha = beta · A`.
pub fn d_stochastic_witness<T: Scalar>(
    alpha: &Weights<T>,
    beta: &Weights<T>,
    d: &Weights<T>,
) -> Result<Option<Matrix<T>>> {
    let n = d.len();
    for w in [alpha, beta] {
        if w.len() != n {
            return Err(Error::LengthMismatch(n, w.len()));
        }
    }
    let var = |i: usize, j: usize| i * n + j;
    let mut system = EqualitySystem::new(n * n);
    for i in 0..n {
        system.add((0..n).map(|j| (var(i, j), T::one())), T::one());
    }
    for j in 0..n {
        system.add((0..n).map(|i| (var(i, j), d[i].clone())), d[j].clone());
    }
    for j in 0..n {
        system.add((0..n).map(|i| (var(i, j), beta[i].clone())), alpha[j].clone());
    }
    Ok(system.solve().map(|sol| unknown_square(n, &sol)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{is_d_stochastic, is_doubly_stochastic};
    use crate::{Rational, WeightVector};

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn rows(v: &[&[(i64, i64)]]) -> Matrix<Rational> {
        Matrix::from_rows(v.iter().map(|r| r.iter().map(|&(n, d)| q(n, d)).collect()).collect()).unwrap()
    }

    #[test]
    fn averaged_is_feasible() {
        let y = rows(&[&[(1, 2), (1, 3), (1, 6)], &[(1, 10), (3, 5), (3, 10)]]);
        let x = y.mul(&Matrix::constant(3)).unwrap();
        let p = multivariate_feasible(&x, &y).unwrap().expect("feasible");
        assert!(is_doubly_stochastic(p.matrix()));
        assert_eq!(y.mul(p.matrix()).unwrap(), x);
    }

    #[test]
    fn identical_is_feasible() {
        let y = rows(&[&[(1, 2), (1, 3), (1, 6)]]);
        let p = multivariate_feasible(&y, &y).unwrap().unwrap();
        assert_eq!(y.mul(p.matrix()).unwrap(), y);
    }

    #[test]
    fn non_majorized_row_is_infeasible() {
        let y = rows(&[&[(1, 2), (1, 3), (1, 6)], &[(1, 3), (1, 3), (1, 3)]]);
        let x = rows(&[&[(1, 1), (0, 1), (0, 1)], &[(1, 3), (1, 3), (1, 3)]]);
        assert!(multivariate_feasible(&x, &y).unwrap().is_none());
    }

    #[test]
    fn jointly_infeasible_even_when_rows_majorized() {
        // each row of X is a rearrangement-free averaging of Y's row, but no single P does both
        let y = rows(&[&[(1, 1), (0, 1)], &[(1, 1), (0, 1)]]);
        let x = rows(&[&[(3, 4), (1, 4)], &[(1, 2), (1, 2)]]);
        assert!(multivariate_feasible(&x, &y).unwrap().is_none());
    }

    #[test]
    fn dimension_checks() {
        let y = rows(&[&[(1, 2), (1, 2)]]);
        let x = rows(&[&[(1, 3), (1, 3), (1, 3)]]);
        assert!(matches!(multivariate_feasible(&x, &y), Err(Error::DimensionMismatch(_))));
        let bad = rows(&[&[(1, 2), (1, 4)]]);
        assert!(matches!(multivariate_feasible(&bad, &y), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn d_stochastic_reaches_d() {
        let d = WeightVector::new(vec![q(1, 2), q(1, 4), q(1, 4)]).unwrap();
        let beta = WeightVector::new(vec![q(1, 10), q(1, 5), q(7, 10)]).unwrap();
        let a = d_stochastic_witness(&d, &beta, &d).unwrap().expect("rank-one witness exists");
        assert!(is_d_stochastic(&a, &d).unwrap());
        assert_eq!(a.left_mul(beta.as_slice()).unwrap(), d.as_slice());
    }
}
