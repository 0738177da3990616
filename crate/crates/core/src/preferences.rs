//! The naive-diversification preference relation at the level of weights.
//!
//! An allocation is preferred to another exactly when it is majorized by it,
//! whatever the alternatives are. Majorization-incomparable pairs cannot be
//! ranked from the weights alone.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::majorization::{compare, MajorizationRelation};
use crate::multivariate::d_stochastic_witness;
use crate::scalar::Scalar;
use crate::weights::Weights;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PreferenceOutcome {
    Indifferent,
    FirstPreferred,
    SecondPreferred,
    DependsOnAlternatives,
}

impl std::fmt::Display for PreferenceOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Debug::fmt(self, f)
    }
}

impl From<MajorizationRelation> for PreferenceOutcome {
    fn from(rel: MajorizationRelation) -> Self {
        match rel {
            MajorizationRelation::EqualUpToPermutation => Self::Indifferent,
            MajorizationRelation::FirstMoreEqual => Self::FirstPreferred,
            MajorizationRelation::SecondMoreEqual => Self::SecondPreferred,
            MajorizationRelation::Incomparable => Self::DependsOnAlternatives,
        }
    }
}

pub fn naive_prefer<T: Scalar>(alpha: &Weights<T>, beta: &Weights<T>) -> Result<PreferenceOutcome> {
    compare(alpha, beta).map(PreferenceOutcome::from)
}

/// `(1/n, ..., 1/n)`.
pub fn equal_weights<T: Scalar>(n: usize) -> Result<Weights<T>> {
    if n == 0 {
        return Err(Error::DomainError("equal weights need n >= 1".into()));
    }
    Ok(Weights::uniform(n))
}

/// `e_1, (1/2, 1/2, 0, ..), .., u_n`, each strictly preferred to its predecessor.
pub fn more_is_better_chain<T: Scalar>(n: usize) -> Result<Vec<Weights<T>>> {
    if n < 2 {
        return Err(Error::DomainError("chain needs n >= 2".into()));
    }
    Ok((1..=n)
        .map(|m| {
            let share = T::from_ratio(1, m as i64);
            let v = (0..n).map(|i| if i < m { share.clone() } else { T::zero() }).collect();
            Weights::from_valid(v, None)
        })
        .collect())
}

/// Preference relative to a reference allocation `d`: `alpha` is preferred when
/// it is reachable from `beta` through a `d`-stochastic matrix.
pub fn relative_naive_prefer<T: Scalar>(
    alpha: &Weights<T>,
    beta: &Weights<T>,
    d: &Weights<T>,
) -> Result<PreferenceOutcome> {
    if alpha.len() != beta.len() {
        return Err(Error::LengthMismatch(alpha.len(), beta.len()));
    }
    let forward = d_stochastic_witness(alpha, beta, d)?.is_some();
    let backward = d_stochastic_witness(beta, alpha, d)?.is_some();
    Ok(match (forward, backward) {
        (true, true) => PreferenceOutcome::Indifferent,
        (true, false) => PreferenceOutcome::FirstPreferred,
        (false, true) => PreferenceOutcome::SecondPreferred,
        (false, false) => PreferenceOutcome::DependsOnAlternatives,
    })
}

/// Distance of `d` from equal weights, kept exact as its square.
#[derive(Clone, Debug, PartialEq)]
pub struct AversionCoefficient<T> {
    pub squared: T,
    pub value: f64,
}

/// `‖d - u_n‖₂`. Since `u_n` is fixed by every permutation, minimizing over
/// rearrangements of `d` changes nothing.
pub fn inequality_aversion_coefficient<T: Scalar>(d: &Weights<T>) -> AversionCoefficient<T> {
    let u = T::from_ratio(1, d.len() as i64);
    let squared = d.as_slice().iter().fold(T::zero(), |acc, x| {
        let diff = x.clone() - u.clone();
        acc + diff.clone() * diff
    });
    let value = squared.to_f64_lossy().sqrt();
    AversionCoefficient { squared, value }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Rational, WeightVector};
    use PreferenceOutcome::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn w(v: &[(i64, i64)]) -> WeightVector {
        Weights::new(v.iter().map(|&(n, d)| q(n, d)).collect()).unwrap()
    }

    #[test]
    fn prefer_examples() {
        let u3 = WeightVector::uniform(3);
        assert_eq!(naive_prefer(&u3, &w(&[(1, 2), (1, 3), (1, 6)])).unwrap(), FirstPreferred);
        assert_eq!(naive_prefer(&w(&[(1, 2), (1, 6), (1, 3)]), &w(&[(1, 3), (1, 2), (1, 6)])).unwrap(), Indifferent);
        assert_eq!(naive_prefer(&w(&[(3, 5), (1, 5), (1, 5)]), &w(&[(1, 2), (9, 20), (1, 20)])).unwrap(), DependsOnAlternatives);
        assert_eq!(naive_prefer(&w(&[(1, 1), (0, 1)]), &WeightVector::uniform(2)).unwrap(), SecondPreferred);
        assert!(naive_prefer(&u3, &WeightVector::uniform(2)).is_err());
    }

    #[test]
    fn equal_weights_examples() {
        assert_eq!(equal_weights::<Rational>(1).unwrap(), w(&[(1, 1)]));
        assert_eq!(equal_weights::<Rational>(3).unwrap(), w(&[(1, 3), (1, 3), (1, 3)]));
        assert_eq!(equal_weights::<Rational>(4).unwrap(), w(&[(1, 4), (1, 4), (1, 4), (1, 4)]));
        assert!(equal_weights::<Rational>(0).is_err());
    }

    #[test]
    fn chain_examples() {
        assert_eq!(more_is_better_chain::<Rational>(2).unwrap(), vec![w(&[(1, 1), (0, 1)]), w(&[(1, 2), (1, 2)])]);
        assert_eq!(
            more_is_better_chain::<Rational>(3).unwrap(),
            vec![w(&[(1, 1), (0, 1), (0, 1)]), w(&[(1, 2), (1, 2), (0, 1)]), w(&[(1, 3), (1, 3), (1, 3)])]
        );
        let chain = more_is_better_chain::<Rational>(6).unwrap();
        for pair in chain.windows(2) {
            assert_eq!(naive_prefer(&pair[1], &pair[0]).unwrap(), FirstPreferred);
        }
        assert!(more_is_better_chain::<Rational>(1).is_err());
    }

    #[test]
    fn relative_examples() {
        let u3 = WeightVector::uniform(3);
        let a = w(&[(1, 2), (1, 3), (1, 6)]);
        let b = w(&[(7, 10), (1, 5), (1, 10)]);
        assert_eq!(relative_naive_prefer(&a, &b, &u3).unwrap(), naive_prefer(&a, &b).unwrap());
        assert_eq!(relative_naive_prefer(&a, &a, &w(&[(1, 2), (1, 4), (1, 4)])).unwrap(), Indifferent);
        let d = w(&[(1, 2), (1, 4), (1, 4)]);
        assert_eq!(relative_naive_prefer(&d, &b, &d).unwrap(), FirstPreferred);
    }

    #[test]
    fn aversion_examples() {
        let zero = inequality_aversion_coefficient(&WeightVector::uniform(4));
        assert_eq!(zero.squared, q(0, 1));
        assert_eq!(zero.value, 0.0);
        // (1/6, -1/12, -1/12): 1/36 + 2/144 = 1/24
        let e = inequality_aversion_coefficient(&w(&[(1, 2), (1, 4), (1, 4)]));
        assert_eq!(e.squared, q(1, 24));
        assert!((e.value - 6f64.sqrt() / 12.0).abs() < 1e-15);
        let e = inequality_aversion_coefficient(&w(&[(1, 1), (0, 1)]));
        assert_eq!(e.squared, q(1, 2));
        assert!((e.value - 2f64.sqrt() / 2.0).abs() < 1e-15);
    }
}
