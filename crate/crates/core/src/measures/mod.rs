//! Inequality and diversification measures on weight vectors.
//!
//! Every measure is a symmetric function of the weights. Index-oriented
//! measures are zero at equal weights and grow with concentration
//! (Schur-convex); utility-oriented ones are maximized at equal weights
//! (Schur-concave). Four indices (`gini_mean_diff`, `hhi`, `simpson`,
//! `hoover`) are rational in the weights and are evaluated exactly before the
//! final conversion to `f64`.

mod axioms;
mod schur;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::weights::Weights;

pub use axioms::{axiom_suite, AxiomOutcome, AxiomReport};
pub use schur::{
    central_gradient, concave_sum_rank, concave_sum_rank_family, schur_ostrowski_check,
    schur_ostrowski_check_seeded, ConcaveTest,
};

/// Schur orientation of a measure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    /// Zero at equality, increasing with majorization.
    SchurConvexIndex,
    /// Maximized at equality, decreasing with majorization.
    SchurConcaveUtility,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MeasureId {
    StdDev,
    Variance,
    CoeffVariation,
    Entropy,
    EntropyIndex,
    GiniMeanDiff,
    Hhi,
    Simpson,
    Hoover,
    /// Atkinson index with inequality-aversion parameter `ε > 0`, `ε != 1`.
    Atkinson(f64),
    /// `[(1/n) Σ (log αᵢ)²]^{1/2}`; negative control.
    LogRms,
    /// Standard deviation of `log αᵢ` around their mean; negative control.
    LogSd,
}

/// A registered measure with its declared orientation and strictness.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasureSpec {
    pub id: MeasureId,
    pub direction: Direction,
    /// Strictly monotone between majorization-comparable pairs that are not rearrangements.
    pub strict: bool,
}

impl MeasureSpec {
    pub fn new(id: MeasureId) -> Result<Self> {
        use MeasureId::*;
        if let Atkinson(eps) = id {
            if eps.is_nan() || eps <= 0.0 || eps == 1.0 || !eps.is_finite() {
                return Err(Error::DomainError(format!("atkinson parameter must be positive and != 1, got {eps}")));
            }
        }
        let direction = match id {
            Entropy => Direction::SchurConcaveUtility,
            _ => Direction::SchurConvexIndex,
        };
        let strict = !matches!(id, Hoover);
        Ok(Self { id, direction, strict })
    }

    /// Canonical identifier, e.g. `"hhi"` or `"atkinson(0.5)"`.
    pub fn name(&self) -> String {
        use MeasureId::*;
        match self.id {
            StdDev => "stddev".into(),
            Variance => "variance".into(),
            CoeffVariation => "coeff_variation".into(),
            Entropy => "entropy".into(),
            EntropyIndex => "entropy_index".into(),
            GiniMeanDiff => "gini_mean_diff".into(),
            Hhi => "hhi".into(),
            Simpson => "simpson".into(),
            Hoover => "hoover".into(),
            Atkinson(eps) => format!("atkinson({eps})"),
            LogRms => "log_rms".into(),
            LogSd => "log_sd".into(),
        }
    }

    /// Rational-valued measures evaluated exactly for exact scalars.
    pub fn is_exact(&self) -> bool {
        matches!(self.id, MeasureId::GiniMeanDiff | MeasureId::Hhi | MeasureId::Simpson | MeasureId::Hoover)
    }

    /// Log-based measures kept as negative controls for the axiom harness.
    pub fn is_control(&self) -> bool {
        matches!(self.id, MeasureId::LogRms | MeasureId::LogSd)
    }

    /// The Atkinson formula does not come with the rest of the registry's derivations.
    pub fn from_standard_literature(&self) -> bool {
        matches!(self.id, MeasureId::Atkinson(_))
    }

    /// Evaluates on any non-negative vector, without renormalizing onto the simplex.
    pub fn evaluate_ambient(&self, x: &[f64]) -> Result<f64> {
        use MeasureId::*;
        let n = x.len();
        if n == 0 {
            return Err(Error::DomainError("empty vector".into()));
        }
        let nf = n as f64;
        let u = 1.0 / nf;
        let sq_dev = || x.iter().map(|v| (v - u).powi(2)).sum::<f64>() / nf;
        let value = match self.id {
            StdDev => sq_dev().sqrt(),
            Variance => sq_dev(),
            CoeffVariation => sq_dev().sqrt() / (x.iter().sum::<f64>() / nf),
            Entropy => -x.iter().map(|&v| xlogx(v)).sum::<f64>(),
            // Σ xᵢ log(n xᵢ) = log n - H on the simplex, exactly zero at equal weights
            EntropyIndex => x.iter().map(|&v| if v == 0.0 { 0.0 } else { v * (nf * v).ln() }).sum(),
            GiniMeanDiff => pair_abs_sum(x) / (nf * nf),
            Hhi => {
                if n < 2 {
                    return Err(Error::DomainError("hhi needs n >= 2".into()));
                }
                (x.iter().map(|v| v * v).sum::<f64>() - u) / (1.0 - u)
            }
            Simpson => x.iter().map(|v| v * v).sum(),
            Hoover => 0.5 * x.iter().map(|v| (v - u).abs()).sum::<f64>(),
            Atkinson(eps) => {
                let mean = x.iter().sum::<f64>() / nf;
                let p = 1.0 - eps;
                let m = x.iter().map(|v| (v / mean).powf(p)).sum::<f64>() / nf;
                1.0 - m.powf(1.0 / p)
            }
            LogRms => (x.iter().map(|v| v.ln().powi(2)).sum::<f64>() / nf).sqrt(),
            LogSd => {
                let logs: Vec<f64> = x.iter().map(|v| v.ln()).collect();
                let mean = logs.iter().sum::<f64>() / nf;
                (logs.iter().map(|l| (l - mean).powi(2)).sum::<f64>() / nf).sqrt()
            }
        };
        Ok(value)
    }

    /// Value in the measure's own orientation.
    pub fn evaluate<T: Scalar>(&self, w: &Weights<T>) -> Result<f64> {
        if self.is_exact() {
            return self.evaluate_exact(w.as_slice()).map(|v| v.to_f64_lossy());
        }
        self.evaluate_ambient(&w.to_f64())
    }

    /// Exact value for the rational-valued measures; a `DomainError` for the others.
    pub fn evaluate_exact<T: Scalar>(&self, x: &[T]) -> Result<T> {
        let n = x.len();
        let nt = T::from_usize(n);
        let u = T::from_ratio(1, n as i64);
        let sum_sq = || x.iter().fold(T::zero(), |a, v| a + v.clone() * v.clone());
        match self.id {
            MeasureId::GiniMeanDiff => {
                let mut total = T::zero();
                for a in x {
                    for b in x {
                        total = total + (a.clone() - b.clone()).abs();
                    }
                }
                Ok(total / (nt.clone() * nt))
            }
            MeasureId::Hhi => {
                if n < 2 {
                    return Err(Error::DomainError("hhi needs n >= 2".into()));
                }
                Ok((sum_sq() - u.clone()) / (T::one() - u))
            }
            MeasureId::Simpson => Ok(sum_sq()),
            MeasureId::Hoover => {
                let half = T::from_ratio(1, 2);
                Ok(half * x.iter().fold(T::zero(), |a, v| a + (v.clone() - u.clone()).abs()))
            }
            _ => Err(Error::DomainError(format!("{} has no exact form", self.name()))),
        }
    }

    /// Value re-oriented so that larger means more concentrated.
    pub fn index_value<T: Scalar>(&self, w: &Weights<T>) -> Result<f64> {
        let v = self.evaluate(w)?;
        Ok(match self.direction {
            Direction::SchurConvexIndex => v,
            Direction::SchurConcaveUtility => -v,
        })
    }

    /// Ambient function in utility orientation (Schur-concave when the declaration holds).
    pub fn utility_fn(&self) -> impl Fn(&[f64]) -> f64 + '_ {
        move |x: &[f64]| {
            let v = self.evaluate_ambient(x).unwrap_or(f64::NAN);
            match self.direction {
                Direction::SchurConvexIndex => -v,
                Direction::SchurConcaveUtility => v,
            }
        }
    }

    /// Closed-form partial derivatives (ambient coordinates) where available.
    pub fn analytic_gradient(&self, x: &[f64]) -> Option<Vec<f64>> {
        use MeasureId::*;
        let nf = x.len() as f64;
        let u = 1.0 / nf;
        match self.id {
            StdDev => {
                let sigma = self.evaluate_ambient(x).ok()?;
                Some(x.iter().map(|v| (v - u) / (nf * sigma)).collect())
            }
            Variance => Some(x.iter().map(|v| 2.0 * (v - u) / nf).collect()),
            Entropy => Some(x.iter().map(|v| -(v.ln() + 1.0)).collect()),
            EntropyIndex => Some(x.iter().map(|v| (nf * v).ln() + 1.0).collect()),
            Hhi => Some(x.iter().map(|v| 2.0 * v / (1.0 - u)).collect()),
            Simpson => Some(x.iter().map(|v| 2.0 * v).collect()),
            _ => None,
        }
    }
}

impl fmt::Display for MeasureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for MeasureSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        use MeasureId::*;
        let s = s.trim();
        let id = match s {
            "stddev" => StdDev,
            "variance" => Variance,
            "coeff_variation" => CoeffVariation,
            "entropy" => Entropy,
            "entropy_index" => EntropyIndex,
            "gini_mean_diff" => GiniMeanDiff,
            "hhi" => Hhi,
            "simpson" => Simpson,
            "hoover" => Hoover,
            "atkinson" => Atkinson(DEFAULT_ATKINSON),
            "log_rms" => LogRms,
            "log_sd" => LogSd,
            _ => {
                let eps = s
                    .strip_prefix("atkinson(")
                    .and_then(|r| r.strip_suffix(')'))
                    .and_then(|p| p.trim().parse::<f64>().ok())
                    .ok_or_else(|| Error::UnknownMeasure(s.to_string()))?;
                Atkinson(eps)
            }
        };
        MeasureSpec::new(id)
    }
}

pub const DEFAULT_ATKINSON: f64 = 0.5;

/// The ten registered measures (Atkinson at its default parameter), without the controls.
pub fn registry() -> Vec<MeasureSpec> {
    use MeasureId::*;
    [StdDev, Variance, CoeffVariation, Entropy, EntropyIndex, GiniMeanDiff, Hhi, Simpson, Hoover, Atkinson(DEFAULT_ATKINSON)]
        .into_iter()
        .map(|id| MeasureSpec::new(id).expect("registry entries are valid"))
        .collect()
}

/// Negative controls: log-based dispersion measures.
pub fn controls() -> Vec<MeasureSpec> {
    [MeasureId::LogRms, MeasureId::LogSd]
        .into_iter()
        .map(|id| MeasureSpec::new(id).expect("valid"))
        .collect()
}

/// Looks up a measure by name and evaluates it.
pub fn evaluate<T: Scalar>(measure: &str, w: &Weights<T>) -> Result<f64> {
    measure.parse::<MeasureSpec>()?.evaluate(w)
}

fn xlogx(v: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        v * v.ln()
    }
}

fn pair_abs_sum(x: &[f64]) -> f64 {
    x.iter().map(|a| x.iter().map(|b| (a - b).abs()).sum::<f64>()).sum()
}
