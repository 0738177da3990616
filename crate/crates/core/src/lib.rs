//! Naive diversification as majorization.
//!
//! Allocation weights live on the probability simplex. Equal weights are the
//! unique minimum of the majorization order, doubly stochastic matrices are
//! the averaging operations that move down that order, and Schur-concave
//! functions are the diversification measures that respect it. Rebalancing an
//! allocation to equal weights is a product of at most `n - 1` T-transforms
//! with a fixed turnover.
//!
//! Everything is generic over [`Scalar`]; the exact [`Rational`] instantiation
//! is the default and is what the aliases below name.

pub mod error;
pub mod io;
pub mod lorenz;
pub mod lp;
pub mod majorization;
pub mod matrix;
pub mod measures;
pub mod multivariate;
pub mod preferences;
pub mod rebalancing;
pub mod sampling;
pub mod scalar;
pub mod transform;
pub mod weights;

pub use error::{Error, Result};
pub use lorenz::{lorenz_curve, lorenz_dominates};
pub use majorization::{compare, equal_up_to_permutation, majorizes, MajorizationRelation};
pub use matrix::{is_d_stochastic, is_doubly_stochastic, is_permutation, DoublyStochastic, Matrix};
pub use measures::{axiom_suite, registry, AxiomReport, Direction, MeasureId, MeasureSpec};
pub use multivariate::{d_stochastic_witness, multivariate_feasible};
pub use preferences::{
    equal_weights, inequality_aversion_coefficient, more_is_better_chain, naive_prefer, relative_naive_prefer,
    PreferenceOutcome,
};
pub use rebalancing::{
    minimal_turnover_plan, polytope_membership, practical_turnover, rebalance_to, turnover, RebalancePlan,
};
pub use scalar::{format_rational, parse_rational, Rational, Scalar};
pub use transform::{hlp_witness, muirhead_decompose, Decomposition};
pub use weights::Weights;

/// Exact simplex point.
pub type WeightVector = Weights<Rational>;
/// Exact square matrix.
pub type SquareMatrix = Matrix<Rational>;
/// Exact doubly stochastic matrix.
pub type DoublyStochasticMatrix = DoublyStochastic<Rational>;
/// Exact T-transform.
pub type TTransform = transform::TTransform<Rational>;
/// Exact Lorenz curve.
pub type LorenzCurve = lorenz::LorenzCurve<Rational>;

pub type WeightVectorF64 = Weights<f64>;
pub type MatrixF64 = Matrix<f64>;
