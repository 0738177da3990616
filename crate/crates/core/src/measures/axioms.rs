//! Sampling harness for the five measure axioms: positivity, normality,
//! boundedness, Schur monotonicity (representation) and strictness off
//! rearrangements (permutation invariance).

use rand::Rng;

use super::MeasureSpec;
use crate::majorization::{compare, MajorizationRelation};
use crate::sampling::{random_simplex, random_sparse_simplex, random_t_transform, rng_from_seed};
use crate::weights::Weights;
use crate::WeightVector;

const NORMALITY_TOL: f64 = 1e-12;
/// Slack for round-off between rearrangement-equivalent float evaluations.
const MONOTONE_TOL: f64 = 1e-12;
/// Minimum gap demanded of strict measures.
const STRICT_MARGIN: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct AxiomOutcome {
    pub passed: bool,
    /// False when the axiom does not apply (strictness of a non-strict measure).
    pub tested: bool,
    pub checked: usize,
    /// Input(s) that violate the axiom; for pairwise axioms `[alpha, beta]` with beta majorizing alpha.
    pub counterexample: Option<Vec<WeightVector>>,
}

impl AxiomOutcome {
    fn new() -> Self {
        Self { passed: true, tested: true, checked: 0, counterexample: None }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> Vec<WeightVector>) {
        self.checked += 1;
        if !ok && self.passed {
            self.passed = false;
            self.counterexample = Some(witness());
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AxiomReport {
    pub measure: String,
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub positivity: AxiomOutcome,
    pub normality: AxiomOutcome,
    pub boundedness: AxiomOutcome,
    pub representation: AxiomOutcome,
    pub strictness: AxiomOutcome,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.axioms().iter().all(|(_, o)| o.passed)
    }

    /// `(label, outcome)` for A1..A5 in order.
    pub fn axioms(&self) -> [(&'static str, &AxiomOutcome); 5] {
        [
            ("A1_positivity", &self.positivity),
            ("A2_normality", &self.normality),
            ("A3_boundedness", &self.boundedness),
            ("A4_representation", &self.representation),
            ("A5_strictness", &self.strictness),
        ]
    }
}

fn index(m: &MeasureSpec, w: &WeightVector) -> f64 {
    m.index_value(w).unwrap_or(f64::NAN)
}

fn raw(m: &MeasureSpec, w: &WeightVector) -> f64 {
    m.evaluate(w).unwrap_or(f64::NAN)
}

/// Pair `(alpha, beta)` with `beta` majorizing `alpha`. Every tenth `beta` has zeros.
fn sample_pair<R: Rng>(rng: &mut R, n: usize, s: usize) -> (WeightVector, WeightVector) {
    let beta = if s % 10 == 9 {
        let support = rng.gen_range(1..=n);
        random_sparse_simplex(rng, n, support)
    } else {
        random_simplex(rng, n)
    };
    let mut alpha = beta.as_slice().to_vec();
    if n >= 2 {
        for _ in 0..rng.gen_range(1..=3) {
            random_t_transform(rng, n, 20).apply_slice(&mut alpha).expect("in range");
        }
        let perm = crate::sampling::random_permutation(rng, n);
        alpha = perm.iter().map(|&p| alpha[p].clone()).collect();
    }
    (Weights::from_valid(alpha, None), beta)
}

/// Runs A1-A5 on `samples` seeded majorization pairs of length `n`.
///
/// A4 and A5 compare the measure in index orientation (entropy is negated).
pub fn axiom_suite(m: &MeasureSpec, seed: u64, samples: usize, n: usize) -> AxiomReport {
    let mut rng = rng_from_seed(seed);
    let (mut a1, mut a2, mut a3, mut a4, mut a5) =
        (AxiomOutcome::new(), AxiomOutcome::new(), AxiomOutcome::new(), AxiomOutcome::new(), AxiomOutcome::new());
    a5.tested = m.strict;

    let u = WeightVector::uniform(n.max(1));
    a2.record(raw(m, &u).abs() <= NORMALITY_TOL, || vec![u.clone()]);

    for s in 0..samples {
        let (alpha, beta) = sample_pair(&mut rng, n.max(1), s);
        for w in [&alpha, &beta] {
            let v = raw(m, w);
            a1.record(v >= 0.0, || vec![w.clone()]);
            a3.record(v.is_finite(), || vec![w.clone()]);
            if !w.is_uniform() {
                a2.record(v > 0.0, || vec![w.clone()]);
            }
        }

        let (ia, ib) = (index(m, &alpha), index(m, &beta));
        // undefined values are boundedness failures, not order evidence
        if !(ia.is_finite() && ib.is_finite()) {
            continue;
        }
        a4.record(ia <= ib + MONOTONE_TOL, || vec![alpha.clone(), beta.clone()]);
        if m.strict && compare(&alpha, &beta).ok() != Some(MajorizationRelation::EqualUpToPermutation) {
            a5.record(ib - ia > STRICT_MARGIN, || vec![alpha.clone(), beta.clone()]);
        }
    }

    AxiomReport {
        measure: m.name(),
        n,
        samples,
        seed,
        positivity: a1,
        normality: a2,
        boundedness: a3,
        representation: a4,
        strictness: a5,
    }
}
