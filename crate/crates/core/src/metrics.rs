//! Per-round run metrics: success probability, approximation ratios, outcome
//! distributions, and gradient traces.

use serde::Serialize;

use crate::error::Result;
use crate::objective::{BitString, ObjectiveTable};
use crate::search::RoundRecord;
use crate::statevector::StateVector;

/// Computational-basis outcome probabilities of a state.
#[derive(Clone, Debug, Serialize)]
pub struct OutcomeDistribution {
    pub probabilities: Vec<f64>,
}

impl OutcomeDistribution {
    pub fn len(&self) -> usize {
        self.probabilities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probabilities.is_empty()
    }
}

/// Total weight on the optimal strings: `sum_{z in argmin} |a_z|^2`.
pub fn success_probability(state: &StateVector, argmin_set: &[BitString]) -> Result<f64> {
    assert!(!argmin_set.is_empty(), "argmin set must be nonempty");
    let mut acc = 0.0;
    for &z in argmin_set {
        acc += state.overlap_probability(z)?;
    }
    Ok(acc)
}

/// Both approximation-ratio conventions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ApproxRatios {
    /// `<H> / f_min`; undefined (None) when `f_min = 0`.
    pub raw: Option<f64>,
    /// `(f_max - <H>) / (f_max - f_min)`, in `[0, 1]` and invariant under
    /// affine rescaling of the objective. Used for cross-instance comparison.
    pub normalized: f64,
}

pub fn approximation_ratios(state: &StateVector, table: &ObjectiveTable) -> Result<ApproxRatios> {
    let expect = state.expectation(table)?;
    let raw = if table.f_min() != 0.0 {
        Some(expect / table.f_min())
    } else {
        None
    };
    let spread = table.f_max() - table.f_min();
    let normalized = if spread > 0.0 {
        (table.f_max() - expect) / spread
    } else {
        1.0
    };
    Ok(ApproxRatios { raw, normalized })
}

/// `probabilities[z] = |a_z|^2`.
pub fn outcome_distribution(state: &StateVector) -> OutcomeDistribution {
    OutcomeDistribution {
        probabilities: state.amplitudes().iter().map(|a| a.norm_sqr()).collect(),
    }
}

/// The `(round, |gradient|)` series of a record stream.
pub fn gradient_trace(records: &[RoundRecord]) -> Vec<(usize, f64)> {
    records.iter().map(|r| (r.p, r.grad_b_mag)).collect()
}

/// Length of the longest run of consecutive entries equal to the first entry
/// of the run within `tol`. Used to detect plateaus in metric series.
pub fn longest_plateau(series: &[f64], tol: f64) -> usize {
    let mut best = 0usize;
    let mut start = 0usize;
    for i in 0..series.len() {
        if (series[i] - series[start]).abs() > tol {
            start = i;
        }
        best = best.max(i - start + 1);
    }
    best
}
