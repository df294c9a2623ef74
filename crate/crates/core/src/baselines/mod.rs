//! Parametric conditional random-graph baselines: Markov and higher-order
//! exponential random graphs, the conditional Watts-Strogatz model, and the
//! conditional Barabási-Albert model.
//!
//! Each model scores P(X_uv = 1 | neighborhood) and is fitted by maximizing
//! the conditional log-likelihood with gradient ascent. Fits are
//! deterministic given the input order: per-sample terms are reduced with a
//! fixed-order pairwise tree.

mod cba;
mod cws;
mod erg;
mod statistics;

pub use cba::{fit_cba, CbaFit, CbaModel};
pub use cws::{fit_cws, ws_degree_pmf, CwsFit, CwsFitOptions, CwsModel};
pub use erg::{
    fit_erg, statistic_difference, statistic_difference_full, ErgFit, ErgModel, ErgVariant,
};
pub use statistics::{graph_statistics, GraphStatistics};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum FitError {
    #[error("training data is empty")]
    EmptyData,
    #[error("training data contains no {missing} pairs; sample more pairs or use stratified sampling")]
    SingleClass { missing: &'static str },
    #[error("log-likelihood became non-finite during fitting (diverged)")]
    Diverged,
}

/// Probability clip applied before taking Bernoulli logs, keeping fits
/// finite when a model assigns an exact zero.
pub(crate) const LOG_CLIP: f64 = 1e-12;

const MAX_ITERATIONS: usize = 500;
const GRADIENT_TOLERANCE: f64 = 1e-6;
const INITIAL_STEP: f64 = 0.1;

/// Gradient ascent with a fixed initial step and backtracking halving,
/// started from the all-zeros parameter vector.
///
/// Iteration stops at first-order optimality (gradient max-norm below
/// 1e-6), when the line search can make no further progress at float
/// resolution, or after 500 iterations.
pub(crate) fn gradient_ascent<F>(dim: usize, mut objective: F) -> Result<Vec<f64>, FitError>
where
    F: FnMut(&[f64]) -> (f64, Vec<f64>),
{
    let mut theta = vec![0.0; dim];
    let (mut value, mut gradient) = objective(&theta);
    if !value.is_finite() {
        return Err(FitError::Diverged);
    }

    for _ in 0..MAX_ITERATIONS {
        let gradient_norm = gradient.iter().fold(0.0f64, |acc, g| acc.max(g.abs()));
        if gradient_norm < GRADIENT_TOLERANCE {
            break;
        }
        let squared_norm: f64 = gradient.iter().map(|g| g * g).sum();
        let mut step = INITIAL_STEP;
        let mut accepted = false;
        while step > 1e-18 {
            let candidate: Vec<f64> = theta
                .iter()
                .zip(&gradient)
                .map(|(t, g)| t + step * g)
                .collect();
            let (candidate_value, candidate_gradient) = objective(&candidate);
            // Armijo sufficient decrease keeps the accepted step close to the
            // curvature scale instead of a barely-improving crawl.
            if candidate_value.is_finite()
                && candidate_value >= value + 0.5 * step * squared_norm
            {
                theta = candidate;
                value = candidate_value;
                gradient = candidate_gradient;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            // The objective cannot be improved at float resolution.
            break;
        }
    }
    Ok(theta)
}

/// Numerically stable log(1 + e^t).
pub(crate) fn softplus(t: f64) -> f64 {
    if t > 35.0 {
        t
    } else if t < -35.0 {
        t.exp()
    } else {
        t.exp().ln_1p()
    }
}
