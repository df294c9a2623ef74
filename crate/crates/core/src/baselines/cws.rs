//! Conditional Watts-Strogatz model: scores a candidate pair through the
//! small-world degree distribution of its endpoints under both clamps.

use rayon::prelude::*;

use super::{gradient_ascent, FitError, LOG_CLIP};
use crate::graph::{LabeledSample, NeighborhoodSubgraph};
use crate::numeric::{binomial, logistic, pairwise_sum};

/// Degree distribution of a Watts-Strogatz network with lattice half-degree
/// `delta` and rewiring probability `beta`, for any degree `k`:
///
/// P(k) = Σ_{i=0}^{min(k-δ, δ)} C(δ,i)(1-β)^i β^{δ-i} (δβ)^{k-δ-i}/(k-δ-i)! e^{-βδ}
///
/// with 0^0 = 1, and P(k) = 0 for k < δ.
pub fn ws_degree_pmf(delta: usize, beta: f64, k: usize) -> f64 {
    ws_degree_pmf_with_dbeta(delta, beta, k).0
}

/// The pmf together with its derivative in `beta` (used by the fit).
///
/// For β in (0,1) every term is strictly positive, so the derivative is the
/// term-by-term logarithmic derivative: -i/(1-β) + (δ-i+m)/β - δ.
fn ws_degree_pmf_with_dbeta(delta: usize, beta: f64, k: usize) -> (f64, f64) {
    if k < delta {
        return (0.0, 0.0);
    }
    let cap = (k - delta).min(delta);
    let lambda = delta as f64 * beta;
    let mut value = 0.0;
    let mut derivative = 0.0;
    for i in 0..=cap {
        let poisson_power = k - delta - i;
        let mut term = binomial(delta as u64, i as u64)
            * int_pow(1.0 - beta, i)
            * int_pow(beta, delta - i)
            * (-lambda).exp();
        for j in 1..=poisson_power {
            term *= lambda / j as f64;
        }
        value += term;
        if beta > 0.0 && beta < 1.0 {
            let log_derivative = -(i as f64) / (1.0 - beta)
                + (delta - i + poisson_power) as f64 / beta
                - delta as f64;
            derivative += term * log_derivative;
        }
    }
    (value, derivative)
}

/// x^n with the 0^0 = 1 convention.
fn int_pow(base: f64, exponent: usize) -> f64 {
    if exponent == 0 {
        1.0
    } else {
        base.powi(exponent as i32)
    }
}

/// Fitted conditional Watts-Strogatz model. The rewiring probability is
/// parameterized as β = logistic(θ_β) so the likelihood can be climbed
/// unconstrained.
#[derive(Debug, Clone, PartialEq)]
pub struct CwsModel {
    pub delta: usize,
    pub theta_beta: f64,
}

impl CwsModel {
    pub fn new(delta: usize, theta_beta: f64) -> Self {
        assert!(delta >= 1, "lattice half-degree must be at least 1");
        Self { delta, theta_beta }
    }

    pub fn beta(&self) -> f64 {
        logistic(self.theta_beta)
    }

    /// P(X_uv = 1 | neighborhood): the clamp-1 product of endpoint degree
    /// probabilities over the sum of both clamp products. When both products
    /// are zero the ratio is undefined and 0.5 is returned.
    pub fn conditional(&self, neighborhood: &NeighborhoodSubgraph) -> f64 {
        let (degree_u, degree_v) = clamp1_endpoint_degrees(neighborhood);
        let beta = self.beta();
        let clamp1 =
            ws_degree_pmf(self.delta, beta, degree_u) * ws_degree_pmf(self.delta, beta, degree_v);
        let clamp0 = ws_degree_pmf(self.delta, beta, degree_u - 1)
            * ws_degree_pmf(self.delta, beta, degree_v - 1);
        let total = clamp1 + clamp0;
        if total == 0.0 {
            0.5
        } else {
            clamp1 / total
        }
    }
}

/// Endpoint degrees in the neighborhood with the focus edge clamped present.
/// Clamp-0 degrees are exactly one less.
fn clamp1_endpoint_degrees(neighborhood: &NeighborhoodSubgraph) -> (usize, usize) {
    let graph = neighborhood.graph();
    let focus = neighborhood.focus();
    let bump = usize::from(!graph.has_edge(focus));
    (
        graph.neighbors(focus.min_id()).len() + bump,
        graph.neighbors(focus.max_id()).len() + bump,
    )
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CwsFitOptions {
    /// Divide the estimated mean endpoint degree by two before rounding.
    /// The plain estimator equals the mean endpoint degree, while a
    /// Watts-Strogatz lattice has mean degree 2δ; this flag applies the
    /// corresponding correction.
    pub halve_delta: bool,
}

/// Precomputed fitting problem for the CWS model.
pub struct CwsFit {
    labels: Vec<bool>,
    clamp1_degrees: Vec<(usize, usize)>,
    delta: usize,
}

impl CwsFit {
    pub fn new(data: &[LabeledSample], options: CwsFitOptions) -> Result<Self, FitError> {
        if data.is_empty() {
            return Err(FitError::EmptyData);
        }
        let clamp1_degrees: Vec<(usize, usize)> = data
            .par_iter()
            .map(|sample| clamp1_endpoint_degrees(&sample.neighborhood))
            .collect();
        // δ̂ = mean endpoint degree over the clamp-1 neighborhoods, rounded
        // half-up and floored at 1 so the binomial terms stay defined.
        let degree_sum: usize = clamp1_degrees.iter().map(|(a, b)| a + b).sum();
        let mut mean = degree_sum as f64 / (2.0 * data.len() as f64);
        if options.halve_delta {
            mean /= 2.0;
        }
        let delta = (mean.round() as usize).max(1);
        Ok(Self {
            labels: data.iter().map(|s| s.label).collect(),
            clamp1_degrees,
            delta,
        })
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    /// Conditional log-likelihood and d/dθ_β at `theta_beta`.
    pub fn objective(&self, theta_beta: f64) -> (f64, f64) {
        let beta = logistic(theta_beta);
        let beta_jacobian = beta * (1.0 - beta);
        let n = self.labels.len();
        let mut log_terms = vec![0.0; n];
        let mut gradient_terms = vec![0.0; n];
        for (j, (&(degree_u, degree_v), &label)) in
            self.clamp1_degrees.iter().zip(&self.labels).enumerate()
        {
            let (pu1, dpu1) = ws_degree_pmf_with_dbeta(self.delta, beta, degree_u);
            let (pv1, dpv1) = ws_degree_pmf_with_dbeta(self.delta, beta, degree_v);
            let (pu0, dpu0) = ws_degree_pmf_with_dbeta(self.delta, beta, degree_u - 1);
            let (pv0, dpv0) = ws_degree_pmf_with_dbeta(self.delta, beta, degree_v - 1);
            let clamp1 = pu1 * pv1;
            let clamp0 = pu0 * pv0;
            let d_clamp1 = dpu1 * pv1 + pu1 * dpv1;
            let d_clamp0 = dpu0 * pv0 + pu0 * dpv0;
            let total = clamp1 + clamp0;
            let (p_edge, dp_edge) = if total == 0.0 {
                (0.5, 0.0)
            } else {
                (
                    clamp1 / total,
                    (d_clamp1 * clamp0 - clamp1 * d_clamp0) / (total * total),
                )
            };
            let (p, dp) = if label {
                (p_edge, dp_edge)
            } else {
                (1.0 - p_edge, -dp_edge)
            };
            if p <= LOG_CLIP {
                log_terms[j] = LOG_CLIP.ln();
            } else if p >= 1.0 - LOG_CLIP {
                log_terms[j] = (1.0 - LOG_CLIP).ln();
            } else {
                log_terms[j] = p.ln();
                gradient_terms[j] = dp / p * beta_jacobian;
            }
        }
        (pairwise_sum(&log_terms), pairwise_sum(&gradient_terms))
    }

    pub fn fit(&self) -> Result<CwsModel, FitError> {
        let theta = gradient_ascent(1, |t| {
            let (value, gradient) = self.objective(t[0]);
            (value, vec![gradient])
        })?;
        Ok(CwsModel::new(self.delta, theta[0]))
    }
}

/// Estimate δ from the data, then fit θ_β by gradient ascent.
pub fn fit_cws(data: &[LabeledSample], options: CwsFitOptions) -> Result<CwsModel, FitError> {
    CwsFit::new(data, options)?.fit()
}
