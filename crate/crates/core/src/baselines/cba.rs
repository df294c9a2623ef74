//! Conditional Barabási-Albert model: the probability of a link is driven
//! by the endpoint degrees raised to a fitted exponent.

use rayon::prelude::*;

use super::{gradient_ascent, FitError, LOG_CLIP};
use crate::graph::{LabeledSample, NeighborhoodSubgraph};
use crate::numeric::pairwise_sum;

/// d^α with the conventions 0^0 = 1 and 0^α = 0 otherwise (zero-degree
/// nodes drop out of the attachment weights).
fn degree_power(degree: usize, alpha: f64) -> f64 {
    if degree == 0 {
        if alpha == 0.0 {
            1.0
        } else {
            0.0
        }
    } else {
        (degree as f64).powf(alpha)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CbaModel {
    pub alpha: f64,
}

impl CbaModel {
    pub fn new(alpha: f64) -> Self {
        assert!(alpha.is_finite());
        Self { alpha }
    }

    /// P(X_uv = 1 | neighborhood) = d_u^α d_v^α / (Σ_w d_w^α)².
    ///
    /// Degrees are taken with the focus edge removed, so the score cannot
    /// read its own label. Returns 0 when the denominator vanishes.
    pub fn conditional(&self, neighborhood: &NeighborhoodSubgraph) -> f64 {
        let summary = NeighborhoodDegrees::on_clamp0(neighborhood);
        summary.probability(self.alpha)
    }
}

/// Clamp-0 degree summary of one neighborhood: endpoint degrees plus the
/// full degree multiset, compressed as (degree, multiplicity).
struct NeighborhoodDegrees {
    degree_u: usize,
    degree_v: usize,
    multiset: Vec<(usize, usize)>,
}

impl NeighborhoodDegrees {
    fn on_clamp0(neighborhood: &NeighborhoodSubgraph) -> Self {
        let graph = neighborhood.graph();
        let focus = neighborhood.focus();
        let drop = usize::from(graph.has_edge(focus));
        let (u, v) = (focus.min_id(), focus.max_id());
        let mut counts: Vec<(usize, usize)> = Vec::new();
        let mut add = |degree: usize| {
            match counts.iter_mut().find(|(d, _)| *d == degree) {
                Some((_, multiplicity)) => *multiplicity += 1,
                None => counts.push((degree, 1)),
            }
        };
        let mut degree_u = 0;
        let mut degree_v = 0;
        for w in 0..graph.node_count() as u32 {
            let mut degree = graph.neighbors(w).len();
            if w == u || w == v {
                degree -= drop;
            }
            if w == u {
                degree_u = degree;
            }
            if w == v {
                degree_v = degree;
            }
            add(degree);
        }
        counts.sort_unstable();
        Self {
            degree_u,
            degree_v,
            multiset: counts,
        }
    }

    fn probability(&self, alpha: f64) -> f64 {
        let numerator = degree_power(self.degree_u, alpha) * degree_power(self.degree_v, alpha);
        let weight_sum: f64 = self
            .multiset
            .iter()
            .map(|&(degree, multiplicity)| multiplicity as f64 * degree_power(degree, alpha))
            .sum();
        if weight_sum == 0.0 {
            0.0
        } else {
            numerator / (weight_sum * weight_sum)
        }
    }

    /// (P, dP/dα). For positive endpoint degrees,
    /// dP/dα = P·(ln d_u + ln d_v - 2·Σ w^α ln w / Σ w^α).
    fn probability_with_derivative(&self, alpha: f64) -> (f64, f64) {
        let probability = self.probability(alpha);
        if probability == 0.0 || self.degree_u == 0 || self.degree_v == 0 {
            return (probability, 0.0);
        }
        let mut weight_sum = 0.0;
        let mut weighted_log_sum = 0.0;
        for &(degree, multiplicity) in &self.multiset {
            if degree == 0 {
                continue;
            }
            let weight = multiplicity as f64 * degree_power(degree, alpha);
            weight_sum += weight;
            weighted_log_sum += weight * (degree as f64).ln();
        }
        let derivative = probability
            * ((self.degree_u as f64).ln() + (self.degree_v as f64).ln()
                - 2.0 * weighted_log_sum / weight_sum);
        (probability, derivative)
    }
}

/// Precomputed fitting problem for the CBA exponent.
pub struct CbaFit {
    labels: Vec<bool>,
    summaries: Vec<NeighborhoodDegrees>,
}

impl CbaFit {
    pub fn new(data: &[LabeledSample]) -> Result<Self, FitError> {
        if data.is_empty() {
            return Err(FitError::EmptyData);
        }
        if data.iter().all(|s| !s.label) {
            return Err(FitError::SingleClass {
                missing: "positive (linked)",
            });
        }
        if data.iter().all(|s| s.label) {
            return Err(FitError::SingleClass {
                missing: "negative (unlinked)",
            });
        }
        let summaries: Vec<NeighborhoodDegrees> = data
            .par_iter()
            .map(|sample| NeighborhoodDegrees::on_clamp0(&sample.neighborhood))
            .collect();
        Ok(Self {
            labels: data.iter().map(|s| s.label).collect(),
            summaries,
        })
    }

    /// Bernoulli log-likelihood (probabilities clipped at 1e-12 before the
    /// log) and its derivative in α.
    pub fn objective(&self, alpha: f64) -> (f64, f64) {
        let n = self.labels.len();
        let mut log_terms = vec![0.0; n];
        let mut gradient_terms = vec![0.0; n];
        for (j, (summary, &label)) in self.summaries.iter().zip(&self.labels).enumerate() {
            let (p_edge, dp_edge) = summary.probability_with_derivative(alpha);
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
                gradient_terms[j] = dp / p;
            }
        }
        (pairwise_sum(&log_terms), pairwise_sum(&gradient_terms))
    }

    pub fn fit(&self) -> Result<CbaModel, FitError> {
        let theta = gradient_ascent(1, |t| {
            let (value, gradient) = self.objective(t[0]);
            (value, vec![gradient])
        })?;
        Ok(CbaModel::new(theta[0]))
    }
}

/// Fit the CBA exponent by conditional maximum likelihood.
pub fn fit_cba(data: &[LabeledSample]) -> Result<CbaModel, FitError> {
    CbaFit::new(data)?.fit()
}
