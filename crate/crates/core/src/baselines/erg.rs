//! Conditional exponential random graph models.
//!
//! The Markov variant uses edge, k-star, and triangle counts; the
//! higher-order variant uses the edge count plus alternating k-star and
//! k-triangle statistics. Both score a candidate pair by clamping its value
//! to 1 and to 0 in the neighborhood and taking a softmax over the two
//! resulting potentials, so only statistic differences between the clamps
//! matter.

use rayon::prelude::*;

use super::statistics::{alternating_tail, common_neighbors, graph_statistics};
use super::{gradient_ascent, softplus, FitError};
use crate::graph::{LabeledSample, NeighborhoodSubgraph, UndirectedGraph};
use crate::numeric::{binomial, logistic, pairwise_sum};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErgVariant {
    /// Potentials (E, S_2..S_K, T); parameters (η, σ_2..σ_K, τ).
    Markov,
    /// Potentials (E, S*, T*); parameters (η, σ, τ).
    HigherOrder,
}

impl ErgVariant {
    pub fn parameter_count(&self, k_max: usize) -> usize {
        match self {
            ErgVariant::Markov => k_max + 1,
            ErgVariant::HigherOrder => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErgModel {
    pub variant: ErgVariant,
    /// Markov: (η, σ_2..σ_K, τ). Higher-order: (η, σ, τ).
    pub theta: Vec<f64>,
    pub k_max: usize,
    pub rho: f64,
}

impl ErgModel {
    pub fn new(variant: ErgVariant, theta: Vec<f64>, k_max: usize, rho: f64) -> Self {
        assert_eq!(
            theta.len(),
            variant.parameter_count(k_max),
            "parameter vector length must match the variant"
        );
        Self {
            variant,
            theta,
            k_max,
            rho,
        }
    }

    /// Full potential vector φ(G) for this variant.
    pub fn potentials(&self, graph: &UndirectedGraph) -> Vec<f64> {
        potential_vector(self.variant, self.k_max, self.rho, graph)
    }

    /// P(X_uv = 1 | neighborhood) via the incremental statistic difference.
    pub fn conditional(&self, neighborhood: &NeighborhoodSubgraph) -> f64 {
        let difference = statistic_difference(self.variant, self.k_max, self.rho, neighborhood);
        logistic(dot(&self.theta, &difference))
    }

    /// Same conditional, recomputing full statistics on both clamps.
    /// Reference path used to validate the incremental computation.
    pub fn conditional_full(&self, neighborhood: &NeighborhoodSubgraph) -> f64 {
        let difference =
            statistic_difference_full(self.variant, self.k_max, self.rho, neighborhood);
        logistic(dot(&self.theta, &difference))
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn potential_vector(
    variant: ErgVariant,
    k_max: usize,
    rho: f64,
    graph: &UndirectedGraph,
) -> Vec<f64> {
    let stats = graph_statistics(graph, k_max, rho);
    match variant {
        ErgVariant::Markov => {
            let mut phi = Vec::with_capacity(k_max + 1);
            phi.push(stats.edge_count);
            phi.extend_from_slice(&stats.k_stars);
            phi.push(stats.triangles);
            phi
        }
        ErgVariant::HigherOrder => vec![
            stats.edge_count,
            stats.alternating_star,
            stats.alternating_triangle,
        ],
    }
}

/// φ(clamp 1) - φ(clamp 0), computed incrementally from the statistics the
/// focus edge touches: its endpoint degrees and the common-neighbor counts
/// of the edges it completes triangles with.
pub fn statistic_difference(
    variant: ErgVariant,
    k_max: usize,
    rho: f64,
    neighborhood: &NeighborhoodSubgraph,
) -> Vec<f64> {
    let focus = neighborhood.focus();
    let clamp0 = neighborhood.graph().without_edge(focus);
    let (u, v) = (focus.min_id(), focus.max_id());
    let (degree_u, degree_v) = (clamp0.neighbors(u).len(), clamp0.neighbors(v).len());
    let common: Vec<u32> = common_neighbors(&clamp0, u, v).collect();

    match variant {
        ErgVariant::Markov => {
            // ΔE = 1; ΔS_k = C(d_u, k-1) + C(d_v, k-1) by Pascal's rule;
            // ΔT = |common neighbors|.
            let mut difference = Vec::with_capacity(k_max + 1);
            difference.push(1.0);
            for k in 2..=k_max as u64 {
                difference
                    .push(binomial(degree_u as u64, k - 1) + binomial(degree_v as u64, k - 1));
            }
            difference.push(common.len() as f64);
            difference
        }
        ErgVariant::HigherOrder => {
            let star_shift = |d: usize| alternating_tail(d + 1, rho) - alternating_tail(d, rho);
            let delta_star = star_shift(degree_u) + star_shift(degree_v);
            // The new edge contributes its own alternating tail; each edge
            // {u,w} or {v,w} to a common neighbor w gains one common
            // neighbor (the opposite endpoint).
            let mut delta_triangle = alternating_tail(common.len(), rho);
            for &w in &common {
                let gain = |a: u32, b: u32| {
                    let c = super::statistics::common_neighbor_count(&clamp0, a, b);
                    alternating_tail(c + 1, rho) - alternating_tail(c, rho)
                };
                delta_triangle += gain(u, w) + gain(v, w);
            }
            vec![1.0, delta_star, delta_triangle]
        }
    }
}

/// φ(clamp 1) - φ(clamp 0) by full recomputation on both clamped graphs.
pub fn statistic_difference_full(
    variant: ErgVariant,
    k_max: usize,
    rho: f64,
    neighborhood: &NeighborhoodSubgraph,
) -> Vec<f64> {
    let focus = neighborhood.focus();
    let clamp0 = neighborhood.graph().without_edge(focus);
    let clamp1 = neighborhood.graph().with_edge(focus);
    let phi0 = potential_vector(variant, k_max, rho, &clamp0);
    let phi1 = potential_vector(variant, k_max, rho, &clamp1);
    phi1.iter().zip(&phi0).map(|(a, b)| a - b).collect()
}

/// Precomputed fitting problem: per-sample clamp differences and labels.
/// The conditional log-likelihood is that of a logistic model on the
/// differences, since φ(clamp x) = x·φ(1) + (1-x)·φ(0).
pub struct ErgFit {
    labels: Vec<bool>,
    differences: Vec<Vec<f64>>,
    variant: ErgVariant,
    k_max: usize,
    rho: f64,
}

impl ErgFit {
    pub fn new(
        data: &[LabeledSample],
        variant: ErgVariant,
        k_max: usize,
        rho: f64,
    ) -> Result<Self, FitError> {
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
        let differences: Vec<Vec<f64>> = data
            .par_iter()
            .map(|sample| statistic_difference(variant, k_max, rho, &sample.neighborhood))
            .collect();
        Ok(Self {
            labels: data.iter().map(|s| s.label).collect(),
            differences,
            variant,
            k_max,
            rho,
        })
    }

    pub fn parameter_count(&self) -> usize {
        self.variant.parameter_count(self.k_max)
    }

    /// Conditional log-likelihood and its gradient at `theta`.
    ///
    /// Per sample: log P(x | ·) = -softplus(∓ θ·Δφ) and the gradient is
    /// (x - P(1))·Δφ. Reductions use fixed-order pairwise sums.
    pub fn objective(&self, theta: &[f64]) -> (f64, Vec<f64>) {
        let dim = theta.len();
        let n = self.labels.len();
        let mut log_terms = vec![0.0; n];
        let mut gradient_terms = vec![vec![0.0; n]; dim];
        for (j, (difference, &label)) in self.differences.iter().zip(&self.labels).enumerate() {
            let score = dot(theta, difference);
            log_terms[j] = if label {
                -softplus(-score)
            } else {
                -softplus(score)
            };
            let residual = (label as u8) as f64 - logistic(score);
            for (i, d) in difference.iter().enumerate() {
                gradient_terms[i][j] = residual * d;
            }
        }
        let gradient = gradient_terms.iter().map(|g| pairwise_sum(g)).collect();
        (pairwise_sum(&log_terms), gradient)
    }

    pub fn fit(&self) -> Result<ErgModel, FitError> {
        let theta = gradient_ascent(self.parameter_count(), |t| self.objective(t))?;
        Ok(ErgModel::new(self.variant, theta, self.k_max, self.rho))
    }
}

/// Fit an ERG by conditional maximum likelihood.
pub fn fit_erg(
    data: &[LabeledSample],
    variant: ErgVariant,
    k_max: usize,
    rho: f64,
) -> Result<ErgModel, FitError> {
    ErgFit::new(data, variant, k_max, rho)?.fit()
}
