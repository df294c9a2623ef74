//! Fiedler random graph estimation: class priors, Epanechnikov kernel
//! density estimation of the Fiedler-delta distribution, and the Bayes
//! inversion that turns the two class-conditional densities into an edge
//! posterior.

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{LabeledSample, NodePair, UndirectedGraph};
use crate::spectral::{fiedler_delta_with, SolverOptions, SpectralError};

#[derive(Debug, Error)]
pub enum TrainError {
    #[error("training data is empty")]
    EmptyData,
    #[error("training data contains no {missing} pairs; sample more pairs or use stratified sampling")]
    SingleClass { missing: &'static str },
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// Epanechnikov kernel K(t) = (3/4)(1 - t^2) on |t| ≤ 1, else 0.
pub fn epanechnikov(t: f64) -> f64 {
    if t.abs() <= 1.0 {
        0.75 * (1.0 - t * t)
    } else {
        0.0
    }
}

/// Optimal rule-of-thumb constant for the Epanechnikov kernel.
const BANDWIDTH_CONSTANT: f64 = 2.345;
/// Floor that keeps degenerate (all-equal or singleton) samples usable.
const BANDWIDTH_FLOOR: f64 = 1e-4;

/// Rule-of-thumb bandwidth h = C·σ̂·m^(-1/5) with σ̂ = min(std-dev, IQR/1.349),
/// floored at 1e-4.
pub fn select_bandwidth(samples: &[f64]) -> Result<f64, TrainError> {
    if samples.is_empty() {
        return Err(TrainError::EmptyData);
    }
    let m = samples.len();
    let robust_spread = if m < 2 {
        0.0
    } else {
        let mean = samples.iter().sum::<f64>() / m as f64;
        let variance =
            samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (m - 1) as f64;
        let std_dev = variance.sqrt();
        let mut sorted = samples.to_vec();
        sorted.sort_unstable_by(f64::total_cmp);
        let iqr = quantile(&sorted, 0.75) - quantile(&sorted, 0.25);
        std_dev.min(iqr / 1.349)
    };
    let h = BANDWIDTH_CONSTANT * robust_spread * (m as f64).powf(-0.2);
    Ok(h.max(BANDWIDTH_FLOOR))
}

/// Linear-interpolation quantile of a sorted slice (the convention used by
/// most statistics packages).
fn quantile(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let position = p * (n - 1) as f64;
    let lower = position.floor() as usize;
    let upper = position.ceil() as usize;
    let weight = position - lower as f64;
    sorted[lower] * (1.0 - weight) + sorted[upper] * weight
}

/// Fraction of positive labels.
pub fn fit_prior(labels: &[bool]) -> Result<f64, TrainError> {
    if labels.is_empty() {
        return Err(TrainError::EmptyData);
    }
    let positives = labels.iter().filter(|&&x| x).count();
    Ok(positives as f64 / labels.len() as f64)
}

/// Epanechnikov kernel density estimate over a fixed sample of statistic
/// values. Density is zero outside the union of [x_i - h, x_i + h].
#[derive(Debug, Clone, PartialEq)]
pub struct KernelDensityEstimate {
    /// Sample points, sorted ascending.
    points: Vec<f64>,
    bandwidth: f64,
}

impl KernelDensityEstimate {
    /// Estimate with an explicit bandwidth.
    pub fn with_bandwidth(mut points: Vec<f64>, bandwidth: f64) -> Self {
        assert!(!points.is_empty(), "KDE needs at least one sample point");
        assert!(bandwidth > 0.0, "bandwidth must be positive");
        points.sort_unstable_by(f64::total_cmp);
        Self { points, bandwidth }
    }

    /// Estimate with the rule-of-thumb bandwidth.
    pub fn fit(points: Vec<f64>) -> Result<Self, TrainError> {
        let bandwidth = select_bandwidth(&points)?;
        Ok(Self::with_bandwidth(points, bandwidth))
    }

    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    /// Density (1/m) Σ_i (1/h) K((x - x_i)/h). Only the points within one
    /// bandwidth of `x` contribute, found by binary search.
    pub fn density(&self, x: f64) -> f64 {
        let h = self.bandwidth;
        let lo = self.points.partition_point(|&p| p < x - h);
        let hi = self.points.partition_point(|&p| p <= x + h);
        let sum: f64 = self.points[lo..hi]
            .iter()
            .map(|&p| epanechnikov((x - p) / h))
            .sum();
        sum / (h * self.points.len() as f64)
    }

    /// Interval outside which the density is exactly zero.
    pub fn support(&self) -> (f64, f64) {
        (
            self.points[0] - self.bandwidth,
            self.points[self.points.len() - 1] + self.bandwidth,
        )
    }
}

/// Fitted Fiedler random graph model: edge prior plus one Fiedler-delta KDE
/// per class.
#[derive(Debug, Clone, PartialEq)]
pub struct FrgModel {
    prior_edge: f64,
    kde_pos: KernelDensityEstimate,
    kde_neg: KernelDensityEstimate,
}

/// Training knobs: an optional bandwidth override (applied to both classes)
/// and the eigensolver routing options.
#[derive(Debug, Clone, Copy, Default)]
pub struct FrgTrainOptions {
    pub bandwidth_override: Option<f64>,
    pub solver: SolverOptions,
}

impl FrgModel {
    pub fn new(
        prior_edge: f64,
        kde_pos: KernelDensityEstimate,
        kde_neg: KernelDensityEstimate,
    ) -> Self {
        assert!(
            prior_edge > 0.0 && prior_edge < 1.0,
            "prior must be strictly inside (0, 1): both classes observed"
        );
        Self {
            prior_edge,
            kde_pos,
            kde_neg,
        }
    }

    pub fn prior_edge(&self) -> f64 {
        self.prior_edge
    }

    pub fn kde_pos(&self) -> &KernelDensityEstimate {
        &self.kde_pos
    }

    pub fn kde_neg(&self) -> &KernelDensityEstimate {
        &self.kde_neg
    }

    /// Posterior edge probability at a Fiedler-delta value:
    /// p(δ|1)π / (p(δ|1)π + p(δ|0)(1-π)).
    ///
    /// Outside both kernel supports the ratio is undefined (0/0); the prior
    /// is returned there as the unique label-independent completion.
    pub fn conditional(&self, delta: f64) -> f64 {
        let weighted_pos = self.kde_pos.density(delta) * self.prior_edge;
        let weighted_neg = self.kde_neg.density(delta) * (1.0 - self.prior_edge);
        let total = weighted_pos + weighted_neg;
        if total == 0.0 {
            self.prior_edge
        } else {
            weighted_pos / total
        }
    }

    /// Score a candidate pair of `graph`: extract its neighborhood, compute
    /// the Fiedler delta there, and return the posterior. The score does not
    /// change if the candidate edge itself is toggled in `graph`.
    pub fn score(&self, graph: &UndirectedGraph, pair: NodePair) -> Result<f64, SpectralError> {
        self.score_with(graph, pair, SolverOptions::default())
    }

    pub fn score_with(
        &self,
        graph: &UndirectedGraph,
        pair: NodePair,
        solver: SolverOptions,
    ) -> Result<f64, SpectralError> {
        let neighborhood = graph.neighborhood_subgraph(pair);
        let delta = fiedler_delta_with(neighborhood.graph(), neighborhood.focus(), solver)?;
        Ok(self.conditional(delta))
    }
}

/// Fiedler deltas of every sample's neighborhood, in input order. Exposed so
/// training and diagnostics share one code path.
pub fn sample_deltas(
    data: &[LabeledSample],
    solver: SolverOptions,
) -> Result<Vec<f64>, SpectralError> {
    data.par_iter()
        .map(|sample| {
            fiedler_delta_with(
                sample.neighborhood.graph(),
                sample.neighborhood.focus(),
                solver,
            )
        })
        .collect()
}

/// Fit an FRG model: compute each sample's Fiedler delta, split by label,
/// estimate the prior and one KDE per class (independent bandwidths).
pub fn train_frg(data: &[LabeledSample], options: &FrgTrainOptions) -> Result<FrgModel, TrainError> {
    if data.is_empty() {
        return Err(TrainError::EmptyData);
    }
    let deltas = sample_deltas(data, options.solver)?;

    let mut positive = Vec::new();
    let mut negative = Vec::new();
    for (sample, delta) in data.iter().zip(&deltas) {
        if sample.label {
            positive.push(*delta);
        } else {
            negative.push(*delta);
        }
    }
    if positive.is_empty() {
        return Err(TrainError::SingleClass {
            missing: "positive (linked)",
        });
    }
    if negative.is_empty() {
        return Err(TrainError::SingleClass {
            missing: "negative (unlinked)",
        });
    }

    let prior = positive.len() as f64 / data.len() as f64;
    let kde_for = |points: Vec<f64>| -> Result<KernelDensityEstimate, TrainError> {
        match options.bandwidth_override {
            Some(h) => Ok(KernelDensityEstimate::with_bandwidth(points, h)),
            None => KernelDensityEstimate::fit(points),
        }
    };
    Ok(FrgModel::new(prior, kde_for(positive)?, kde_for(negative)?))
}
