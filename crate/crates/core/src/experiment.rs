//! Link-prediction evaluation protocol: uniform pair sampling with disjoint
//! train/test splits, neighborhood induction, model training and scoring,
//! and ROC/AUC computation. Also hosts the exact small-graph oracle for the
//! exponential random graph conditional.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::baselines::{
    CbaFit, CbaModel, CwsFit, CwsFitOptions, CwsModel, ErgFit, ErgModel, ErgVariant, FitError,
};
use crate::frg::{train_frg, FrgModel, FrgTrainOptions, TrainError};
use crate::graph::{LabeledSample, NodePair, UndirectedGraph};
use crate::rng::substream;
use crate::spectral::{fiedler_delta_with, SolverOptions, SpectralError};

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("requested {requested} sample pairs but the graph only has {available} distinct pairs")]
    SampleBudget { requested: u64, available: u64 },
    #[error("requested {requested} positive pairs but the graph only has {available} edges")]
    PositiveBudget { requested: u64, available: u64 },
    #[error("scored set contains only one class, ROC is undefined")]
    SingleClassScores,
    #[error("exact enumeration refused: {node_count} nodes exceeds the cap of 5")]
    OracleTooLarge { node_count: usize },
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// Sampling protocol configuration. Train and test pairs are drawn uniformly
/// without replacement across the union, so the two splits are disjoint by
/// construction.
#[derive(Debug, Clone, Copy)]
pub struct SamplingConfig {
    pub train_size: usize,
    pub test_size: usize,
    pub seed: u64,
    /// Emit a warning when the train split holds fewer linked pairs.
    pub min_positive: usize,
    /// Force roughly this fraction of linked pairs per split instead of
    /// sampling uniformly. Off by default; useful for small budgets.
    pub stratify_positive_fraction: Option<f64>,
}

impl SamplingConfig {
    pub fn new(train_size: usize, test_size: usize, seed: u64) -> Self {
        Self {
            train_size,
            test_size,
            seed,
            min_positive: 10,
            stratify_positive_fraction: None,
        }
    }
}

fn pair_key(pair: NodePair) -> u64 {
    (u64::from(pair.min_id()) << 32) | u64::from(pair.max_id())
}

fn draw_uniform_pairs<R: Rng>(
    graph: &UndirectedGraph,
    count: usize,
    rng: &mut R,
    seen: &mut HashSet<u64>,
) -> Vec<NodePair> {
    let n = graph.node_count() as u32;
    let mut pairs = Vec::with_capacity(count);
    while pairs.len() < count {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u == v {
            continue;
        }
        let pair = NodePair::new(u, v);
        if seen.insert(pair_key(pair)) {
            pairs.push(pair);
        }
    }
    pairs
}

fn draw_stratified_pairs<R: Rng>(
    graph: &UndirectedGraph,
    count: usize,
    positive_fraction: f64,
    edges: &[NodePair],
    rng: &mut R,
    seen: &mut HashSet<u64>,
) -> Result<Vec<NodePair>, ExperimentError> {
    let target_positive = ((count as f64 * positive_fraction).round() as usize).min(count);
    if (edges.len() as u64) < target_positive as u64 {
        return Err(ExperimentError::PositiveBudget {
            requested: target_positive as u64,
            available: edges.len() as u64,
        });
    }
    let mut pairs = Vec::with_capacity(count);
    let mut positives = 0;
    let mut attempts = 0u64;
    while positives < target_positive {
        attempts += 1;
        if attempts > 200 * edges.len() as u64 {
            return Err(ExperimentError::PositiveBudget {
                requested: target_positive as u64,
                available: edges.len() as u64,
            });
        }
        let pair = edges[rng.gen_range(0..edges.len())];
        if seen.insert(pair_key(pair)) {
            pairs.push(pair);
            positives += 1;
        }
    }
    // Fill the remainder uniformly (linked pairs may still appear).
    pairs.extend(draw_uniform_pairs(graph, count - positives, rng, seen));
    Ok(pairs)
}

/// Draw the train and test splits per the sampling protocol and attach each
/// pair's label and induced neighborhood.
///
/// The two splits use independent substreams of the master seed, and the
/// test stream rejects anything the train stream already took, so
/// train ∩ test = ∅ for every seed.
pub fn sample_dataset(
    graph: &UndirectedGraph,
    config: &SamplingConfig,
) -> Result<(Vec<LabeledSample>, Vec<LabeledSample>), ExperimentError> {
    let n = graph.node_count() as u64;
    let available = n * n.saturating_sub(1) / 2;
    let requested = (config.train_size + config.test_size) as u64;
    if requested > available {
        return Err(ExperimentError::SampleBudget {
            requested,
            available,
        });
    }

    let mut seen = HashSet::with_capacity(config.train_size + config.test_size);
    let edges: Vec<NodePair> = if config.stratify_positive_fraction.is_some() {
        graph.edges().collect()
    } else {
        Vec::new()
    };

    let draw = |label: &str, count: usize, seen: &mut HashSet<u64>| {
        let mut rng = substream(config.seed, label);
        match config.stratify_positive_fraction {
            Some(fraction) => draw_stratified_pairs(graph, count, fraction, &edges, &mut rng, seen),
            None => Ok(draw_uniform_pairs(graph, count, &mut rng, seen)),
        }
    };
    let train_pairs = draw("train-sampling", config.train_size, &mut seen)?;
    let test_pairs = draw("test-sampling", config.test_size, &mut seen)?;

    let materialize = |pairs: Vec<NodePair>| -> Vec<LabeledSample> {
        pairs
            .into_par_iter()
            .map(|pair| LabeledSample::from_graph(graph, pair))
            .collect()
    };
    let train = materialize(train_pairs);
    let test = materialize(test_pairs);

    let positives = train.iter().filter(|s| s.label).count();
    if positives < config.min_positive {
        log::warn!(
            "train split has only {positives} linked pairs (wanted at least {}); \
             estimates may be unstable — consider larger sizes or stratified sampling",
            config.min_positive
        );
    }
    Ok((train, test))
}

/// ROC curve as (false-positive-rate, true-positive-rate) points: a
/// threshold sweep over the distinct scores, ties grouped, giving a monotone
/// staircase from (0,0) to (1,1).
pub fn roc_curve(scored: &[(bool, f64)]) -> Result<Vec<(f64, f64)>, ExperimentError> {
    let positives = scored.iter().filter(|(label, _)| *label).count();
    let negatives = scored.len() - positives;
    if positives == 0 || negatives == 0 {
        return Err(ExperimentError::SingleClassScores);
    }
    let mut order: Vec<usize> = (0..scored.len()).collect();
    order.sort_by(|&a, &b| scored[b].1.total_cmp(&scored[a].1));

    let mut points = vec![(0.0, 0.0)];
    let mut true_positives = 0usize;
    let mut false_positives = 0usize;
    let mut index = 0;
    while index < order.len() {
        let threshold = scored[order[index]].1;
        while index < order.len() && scored[order[index]].1 == threshold {
            if scored[order[index]].0 {
                true_positives += 1;
            } else {
                false_positives += 1;
            }
            index += 1;
        }
        points.push((
            false_positives as f64 / negatives as f64,
            true_positives as f64 / positives as f64,
        ));
    }
    Ok(points)
}

/// Trapezoidal area under an ROC curve.
pub fn auc(roc: &[(f64, f64)]) -> f64 {
    roc.windows(2)
        .map(|w| (w[1].0 - w[0].0) * (w[1].1 + w[0].1) / 2.0)
        .sum()
}

/// One scored test pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScoredPair {
    pub pair: NodePair,
    pub label: bool,
    pub score: f64,
}

/// Scores, ROC points, and AUC of one model on one test split.
#[derive(Debug, Clone)]
pub struct EvaluationResult {
    pub scored: Vec<ScoredPair>,
    pub roc_points: Vec<(f64, f64)>,
    pub auc: f64,
}

/// Model selection plus hyperparameters, as requested on the command line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelSpec {
    Frg { bandwidth_override: Option<f64> },
    MarkovErg { k_max: usize, rho: f64 },
    HigherOrderErg { k_max: usize, rho: f64 },
    Cws { halve_delta: bool },
    Cba,
}

impl ModelSpec {
    pub fn name(&self) -> &'static str {
        match self {
            ModelSpec::Frg { .. } => "frg",
            ModelSpec::MarkovErg { .. } => "mrg",
            ModelSpec::HigherOrderErg { .. } => "hrg",
            ModelSpec::Cws { .. } => "cws",
            ModelSpec::Cba => "cba",
        }
    }
}

#[derive(Debug, Error)]
pub enum ModelTrainError {
    #[error(transparent)]
    Frg(#[from] TrainError),
    #[error(transparent)]
    Baseline(#[from] FitError),
}

/// A fitted model of any kind, scoring through one interface.
#[derive(Debug, Clone, PartialEq)]
pub enum TrainedModel {
    Frg(FrgModel),
    Erg(ErgModel),
    Cws(CwsModel),
    Cba(CbaModel),
}

impl TrainedModel {
    pub fn kind_name(&self) -> &'static str {
        match self {
            TrainedModel::Frg(_) => "frg",
            TrainedModel::Erg(model) => match model.variant {
                ErgVariant::Markov => "mrg",
                ErgVariant::HigherOrder => "hrg",
            },
            TrainedModel::Cws(_) => "cws",
            TrainedModel::Cba(_) => "cba",
        }
    }

    pub fn train(
        spec: &ModelSpec,
        data: &[LabeledSample],
        solver: SolverOptions,
    ) -> Result<TrainedModel, ModelTrainError> {
        Ok(match *spec {
            ModelSpec::Frg { bandwidth_override } => {
                let options = FrgTrainOptions {
                    bandwidth_override,
                    solver,
                };
                TrainedModel::Frg(train_frg(data, &options)?)
            }
            ModelSpec::MarkovErg { k_max, rho } => {
                TrainedModel::Erg(ErgFit::new(data, ErgVariant::Markov, k_max, rho)?.fit()?)
            }
            ModelSpec::HigherOrderErg { k_max, rho } => {
                TrainedModel::Erg(ErgFit::new(data, ErgVariant::HigherOrder, k_max, rho)?.fit()?)
            }
            ModelSpec::Cws { halve_delta } => {
                TrainedModel::Cws(CwsFit::new(data, CwsFitOptions { halve_delta })?.fit()?)
            }
            ModelSpec::Cba => TrainedModel::Cba(CbaFit::new(data)?.fit()?),
        })
    }

    /// Conditional edge probability for one sample's neighborhood.
    pub fn score_sample(
        &self,
        sample: &LabeledSample,
        solver: SolverOptions,
    ) -> Result<f64, SpectralError> {
        let neighborhood = &sample.neighborhood;
        Ok(match self {
            TrainedModel::Frg(model) => {
                let delta =
                    fiedler_delta_with(neighborhood.graph(), neighborhood.focus(), solver)?;
                model.conditional(delta)
            }
            TrainedModel::Erg(model) => model.conditional(neighborhood),
            TrainedModel::Cws(model) => model.conditional(neighborhood),
            TrainedModel::Cba(model) => model.conditional(neighborhood),
        })
    }
}

/// Score a whole test split in input order (scoring is embarrassingly
/// parallel over the read-only model).
pub fn evaluate_model(
    model: &TrainedModel,
    test: &[LabeledSample],
    solver: SolverOptions,
) -> Result<EvaluationResult, ExperimentError> {
    let scores: Vec<f64> = test
        .par_iter()
        .map(|sample| model.score_sample(sample, solver))
        .collect::<Result<_, _>>()?;
    let scored: Vec<ScoredPair> = test
        .iter()
        .zip(&scores)
        .map(|(sample, &score)| ScoredPair {
            pair: sample.pair,
            label: sample.label,
            score,
        })
        .collect();
    let labeled: Vec<(bool, f64)> = scored.iter().map(|s| (s.label, s.score)).collect();
    let roc_points = roc_curve(&labeled)?;
    let auc = auc(&roc_points);
    Ok(EvaluationResult {
        scored,
        roc_points,
        auc,
    })
}

/// Outcome of one model inside an experiment run. Failures are carried as
/// messages so one model cannot abort the others.
#[derive(Debug)]
pub struct ModelOutcome {
    pub name: &'static str,
    pub result: Result<EvaluationResult, String>,
    pub train_seconds: f64,
    pub eval_seconds: f64,
}

/// Full comparison run: one shared sample, every model trained on the same
/// train split and scored on the same test split.
#[derive(Debug)]
pub struct ExperimentReport {
    pub train_size: usize,
    pub test_size: usize,
    pub train_positives: usize,
    pub test_positives: usize,
    pub outcomes: Vec<ModelOutcome>,
}

impl ExperimentReport {
    /// Structured text rendering. With `include_timings` off the output is a
    /// pure function of the graph bytes, config, and hyperparameters.
    pub fn render(&self, include_timings: bool) -> String {
        let mut out = String::new();
        out.push_str("experiment-report v1\n");
        let _ = writeln!(out, "train_size = {}", self.train_size);
        let _ = writeln!(out, "test_size = {}", self.test_size);
        let _ = writeln!(out, "train_positives = {}", self.train_positives);
        let _ = writeln!(out, "test_positives = {}", self.test_positives);
        for outcome in &self.outcomes {
            match &outcome.result {
                Ok(result) => {
                    let _ = write!(out, "model {}: auc = {:.6}", outcome.name, result.auc);
                }
                Err(message) => {
                    let _ = write!(out, "model {}: error = {:?}", outcome.name, message);
                }
            }
            if include_timings {
                let _ = write!(
                    out,
                    " [train_s = {:.3} eval_s = {:.3}]",
                    outcome.train_seconds, outcome.eval_seconds
                );
            }
            out.push('\n');
        }
        out
    }
}

/// Run the full protocol: sample once, train every requested model on the
/// train split, evaluate all of them on the test split.
pub fn run_experiment(
    graph: &UndirectedGraph,
    config: &SamplingConfig,
    specs: &[ModelSpec],
    solver: SolverOptions,
) -> Result<ExperimentReport, ExperimentError> {
    let (train, test) = sample_dataset(graph, config)?;
    let train_positives = train.iter().filter(|s| s.label).count();
    let test_positives = test.iter().filter(|s| s.label).count();

    let mut outcomes = Vec::with_capacity(specs.len());
    for spec in specs {
        let train_start = Instant::now();
        let trained = TrainedModel::train(spec, &train, solver);
        let train_seconds = train_start.elapsed().as_secs_f64();
        let eval_start = Instant::now();
        let result = match trained {
            Ok(model) => evaluate_model(&model, &test, solver).map_err(|e| e.to_string()),
            Err(error) => Err(error.to_string()),
        };
        outcomes.push(ModelOutcome {
            name: spec.name(),
            result,
            train_seconds,
            eval_seconds: eval_start.elapsed().as_secs_f64(),
        });
    }
    Ok(ExperimentReport {
        train_size: config.train_size,
        test_size: config.test_size,
        train_positives,
        test_positives,
        outcomes,
    })
}

/// Exact conditional P(X_focus = 1 | context) for an ERG on at most 5 nodes,
/// by enumerating every graph on the vertex set, normalizing the Boltzmann
/// weights into a joint distribution, and conditioning on the context.
///
/// This is the test oracle for the clamp-based conditional: the partition
/// function is evaluated explicitly here and nowhere else.
pub fn brute_force_erg_conditional(
    model: &ErgModel,
    node_count: usize,
    context_edges: &[(u32, u32)],
    focus: NodePair,
) -> Result<f64, ExperimentError> {
    if node_count > 5 {
        return Err(ExperimentError::OracleTooLarge { node_count });
    }
    let mut all_pairs = Vec::new();
    for u in 0..node_count as u32 {
        for v in (u + 1)..node_count as u32 {
            all_pairs.push(NodePair::new(u, v));
        }
    }
    let focus_bit = all_pairs
        .iter()
        .position(|&p| p == focus)
        .expect("focus pair within vertex set");
    let mut context_mask = 0u32;
    for &(u, v) in context_edges {
        let pair = NodePair::new(u, v);
        if pair == focus {
            continue;
        }
        let bit = all_pairs
            .iter()
            .position(|&p| p == pair)
            .expect("context edge within vertex set");
        context_mask |= 1 << bit;
    }

    let graph_count = 1u32 << all_pairs.len();
    let mut weights = Vec::with_capacity(graph_count as usize);
    for mask in 0..graph_count {
        let edges = all_pairs
            .iter()
            .enumerate()
            .filter(|(bit, _)| mask & (1 << bit) != 0)
            .map(|(_, p)| (p.min_id(), p.max_id()));
        let graph = UndirectedGraph::from_edges(node_count, edges);
        let potential: f64 = model
            .potentials(&graph)
            .iter()
            .zip(&model.theta)
            .map(|(phi, theta)| phi * theta)
            .sum();
        weights.push(potential.exp());
    }
    let partition: f64 = weights.iter().sum();
    let joint = |mask: u32| weights[mask as usize] / partition;

    let with_focus = joint(context_mask | (1 << focus_bit));
    let without_focus = joint(context_mask);
    Ok(with_focus / (with_focus + without_focus))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::logistic;
    use crate::synthetic::{gnp, powerlaw_cluster};
    use approx::assert_abs_diff_eq;

    fn test_graph() -> UndirectedGraph {
        powerlaw_cluster(120, 3, 0.6, &mut substream(99, "experiment-graph"))
    }

    #[test]
    fn sampling_is_deterministic_and_disjoint() {
        let g = test_graph();
        let config = SamplingConfig::new(80, 60, 42);
        let (train_a, test_a) = sample_dataset(&g, &config).unwrap();
        let (train_b, test_b) = sample_dataset(&g, &config).unwrap();
        assert_eq!(
            train_a.iter().map(|s| s.pair).collect::<Vec<_>>(),
            train_b.iter().map(|s| s.pair).collect::<Vec<_>>()
        );
        assert_eq!(
            test_a.iter().map(|s| s.pair).collect::<Vec<_>>(),
            test_b.iter().map(|s| s.pair).collect::<Vec<_>>()
        );
        let train_set: HashSet<u64> = train_a.iter().map(|s| pair_key(s.pair)).collect();
        assert!(test_a.iter().all(|s| !train_set.contains(&pair_key(s.pair))));
        assert_eq!(train_a.len(), 80);
        assert_eq!(test_a.len(), 60);
    }

    #[test]
    fn sampling_rejects_oversized_requests() {
        let g = UndirectedGraph::from_edges(4, [(0, 1)]);
        let config = SamplingConfig::new(5, 5, 1);
        assert!(matches!(
            sample_dataset(&g, &config),
            Err(ExperimentError::SampleBudget { .. })
        ));
    }

    #[test]
    fn stratified_sampling_hits_the_fraction() {
        let g = test_graph();
        let mut config = SamplingConfig::new(50, 50, 7);
        config.stratify_positive_fraction = Some(0.4);
        let (train, test) = sample_dataset(&g, &config).unwrap();
        assert!(train.iter().filter(|s| s.label).count() >= 20);
        assert!(test.iter().filter(|s| s.label).count() >= 20);
        let train_set: HashSet<u64> = train.iter().map(|s| pair_key(s.pair)).collect();
        assert!(test.iter().all(|s| !train_set.contains(&pair_key(s.pair))));
    }

    #[test]
    fn roc_perfect_separation() {
        let scored = [(true, 0.9), (true, 0.8), (false, 0.2), (false, 0.1)];
        let roc = roc_curve(&scored).unwrap();
        assert!(roc.contains(&(0.0, 1.0)));
        assert_eq!(roc.first(), Some(&(0.0, 0.0)));
        assert_eq!(roc.last(), Some(&(1.0, 1.0)));
        assert_abs_diff_eq!(auc(&roc), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn roc_all_ties_is_diagonal() {
        let scored = [(true, 0.5), (false, 0.5), (true, 0.5), (false, 0.5)];
        let roc = roc_curve(&scored).unwrap();
        assert_eq!(roc, vec![(0.0, 0.0), (1.0, 1.0)]);
        assert_abs_diff_eq!(auc(&roc), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn roc_example_auc() {
        let scored = [(true, 0.9), (false, 0.8), (true, 0.7), (false, 0.1)];
        let roc = roc_curve(&scored).unwrap();
        assert_abs_diff_eq!(auc(&roc), 0.75, epsilon = 1e-15);
    }

    #[test]
    fn roc_rejects_single_class() {
        assert!(matches!(
            roc_curve(&[(true, 0.3), (true, 0.6)]),
            Err(ExperimentError::SingleClassScores)
        ));
    }

    #[test]
    fn auc_matches_mann_whitney_with_ties() {
        // Independent oracle: pairwise comparison count with half ties.
        fn mann_whitney(scored: &[(bool, f64)]) -> f64 {
            let positives: Vec<f64> = scored.iter().filter(|s| s.0).map(|s| s.1).collect();
            let negatives: Vec<f64> = scored.iter().filter(|s| !s.0).map(|s| s.1).collect();
            let mut total = 0.0;
            for p in &positives {
                for n in &negatives {
                    total += if p > n {
                        1.0
                    } else if p == n {
                        0.5
                    } else {
                        0.0
                    };
                }
            }
            total / (positives.len() * negatives.len()) as f64
        }
        let mut rng = substream(3, "mw-oracle");
        for _ in 0..50 {
            let n = rng.gen_range(4..60);
            let scored: Vec<(bool, f64)> = (0..n)
                .map(|_| {
                    (
                        rng.gen_bool(0.4),
                        // Coarse grid forces plenty of ties.
                        (rng.gen_range(0..8) as f64) / 8.0,
                    )
                })
                .collect();
            if roc_curve(&scored).is_err() {
                continue;
            }
            let roc = roc_curve(&scored).unwrap();
            assert_abs_diff_eq!(auc(&roc), mann_whitney(&scored), epsilon = 1e-12);
        }
    }

    #[test]
    fn random_scores_give_half_auc() {
        let mut rng = substream(11, "random-auc");
        let scored: Vec<(bool, f64)> = (0..10_000)
            .map(|_| (rng.gen_bool(0.5), rng.gen::<f64>()))
            .collect();
        let roc = roc_curve(&scored).unwrap();
        assert!((auc(&roc) - 0.5).abs() < 0.02);
    }

    #[test]
    fn auc_invariant_under_monotone_transform() {
        let mut rng = substream(13, "monotone");
        let scored: Vec<(bool, f64)> = (0..300)
            .map(|_| (rng.gen_bool(0.3), rng.gen::<f64>()))
            .collect();
        let base = auc(&roc_curve(&scored).unwrap());
        let squashed: Vec<(bool, f64)> = scored
            .iter()
            .map(|&(l, s)| (l, logistic(3.0 * s - 1.0)))
            .collect();
        let transformed = auc(&roc_curve(&squashed).unwrap());
        assert_abs_diff_eq!(base, transformed, epsilon = 1e-12);
    }

    #[test]
    fn brute_force_oracle_uniform_at_zero() {
        let model = ErgModel::new(ErgVariant::Markov, vec![0.0; 4], 3, 2.0);
        let p = brute_force_erg_conditional(&model, 4, &[(0, 1), (2, 3)], NodePair::new(0, 2))
            .unwrap();
        assert_abs_diff_eq!(p, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn brute_force_oracle_edge_only_is_logistic() {
        for eta in [-0.7, 0.4, 1.9] {
            let model = ErgModel::new(ErgVariant::Markov, vec![eta, 0.0, 0.0, 0.0], 3, 2.0);
            for context in [vec![], vec![(1u32, 2u32)], vec![(1, 2), (2, 3), (1, 3)]] {
                let p =
                    brute_force_erg_conditional(&model, 4, &context, NodePair::new(0, 1)).unwrap();
                assert_abs_diff_eq!(p, logistic(eta), epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn brute_force_oracle_refuses_large_graphs() {
        let model = ErgModel::new(ErgVariant::Markov, vec![0.0; 4], 3, 2.0);
        assert!(matches!(
            brute_force_erg_conditional(&model, 6, &[], NodePair::new(0, 1)),
            Err(ExperimentError::OracleTooLarge { node_count: 6 })
        ));
    }

    #[test]
    fn run_experiment_reports_every_model() {
        let g = test_graph();
        let mut config = SamplingConfig::new(150, 120, 5);
        config.stratify_positive_fraction = Some(0.3);
        let specs = [
            ModelSpec::Frg {
                bandwidth_override: None,
            },
            ModelSpec::Cba,
        ];
        let report =
            run_experiment(&g, &config, &specs, SolverOptions::default()).unwrap();
        assert_eq!(report.outcomes.len(), 2);
        for outcome in &report.outcomes {
            let result = outcome.result.as_ref().expect("model should evaluate");
            assert!(result.auc >= 0.0 && result.auc <= 1.0);
            assert_eq!(result.scored.len(), 120);
        }
        let rendered = report.render(false);
        assert!(rendered.contains("model frg: auc ="));
        assert!(rendered.contains("model cba: auc ="));
    }

    #[test]
    fn experiment_render_is_reproducible() {
        let g = gnp(60, 0.15, &mut substream(21, "render"));
        let mut config = SamplingConfig::new(60, 60, 9);
        config.stratify_positive_fraction = Some(0.3);
        let specs = [ModelSpec::Cws { halve_delta: false }];
        let a = run_experiment(&g, &config, &specs, SolverOptions::default()).unwrap();
        let b = run_experiment(&g, &config, &specs, SolverOptions::default()).unwrap();
        assert_eq!(a.render(false), b.render(false));
    }

    #[test]
    fn empty_model_list_still_reports_counts() {
        let g = test_graph();
        let config = SamplingConfig::new(40, 40, 3);
        let report = run_experiment(&g, &config, &[], SolverOptions::default()).unwrap();
        assert!(report.outcomes.is_empty());
        let rendered = report.render(false);
        assert!(rendered.contains("train_size = 40"));
        assert!(rendered.contains("train_positives ="));
    }
}
