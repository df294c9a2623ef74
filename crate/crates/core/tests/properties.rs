//! Cross-module property tests: structural graph invariants, spectral
//! perturbation laws, probability-model identities, and ROC/AUC agreement
//! with the rank-statistic definition.

use proptest::prelude::*;

use frg_core::baselines::{graph_statistics, statistic_difference, statistic_difference_full};
use frg_core::baselines::{CbaModel, CwsModel, ErgModel, ErgVariant};
use frg_core::experiment::{auc, roc_curve};
use frg_core::frg::{FrgModel, KernelDensityEstimate};
use frg_core::graph::{NodePair, UndirectedGraph};
use frg_core::spectral::{fiedler_delta, laplacian};

/// Random simple graph strategy: node count plus an edge-presence bit per
/// unordered pair.
fn graph_strategy(max_nodes: usize) -> impl Strategy<Value = UndirectedGraph> {
    (2..=max_nodes).prop_flat_map(|n| {
        let pair_count = n * (n - 1) / 2;
        proptest::collection::vec(proptest::bool::ANY, pair_count).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut index = 0;
            for u in 0..n as u32 {
                for v in (u + 1)..n as u32 {
                    if bits[index] {
                        edges.push((u, v));
                    }
                    index += 1;
                }
            }
            UndirectedGraph::from_edges(n, edges)
        })
    })
}

fn pair_strategy(nodes: usize) -> impl Strategy<Value = NodePair> {
    (0..nodes as u32, 0..nodes as u32)
        .prop_filter("distinct endpoints", |(u, v)| u != v)
        .prop_map(|(u, v)| NodePair::new(u, v))
}

proptest! {
    #[test]
    fn toggle_then_remove_equals_remove(graph in graph_strategy(9)) {
        let n = graph.node_count();
        for u in 0..n as u32 {
            for v in (u + 1)..n as u32 {
                let pair = NodePair::new(u, v);
                let a = graph.with_edge(pair).without_edge(pair);
                let b = graph.without_edge(pair);
                prop_assert_eq!(a.edges().collect::<Vec<_>>(), b.edges().collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn degree_sum_is_twice_edges(graph in graph_strategy(12)) {
        let total: usize = (0..graph.node_count() as u32)
            .map(|u| graph.degree(u).unwrap())
            .sum();
        prop_assert_eq!(total, 2 * graph.edge_count());
    }

    #[test]
    fn neighborhood_contains_pair_and_respects_bound(
        graph in graph_strategy(10),
    ) {
        let n = graph.node_count();
        for u in 0..n as u32 {
            for v in (u + 1)..n as u32 {
                let pair = NodePair::new(u, v);
                let sub = graph.neighborhood_subgraph(pair);
                let members: Vec<u32> = (0..sub.node_count() as u32)
                    .map(|i| sub.parent_id(i))
                    .collect();
                prop_assert!(members.contains(&u));
                prop_assert!(members.contains(&v));
                let bound = graph.degree(u).unwrap() + graph.degree(v).unwrap() + 2;
                prop_assert!(sub.node_count() <= bound);
                // Induced: the focus edge is present exactly when the parent
                // has it.
                prop_assert_eq!(sub.graph().has_edge(sub.focus()), graph.has_edge(pair));
            }
        }
    }

    #[test]
    fn spectral_perturbation_laws(graph in graph_strategy(8), seed in 0u64..1000) {
        let n = graph.node_count();
        let u = (seed % n as u64) as u32;
        let v = ((seed / 7 + 1 + u as u64) % n as u64) as u32;
        prop_assume!(u != v);
        let pair = NodePair::new(u, v);

        let plus = graph.with_edge(pair);
        let minus = graph.without_edge(pair);
        let spectrum_plus = laplacian(&plus).eigenvalues().unwrap();
        let spectrum_minus = laplacian(&minus).eigenvalues().unwrap();

        // Trace rule: eigenvalue sums differ by exactly 2.
        let sum: f64 = spectrum_plus
            .eigenvalues()
            .iter()
            .zip(spectrum_minus.eigenvalues())
            .map(|(p, m)| p - m)
            .sum();
        prop_assert!((sum - 2.0).abs() < 1e-7, "trace rule: {}", sum);
        let trace_gap = laplacian(&plus).trace() - laplacian(&minus).trace();
        prop_assert_eq!(trace_gap, 2.0);

        // Per-index monotonicity.
        for (p, m) in spectrum_plus.eigenvalues().iter().zip(spectrum_minus.eigenvalues()) {
            prop_assert!(p - m > -1e-8, "monotonicity: {} < {}", p, m);
        }

        // Zero multiplicity equals the combinatorial component count.
        prop_assert_eq!(spectrum_plus.zero_multiplicity(), plus.connected_components().0);

        // The delta is bounded when the pair is an edge and label-independent
        // always.
        let delta_on = fiedler_delta(&plus, pair).unwrap();
        let delta_off = fiedler_delta(&minus, pair).unwrap();
        prop_assert_eq!(delta_on, delta_off);
        prop_assert!(delta_on > -1e-8 && delta_on < 2.0 + 1e-8, "bound: {}", delta_on);
    }

    #[test]
    fn numeric_zero_cluster_matches_components(graph in graph_strategy(24)) {
        let spectrum = laplacian(&graph).eigenvalues().unwrap();
        let n = graph.node_count();
        let numeric_zeros = spectrum
            .eigenvalues()
            .iter()
            .filter(|v| v.abs() <= 1e-8 * n as f64)
            .count();
        prop_assert_eq!(numeric_zeros, graph.connected_components().0);
    }

    #[test]
    fn kde_density_nonnegative_and_compact(
        points in proptest::collection::vec(-5.0f64..5.0, 1..40),
        bandwidth in 0.01f64..3.0,
        query in -20.0f64..20.0,
    ) {
        let kde = KernelDensityEstimate::with_bandwidth(points, bandwidth);
        let density = kde.density(query);
        prop_assert!(density >= 0.0);
        let (lo, hi) = kde.support();
        if query < lo || query > hi {
            prop_assert_eq!(density, 0.0);
        }
    }

    #[test]
    fn frg_complement_identity(
        pos in proptest::collection::vec(-2.0f64..4.0, 1..20),
        neg in proptest::collection::vec(-2.0f64..4.0, 1..20),
        prior in 0.01f64..0.99,
        query in -3.0f64..5.0,
    ) {
        let kde_pos = KernelDensityEstimate::with_bandwidth(pos, 0.5);
        let kde_neg = KernelDensityEstimate::with_bandwidth(neg, 0.7);
        let model = FrgModel::new(prior, kde_pos.clone(), kde_neg.clone());
        let swapped = FrgModel::new(1.0 - prior, kde_neg, kde_pos);
        let total = model.conditional(query) + swapped.conditional(query);
        prop_assert!((total - 1.0).abs() < 1e-12, "complements: {}", total);
    }

    #[test]
    fn erg_incremental_equals_full(graph in graph_strategy(14), seed in 0u64..100) {
        let n = graph.node_count();
        let u = (seed % n as u64) as u32;
        let v = ((seed / 3 + 1 + u as u64) % n as u64) as u32;
        prop_assume!(u != v);
        let neighborhood = graph.neighborhood_subgraph(NodePair::new(u, v));
        for variant in [ErgVariant::Markov, ErgVariant::HigherOrder] {
            let fast = statistic_difference(variant, 3, 2.0, &neighborhood);
            let full = statistic_difference_full(variant, 3, 2.0, &neighborhood);
            for (a, b) in fast.iter().zip(&full) {
                prop_assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn conditional_scores_are_probabilities(graph in graph_strategy(10), seed in 0u64..50) {
        let n = graph.node_count();
        let u = (seed % n as u64) as u32;
        let v = ((seed / 5 + 1 + u as u64) % n as u64) as u32;
        prop_assume!(u != v);
        let neighborhood = graph.neighborhood_subgraph(NodePair::new(u, v));
        let erg = ErgModel::new(ErgVariant::Markov, vec![0.4, -0.1, 0.05, 0.3], 3, 2.0);
        let cws = CwsModel::new(2, 0.4);
        let cba = CbaModel::new(1.2);
        for score in [
            erg.conditional(&neighborhood),
            cws.conditional(&neighborhood),
            cba.conditional(&neighborhood),
        ] {
            prop_assert!((0.0..=1.0).contains(&score), "score {}", score);
        }
    }

    #[test]
    fn trapezoid_auc_equals_mann_whitney(
        scored in proptest::collection::vec((proptest::bool::ANY, 0u8..6), 4..80),
    ) {
        let scored: Vec<(bool, f64)> = scored
            .into_iter()
            .map(|(label, s)| (label, s as f64 / 5.0))
            .collect();
        let positives: Vec<f64> = scored.iter().filter(|s| s.0).map(|s| s.1).collect();
        let negatives: Vec<f64> = scored.iter().filter(|s| !s.0).map(|s| s.1).collect();
        prop_assume!(!positives.is_empty() && !negatives.is_empty());

        let roc = roc_curve(&scored).unwrap();
        // Monotone staircase from (0,0) to (1,1).
        prop_assert_eq!(roc[0], (0.0, 0.0));
        prop_assert_eq!(*roc.last().unwrap(), (1.0, 1.0));
        for w in roc.windows(2) {
            prop_assert!(w[1].0 >= w[0].0 && w[1].1 >= w[0].1);
        }

        let mut rank_sum = 0.0;
        for p in &positives {
            for n in &negatives {
                rank_sum += if p > n {
                    1.0
                } else if p == n {
                    0.5
                } else {
                    0.0
                };
            }
        }
        let mann_whitney = rank_sum / (positives.len() * negatives.len()) as f64;
        prop_assert!((auc(&roc) - mann_whitney).abs() < 1e-12);
    }

    #[test]
    fn alternating_statistics_match_slow_sums(graph in graph_strategy(10)) {
        // Direct evaluation of the damped alternating sums from raw counts.
        let stats = graph_statistics(&graph, graph.node_count().max(2), 2.0);
        let slow_star: f64 = stats
            .k_stars
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let k = i as i32 + 2;
                (if k % 2 == 0 { *s } else { -*s }) / 2.0f64.powi(k - 2)
            })
            .sum();
        prop_assert!((stats.alternating_star - slow_star).abs() < 1e-9);
    }
}
