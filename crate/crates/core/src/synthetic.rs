//! Deterministic synthetic graph generators for tests and benchmarks.
//!
//! These cover the two regimes the estimators are exercised on: scale-free
//! graphs with strong triadic closure (collaboration-network-like) and
//! small-world lattices. All generators take an explicit RNG so runs are
//! reproducible from a seed.

use rand::Rng;

use crate::graph::{NodeId, UndirectedGraph};

/// Erdős-Rényi G(n, p): each pair is an edge independently with probability p.
pub fn gnp<R: Rng>(n: usize, p: f64, rng: &mut R) -> UndirectedGraph {
    let mut edges = Vec::new();
    for u in 0..n as NodeId {
        for v in (u + 1)..n as NodeId {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    UndirectedGraph::from_edges(n, edges)
}

/// Preferential attachment with triad closure: each new node attaches
/// `m` edges; after the first preferential link, each further link closes
/// a triangle with probability `triad_p` by targeting a neighbor of the
/// previous target. Produces power-law degrees with a high clustering
/// coefficient.
pub fn powerlaw_cluster<R: Rng>(n: usize, m: usize, triad_p: f64, rng: &mut R) -> UndirectedGraph {
    assert!(m >= 1 && n > m, "need n > m >= 1");
    let mut adjacency: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    // One entry per degree unit; uniform draws from it are preferential.
    let mut repeated: Vec<NodeId> = Vec::new();
    let mut edges: Vec<(NodeId, NodeId)> = Vec::new();

    let connect = |u: NodeId,
                       v: NodeId,
                       adjacency: &mut Vec<Vec<NodeId>>,
                       repeated: &mut Vec<NodeId>,
                       edges: &mut Vec<(NodeId, NodeId)>| {
        adjacency[u as usize].push(v);
        adjacency[v as usize].push(u);
        repeated.push(u);
        repeated.push(v);
        edges.push((u, v));
    };

    // Seed clique on the first m+1 nodes.
    for u in 0..=(m as NodeId) {
        for v in (u + 1)..=(m as NodeId) {
            connect(u, v, &mut adjacency, &mut repeated, &mut edges);
        }
    }

    for new in (m as NodeId + 1)..(n as NodeId) {
        let mut targets: Vec<NodeId> = Vec::with_capacity(m);
        let mut last_target: Option<NodeId> = None;
        while targets.len() < m {
            let candidate = if let Some(prev) = last_target {
                if rng.gen::<f64>() < triad_p {
                    // Triad step: a uniform neighbor of the previous target.
                    let neighbors = &adjacency[prev as usize];
                    neighbors[rng.gen_range(0..neighbors.len())]
                } else {
                    repeated[rng.gen_range(0..repeated.len())]
                }
            } else {
                repeated[rng.gen_range(0..repeated.len())]
            };
            if candidate == new || targets.contains(&candidate) {
                // Fall back to a fresh preferential draw next round.
                last_target = None;
                continue;
            }
            last_target = Some(candidate);
            targets.push(candidate);
        }
        for target in targets {
            connect(new, target, &mut adjacency, &mut repeated, &mut edges);
        }
    }
    UndirectedGraph::from_edges(n, edges)
}

/// Regular ring lattice: each node linked to its `delta` nearest neighbors
/// on each side (degree 2·delta).
pub fn ring_lattice(n: usize, delta: usize) -> UndirectedGraph {
    assert!(n > 2 * delta, "lattice needs n > 2*delta");
    let mut edges = Vec::new();
    for u in 0..n {
        for j in 1..=delta {
            let v = (u + j) % n;
            edges.push((u as NodeId, v as NodeId));
        }
    }
    UndirectedGraph::from_edges(n, edges)
}

/// Watts-Strogatz small world: ring lattice with each edge rewired with
/// probability `beta` to a uniform non-adjacent target.
pub fn watts_strogatz<R: Rng>(n: usize, delta: usize, beta: f64, rng: &mut R) -> UndirectedGraph {
    assert!(n > 2 * delta, "lattice needs n > 2*delta");
    let mut adjacency: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    let mut edges: Vec<(NodeId, NodeId)> = Vec::new();
    for u in 0..n {
        for j in 1..=delta {
            let v = (u + j) % n;
            edges.push((u as NodeId, v as NodeId));
            adjacency[u].push(v as NodeId);
            adjacency[v].push(u as NodeId);
        }
    }
    for edge in edges.iter_mut() {
        if rng.gen::<f64>() >= beta {
            continue;
        }
        let (u, old_v) = *edge;
        // Uniform new endpoint, skipping self and existing neighbors.
        let mut attempts = 0;
        loop {
            attempts += 1;
            if attempts > 32 {
                break;
            }
            let w = rng.gen_range(0..n as NodeId);
            if w == u || w == old_v || adjacency[u as usize].contains(&w) {
                continue;
            }
            adjacency[u as usize].retain(|&x| x != old_v);
            adjacency[old_v as usize].retain(|&x| x != u);
            adjacency[u as usize].push(w);
            adjacency[w as usize].push(u);
            *edge = (u, w);
            break;
        }
    }
    UndirectedGraph::from_edges(n, edges)
}
