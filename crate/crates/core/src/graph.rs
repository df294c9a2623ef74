//! Simple undirected graphs with dense node ids, SNAP-style edge-list
//! ingestion, and neighborhood-subgraph extraction.
//!
//! Graphs are immutable after construction and safe to share across worker
//! threads. Edge perturbation ([`UndirectedGraph::with_edge`] /
//! [`UndirectedGraph::without_edge`]) returns a modified copy and is meant
//! for the small neighborhood subgraphs, never for the parent network.

use std::collections::HashMap;
use std::io::BufRead;

use thiserror::Error;

/// Dense 0-based node identifier.
pub type NodeId = u32;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("line {line}: malformed edge line ({reason})")]
    Parse { line: usize, reason: String },
    #[error("i/o error reading edge list")]
    Io(#[from] std::io::Error),
    #[error("node id {node} out of range for graph with {count} nodes")]
    NodeOutOfRange { node: NodeId, count: usize },
}

/// Unordered pair of distinct nodes, stored canonically as (min, max).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodePair {
    a: NodeId,
    b: NodeId,
}

impl NodePair {
    /// Canonical pair. Panics if `u == v`; a pair variable is only defined
    /// for distinct endpoints.
    pub fn new(u: NodeId, v: NodeId) -> Self {
        assert!(u != v, "node pair endpoints must differ (got {u})");
        Self {
            a: u.min(v),
            b: u.max(v),
        }
    }

    pub fn min_id(&self) -> NodeId {
        self.a
    }

    pub fn max_id(&self) -> NodeId {
        self.b
    }
}

/// Immutable simple undirected graph: sorted adjacency lists, no self-loops,
/// each unordered edge stored once.
#[derive(Debug, Clone)]
pub struct UndirectedGraph {
    adjacency: Vec<Vec<NodeId>>,
    edge_count: usize,
    /// Dense id -> external id from the source file (identity for graphs
    /// built programmatically).
    external_ids: Vec<u64>,
    external_index: HashMap<u64, NodeId>,
}

impl UndirectedGraph {
    /// Build a graph on `node_count` nodes from an edge iterator.
    ///
    /// Self-loops are dropped and duplicate/reversed edges collapse to one
    /// undirected edge, matching the ingestion rules of [`load_edge_list`].
    /// Panics if an endpoint is out of range.
    pub fn from_edges<I>(node_count: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut pairs: Vec<(NodeId, NodeId)> = Vec::new();
        for (u, v) in edges {
            assert!(
                (u as usize) < node_count && (v as usize) < node_count,
                "edge ({u}, {v}) out of range for {node_count} nodes"
            );
            if u == v {
                continue;
            }
            pairs.push((u.min(v), u.max(v)));
        }
        let external_ids: Vec<u64> = (0..node_count as u64).collect();
        let external_index = external_ids
            .iter()
            .enumerate()
            .map(|(dense, ext)| (*ext, dense as NodeId))
            .collect();
        Self::from_canonical_pairs(node_count, pairs, external_ids, external_index)
    }

    fn from_canonical_pairs(
        node_count: usize,
        mut pairs: Vec<(NodeId, NodeId)>,
        external_ids: Vec<u64>,
        external_index: HashMap<u64, NodeId>,
    ) -> Self {
        pairs.sort_unstable();
        pairs.dedup();

        let mut adjacency = vec![Vec::new(); node_count];
        for &(u, v) in &pairs {
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Self {
            adjacency,
            edge_count: pairs.len(),
            external_ids,
            external_index,
        }
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Number of edges incident to `u`.
    pub fn degree(&self, u: NodeId) -> Result<usize, GraphError> {
        self.adjacency
            .get(u as usize)
            .map(Vec::len)
            .ok_or(GraphError::NodeOutOfRange {
                node: u,
                count: self.node_count(),
            })
    }

    /// Sorted neighbor list of `u`. Panics on out-of-range ids; use
    /// [`Self::degree`] for checked access.
    pub fn neighbors(&self, u: NodeId) -> &[NodeId] {
        &self.adjacency[u as usize]
    }

    pub fn has_edge(&self, pair: NodePair) -> bool {
        match self.adjacency.get(pair.min_id() as usize) {
            Some(list) => list.binary_search(&pair.max_id()).is_ok(),
            None => false,
        }
    }

    /// Iterator over all edges as canonical pairs, in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = NodePair> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            let u = u as NodeId;
            list.iter()
                .filter(move |&&v| v > u)
                .map(move |&v| NodePair::new(u, v))
        })
    }

    /// External id of a dense node id.
    pub fn external_id(&self, u: NodeId) -> Option<u64> {
        self.external_ids.get(u as usize).copied()
    }

    /// Dense id for an external id from the source file.
    pub fn resolve_external(&self, external: u64) -> Option<NodeId> {
        self.external_index.get(&external).copied()
    }

    /// Copy of this graph with the pair's edge present (no-op if it already
    /// is). Intended for neighborhood-scale graphs.
    pub fn with_edge(&self, pair: NodePair) -> UndirectedGraph {
        let mut g = self.clone();
        let (u, v) = (pair.min_id(), pair.max_id());
        if let Err(pos) = g.adjacency[u as usize].binary_search(&v) {
            g.adjacency[u as usize].insert(pos, v);
            let pos = g.adjacency[v as usize].binary_search(&u).unwrap_err();
            g.adjacency[v as usize].insert(pos, u);
            g.edge_count += 1;
        }
        g
    }

    /// Copy of this graph with the pair's edge absent (no-op if it already
    /// is).
    pub fn without_edge(&self, pair: NodePair) -> UndirectedGraph {
        let mut g = self.clone();
        let (u, v) = (pair.min_id(), pair.max_id());
        if let Ok(pos) = g.adjacency[u as usize].binary_search(&v) {
            g.adjacency[u as usize].remove(pos);
            let pos = g.adjacency[v as usize].binary_search(&u).unwrap();
            g.adjacency[v as usize].remove(pos);
            g.edge_count -= 1;
        }
        g
    }

    /// Exact combinatorial connected components via BFS: returns the
    /// component count and a per-node component label.
    pub fn connected_components(&self) -> (usize, Vec<u32>) {
        let n = self.node_count();
        let mut label = vec![u32::MAX; n];
        let mut count = 0u32;
        let mut queue = Vec::new();
        for start in 0..n {
            if label[start] != u32::MAX {
                continue;
            }
            label[start] = count;
            queue.push(start as NodeId);
            while let Some(u) = queue.pop() {
                for &v in self.neighbors(u) {
                    if label[v as usize] == u32::MAX {
                        label[v as usize] = count;
                        queue.push(v);
                    }
                }
            }
            count += 1;
        }
        (count as usize, label)
    }

    /// Subgraph induced by `{u, v} ∪ N(u) ∪ N(v)`, with the focus pair mapped
    /// to local ids.
    pub fn neighborhood_subgraph(&self, pair: NodePair) -> NeighborhoodSubgraph {
        let (u, v) = (pair.min_id(), pair.max_id());
        let mut vertex_set: Vec<NodeId> = Vec::with_capacity(
            self.adjacency[u as usize].len() + self.adjacency[v as usize].len() + 2,
        );
        vertex_set.push(u);
        vertex_set.push(v);
        vertex_set.extend_from_slice(self.neighbors(u));
        vertex_set.extend_from_slice(self.neighbors(v));
        vertex_set.sort_unstable();
        vertex_set.dedup();

        let local_of = |w: NodeId| vertex_set.binary_search(&w).expect("member vertex") as NodeId;
        let mut edges = Vec::new();
        for (local_w, &w) in vertex_set.iter().enumerate() {
            for &x in self.neighbors(w) {
                if x > w {
                    if let Ok(local_x) = vertex_set.binary_search(&x) {
                        edges.push((local_w as NodeId, local_x as NodeId));
                    }
                }
            }
        }
        let local_graph = UndirectedGraph::from_edges(vertex_set.len(), edges);
        let focus = NodePair::new(local_of(u), local_of(v));
        NeighborhoodSubgraph {
            local_graph,
            focus,
            id_map: vertex_set,
        }
    }
}

/// Induced subgraph around a node pair, with a mapping back to the parent
/// graph's node ids.
#[derive(Debug, Clone)]
pub struct NeighborhoodSubgraph {
    local_graph: UndirectedGraph,
    focus: NodePair,
    id_map: Vec<NodeId>,
}

impl NeighborhoodSubgraph {
    /// Treat an entire graph as the neighborhood of `pair` (identity id map).
    /// Used by the small-graph oracles and tests.
    pub fn spanning(graph: UndirectedGraph, pair: NodePair) -> Self {
        assert!((pair.max_id() as usize) < graph.node_count());
        let id_map = (0..graph.node_count() as NodeId).collect();
        Self {
            local_graph: graph,
            focus: pair,
            id_map,
        }
    }

    pub fn graph(&self) -> &UndirectedGraph {
        &self.local_graph
    }

    /// Focus pair in local ids.
    pub fn focus(&self) -> NodePair {
        self.focus
    }

    /// Parent id of a local id.
    pub fn parent_id(&self, local: NodeId) -> NodeId {
        self.id_map[local as usize]
    }

    pub fn node_count(&self) -> usize {
        self.local_graph.node_count()
    }
}

/// Pair observation: the candidate pair, whether the parent graph links it,
/// and the induced neighborhood it is judged against.
#[derive(Debug, Clone)]
pub struct LabeledSample {
    pub pair: NodePair,
    pub label: bool,
    pub neighborhood: NeighborhoodSubgraph,
}

impl LabeledSample {
    pub fn from_graph(graph: &UndirectedGraph, pair: NodePair) -> Self {
        Self {
            pair,
            label: graph.has_edge(pair),
            neighborhood: graph.neighborhood_subgraph(pair),
        }
    }
}

/// Parse a SNAP-style edge list: one edge per line as two whitespace-separated
/// integer ids, `#`-prefixed comment lines ignored.
///
/// External ids are remapped to dense 0-based ids in first-seen order, so
/// loading the same bytes twice yields identical graphs. Duplicate pairs and
/// reversed duplicates collapse to one undirected edge; self-loops are
/// dropped (their endpoint still registers as a node).
pub fn load_edge_list<R: BufRead>(reader: R) -> Result<UndirectedGraph, GraphError> {
    let mut external_ids: Vec<u64> = Vec::new();
    let mut external_index: HashMap<u64, NodeId> = HashMap::new();
    let mut pairs: Vec<(NodeId, NodeId)> = Vec::new();

    let mut intern = |ext: u64, external_ids: &mut Vec<u64>| -> NodeId {
        *external_index.entry(ext).or_insert_with(|| {
            let dense = external_ids.len() as NodeId;
            external_ids.push(ext);
            dense
        })
    };

    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let (Some(first), Some(second), None) = (tokens.next(), tokens.next(), tokens.next())
        else {
            return Err(GraphError::Parse {
                line: line_no,
                reason: "expected exactly two node ids".into(),
            });
        };
        let parse = |tok: &str| -> Result<u64, GraphError> {
            tok.parse().map_err(|_| GraphError::Parse {
                line: line_no,
                reason: format!("non-integer token '{tok}'"),
            })
        };
        let ext_u = parse(first)?;
        let ext_v = parse(second)?;
        let u = intern(ext_u, &mut external_ids);
        let v = intern(ext_v, &mut external_ids);
        if u == v {
            continue;
        }
        pairs.push((u.min(v), u.max(v)));
    }

    let node_count = external_ids.len();
    Ok(UndirectedGraph::from_canonical_pairs(
        node_count,
        pairs,
        external_ids,
        external_index,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    fn load(text: &str) -> UndirectedGraph {
        load_edge_list(Cursor::new(text)).expect("valid edge list")
    }

    #[test]
    fn duplicate_and_reversed_edges_collapse() {
        let g = load("# c\n0 1\n1 0\n1 2");
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn self_loops_dropped_but_nodes_registered() {
        let g = load("3 3\n3 4");
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.external_id(0), Some(3));
        assert_eq!(g.external_id(1), Some(4));
        assert_eq!(g.resolve_external(4), Some(1));
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let err = load_edge_list(Cursor::new("0 1\nnope 2\n")).unwrap_err();
        match err {
            GraphError::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error: {other}"),
        }
        let err = load_edge_list(Cursor::new("0 1 2\n")).unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 1, .. }));
    }

    #[test]
    fn empty_and_comment_only_inputs() {
        assert_eq!(load("").node_count(), 0);
        let g = load("# a\n# b\n");
        assert_eq!(g.node_count(), 0);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn deterministic_ingestion() {
        let text = "7 9\n5 7\n9 5\n5 7\n";
        let a = load(text);
        let b = load(text);
        assert_eq!(a.node_count(), b.node_count());
        assert_eq!(a.edges().collect::<Vec<_>>(), b.edges().collect::<Vec<_>>());
        for u in 0..a.node_count() as NodeId {
            assert_eq!(a.external_id(u), b.external_id(u));
        }
    }

    #[test]
    fn degree_examples() {
        let triangle = UndirectedGraph::from_edges(3, [(0, 1), (1, 2), (2, 0)]);
        for u in 0..3 {
            assert_eq!(triangle.degree(u).unwrap(), 2);
        }
        let with_isolated = UndirectedGraph::from_edges(3, [(0, 1)]);
        assert_eq!(with_isolated.degree(2).unwrap(), 0);
        let path4 = UndirectedGraph::from_edges(4, [(0, 1), (1, 2), (2, 3)]);
        assert_eq!(path4.degree(0).unwrap(), 1);
        assert!(path4.degree(9).is_err());
    }

    #[test]
    fn connected_components_examples() {
        let triangle = UndirectedGraph::from_edges(3, [(0, 1), (1, 2), (2, 0)]);
        assert_eq!(triangle.connected_components().0, 1);

        let two_edges = UndirectedGraph::from_edges(4, [(0, 1), (2, 3)]);
        let (count, labels) = two_edges.connected_components();
        assert_eq!(count, 2);
        assert_eq!(labels[0], labels[1]);
        assert_eq!(labels[2], labels[3]);
        assert_ne!(labels[0], labels[2]);

        let isolated = UndirectedGraph::from_edges(5, []);
        assert_eq!(isolated.connected_components().0, 5);
    }

    #[test]
    fn edge_toggling() {
        let triangle = UndirectedGraph::from_edges(3, [(0, 1), (1, 2), (2, 0)]);
        let path = triangle.without_edge(NodePair::new(0, 2));
        assert_eq!(path.edge_count(), 2);
        assert_eq!(path.connected_components().0, 1);

        let same = triangle.with_edge(NodePair::new(0, 1));
        assert_eq!(same.edge_count(), 3);
        assert_eq!(
            same.edges().collect::<Vec<_>>(),
            triangle.edges().collect::<Vec<_>>()
        );

        let path4 = UndirectedGraph::from_edges(4, [(0, 1), (1, 2), (2, 3)]);
        let cycle = path4.with_edge(NodePair::new(0, 3));
        assert_eq!(cycle.edge_count(), 4);
        assert!(cycle.neighbors(0).len() == 2 && cycle.neighbors(3).len() == 2);

        // Original untouched.
        assert_eq!(triangle.edge_count(), 3);
        assert_eq!(path4.edge_count(), 3);
    }

    #[test]
    fn neighborhood_of_star_pair_is_whole_star() {
        // Star: center 0 with leaves 1, 2, 3.
        let star = UndirectedGraph::from_edges(4, [(0, 1), (0, 2), (0, 3)]);
        let sub = star.neighborhood_subgraph(NodePair::new(0, 1));
        assert_eq!(sub.node_count(), 4);
        assert_eq!(sub.graph().edge_count(), 3);
        assert!(sub.graph().has_edge(sub.focus()));
    }

    #[test]
    fn neighborhood_of_isolated_pair() {
        let g = UndirectedGraph::from_edges(5, [(2, 3)]);
        let sub = g.neighborhood_subgraph(NodePair::new(0, 4));
        assert_eq!(sub.node_count(), 2);
        assert_eq!(sub.graph().edge_count(), 0);
        assert!(!sub.graph().has_edge(sub.focus()));
    }

    #[test]
    fn neighborhood_in_six_cycle() {
        // Adjacent pair (0, 1) in a 6-cycle: vertex set {5, 0, 1, 2}, with
        // induced edges 5-0, 0-1, 1-2.
        let cycle6 =
            UndirectedGraph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        let sub = cycle6.neighborhood_subgraph(NodePair::new(0, 1));
        assert_eq!(sub.node_count(), 4);
        assert_eq!(sub.graph().edge_count(), 3);
        // Mapping back covers the expected parent vertices.
        let parents: Vec<NodeId> = (0..4).map(|i| sub.parent_id(i)).collect();
        assert_eq!(parents, vec![0, 1, 2, 5]);
    }

    #[test]
    fn labeled_sample_label_matches_focus_edge() {
        let g = UndirectedGraph::from_edges(4, [(0, 1), (1, 2), (2, 3)]);
        let pos = LabeledSample::from_graph(&g, NodePair::new(1, 2));
        assert!(pos.label);
        assert!(pos.neighborhood.graph().has_edge(pos.neighborhood.focus()));
        let neg = LabeledSample::from_graph(&g, NodePair::new(0, 3));
        assert!(!neg.label);
        assert!(!neg.neighborhood.graph().has_edge(neg.neighborhood.focus()));
    }
}
