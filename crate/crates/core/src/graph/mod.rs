//! Weighted paths and trees, contraction requests and contracted graphs.

mod contract;
mod edge_list;

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::weight::Weight;

pub(crate) use contract::{check_contiguous, check_matching};
pub use contract::{
    contract, derive_merged_sets, ContractedGraph, ContractionRequest, MergedSets, Mode, Origin, Supernode,
};
pub use edge_list::{load_graph, write_edge_list};

/// Index of a vertex in a [`WeightedGraph`]. Labels are kept separately.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

/// Position of an edge in input order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    Path,
    Tree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub weight: Weight,
}

impl Edge {
    pub fn other(&self, x: VertexId) -> VertexId {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }
}

/// A connected, acyclic graph with non-negative exact weights.
///
/// Each vertex carries a cardinality: the number of regular vertices it
/// stands for. Graphs read from an edge list have all cardinalities equal
/// to one; the base graph of a [`ContractedGraph`] carries the sizes of
/// its supernodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    labels: Vec<String>,
    cardinality: Vec<u64>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(VertexId, EdgeId)>>,
    by_label: HashMap<String, VertexId>,
    kind: GraphKind,
}

impl WeightedGraph {
    /// Builds a graph where every vertex is a regular vertex.
    pub fn new(labels: Vec<String>, edges: Vec<(usize, usize, Weight)>) -> Result<Self> {
        let cards = vec![1; labels.len()];
        Self::with_cardinalities(labels, cards, edges)
    }

    /// Builds a graph from labels, per-vertex cardinalities and edges given
    /// as vertex-index pairs. Errors name the offending edge as a 1-based
    /// line number.
    pub fn with_cardinalities(
        labels: Vec<String>,
        cardinality: Vec<u64>,
        edges: Vec<(usize, usize, Weight)>,
    ) -> Result<Self> {
        assert_eq!(labels.len(), cardinality.len(), "one cardinality per vertex");
        assert!(cardinality.iter().all(|&c| c >= 1), "cardinalities must be positive");
        let n = labels.len();
        if n == 0 {
            return Err(Error::Empty);
        }

        let mut by_label = HashMap::with_capacity(n);
        for (i, label) in labels.iter().enumerate() {
            if by_label.insert(label.clone(), VertexId(i)).is_some() {
                return Err(Error::Parse { line: 0, message: format!("duplicate vertex label `{label}`") });
            }
        }

        let mut sets = DisjointSets::new(n);
        let mut adjacency = vec![Vec::new(); n];
        let mut stored = Vec::with_capacity(edges.len());
        for (i, (u, v, weight)) in edges.into_iter().enumerate() {
            let line = i + 1;
            assert!(u < n && v < n, "edge endpoint out of range");
            if weight < Weight::zero() {
                return Err(Error::NegativeWeight { line });
            }
            if !sets.union(u, v) {
                return Err(Error::HasCycle { line });
            }
            adjacency[u].push((VertexId(v), EdgeId(i)));
            adjacency[v].push((VertexId(u), EdgeId(i)));
            stored.push(Edge { u: VertexId(u), v: VertexId(v), weight });
        }

        if stored.len() + 1 != n {
            // Acyclic but not spanning: report the first edge outside the
            // component of vertex 0, or the first isolated vertex's slot.
            let root = sets.find(0);
            let line = stored.iter().position(|e| sets.find(e.u.0) != root).map(|i| i + 1).unwrap_or(stored.len() + 1);
            return Err(Error::Disconnected { line });
        }

        let kind = if adjacency.iter().all(|a| a.len() <= 2) { GraphKind::Path } else { GraphKind::Tree };
        Ok(Self { labels, cardinality, edges: stored, adjacency, by_label, kind })
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn is_path(&self) -> bool {
        self.kind == GraphKind::Path
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.labels.len()).map(VertexId)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn edge(&self, id: EdgeId) -> Result<&Edge> {
        self.edges.get(id.0).ok_or(Error::NoSuchEdge(id))
    }

    pub fn weight(&self, id: EdgeId) -> Result<Weight> {
        self.edge(id).map(|e| e.weight)
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v.0]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex(&self, label: &str) -> Option<VertexId> {
        self.by_label.get(label).copied()
    }

    pub fn cardinality(&self, v: VertexId) -> u64 {
        self.cardinality[v.0]
    }

    pub fn cardinalities(&self) -> &[u64] {
        &self.cardinality
    }

    /// Number of regular vertices represented by the graph.
    pub fn total_cardinality(&self) -> u64 {
        self.cardinality.iter().sum()
    }

    pub fn has_supernodes(&self) -> bool {
        self.cardinality.iter().any(|&c| c > 1)
    }

    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adjacency[v.0]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v.0].len()
    }

    pub fn edge_between(&self, a: VertexId, b: VertexId) -> Option<EdgeId> {
        self.adjacency[a.0].iter().find(|(x, _)| *x == b).map(|&(_, e)| e)
    }

    /// Edge by endpoint labels, in either orientation.
    pub fn edge_by_labels(&self, a: &str, b: &str) -> Result<EdgeId> {
        let missing = || Error::NoEdgeBetween(a.to_string(), b.to_string());
        let (x, y) = (self.vertex(a).ok_or_else(missing)?, self.vertex(b).ok_or_else(missing)?);
        self.edge_between(x, y).ok_or_else(missing)
    }

    /// Path-weight distance from `source` to every vertex.
    pub fn distances_from(&self, source: VertexId) -> Vec<Weight> {
        self.distances_with(source, |e| self.edges[e.0].weight)
    }

    /// Like [`distances_from`](Self::distances_from) with caller-supplied
    /// edge weights.
    pub fn distances_with(&self, source: VertexId, weight: impl Fn(EdgeId) -> Weight) -> Vec<Weight> {
        let n = self.vertex_count();
        let mut dist = vec![Weight::zero(); n];
        let mut seen = vec![false; n];
        let mut stack = vec![source];
        seen[source.0] = true;
        while let Some(x) = stack.pop() {
            for &(y, e) in &self.adjacency[x.0] {
                if !seen[y.0] {
                    seen[y.0] = true;
                    dist[y.0] = dist[x.0] + weight(e);
                    stack.push(y);
                }
            }
        }
        dist
    }

    /// Left-to-right layout of a path.
    ///
    /// The head is the first vertex, in vertex order, with degree at most
    /// one; for graphs read from a file that is the earliest-listed endpoint.
    pub fn path_layout(&self) -> Result<PathLayout> {
        if !self.is_path() {
            return Err(Error::NotAPath);
        }
        let head = self.vertices().find(|&v| self.degree(v) <= 1).expect("a path has an endpoint");
        let mut order = vec![head];
        let mut edges = Vec::with_capacity(self.edge_count());
        let mut prev: Option<EdgeId> = None;
        let mut current = head;
        while let Some(&(next, e)) = self.adjacency[current.0].iter().find(|(_, e)| Some(*e) != prev) {
            order.push(next);
            edges.push(e);
            prev = Some(e);
            current = next;
        }
        let mut position = vec![0; self.edge_count()];
        for (i, e) in edges.iter().enumerate() {
            position[e.0] = i;
        }
        Ok(PathLayout { order, edges, position })
    }
}

/// Vertices and edges of a path listed from the head.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathLayout {
    /// `order[i]` and `order[i + 1]` are joined by `edges[i]`.
    pub order: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    position: Vec<usize>,
}

impl PathLayout {
    /// Index of `e` in [`edges`](Self::edges).
    pub fn position(&self, e: EdgeId) -> usize {
        self.position[e.0]
    }

    pub fn left_neighbor(&self, e: EdgeId) -> Option<EdgeId> {
        let p = self.position(e);
        (p > 0).then(|| self.edges[p - 1])
    }

    pub fn right_neighbor(&self, e: EdgeId) -> Option<EdgeId> {
        self.edges.get(self.position(e) + 1).copied()
    }

    /// Endpoints of `e` as (left, right).
    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        let p = self.position(e);
        (self.order[p], self.order[p + 1])
    }
}

pub(crate) struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[rb.max(ra)] = ra.min(rb);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::w;

    fn labels(n: usize) -> Vec<String> {
        (1..=n).map(|i| i.to_string()).collect()
    }

    #[test]
    fn path_layout_starts_at_first_endpoint() {
        // 2-3, 1-2, 3-4: vertex "2" comes first but is interior.
        let g = WeightedGraph::new(
            vec!["2".into(), "3".into(), "1".into(), "4".into()],
            vec![(0, 1, w(1)), (2, 0, w(2)), (1, 3, w(3))],
        )
        .unwrap();
        let layout = g.path_layout().unwrap();
        let order: Vec<&str> = layout.order.iter().map(|&v| g.label(v)).collect();
        assert_eq!(order, ["1", "2", "3", "4"]);
        assert_eq!(layout.edges, [EdgeId(1), EdgeId(0), EdgeId(2)]);
        assert_eq!(layout.left_neighbor(EdgeId(0)), Some(EdgeId(1)));
        assert_eq!(layout.right_neighbor(EdgeId(2)), None);
    }

    #[test]
    fn star_is_a_tree() {
        let g = WeightedGraph::new(labels(4), vec![(0, 1, w(1)), (0, 2, w(1)), (0, 3, w(1))]).unwrap();
        assert_eq!(g.kind(), GraphKind::Tree);
        assert_eq!(g.path_layout(), Err(Error::NotAPath));
    }

    #[test]
    fn distances_are_path_sums() {
        let g = WeightedGraph::new(labels(4), vec![(0, 1, w(2)), (1, 2, w(3)), (1, 3, w(5))]).unwrap();
        let d = g.distances_from(VertexId(2));
        assert_eq!(d, [w(5), w(3), w(0), w(8)]);
    }

    #[test]
    fn single_vertex_graph_is_allowed() {
        let g = WeightedGraph::with_cardinalities(vec!["a+b".into()], vec![2], vec![]).unwrap();
        assert_eq!(g.total_cardinality(), 2);
        assert!(g.is_path());
    }

    #[test]
    fn forest_is_disconnected() {
        let err = WeightedGraph::new(labels(4), vec![(0, 1, w(1)), (2, 3, w(1))]).unwrap_err();
        assert_eq!(err, Error::Disconnected { line: 2 });
    }
}
