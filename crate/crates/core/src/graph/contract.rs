use std::collections::BTreeSet;

use super::{DisjointSets, EdgeId, VertexId, WeightedGraph};
use crate::error::{Error, Result};
use crate::metrics::Redistribution;

/// How a set of target edges is to be contracted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    SingleEdge,
    IndependentSet,
    Subpath,
    TreeSingleEdge,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::SingleEdge => "single",
            Mode::IndependentSet => "independent",
            Mode::Subpath => "subpath",
            Mode::TreeSingleEdge => "tree",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "single" => Mode::SingleEdge,
            "independent" => Mode::IndependentSet,
            "subpath" => Mode::Subpath,
            "tree" => Mode::TreeSingleEdge,
            _ => return None,
        })
    }
}

/// A validated set of edges to contract.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionRequest {
    targets: Vec<EdgeId>,
    mode: Mode,
}

impl ContractionRequest {
    /// Validates `targets` against `g`.
    ///
    /// Without an explicit mode, one edge is `SingleEdge` on a path and
    /// `TreeSingleEdge` otherwise; several edges on a path become
    /// `IndependentSet` when they form a matching and `Subpath` when they
    /// are contiguous.
    pub fn new(g: &WeightedGraph, targets: impl IntoIterator<Item = EdgeId>, mode: Option<Mode>) -> Result<Self> {
        let targets: Vec<EdgeId> = targets.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        if targets.is_empty() {
            return Err(Error::EmptyRequest);
        }
        for &e in &targets {
            g.edge(e)?;
        }

        let mode = match mode {
            Some(Mode::SingleEdge) => {
                expect_single(&targets)?;
                g.path_layout()?;
                Mode::SingleEdge
            }
            Some(Mode::TreeSingleEdge) => {
                expect_single(&targets)?;
                Mode::TreeSingleEdge
            }
            Some(Mode::IndependentSet) => {
                g.path_layout()?;
                check_matching(g, &targets)?;
                Mode::IndependentSet
            }
            Some(Mode::Subpath) => {
                check_contiguous(g, &targets)?;
                Mode::Subpath
            }
            None if targets.len() == 1 => {
                if g.is_path() {
                    Mode::SingleEdge
                } else {
                    Mode::TreeSingleEdge
                }
            }
            None => {
                if !g.is_path() {
                    return Err(Error::ExpectedSingleEdge(targets.len()));
                }
                if check_matching(g, &targets).is_ok() {
                    Mode::IndependentSet
                } else if check_contiguous(g, &targets).is_ok() {
                    Mode::Subpath
                } else {
                    return Err(Error::MixedTargets);
                }
            }
        };
        Ok(Self { targets, mode })
    }

    /// Sorted, deduplicated target edges.
    pub fn targets(&self) -> &[EdgeId] {
        &self.targets
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_target(&self, e: EdgeId) -> bool {
        self.targets.binary_search(&e).is_ok()
    }
}

fn expect_single(targets: &[EdgeId]) -> Result<()> {
    if targets.len() == 1 {
        Ok(())
    } else {
        Err(Error::ExpectedSingleEdge(targets.len()))
    }
}

pub(crate) fn check_matching(g: &WeightedGraph, targets: &[EdgeId]) -> Result<()> {
    let mut owner: Vec<Option<EdgeId>> = vec![None; g.vertex_count()];
    for &e in targets {
        let edge = g.edge(e)?;
        for x in [edge.u, edge.v] {
            if let Some(prev) = owner[x.0] {
                return Err(Error::NotAMatching(prev, e));
            }
            owner[x.0] = Some(e);
        }
    }
    Ok(())
}

pub(crate) fn check_contiguous(g: &WeightedGraph, targets: &[EdgeId]) -> Result<()> {
    let layout = g.path_layout()?;
    let mut positions: Vec<usize> = targets.iter().map(|&e| layout.position(e)).collect();
    positions.sort_unstable();
    if positions.windows(2).all(|p| p[1] == p[0] + 1) {
        Ok(())
    } else {
        Err(Error::NotContiguous)
    }
}

/// Vertices touched by the contracted edges and the rest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergedSets {
    pub merged: Vec<VertexId>,
    pub unmerged: Vec<VertexId>,
    is_merged: Vec<bool>,
}

impl MergedSets {
    pub fn contains(&self, v: VertexId) -> bool {
        self.is_merged[v.0]
    }
}

pub fn derive_merged_sets(g: &WeightedGraph, req: &ContractionRequest) -> MergedSets {
    let mut is_merged = vec![false; g.vertex_count()];
    for &e in req.targets() {
        let edge = &g.edges()[e.0];
        is_merged[edge.u.0] = true;
        is_merged[edge.v.0] = true;
    }
    let (merged, unmerged) = g.vertices().partition(|v| is_merged[v.0]);
    MergedSets { merged, unmerged, is_merged }
}

/// Vertices of an input graph fused into one node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Supernode {
    pub members: Vec<VertexId>,
    /// Number of regular vertices inside, counting the cardinality of
    /// members that were already supernodes.
    pub cardinality: u64,
}

/// Where a vertex of the input graph ended up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    Supernode(VertexId),
    Untouched(VertexId),
}

impl Origin {
    pub fn node(self) -> VertexId {
        match self {
            Origin::Supernode(v) | Origin::Untouched(v) => v,
        }
    }
}

/// The graph left after removing target edges, fusing their endpoints and
/// applying a redistribution to the surviving edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractedGraph {
    base: WeightedGraph,
    nodes: Vec<Supernode>,
    fused: Vec<bool>,
    origin: Vec<VertexId>,
    surviving: Vec<Option<EdgeId>>,
    redistribution: Redistribution,
}

impl ContractedGraph {
    /// Contracted graph; node cardinalities are supernode sizes.
    pub fn base(&self) -> &WeightedGraph {
        &self.base
    }

    pub fn into_base(self) -> WeightedGraph {
        self.base
    }

    pub fn origin(&self, v: VertexId) -> Origin {
        let node = self.origin[v.0];
        if self.fused[node.0] {
            Origin::Supernode(node)
        } else {
            Origin::Untouched(node)
        }
    }

    /// Members of a node of the base graph.
    pub fn node(&self, v: VertexId) -> &Supernode {
        &self.nodes[v.0]
    }

    /// Nodes produced by contraction.
    pub fn supernodes(&self) -> impl Iterator<Item = (VertexId, &Supernode)> {
        self.nodes.iter().enumerate().filter(|(i, _)| self.fused[*i]).map(|(i, s)| (VertexId(i), s))
    }

    /// Id in the base graph of a surviving input edge.
    pub fn surviving_edge(&self, e: EdgeId) -> Option<EdgeId> {
        self.surviving.get(e.0).copied().flatten()
    }

    pub fn redistribution(&self) -> &Redistribution {
        &self.redistribution
    }
}

/// Contracts the targets of `req` and applies `redist`.
pub fn contract(g: &WeightedGraph, req: &ContractionRequest, redist: &Redistribution) -> Result<ContractedGraph> {
    redist.validate(g, req)?;

    let n = g.vertex_count();
    let mut sets = DisjointSets::new(n);
    for &e in req.targets() {
        let edge = &g.edges()[e.0];
        sets.union(edge.u.0, edge.v.0);
    }

    let mut root_to_node: Vec<Option<usize>> = vec![None; n];
    let mut origin = Vec::with_capacity(n);
    let mut nodes: Vec<Supernode> = Vec::new();
    for v in g.vertices() {
        let root = sets.find(v.0);
        let idx = *root_to_node[root].get_or_insert_with(|| {
            nodes.push(Supernode { members: Vec::new(), cardinality: 0 });
            nodes.len() - 1
        });
        nodes[idx].members.push(v);
        nodes[idx].cardinality += g.cardinality(v);
        origin.push(VertexId(idx));
    }

    let mut fused = vec![false; nodes.len()];
    for &e in req.targets() {
        fused[origin[g.edges()[e.0].u.0].0] = true;
    }

    let labels: Vec<String> =
        nodes.iter().map(|s| s.members.iter().map(|&m| g.label(m)).collect::<Vec<_>>().join("+")).collect();
    let cards: Vec<u64> = nodes.iter().map(|s| s.cardinality).collect();

    let mut surviving = vec![None; g.edge_count()];
    let mut edges = Vec::with_capacity(g.edge_count() - req.targets().len());
    for (i, edge) in g.edges().iter().enumerate() {
        let id = EdgeId(i);
        if req.is_target(id) {
            continue;
        }
        surviving[i] = Some(EdgeId(edges.len()));
        edges.push((origin[edge.u.0].0, origin[edge.v.0].0, edge.weight + redist.delta(id)));
    }

    let base = WeightedGraph::with_cardinalities(labels, cards, edges)?;
    Ok(ContractedGraph { base, nodes, fused, origin, surviving, redistribution: redist.clone() })
}
