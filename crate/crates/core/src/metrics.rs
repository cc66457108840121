//! Exact distance-distortion error of a contraction.
//!
//! The error of a contraction sums `|d_G(u, v) - d_G'(u, v)|` over unordered
//! vertex pairs with at least one endpoint outside the contracted edges. A
//! merged vertex is placed at its supernode in `G'` but keeps its own term,
//! and pairs with both endpoints merged are not counted.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{contract, derive_merged_sets, ContractionRequest, EdgeId, MergedSets, WeightedGraph};
use crate::tree::{self, Marking, NeighborProfile, Side};
use crate::weight::{abs, Weight};

/// New weights for surviving edges, stored as `w'(e) = w(e) + delta(e)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Redistribution {
    deltas: BTreeMap<EdgeId, Weight>,
}

impl Redistribution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, e: EdgeId, delta: Weight) {
        if delta.is_zero() {
            self.deltas.remove(&e);
        } else {
            self.deltas.insert(e, delta);
        }
    }

    pub fn add(&mut self, e: EdgeId, delta: Weight) {
        let total = self.delta(e) + delta;
        self.set(e, total);
    }

    pub fn delta(&self, e: EdgeId) -> Weight {
        self.deltas.get(&e).copied().unwrap_or_else(Weight::zero)
    }

    /// Non-zero deltas in edge order.
    pub fn iter(&self) -> impl Iterator<Item = (EdgeId, Weight)> + '_ {
        self.deltas.iter().map(|(&e, &d)| (e, d))
    }

    pub fn is_empty(&self) -> bool {
        self.deltas.is_empty()
    }

    pub fn len(&self) -> usize {
        self.deltas.len()
    }

    /// Checks that every delta names a surviving edge and keeps its weight
    /// non-negative.
    pub fn validate(&self, g: &WeightedGraph, req: &ContractionRequest) -> Result<()> {
        for (e, delta) in self.iter() {
            let weight = g.weight(e)?;
            if req.is_target(e) {
                return Err(Error::DeltaOnContractedEdge(e));
            }
            if weight + delta < Weight::zero() {
                return Err(Error::NegativeResultWeight(e));
            }
        }
        Ok(())
    }
}

impl FromIterator<(EdgeId, Weight)> for Redistribution {
    fn from_iter<I: IntoIterator<Item = (EdgeId, Weight)>>(iter: I) -> Self {
        let mut r = Redistribution::new();
        for (e, d) in iter {
            r.add(e, d);
        }
        r
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErrorReport {
    pub total: Weight,
    /// Pairs with both endpoints outside the merged vertices.
    pub outside_pairs: Weight,
    /// Pairs with one merged endpoint.
    pub cross_pairs: Weight,
    /// Marking error in units of the contracted weight, when known.
    pub unit_count: Option<i128>,
}

/// Evaluates the error of many redistributions for one request, reusing
/// the distances of the original graph.
#[derive(Debug, Clone)]
pub struct ErrorEvaluator<'g> {
    graph: &'g WeightedGraph,
    request: ContractionRequest,
    merged: MergedSets,
    before: Vec<Vec<Weight>>,
}

impl<'g> ErrorEvaluator<'g> {
    pub fn new(graph: &'g WeightedGraph, request: &ContractionRequest) -> Self {
        let before = graph.vertices().map(|v| graph.distances_from(v)).collect();
        let merged = derive_merged_sets(graph, request);
        Self { graph, request: request.clone(), merged, before }
    }

    pub fn graph(&self) -> &'g WeightedGraph {
        self.graph
    }

    pub fn request(&self) -> &ContractionRequest {
        &self.request
    }

    pub fn evaluate(&self, redist: &Redistribution) -> Result<ErrorReport> {
        let g = self.graph;
        let contracted = contract(g, &self.request, redist)?;
        let base = contracted.base();
        let after: Vec<Vec<Weight>> = base.vertices().map(|v| base.distances_from(v)).collect();
        let node: Vec<usize> = g.vertices().map(|v| contracted.origin(v).node().0).collect();

        let mut outside = Weight::zero();
        let mut cross = Weight::zero();
        let n = g.vertex_count();
        for a in 0..n {
            let a_merged = self.merged.contains(crate::graph::VertexId(a));
            for b in a + 1..n {
                let b_merged = self.merged.contains(crate::graph::VertexId(b));
                if a_merged && b_merged {
                    continue;
                }
                let diff = abs(self.before[a][b] - after[node[a]][node[b]]);
                if diff.is_zero() {
                    continue;
                }
                let multiplicity = i128::from(g.cardinalities()[a]) * i128::from(g.cardinalities()[b]);
                let term = diff * Weight::from_integer(multiplicity);
                if a_merged || b_merged {
                    cross += term;
                } else {
                    outside += term;
                }
            }
        }
        Ok(ErrorReport { total: outside + cross, outside_pairs: outside, cross_pairs: cross, unit_count: None })
    }
}

/// Error of contracting the targets of `req` in `g` with new weights
/// `redist`.
pub fn total_error(g: &WeightedGraph, req: &ContractionRequest, redist: &Redistribution) -> Result<ErrorReport> {
    ErrorEvaluator::new(g, req).evaluate(redist)
}

/// Outside-pair error of an integral marking, in units of the contracted
/// edge's weight.
pub fn marking_unit_error(tree: &WeightedGraph, e_star: EdgeId, marking: &Marking) -> Result<i128> {
    let profile = tree::profile(tree, e_star).map_err(|err| match err {
        Error::NoSuchEdge(e) => Error::NotATreeEdge(e),
        other => other,
    })?;
    unit_error(&profile, marking)
}

/// [`marking_unit_error`] for an already computed profile. Linear in the
/// number of neighbour edges.
pub fn unit_error(profile: &NeighborProfile, marking: &Marking) -> Result<i128> {
    let sums = tree::MarkingSums::new(profile, marking)?;
    Ok(unit_error_from_sums(&sums))
}

pub(crate) fn unit_error_from_sums(s: &tree::MarkingSums) -> i128 {
    // Marked pairs on one side count twice: S^2 - sum of squares.
    let marked_left = s.marked(Side::Left) * s.marked(Side::Left) - s.marked_squares(Side::Left);
    let marked_right = s.marked(Side::Right) * s.marked(Side::Right) - s.marked_squares(Side::Right);
    marked_left
        + marked_right
        + s.marked(Side::Left) * s.marked(Side::Right)
        + s.marked(Side::Left) * s.unmarked(Side::Left)
        + s.marked(Side::Right) * s.unmarked(Side::Right)
        + s.unmarked(Side::Left) * s.unmarked(Side::Right)
}

/// Returns `(|x - a| + |x - a - b|, |y - c| + |y - b - c|)`.
pub fn abs_pair_bound_check<T: Signed + Copy>(a: T, b: T, c: T, x: T, y: T) -> (T, T) {
    let alpha1 = (x - a).abs() + (x - a - b).abs();
    let alpha2 = (y - c).abs() + (y - b - c).abs();
    (alpha1, alpha2)
}
