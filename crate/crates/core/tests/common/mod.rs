//! Random instance generators shared by the integration suites.
#![allow(dead_code)]

use edgemerge_core::weight::w;
use edgemerge_core::{EdgeId, Weight, WeightedGraph};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

/// Path `v0 - v1 - ... - v{n-1}` with the given weights.
pub fn path_from(weights: &[i128]) -> WeightedGraph {
    let edges = weights.iter().enumerate().map(|(i, &x)| (i, i + 1, w(x))).collect();
    WeightedGraph::new(labels(weights.len() + 1), edges).unwrap()
}

pub fn random_weights(rng: &mut impl Rng, count: usize, max: i128) -> Vec<i128> {
    (0..count).map(|_| rng.random_range(0..=max)).collect()
}

pub fn random_path(rng: &mut impl Rng, n: usize, max_weight: i128) -> WeightedGraph {
    path_from(&random_weights(rng, n - 1, max_weight))
}

/// Path with per-vertex cardinalities.
pub fn supernode_path(weights: &[i128], cards: &[u64]) -> WeightedGraph {
    let edges = weights.iter().enumerate().map(|(i, &x)| (i, i + 1, w(x))).collect();
    WeightedGraph::with_cardinalities(labels(cards.len()), cards.to_vec(), edges).unwrap()
}

/// Random recursive tree: vertex `i` hangs off a uniformly chosen earlier
/// vertex.
pub fn random_tree(rng: &mut impl Rng, n: usize, max_weight: i128) -> WeightedGraph {
    let edges = (1..n).map(|i| (rng.random_range(0..i), i, w(rng.random_range(0..=max_weight)))).collect();
    WeightedGraph::new(labels(n), edges).unwrap()
}

/// Builder for trees around a contracted edge `v0 - v1` (edge 0).
pub struct TreeBuilder {
    edges: Vec<(usize, usize, Weight)>,
    n: usize,
}

impl TreeBuilder {
    pub fn new(w_star: i128) -> Self {
        Self { edges: vec![(0, 1, w(w_star))], n: 2 }
    }

    /// Hangs a random subtree with `size` vertices off `root`.
    pub fn subtree(&mut self, rng: &mut impl Rng, root: usize, size: usize, max_weight: i128) -> &mut Self {
        let first = self.n;
        for k in 0..size {
            let parent = if k == 0 { root } else { first + rng.random_range(0..k) };
            self.edges.push((parent, first + k, w(rng.random_range(0..=max_weight))));
        }
        self.n += size;
        self
    }

    pub fn build(&self) -> WeightedGraph {
        WeightedGraph::new(labels(self.n), self.edges.clone()).unwrap()
    }
}

/// Tree whose contracted edge 0 has `left` subtree sizes at `v0` and
/// `right` sizes at `v1`.
pub fn tree_with_sides(
    rng: &mut impl Rng,
    left: &[usize],
    right: &[usize],
    w_star: i128,
    max_weight: i128,
) -> WeightedGraph {
    let mut b = TreeBuilder::new(w_star);
    for &s in left {
        b.subtree(rng, 0, s, max_weight);
    }
    for &s in right {
        b.subtree(rng, 1, s, max_weight);
    }
    b.build()
}

/// Random neighbour layout with at most `max_neighbours` subtrees in total.
pub fn random_sides(rng: &mut impl Rng, max_neighbours: usize, max_size: usize) -> (Vec<usize>, Vec<usize>) {
    let total = rng.random_range(1..=max_neighbours);
    let left_count = rng.random_range(0..=total);
    let mut sizes = |count: usize| (0..count).map(|_| rng.random_range(1..=max_size)).collect::<Vec<_>>();
    let left = sizes(left_count);
    let right = sizes(total - left_count);
    (left, right)
}

/// Random set of pairwise non-adjacent edges of a path with `edges` edges.
pub fn random_matching(rng: &mut impl Rng, edges: usize) -> Vec<EdgeId> {
    let mut order: Vec<usize> = (0..edges).collect();
    order.shuffle(rng);
    let wanted = rng.random_range(1..=edges.div_ceil(2));
    let mut chosen: Vec<usize> = Vec::new();
    for e in order {
        if chosen.len() == wanted {
            break;
        }
        if chosen.iter().all(|&c| c.abs_diff(e) > 1) {
            chosen.push(e);
        }
    }
    chosen.sort_unstable();
    chosen.into_iter().map(EdgeId).collect()
}
