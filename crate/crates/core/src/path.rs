//! Optimal redistributions for contractions on a path.
//!
//! Orientation follows [`WeightedGraph::path_layout`]: "left" is the side
//! of the path head.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{check_contiguous, check_matching, EdgeId, PathLayout, WeightedGraph};
use crate::metrics::Redistribution;
use crate::weight::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathCase {
    SingleEdge,
    SupernodePair,
    Subpath,
    IndependentSet,
}

impl PathCase {
    pub fn name(self) -> &'static str {
        match self {
            PathCase::SingleEdge => "single",
            PathCase::SupernodePair => "supernode-pair",
            PathCase::Subpath => "subpath",
            PathCase::IndependentSet => "independent",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathMergePlan {
    pub case: PathCase,
    /// Contracted edges in left-to-right order.
    pub targets: Vec<EdgeId>,
    pub redistribution: Redistribution,
    pub predicted_error: Weight,
}

fn regular_layout(p: &WeightedGraph) -> Result<PathLayout> {
    let layout = p.path_layout()?;
    if p.has_supernodes() {
        return Err(Error::HasSupernodes);
    }
    Ok(layout)
}

fn count(n: usize) -> Weight {
    Weight::from_integer(n as i128)
}

/// Contracts one edge and marks its left neighbour, if any. The error is
/// `(n - 2) * w(e*)`.
pub fn merge_single_edge(p: &WeightedGraph, e_star: EdgeId) -> Result<PathMergePlan> {
    let layout = regular_layout(p)?;
    let w_star = p.weight(e_star)?;
    let mut redistribution = Redistribution::new();
    if let Some(left) = layout.left_neighbor(e_star) {
        redistribution.add(left, w_star);
    }
    Ok(PathMergePlan {
        case: PathCase::SingleEdge,
        targets: vec![e_star],
        redistribution,
        predicted_error: count(p.vertex_count() - 2) * w_star,
    })
}

/// Contracts the edge between two supernodes of cardinalities `k >= k'`
/// by marking the outer edge of the smaller one (the left one on ties).
/// The error is `w(e*) * k' * (n - k - k')` with `n` the total cardinality.
pub fn merge_supernode_pair(p: &WeightedGraph, e_star: EdgeId) -> Result<PathMergePlan> {
    let w_star = p.weight(e_star)?;
    let layout = p.path_layout().map_err(|_| Error::NotAdjacentSupernodes(e_star))?;
    let (left, right) = layout.endpoints(e_star);
    let (k_left, k_right) = (p.cardinality(left), p.cardinality(right));

    let (outer, smaller) = if k_left <= k_right {
        (layout.left_neighbor(e_star), k_left)
    } else {
        (layout.right_neighbor(e_star), k_right)
    };
    let mut redistribution = Redistribution::new();
    if let Some(edge) = outer {
        redistribution.add(edge, w_star);
    }
    let outside = p.total_cardinality() - k_left - k_right;
    let predicted_error = w_star * Weight::from_integer(i128::from(smaller) * i128::from(outside));
    Ok(PathMergePlan { case: PathCase::SupernodePair, targets: vec![e_star], redistribution, predicted_error })
}

/// Left clause sums for a contracted run `w[1..=k]` framed by neighbour
/// weights `w[0]` and `w[k + 1]`: entry `i` is the error between `n_left`
/// outside vertices and the run when the left neighbour absorbs
/// `w[1] + ... + w[i]`.
///
/// # Panics
///
/// If fewer than two weights are given.
pub fn left_error_table(weights: &[Weight], n_left: u64) -> Vec<Weight> {
    assert!(weights.len() >= 2, "need at least the two neighbour weights");
    let k = weights.len() - 2;
    let run = &weights[1..=k];
    let n_left = Weight::from_integer(i128::from(n_left));
    (0..=k).map(|i| n_left * clause_sum(run, i)).collect()
}

/// `sum_{j <= i} j * w_j + sum_{j > i} (k + 1 - j) * w_j` over a 1-based run.
fn clause_sum(run: &[Weight], i: usize) -> Weight {
    let k = run.len();
    run.iter()
        .enumerate()
        .map(|(idx, &w)| {
            let j = idx + 1;
            let times = if j <= i { j } else { k + 1 - j };
            w * count(times)
        })
        .sum()
}

/// Contracts a contiguous run of `k` edges. The left neighbour absorbs
/// the first `ceil(k / 2)` weights and the right neighbour the rest.
pub fn merge_subpath(p: &WeightedGraph, targets: &[EdgeId]) -> Result<PathMergePlan> {
    let layout = regular_layout(p)?;
    if targets.is_empty() {
        return Err(Error::EmptyRequest);
    }
    for &e in targets {
        p.edge(e)?;
    }
    check_contiguous(p, targets)?;
    let mut run: Vec<EdgeId> = targets.to_vec();
    run.sort_by_key(|&e| layout.position(e));
    run.dedup();

    let weights: Vec<Weight> = run.iter().map(|&e| p.edges()[e.0].weight).collect();
    let k = run.len();
    let split = k.div_ceil(2);

    let mut redistribution = Redistribution::new();
    if let Some(left) = layout.left_neighbor(run[0]) {
        redistribution.add(left, weights[..split].iter().sum());
    }
    if let Some(right) = layout.right_neighbor(run[k - 1]) {
        redistribution.add(right, weights[split..].iter().sum());
    }

    let outside = p.vertex_count() - (k + 1);
    let predicted_error = count(outside) * clause_sum(&weights, split);
    Ok(PathMergePlan { case: PathCase::Subpath, targets: run, redistribution, predicted_error })
}

/// Contracts a matching by marking the left neighbour of every target.
/// The error is `(n - 2k) * sum w*`.
pub fn merge_independent(p: &WeightedGraph, targets: &[EdgeId]) -> Result<PathMergePlan> {
    let layout = regular_layout(p)?;
    let order = sorted_matching(p, &layout, targets)?;
    let redistribution = sequential_left_marking(p, &order)?;
    independent_plan(p, order, redistribution)
}

/// [`merge_independent`] with targets processed in the given order.
pub fn merge_independent_in_order(p: &WeightedGraph, order: &[EdgeId]) -> Result<PathMergePlan> {
    let layout = regular_layout(p)?;
    let sorted = sorted_matching(p, &layout, order)?;
    let redistribution = sequential_left_marking(p, order)?;
    independent_plan(p, sorted, redistribution)
}

fn sorted_matching(p: &WeightedGraph, layout: &PathLayout, targets: &[EdgeId]) -> Result<Vec<EdgeId>> {
    if targets.is_empty() {
        return Err(Error::EmptyRequest);
    }
    for &e in targets {
        p.edge(e)?;
    }
    let mut sorted = targets.to_vec();
    sorted.sort_by_key(|&e| layout.position(e));
    sorted.dedup();
    check_matching(p, &sorted)?;
    Ok(sorted)
}

fn independent_plan(p: &WeightedGraph, targets: Vec<EdgeId>, redistribution: Redistribution) -> Result<PathMergePlan> {
    let total: Weight = targets.iter().map(|&e| p.edges()[e.0].weight).sum();
    let predicted_error = count(p.vertex_count() - 2 * targets.len()) * total;
    Ok(PathMergePlan { case: PathCase::IndependentSet, targets, redistribution, predicted_error })
}

/// Contracts `order` one edge at a time, each time adding the edge's
/// current weight to the nearest surviving edge on its left. Works for any
/// target set; on a contiguous run it piles everything onto one side.
pub fn sequential_left_marking(p: &WeightedGraph, order: &[EdgeId]) -> Result<Redistribution> {
    let layout = p.path_layout()?;
    let mut current: Vec<Weight> = p.edges().iter().map(|e| e.weight).collect();
    let mut contracted = vec![false; p.edge_count()];
    for &e in order {
        p.edge(e)?;
        if contracted[e.0] {
            continue;
        }
        let mut pos = layout.position(e);
        while pos > 0 && contracted[layout.edges[pos - 1].0] {
            pos -= 1;
        }
        if pos > 0 {
            let left = layout.edges[pos - 1];
            let moved = current[e.0];
            current[left.0] += moved;
        }
        contracted[e.0] = true;
    }
    let mut redistribution = Redistribution::new();
    for e in p.edge_ids().filter(|e| !contracted[e.0]) {
        let delta = current[e.0] - p.edges()[e.0].weight;
        if !delta.is_zero() {
            redistribution.add(e, delta);
        }
    }
    Ok(redistribution)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{load_graph, ContractionRequest};
    use crate::metrics::total_error;
    use crate::weight::w;

    fn path(weights: &[i128]) -> WeightedGraph {
        let text: String = weights.iter().enumerate().map(|(i, x)| format!("{} {} {}\n", i + 1, i + 2, x)).collect();
        load_graph(&text).unwrap()
    }

    fn realised(p: &WeightedGraph, plan: &PathMergePlan) -> Weight {
        let req = ContractionRequest::new(p, plan.targets.iter().copied(), None).unwrap();
        total_error(p, &req, &plan.redistribution).unwrap().total
    }

    #[test]
    fn single_edge_marks_left() {
        let p = path(&[2, 3, 4, 1]);
        let plan = merge_single_edge(&p, EdgeId(1)).unwrap();
        assert_eq!(plan.redistribution.delta(EdgeId(0)), w(3));
        assert_eq!(plan.redistribution.len(), 1);
        assert_eq!(plan.predicted_error, w(9));
        assert_eq!(realised(&p, &plan), w(9));
    }

    #[test]
    fn single_edge_at_the_head_changes_nothing() {
        let p = path(&[3, 2]);
        let plan = merge_single_edge(&p, EdgeId(0)).unwrap();
        assert!(plan.redistribution.is_empty());
        assert_eq!(realised(&p, &plan), w(3));
    }

    #[test]
    fn single_edge_at_the_tail_of_p3() {
        let p = path(&[2, 3]);
        let plan = merge_single_edge(&p, EdgeId(1)).unwrap();
        assert_eq!(plan.predicted_error, w(3));
        assert_eq!(realised(&p, &plan), w(3));
        let unchanged = ContractionRequest::new(&p, [EdgeId(1)], None).unwrap();
        assert_eq!(total_error(&p, &unchanged, &Redistribution::new()).unwrap().total, w(3));
    }

    #[test]
    fn single_edge_of_p2() {
        let p = path(&[5]);
        let plan = merge_single_edge(&p, EdgeId(0)).unwrap();
        assert_eq!(plan.predicted_error, w(0));
        assert_eq!(realised(&p, &plan), w(0));
    }

    #[test]
    fn single_edge_rejects_trees() {
        let t = load_graph("1 2 1\n1 3 1\n1 4 1").unwrap();
        assert_eq!(merge_single_edge(&t, EdgeId(0)), Err(Error::NotAPath));
    }

    #[test]
    fn left_table_examples() {
        let ones = vec![w(1); 4];
        assert_eq!(left_error_table(&ones, 1), vec![w(3), w(2), w(3)]);
        assert!(left_error_table(&ones, 0).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn subpath_of_two() {
        // w0 = 1, run (2, 4), w3 = 8, two vertices on each side.
        let p = path(&[5, 1, 2, 4, 8, 5]);
        let plan = merge_subpath(&p, &[EdgeId(2), EdgeId(3)]).unwrap();
        assert_eq!(plan.redistribution.delta(EdgeId(1)), w(2));
        assert_eq!(plan.redistribution.delta(EdgeId(4)), w(4));
        assert_eq!(plan.predicted_error, w(24));
        assert_eq!(realised(&p, &plan), w(24));
    }

    #[test]
    fn subpath_of_one_matches_single_edge() {
        let p = path(&[2, 3, 4, 1]);
        let sub = merge_subpath(&p, &[EdgeId(2)]).unwrap();
        let single = merge_single_edge(&p, EdgeId(2)).unwrap();
        assert_eq!(sub.redistribution, single.redistribution);
        assert_eq!(sub.predicted_error, single.predicted_error);
    }

    #[test]
    fn odd_subpath_prediction_is_exact() {
        let p = path(&[1, 3, 5, 7, 2]);
        let plan = merge_subpath(&p, &[EdgeId(1), EdgeId(2), EdgeId(3)]).unwrap();
        assert_eq!(plan.redistribution.delta(EdgeId(0)), w(8));
        assert_eq!(plan.redistribution.delta(EdgeId(4)), w(7));
        assert_eq!(realised(&p, &plan), plan.predicted_error);
    }

    #[test]
    fn subpath_rejects_gaps() {
        let p = path(&[1, 1, 1, 1]);
        assert_eq!(merge_subpath(&p, &[EdgeId(0), EdgeId(2)]), Err(Error::NotContiguous));
    }

    #[test]
    fn independent_on_p8() {
        let p = path(&[1, 2, 1, 1, 5, 1, 1]);
        let plan = merge_independent(&p, &[EdgeId(1), EdgeId(4)]).unwrap();
        assert_eq!(plan.predicted_error, w(28));
        assert_eq!(realised(&p, &plan), w(28));
    }

    #[test]
    fn independent_leftmost_target_gets_no_mark() {
        let p = path(&[4, 1, 1, 3, 1]);
        let plan = merge_independent(&p, &[EdgeId(0), EdgeId(3)]).unwrap();
        assert_eq!(plan.redistribution.delta(EdgeId(2)), w(3));
        assert_eq!(plan.redistribution.len(), 1);
        assert_eq!(realised(&p, &plan), plan.predicted_error);
    }

    #[test]
    fn independent_rejects_adjacent_targets() {
        let p = path(&[1, 1, 1, 1]);
        assert_eq!(merge_independent(&p, &[EdgeId(1), EdgeId(2)]), Err(Error::NotAMatching(EdgeId(1), EdgeId(2))));
    }

    #[test]
    fn sequential_marking_piles_a_run_to_the_left() {
        let p = path(&[1, 1, 1, 1, 1, 1, 1]);
        let run = [EdgeId(2), EdgeId(3), EdgeId(4)];
        let r = sequential_left_marking(&p, &run).unwrap();
        assert_eq!(r.delta(EdgeId(1)), w(3));
        assert_eq!(r.delta(EdgeId(5)), w(0));
    }

    #[test]
    fn supernode_pair_marks_the_smaller_side() {
        let p = WeightedGraph::with_cardinalities(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            vec![2, 3, 2, 3],
            vec![(0, 1, w(1)), (1, 2, w(1)), (2, 3, w(1))],
        )
        .unwrap();
        let plan = merge_supernode_pair(&p, EdgeId(1)).unwrap();
        assert_eq!(plan.redistribution.delta(EdgeId(2)), w(1));
        assert_eq!(plan.predicted_error, w(10));
        assert_eq!(realised(&p, &plan), w(10));
    }
}
