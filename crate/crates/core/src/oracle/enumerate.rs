use rayon::prelude::*;

use super::{OracleVerdict, Witness};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, VertexId, WeightedGraph};
use crate::tree::{optimal_marking, MarkState, Marking};
use crate::weight::Weight;

/// Hard limit on the number of neighbour edges enumerated.
pub const MAX_ENUMERATED_EDGES: usize = 20;

/// Neighbour edges of `e_star` with their subtree sizes, `true` for edges
/// at the first-listed endpoint.
fn neighbour_subtrees(tree: &WeightedGraph, e_star: EdgeId) -> Result<Vec<(EdgeId, bool, i128)>> {
    let edge = *tree.edge(e_star)?;
    let mut out = Vec::new();
    for (root, left) in [(edge.u, true), (edge.v, false)] {
        for &(child, e) in tree.neighbors(root) {
            if e == e_star {
                continue;
            }
            out.push((e, left, component_size(tree, child, e)));
        }
    }
    Ok(out)
}

/// Cardinality of the side of `cut` containing `start`.
fn component_size(tree: &WeightedGraph, start: VertexId, cut: EdgeId) -> i128 {
    let mut seen = vec![false; tree.vertex_count()];
    seen[start.0] = true;
    let mut stack = vec![start];
    let mut size = 0;
    while let Some(v) = stack.pop() {
        size += i128::from(tree.cardinality(v));
        for &(next, e) in tree.neighbors(v) {
            if e != cut && !seen[next.0] {
                seen[next.0] = true;
                stack.push(next);
            }
        }
    }
    size
}

/// Unit error of the marking encoded by `mask` (bit `i` marks neighbour `i`),
/// summed pair by pair over the hanging subtrees.
fn units_of(subtrees: &[(EdgeId, bool, i128)], mask: u32) -> i128 {
    let mut units = 0;
    for i in 0..subtrees.len() {
        for j in i + 1..subtrees.len() {
            let (_, side_i, size_i) = subtrees[i];
            let (_, side_j, size_j) = subtrees[j];
            let crosses = i128::from(side_i != side_j);
            let marks = i128::from(mask >> i & 1) + i128::from(mask >> j & 1);
            units += (crosses - marks).abs() * size_i * size_j;
        }
    }
    units
}

/// Unit error of every marking, indexed by bit mask over the neighbour
/// edges of `e_star` (edges at the first-listed endpoint first, each side
/// in adjacency order).
pub fn all_marking_errors(tree: &WeightedGraph, e_star: EdgeId) -> Result<(Vec<EdgeId>, Vec<i128>)> {
    let subtrees = checked_subtrees(tree, e_star, 1u128 << MAX_ENUMERATED_EDGES)?;
    let errors = (0..1u32 << subtrees.len()).into_par_iter().map(|mask| units_of(&subtrees, mask)).collect();
    Ok((subtrees.iter().map(|s| s.0).collect(), errors))
}

fn checked_subtrees(tree: &WeightedGraph, e_star: EdgeId, cap: u128) -> Result<Vec<(EdgeId, bool, i128)>> {
    let subtrees = neighbour_subtrees(tree, e_star)?;
    let size = 1u128 << subtrees.len().min(127);
    let cap = cap.min(1u128 << MAX_ENUMERATED_EDGES);
    if size > cap {
        return Err(Error::TooLarge { size, cap });
    }
    Ok(subtrees)
}

/// Exhaustive minimum over all markings of the neighbour edges of
/// `e_star`, checked against [`optimal_marking`]. Values are in units of
/// `w(e_star)`.
pub fn enumerate_markings(tree: &WeightedGraph, e_star: EdgeId) -> Result<OracleVerdict> {
    enumerate_markings_capped(tree, e_star, u128::MAX)
}

/// [`enumerate_markings`] refusing more than `cap` markings.
pub fn enumerate_markings_capped(tree: &WeightedGraph, e_star: EdgeId, cap: u128) -> Result<OracleVerdict> {
    let subtrees = checked_subtrees(tree, e_star, cap)?;
    let (_, claimed) = optimal_marking(tree, e_star)?;
    let (best, mask) = (0..1u32 << subtrees.len())
        .into_par_iter()
        .map(|mask| (units_of(&subtrees, mask), mask))
        .min()
        .expect("at least the empty marking");
    let witness: Marking = subtrees
        .iter()
        .enumerate()
        .map(|(i, &(e, _, _))| (e, if mask >> i & 1 == 1 { MarkState::Marked } else { MarkState::Unmarked }))
        .collect();
    Ok(OracleVerdict::new(Weight::from_integer(best), Witness::Marking(witness), Weight::from_integer(claimed)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::load_graph;
    use crate::weight::w;

    #[test]
    fn single_neighbour() {
        let t = load_graph("a b 1\nb c 1").unwrap();
        let (edges, errors) = all_marking_errors(&t, EdgeId(0)).unwrap();
        assert_eq!(edges, vec![EdgeId(1)]);
        assert_eq!(errors, vec![0, 0]);
        let v = enumerate_markings(&t, EdgeId(0)).unwrap();
        assert!(v.is_confirmed());
        assert_eq!(v.best_value, w(0));
    }

    #[test]
    fn cap_is_enforced() {
        let mut text = String::from("a b 1\n");
        for i in 0..5 {
            text += &format!("a x{i} 1\n");
        }
        let t = load_graph(&text).unwrap();
        assert_eq!(enumerate_markings_capped(&t, EdgeId(0), 16), Err(Error::TooLarge { size: 32, cap: 16 }));
        assert!(enumerate_markings_capped(&t, EdgeId(0), 32).is_ok());
    }
}
