use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::{pair_terms, OracleVerdict, Witness};
use crate::error::{Error, Result};
use crate::graph::{ContractionRequest, EdgeId, WeightedGraph};
use crate::metrics::Redistribution;
use crate::weight::{format_weight, Weight};

pub const DEFAULT_MAX_CELLS: u128 = 100_000_000;

/// Candidate new weights for the varied edges: `lo, lo + step, ..., hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSpec {
    pub step: Weight,
    /// Per-edge `[lo, hi]`; edges without an entry use
    /// `[0, total weight of the contracted and varied edges]`.
    pub ranges: BTreeMap<EdgeId, (Weight, Weight)>,
    pub max_cells: u128,
}

impl GridSpec {
    pub fn new(step: Weight) -> Self {
        Self { step, ranges: BTreeMap::new(), max_cells: DEFAULT_MAX_CELLS }
    }

    pub fn with_range(mut self, e: EdgeId, lo: Weight, hi: Weight) -> Self {
        self.ranges.insert(e, (lo, hi));
        self
    }

    pub fn with_max_cells(mut self, max_cells: u128) -> Self {
        self.max_cells = max_cells;
        self
    }
}

struct Axis {
    edge: EdgeId,
    /// `lo - w(edge)`.
    offset: Weight,
    points: u64,
}

/// Exhaustive search over new weights of `vary`, all other surviving
/// edges unchanged, compared against `claimed`.
pub fn grid_search_path(
    g: &WeightedGraph,
    req: &ContractionRequest,
    spec: &GridSpec,
    vary: &[EdgeId],
    claimed: Weight,
) -> Result<OracleVerdict> {
    let axes = axes(g, req, spec, vary)?;

    // Each pair contributes m * |c - sum of deltas over its varied edges|.
    // With delta = offset + i * step and everything scaled to integers, a
    // pair depends only on the index sum over its varied edges, so pairs
    // are grouped by that edge subset into lookup tables.
    let terms = pair_terms(g, req);
    let position: BTreeMap<EdgeId, usize> = axes.iter().enumerate().map(|(i, a)| (a.edge, i)).collect();
    let mut grouped: BTreeMap<u32, Vec<(Weight, i128)>> = BTreeMap::new();
    let mut scale: i128 = *spec.step.denom();
    for term in &terms {
        let mut mask = 0u32;
        let mut constant = term.constant;
        for e in &term.edges {
            if let Some(&i) = position.get(e) {
                mask |= 1 << i;
                constant -= axes[i].offset;
            }
        }
        scale = scale.lcm(constant.denom());
        grouped.entry(mask).or_default().push((constant, term.multiplicity));
    }
    let step = (spec.step * Weight::from_integer(scale)).to_integer();

    let tables: Vec<(u32, Vec<i128>)> = grouped
        .into_iter()
        .map(|(mask, entries)| {
            let reach: u64 = (0..axes.len()).filter(|i| mask >> i & 1 == 1).map(|i| axes[i].points - 1).sum();
            let scaled: Vec<(i128, i128)> =
                entries.iter().map(|&(c, m)| ((c * Weight::from_integer(scale)).to_integer(), m)).collect();
            let table =
                (0..=reach as i128).map(|s| scaled.iter().map(|&(c, m)| m * (c - step * s).abs()).sum()).collect();
            (mask, table)
        })
        .collect();

    let first = axes.first().map_or(1, |a| a.points);
    let (best, index) = (0..first)
        .into_par_iter()
        .map(|i0| best_in_slab(&axes, &tables, i0))
        .min()
        .expect("grid has at least one cell");

    let mut witness = Redistribution::new();
    for (axis, &i) in axes.iter().zip(&index) {
        witness.set(axis.edge, axis.offset + spec.step * Weight::from_integer(i128::from(i)));
    }
    let best_value = Weight::new(best, scale);
    Ok(OracleVerdict::new(best_value, Witness::Redistribution(witness), claimed))
}

/// Lexicographically first minimum among cells whose first index is `i0`.
fn best_in_slab(axes: &[Axis], tables: &[(u32, Vec<i128>)], i0: u64) -> (i128, Vec<u64>) {
    let mut index = vec![0u64; axes.len()];
    if let Some(first) = index.first_mut() {
        *first = i0;
    }
    let mut best: Option<(i128, Vec<u64>)> = None;
    loop {
        let value: i128 = tables
            .iter()
            .map(|(mask, table)| {
                let s: u64 = index.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x).sum();
                table[s as usize]
            })
            .sum();
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, index.clone()));
        }
        // Odometer over every axis but the first.
        let mut d = axes.len();
        loop {
            if d <= 1 {
                return best.expect("slab has at least one cell");
            }
            d -= 1;
            index[d] += 1;
            if index[d] < axes[d].points {
                break;
            }
            index[d] = 0;
        }
    }
}

fn axes(g: &WeightedGraph, req: &ContractionRequest, spec: &GridSpec, vary: &[EdgeId]) -> Result<Vec<Axis>> {
    if !spec.step.is_positive() {
        return Err(Error::InvalidGrid(format!("step must be positive, got {}", format_weight(&spec.step))));
    }
    let mut edges = vary.to_vec();
    edges.sort_unstable();
    edges.dedup();
    if edges.len() > 31 {
        return Err(Error::InvalidGrid(format!("too many varied edges ({})", edges.len())));
    }
    for &e in &edges {
        g.weight(e)?;
        if req.is_target(e) {
            return Err(Error::DeltaOnContractedEdge(e));
        }
    }
    let span: Weight = req.targets().iter().chain(&edges).map(|&e| g.edges()[e.0].weight).sum();

    let mut axes = Vec::with_capacity(edges.len());
    let mut cells: u128 = 1;
    for e in edges {
        let (lo, hi) = spec.ranges.get(&e).copied().unwrap_or((Weight::zero(), span));
        if lo.is_negative() || hi < lo {
            return Err(Error::InvalidGrid(format!(
                "range [{}, {}] for edge {e} is not a non-negative interval",
                format_weight(&lo),
                format_weight(&hi)
            )));
        }
        let steps = (hi - lo) / spec.step;
        if !steps.is_integer() {
            return Err(Error::InvalidGrid(format!(
                "step {} does not divide range [{}, {}] of edge {e}",
                format_weight(&spec.step),
                format_weight(&lo),
                format_weight(&hi)
            )));
        }
        let points = u64::try_from(steps.to_integer() + 1)
            .map_err(|_| Error::TooLarge { size: u128::MAX, cap: spec.max_cells })?;
        cells = cells.saturating_mul(u128::from(points));
        axes.push(Axis { edge: e, offset: lo - g.edges()[e.0].weight, points });
    }
    if cells > spec.max_cells {
        return Err(Error::TooLarge { size: cells, cap: spec.max_cells });
    }
    Ok(axes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::load_graph;
    use crate::oracle::Verdict;
    use crate::weight::{ratio, w};

    fn p5() -> WeightedGraph {
        load_graph("1 2 2\n2 3 3\n3 4 4\n4 5 1").unwrap()
    }

    #[test]
    fn single_edge_on_p5() {
        let p = p5();
        let req = ContractionRequest::new(&p, [EdgeId(1)], None).unwrap();
        let spec = GridSpec::new(ratio(1, 64)).with_range(EdgeId(0), w(0), w(10)).with_range(EdgeId(2), w(0), w(10));
        let v = grid_search_path(&p, &req, &spec, &[EdgeId(0), EdgeId(2)], w(9)).unwrap();
        assert_eq!(v.verdict, Verdict::Confirmed);
        assert_eq!(v.best_value, w(9));
    }

    #[test]
    fn overclaim_is_refuted() {
        let p = p5();
        let req = ContractionRequest::new(&p, [EdgeId(1)], None).unwrap();
        let v = grid_search_path(&p, &req, &GridSpec::new(w(1)), &[EdgeId(0), EdgeId(2)], w(10)).unwrap();
        assert_eq!(v.verdict, Verdict::Refuted { gap: w(1) });
    }

    #[test]
    fn zero_weight_edge_is_free_at_the_unchanged_point() {
        let p = load_graph("1 2 2\n2 3 0\n3 4 4").unwrap();
        let req = ContractionRequest::new(&p, [EdgeId(1)], None).unwrap();
        let v = grid_search_path(&p, &req, &GridSpec::new(w(1)), &[EdgeId(0), EdgeId(2)], w(0)).unwrap();
        assert_eq!(v.best_value, w(0));
        let Witness::Redistribution(r) = v.best_witness else { panic!("expected a redistribution") };
        assert!(r.is_empty());
    }

    #[test]
    fn rejects_bad_grids() {
        let p = p5();
        let req = ContractionRequest::new(&p, [EdgeId(1)], None).unwrap();
        let vary = [EdgeId(0)];
        assert!(matches!(grid_search_path(&p, &req, &GridSpec::new(w(0)), &vary, w(9)), Err(Error::InvalidGrid(_))));
        let uneven = GridSpec::new(w(3)).with_range(EdgeId(0), w(0), w(4));
        assert!(matches!(grid_search_path(&p, &req, &uneven, &vary, w(9)), Err(Error::InvalidGrid(_))));
        let small = GridSpec::new(ratio(1, 64)).with_max_cells(10);
        assert!(matches!(grid_search_path(&p, &req, &small, &vary, w(9)), Err(Error::TooLarge { .. })));
        assert_eq!(
            grid_search_path(&p, &req, &GridSpec::new(w(1)), &[EdgeId(1)], w(9)),
            Err(Error::DeltaOnContractedEdge(EdgeId(1)))
        );
    }
}
