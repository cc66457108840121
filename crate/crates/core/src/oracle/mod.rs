//! Brute-force checks of claimed optima.
//!
//! The oracles share no code with the planners or with
//! [`total_error`](crate::metrics::total_error): pair distances are
//! recomputed here from scratch, with contracted edges treated as
//! zero-length edges of the original graph.

mod enumerate;
mod grid;
mod sample;

pub use enumerate::{all_marking_errors, enumerate_markings, enumerate_markings_capped, MAX_ENUMERATED_EDGES};
pub use grid::{grid_search_path, GridSpec, DEFAULT_MAX_CELLS};
pub use sample::{evaluate_candidates, sample_fractional_markings, sample_redistributions};

use num_traits::Zero;

use crate::graph::{ContractionRequest, EdgeId, VertexId, WeightedGraph};
use crate::metrics::Redistribution;
use crate::tree::Marking;
use crate::weight::{abs, Weight};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Redistribution(Redistribution),
    Marking(Marking),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Confirmed,
    /// The oracle found a value below the claim by `gap`.
    Refuted {
        gap: Weight,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleVerdict {
    pub best_value: Weight,
    pub best_witness: Witness,
    pub claimed_value: Weight,
    pub verdict: Verdict,
}

impl OracleVerdict {
    pub(crate) fn new(best_value: Weight, best_witness: Witness, claimed_value: Weight) -> Self {
        let verdict = if best_value >= claimed_value {
            Verdict::Confirmed
        } else {
            Verdict::Refuted { gap: claimed_value - best_value }
        };
        Self { best_value, best_witness, claimed_value, verdict }
    }

    pub fn is_confirmed(&self) -> bool {
        self.verdict == Verdict::Confirmed
    }
}

/// One unordered vertex pair that the error counts.
#[derive(Debug, Clone)]
pub(crate) struct PairTerm {
    /// `d_G - d_G'` before any weight change.
    pub constant: Weight,
    /// Product of the two cardinalities.
    pub multiplicity: i128,
    /// Both endpoints untouched by the contraction.
    pub outside: bool,
    /// Surviving edges on the pair's path.
    pub edges: Vec<EdgeId>,
}

/// Every counted pair of `g` for the contraction `req`.
pub(crate) fn pair_terms(g: &WeightedGraph, req: &ContractionRequest) -> Vec<PairTerm> {
    let n = g.vertex_count();
    let mut merged = vec![false; n];
    for &e in req.targets() {
        let edge = &g.edges()[e.0];
        merged[edge.u.0] = true;
        merged[edge.v.0] = true;
    }

    let mut terms = Vec::new();
    for a in 0..n {
        // Walk the tree from `a`, carrying the original length, the length
        // with contracted edges removed, and the surviving edges crossed.
        let mut reach: Vec<Option<(Weight, Weight, Vec<EdgeId>)>> = vec![None; n];
        reach[a] = Some((Weight::zero(), Weight::zero(), Vec::new()));
        let mut stack = vec![VertexId(a)];
        while let Some(v) = stack.pop() {
            let (before, after, path) = reach[v.0].clone().expect("visited");
            for &(next, e) in g.neighbors(v) {
                if reach[next.0].is_some() {
                    continue;
                }
                let weight = g.edges()[e.0].weight;
                let mut path = path.clone();
                let after = if req.is_target(e) {
                    after
                } else {
                    path.push(e);
                    after + weight
                };
                reach[next.0] = Some((before + weight, after, path));
                stack.push(next);
            }
        }
        for (b, entry) in reach.into_iter().enumerate().skip(a + 1) {
            if merged[a] && merged[b] {
                continue;
            }
            let (before, after, edges) = entry.expect("trees are connected");
            terms.push(PairTerm {
                constant: before - after,
                multiplicity: i128::from(g.cardinalities()[a]) * i128::from(g.cardinalities()[b]),
                outside: !merged[a] && !merged[b],
                edges,
            });
        }
    }
    terms
}

/// `(total, outside)` error of `redist` over precomputed pair terms.
pub(crate) fn evaluate_terms(terms: &[PairTerm], redist: &Redistribution) -> (Weight, Weight) {
    let mut total = Weight::zero();
    let mut outside = Weight::zero();
    for term in terms {
        let shift: Weight = term.edges.iter().map(|&e| redist.delta(e)).sum();
        let diff = abs(term.constant - shift) * Weight::from_integer(term.multiplicity);
        total += diff;
        if term.outside {
            outside += diff;
        }
    }
    (total, outside)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::load_graph;
    use crate::weight::w;

    #[test]
    fn pair_terms_on_p3() {
        let p = load_graph("1 2 2\n2 3 3").unwrap();
        let req = ContractionRequest::new(&p, [EdgeId(1)], None).unwrap();
        let terms = pair_terms(&p, &req);
        // (1,2) and (1,3); (2,3) is inside the contraction.
        assert_eq!(terms.len(), 2);
        let (total, outside) = evaluate_terms(&terms, &Redistribution::new());
        assert_eq!((total, outside), (w(3), w(0)));
        let marked: Redistribution = [(EdgeId(0), w(3))].into_iter().collect();
        assert_eq!(evaluate_terms(&terms, &marked).0, w(3));
    }

    #[test]
    fn verdict_direction() {
        let r = Witness::Redistribution(Redistribution::new());
        assert!(OracleVerdict::new(w(5), r.clone(), w(5)).is_confirmed());
        assert!(OracleVerdict::new(w(6), r.clone(), w(5)).is_confirmed());
        assert_eq!(OracleVerdict::new(w(4), r, w(5)).verdict, Verdict::Refuted { gap: w(1) });
    }
}
