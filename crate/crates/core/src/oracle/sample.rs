use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{evaluate_terms, pair_terms, OracleVerdict, Witness};
use crate::error::{Error, Result};
use crate::graph::{ContractionRequest, EdgeId, WeightedGraph};
use crate::metrics::Redistribution;
use crate::tree::{optimal_marking, MarkState, Marking};
use crate::weight::{ratio, Weight};

/// Sampled deltas and fractions are multiples of `1 / RESOLUTION`.
const RESOLUTION: i128 = 1024;

/// Random redistributions over the surviving edges of `g`, compared
/// against `claimed`. Each edge is perturbed with probability one half by a
/// delta drawn uniformly from `[-w_max, w_max]`, clipped to keep weights
/// non-negative.
pub fn sample_redistributions(
    g: &WeightedGraph,
    req: &ContractionRequest,
    samples: usize,
    seed: u64,
    claimed: Weight,
) -> Result<OracleVerdict> {
    if samples == 0 {
        return Err(Error::InvalidGrid("at least one sample is required".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w_max = g.edges().iter().map(|e| e.weight).max().unwrap_or_else(Weight::zero);
    let reach = (w_max * Weight::from_integer(RESOLUTION)).floor().to_integer();
    let surviving: Vec<EdgeId> = g.edge_ids().filter(|&e| !req.is_target(e)).collect();

    let candidates: Vec<Redistribution> = (0..samples)
        .map(|_| {
            let mut r = Redistribution::new();
            for &e in &surviving {
                if !rng.random_bool(0.5) {
                    continue;
                }
                let delta = ratio(rng.random_range(-reach..=reach), RESOLUTION);
                r.set(e, delta.max(-g.edges()[e.0].weight));
            }
            r
        })
        .collect();
    evaluate_candidates(g, req, &candidates, claimed)
}

/// Best of the given redistributions, earliest first on ties.
pub fn evaluate_candidates(
    g: &WeightedGraph,
    req: &ContractionRequest,
    candidates: &[Redistribution],
    claimed: Weight,
) -> Result<OracleVerdict> {
    for r in candidates {
        r.validate(g, req)?;
    }
    let terms = pair_terms(g, req);
    let (best, index) = candidates
        .par_iter()
        .enumerate()
        .map(|(i, r)| (evaluate_terms(&terms, r).0, i))
        .min()
        .ok_or_else(|| Error::InvalidGrid("no candidates".into()))?;
    Ok(OracleVerdict::new(best, Witness::Redistribution(candidates[index].clone()), claimed))
}

/// Random fractional markings of the neighbour edges of `e_star`, scored
/// by their error over pairs outside the contraction and compared against
/// the optimal integral marking. Fractions are uniform in `[0, 1]`.
pub fn sample_fractional_markings(
    tree: &WeightedGraph,
    e_star: EdgeId,
    samples: usize,
    seed: u64,
) -> Result<OracleVerdict> {
    if samples == 0 {
        return Err(Error::InvalidGrid("at least one sample is required".into()));
    }
    let (_, units) = optimal_marking(tree, e_star)?;
    let w_star = tree.weight(e_star)?;
    let claimed = w_star * Weight::from_integer(units);

    let edge = tree.edges()[e_star.0];
    let neighbours: Vec<EdgeId> = [edge.u, edge.v]
        .iter()
        .flat_map(|&v| tree.neighbors(v).iter().map(|&(_, e)| e))
        .filter(|&e| e != e_star)
        .collect();
    let req = ContractionRequest::new(tree, [e_star], None)?;
    let terms = pair_terms(tree, &req);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let markings: Vec<Marking> = (0..samples)
        .map(|_| {
            neighbours
                .iter()
                .map(|&e| {
                    let c = ratio(rng.random_range(0..=RESOLUTION), RESOLUTION);
                    (e, MarkState::from_fraction(c).expect("fraction in [0, 1]"))
                })
                .collect()
        })
        .collect();

    let (best, index) = markings
        .par_iter()
        .enumerate()
        .map(|(i, m)| {
            let r: Redistribution = m.iter().map(|(e, s)| (e, s.fraction() * w_star)).collect();
            (evaluate_terms(&terms, &r).1, i)
        })
        .min()
        .expect("at least one sample");
    Ok(OracleVerdict::new(best, Witness::Marking(markings[index].clone()), claimed))
}
