//! Optimal marking of the neighbour edges of one contracted tree edge.
//!
//! For a contracted edge `e* = (v1, v2)`, the left side holds the edges at
//! `v1` and the right side those at `v2`, where `v1` is the first-listed
//! endpoint. Marking a neighbour edge adds `w(e*)` to its weight. The
//! best marking is one-sided, and the best marking on each side has a
//! threshold form, so the optimum is found in linear time.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, VertexId, WeightedGraph};
use crate::metrics::{unit_error, Redistribution};
use crate::weight::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    fn index(self) -> usize {
        match self {
            Side::Left => 0,
            Side::Right => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

/// Sizes of the subtrees hanging off each endpoint of a tree edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborProfile {
    pub edge: EdgeId,
    pub left_vertex: VertexId,
    pub right_vertex: VertexId,
    /// `(edge, subtree cardinality)` in adjacency order of the left vertex.
    pub left: Vec<(EdgeId, u64)>,
    pub right: Vec<(EdgeId, u64)>,
    pub sum_left: u64,
    pub sum_right: u64,
}

impl NeighborProfile {
    pub fn side(&self, side: Side) -> &[(EdgeId, u64)] {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    pub fn sum(&self, side: Side) -> u64 {
        match side {
            Side::Left => self.sum_left,
            Side::Right => self.sum_right,
        }
    }

    pub fn neighbor_count(&self) -> usize {
        self.left.len() + self.right.len()
    }

    /// Neighbour edges, left side first.
    pub fn neighbors(&self) -> impl Iterator<Item = (Side, EdgeId, u64)> + '_ {
        let left = self.left.iter().map(|&(e, s)| (Side::Left, e, s));
        let right = self.right.iter().map(|&(e, s)| (Side::Right, e, s));
        left.chain(right)
    }

    fn side_of(&self, e: EdgeId) -> Option<(Side, u64)> {
        self.neighbors().find(|&(_, f, _)| f == e).map(|(side, _, size)| (side, size))
    }
}

/// Splits `tree - {v1, v2}` into the subtrees adjacent to each endpoint of
/// `e_star`. Both endpoints must be regular vertices.
pub fn profile(tree: &WeightedGraph, e_star: EdgeId) -> Result<NeighborProfile> {
    let edge = *tree.edge(e_star)?;
    if tree.cardinality(edge.u) > 1 || tree.cardinality(edge.v) > 1 {
        return Err(Error::HasSupernodes);
    }
    let side = |root: VertexId| -> Vec<(EdgeId, u64)> {
        tree.neighbors(root)
            .iter()
            .filter(|&&(_, e)| e != e_star)
            .map(|&(child, e)| (e, subtree_cardinality(tree, child, root)))
            .collect()
    };
    let left = side(edge.u);
    let right = side(edge.v);
    let sum_left = left.iter().map(|&(_, s)| s).sum();
    let sum_right = right.iter().map(|&(_, s)| s).sum();
    Ok(NeighborProfile { edge: e_star, left_vertex: edge.u, right_vertex: edge.v, left, right, sum_left, sum_right })
}

fn subtree_cardinality(tree: &WeightedGraph, root: VertexId, parent: VertexId) -> u64 {
    let mut total = 0;
    let mut stack = vec![(root, parent)];
    while let Some((v, from)) = stack.pop() {
        total += tree.cardinality(v);
        stack.extend(tree.neighbors(v).iter().filter(|&&(next, _)| next != from).map(|&(next, _)| (next, v)));
    }
    total
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarkState {
    Unmarked,
    Marked,
    /// Adds `c * w(e*)` with `0 < c < 1`.
    Fractional(Weight),
}

impl MarkState {
    /// Normalises `0` and `1` to the integral states. `None` outside `[0, 1]`.
    pub fn from_fraction(c: Weight) -> Option<Self> {
        if c.is_zero() {
            Some(MarkState::Unmarked)
        } else if c.is_one() {
            Some(MarkState::Marked)
        } else if c > Weight::zero() && c < Weight::one() {
            Some(MarkState::Fractional(c))
        } else {
            None
        }
    }

    pub fn fraction(self) -> Weight {
        match self {
            MarkState::Unmarked => Weight::zero(),
            MarkState::Marked => Weight::one(),
            MarkState::Fractional(c) => c,
        }
    }
}

/// Mark state of every neighbour edge of the contracted edge.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Marking {
    states: BTreeMap<EdgeId, MarkState>,
}

impl Marking {
    /// Every neighbour edge of `profile` unmarked.
    pub fn empty(profile: &NeighborProfile) -> Self {
        Self::from_fn(profile, |_, _| MarkState::Unmarked)
    }

    pub fn from_fn(profile: &NeighborProfile, mut state: impl FnMut(Side, usize) -> MarkState) -> Self {
        let mut states = BTreeMap::new();
        for side in [Side::Left, Side::Right] {
            for (i, &(e, _)) in profile.side(side).iter().enumerate() {
                states.insert(e, state(side, i));
            }
        }
        Marking { states }
    }

    pub fn set(&mut self, e: EdgeId, state: MarkState) {
        self.states.insert(e, state);
    }

    pub fn state(&self, e: EdgeId) -> Option<MarkState> {
        self.states.get(&e).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (EdgeId, MarkState)> + '_ {
        self.states.iter().map(|(&e, &s)| (e, s))
    }

    pub fn marked_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.iter().filter(|&(_, s)| s == MarkState::Marked).map(|(e, _)| e)
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }
}

impl FromIterator<(EdgeId, MarkState)> for Marking {
    fn from_iter<I: IntoIterator<Item = (EdgeId, MarkState)>>(iter: I) -> Self {
        Marking { states: iter.into_iter().collect() }
    }
}

/// Marked and unmarked subtree cardinality sums per side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct MarkingSums {
    marked: [i128; 2],
    unmarked: [i128; 2],
    marked_squares: [i128; 2],
}

impl MarkingSums {
    pub(crate) fn new(profile: &NeighborProfile, marking: &Marking) -> Result<Self> {
        if marking.len() != profile.neighbor_count() {
            return Err(Error::MarkingMismatch);
        }
        let mut sums = MarkingSums { marked: [0; 2], unmarked: [0; 2], marked_squares: [0; 2] };
        for (side, e, size) in profile.neighbors() {
            let size = i128::from(size);
            let s = side.index();
            match marking.state(e).ok_or(Error::MarkingMismatch)? {
                MarkState::Marked => {
                    sums.marked[s] += size;
                    sums.marked_squares[s] += size * size;
                }
                MarkState::Unmarked => sums.unmarked[s] += size,
                MarkState::Fractional(_) => return Err(Error::FractionalMarking),
            }
        }
        Ok(sums)
    }

    pub(crate) fn marked(&self, side: Side) -> i128 {
        self.marked[side.index()]
    }

    pub(crate) fn unmarked(&self, side: Side) -> i128 {
        self.unmarked[side.index()]
    }

    pub(crate) fn marked_squares(&self, side: Side) -> i128 {
        self.marked_squares[side.index()]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarkOp {
    MarkLeft(usize),
    UnmarkLeft(usize),
    MarkRight(usize),
    UnmarkRight(usize),
}

/// Change in unit error caused by flipping one neighbour edge; indices
/// refer to positions in the profile's side lists.
pub fn marking_delta(profile: &NeighborProfile, marking: &Marking, op: MarkOp) -> Result<i128> {
    let sums = MarkingSums::new(profile, marking)?;
    let (side, i, marking_it) = match op {
        MarkOp::MarkLeft(i) => (Side::Left, i, true),
        MarkOp::UnmarkLeft(i) => (Side::Left, i, false),
        MarkOp::MarkRight(i) => (Side::Right, i, true),
        MarkOp::UnmarkRight(i) => (Side::Right, i, false),
    };
    let &(e, size) = profile.side(side).get(i).ok_or(Error::MarkingMismatch)?;
    let current = marking.state(e).ok_or(Error::MarkingMismatch)?;
    match (marking_it, current) {
        (true, MarkState::Marked) => return Err(Error::WrongState("marked")),
        (false, MarkState::Unmarked) => return Err(Error::WrongState("unmarked")),
        _ => {}
    }

    let other = match side {
        Side::Left => Side::Right,
        Side::Right => Side::Left,
    };
    let size = i128::from(size);
    let (sm, su) = (sums.marked(side), sums.unmarked(side));
    let (om, ou) = (sums.marked(other), sums.unmarked(other));
    Ok(if marking_it { size * (sm + (su - size) + om - ou) } else { size * (-(sm - size) - su - om + ou) })
}

/// Best marking restricted to one side: marks exactly the edges on `side`
/// whose subtree is at least as large as the surplus of `side` over the
/// other side.
pub fn optimal_partial(profile: &NeighborProfile, side: Side) -> Marking {
    let surplus = i128::from(profile.sum(side)) - i128::from(profile.sum(opposite(side)));
    Marking::from_fn(profile, |s, i| {
        if s == side && surplus <= i128::from(profile.side(s)[i].1) {
            MarkState::Marked
        } else {
            MarkState::Unmarked
        }
    })
}

fn opposite(side: Side) -> Side {
    match side {
        Side::Left => Side::Right,
        Side::Right => Side::Left,
    }
}

/// Both one-sided optima and the chosen marking for a contracted tree edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeMergePlan {
    pub profile: NeighborProfile,
    pub left_partial: Marking,
    pub left_units: i128,
    pub right_partial: Marking,
    pub right_units: i128,
    pub chosen: Side,
    pub redistribution: Redistribution,
    /// `(units + n - 2) * w(e*)`.
    pub predicted_error: Weight,
}

impl TreeMergePlan {
    pub fn marking(&self) -> &Marking {
        match self.chosen {
            Side::Left => &self.left_partial,
            Side::Right => &self.right_partial,
        }
    }

    pub fn unit_count(&self) -> i128 {
        self.left_units.min(self.right_units)
    }
}

/// Plans the contraction of `e_star`, preferring the left partial on ties.
pub fn plan_tree(tree: &WeightedGraph, e_star: EdgeId) -> Result<TreeMergePlan> {
    let profile = profile(tree, e_star)?;
    let left_partial = optimal_partial(&profile, Side::Left);
    let right_partial = optimal_partial(&profile, Side::Right);
    let left_units = unit_error(&profile, &left_partial)?;
    let right_units = unit_error(&profile, &right_partial)?;
    let chosen = if left_units <= right_units { Side::Left } else { Side::Right };
    let marking = if chosen == Side::Left { &left_partial } else { &right_partial };
    let redistribution = marking_redistribution(tree, e_star, marking)?;

    let w_star = tree.weight(e_star)?;
    let others = i128::from(tree.total_cardinality()) - 2;
    let predicted_error = w_star * Weight::from_integer(left_units.min(right_units) + others);
    Ok(TreeMergePlan {
        profile,
        left_partial,
        left_units,
        right_partial,
        right_units,
        chosen,
        redistribution,
        predicted_error,
    })
}

/// Optimal marking of the neighbour edges of `e_star` and its unit error.
pub fn optimal_marking(tree: &WeightedGraph, e_star: EdgeId) -> Result<(Marking, i128)> {
    let plan = plan_tree(tree, e_star)?;
    let units = plan.unit_count();
    Ok((plan.marking().clone(), units))
}

/// Weight changes realising `marking`: each neighbour edge gains its
/// fraction of `w(e_star)`.
pub fn marking_redistribution(tree: &WeightedGraph, e_star: EdgeId, marking: &Marking) -> Result<Redistribution> {
    let profile = profile(tree, e_star)?;
    if marking.len() != profile.neighbor_count() || marking.iter().any(|(e, _)| profile.side_of(e).is_none()) {
        return Err(Error::MarkingMismatch);
    }
    let w_star = tree.weight(e_star)?;
    Ok(marking.iter().map(|(e, state)| (e, state.fraction() * w_star)).collect())
}
