//! The sum version of the swap game.
//!
//! A player's cost is its sum of distances to every other vertex (infinite
//! when some vertex is unreachable). A swap is a deviation only when it
//! strictly lowers that cost; a graph where no vertex has such a swap is a
//! sum-swap equilibrium (SSE).

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::Result;
use crate::graph::{row_sum, CostDelta, Extended, Graph, SwapMove, Vertex};
use crate::policy::{Pick, Policy};

/// A deviation together with the deviator's payoff change.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Witness<D> {
    pub player: Vertex,
    pub removed: Vertex,
    pub added: Vertex,
    pub delta: D,
}

impl<D> Witness<D> {
    pub fn new(m: SwapMove, delta: D) -> Self {
        Witness {
            player: m.player,
            removed: m.removed,
            added: m.added,
            delta,
        }
    }

    pub fn swap(&self) -> SwapMove {
        SwapMove::new(self.player, self.removed, self.added)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SseReport {
    pub is_equilibrium: bool,
    /// First deviation in vertex order, then enumeration order.
    pub witness: Option<Witness<CostDelta>>,
    /// Every deviation; filled only by [`check_sse_exhaustive`].
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Witness<CostDelta>>,
    pub costs: Vec<Extended>,
}

/// All legal swaps of `v`: removed neighbors ascending, then added
/// non-neighbors ascending.
pub fn enumerate_swaps(g: &Graph, v: Vertex) -> Vec<SwapMove> {
    let non: Vec<Vertex> = g.non_neighbors(v).collect();
    g.neighbors(v)
        .iter()
        .flat_map(|&r| non.iter().map(move |&a| SwapMove::new(v, r, a)))
        .collect()
}

/// Cost change of the deviator when `m` is applied.
pub fn swap_cost_delta(g: &Graph, m: &SwapMove) -> Result<CostDelta> {
    g.validate_swap(m)?;
    let before = row_sum(&g.bfs(m.player));
    let mut h = g.clone();
    h.swap_in_place(m)?;
    Ok(row_sum(&h.bfs(m.player)).minus(before))
}

/// Evaluates moves of one vertex on a scratch copy of the graph.
struct Evaluator {
    scratch: Graph,
    dist: Vec<u32>,
    queue: VecDeque<Vertex>,
}

impl Evaluator {
    fn new(g: &Graph) -> Self {
        Evaluator {
            scratch: g.clone(),
            dist: Vec::with_capacity(g.n()),
            queue: VecDeque::with_capacity(g.n()),
        }
    }

    fn cost(&mut self, v: Vertex) -> Extended {
        self.scratch.bfs_into(v, &mut self.dist, &mut self.queue);
        row_sum(&self.dist)
    }

    fn post_cost(&mut self, m: &SwapMove) -> Extended {
        self.scratch
            .swap_in_place(m)
            .expect("enumerated move is legal");
        let c = self.cost(m.player);
        self.scratch.undo_swap(m);
        c
    }

    /// Improving moves of `v` given its current cost; stops at the first one
    /// when `first_only`.
    fn improving(
        &mut self,
        v: Vertex,
        before: Extended,
        first_only: bool,
    ) -> Vec<(SwapMove, CostDelta)> {
        let mut out = Vec::new();
        let moves = enumerate_swaps(&self.scratch, v);
        for m in moves {
            let d = self.post_cost(&m).minus(before);
            if d.is_improving() {
                out.push((m, d));
                if first_only {
                    break;
                }
            }
        }
        out
    }
}

fn search(g: &Graph, v: Vertex, pick: Pick<'_>) -> Option<(SwapMove, CostDelta)> {
    let mut ev = Evaluator::new(g);
    let before = ev.cost(v);
    let cands = ev.improving(v, before, pick.stops_early());
    pick.choose(&cands)
}

/// A strictly improving swap for `v`, chosen by `policy`, if one exists.
pub fn find_improving_swap(g: &Graph, v: Vertex, policy: Policy) -> Option<SwapMove> {
    find_improving_swap_with_delta(g, v, policy).map(|(m, _)| m)
}

pub fn find_improving_swap_with_delta(
    g: &Graph,
    v: Vertex,
    policy: Policy,
) -> Option<(SwapMove, CostDelta)> {
    policy.with_owned_rng(|pick| search(g, v, pick))
}

fn check(g: &Graph, exhaustive: bool) -> SseReport {
    let mut ev = Evaluator::new(g);
    let costs: Vec<Extended> = g.vertices().map(|v| ev.cost(v)).collect();
    let mut witnesses = Vec::new();
    for v in g.vertices() {
        let found = ev.improving(v, costs[v], !exhaustive);
        witnesses.extend(found.into_iter().map(|(m, d)| Witness::new(m, d)));
        if !exhaustive && !witnesses.is_empty() {
            break;
        }
    }
    let witness = witnesses.first().copied();
    SseReport {
        is_equilibrium: witness.is_none(),
        witness,
        witnesses: if exhaustive { witnesses } else { Vec::new() },
        costs,
    }
}

/// Stops at the first deviation found.
pub fn check_sse(g: &Graph) -> SseReport {
    check(g, false)
}

/// Lists every deviation of every vertex.
pub fn check_sse_exhaustive(g: &Graph) -> SseReport {
    check(g, true)
}
