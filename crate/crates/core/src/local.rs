//! The local-cost swap game: a vertex's profit is the sum of its neighbors'
//! degrees, and half the sum of squared degrees is an exact potential.

use serde::Serialize;

use crate::error::Result;
use crate::graph::{Graph, SwapMove, Vertex};
use crate::policy::{Pick, Policy};
use crate::sse::Witness;

pub fn profit(g: &Graph, u: Vertex) -> u64 {
    g.neighbors(u).iter().map(|&v| g.degree(v) as u64).sum()
}

pub fn profits(g: &Graph) -> Vec<u64> {
    g.vertices().map(|u| profit(g, u)).collect()
}

/// Half the sum of squared degrees. Always an integer since the degree sum
/// is even.
pub fn potential(g: &Graph) -> u64 {
    let twice: u64 = g.degrees().iter().map(|&d| (d * d) as u64).sum();
    twice / 2
}

/// Profit change of the deviator: `deg(added) + 1 - deg(removed)`.
pub fn profit_delta(g: &Graph, m: &SwapMove) -> Result<i64> {
    g.validate_swap(m)?;
    Ok(closed_form_delta(g, m))
}

fn closed_form_delta(g: &Graph, m: &SwapMove) -> i64 {
    g.degree(m.added) as i64 + 1 - g.degree(m.removed) as i64
}

/// Profitable moves of `u` in enumeration order (removed ascending, then
/// added ascending), each with its gain.
pub fn profitable_swaps(g: &Graph, u: Vertex) -> Vec<(SwapMove, i64)> {
    let non: Vec<Vertex> = g.non_neighbors(u).collect();
    let mut out = Vec::new();
    for &r in g.neighbors(u) {
        let dr = g.degree(r);
        for &a in &non {
            if g.degree(a) >= dr {
                let m = SwapMove::new(u, r, a);
                out.push((m, closed_form_delta(g, &m)));
            }
        }
    }
    out
}

/// Quick test: some non-neighbor is at least as heavy as the lightest
/// neighbor.
pub fn has_profitable_swap(g: &Graph, u: Vertex) -> bool {
    let Some(lightest) = g.neighbors(u).iter().map(|&v| g.degree(v)).min() else {
        return false;
    };
    g.non_neighbors(u).any(|w| g.degree(w) >= lightest)
}

pub(crate) fn pick_profitable(g: &Graph, u: Vertex, pick: Pick<'_>) -> Option<(SwapMove, i64)> {
    if !has_profitable_swap(g, u) {
        return None;
    }
    if pick.stops_early() {
        return profitable_swaps(g, u).into_iter().next();
    }
    let cands: Vec<(SwapMove, std::cmp::Reverse<i64>)> = profitable_swaps(g, u)
        .into_iter()
        .map(|(m, d)| (m, std::cmp::Reverse(d)))
        .collect();
    pick.choose(&cands).map(|(m, d)| (m, d.0))
}

pub fn find_profitable_swap(g: &Graph, u: Vertex, policy: Policy) -> Option<SwapMove> {
    policy
        .with_owned_rng(|pick| pick_profitable(g, u, pick))
        .map(|(m, _)| m)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalReport {
    pub is_equilibrium: bool,
    pub has_spanning_star: bool,
    pub potential: u64,
    pub profits: Vec<u64>,
    pub witness: Option<Witness<i64>>,
}

pub fn check_local_equilibrium(g: &Graph) -> LocalReport {
    let witness = g
        .vertices()
        .find_map(|u| pick_profitable(g, u, Pick::First))
        .map(|(m, d)| Witness::new(m, d));
    LocalReport {
        is_equilibrium: witness.is_none(),
        has_spanning_star: has_spanning_star(g),
        potential: potential(g),
        profits: profits(g),
        witness,
    }
}

pub fn is_local_equilibrium(g: &Graph) -> bool {
    g.vertices().all(|u| !has_profitable_swap(g, u))
}

/// Some vertex is adjacent to all others.
pub fn has_spanning_star(g: &Graph) -> bool {
    g.n() > 0 && g.max_degree() == g.n() - 1
}

/// Some vertex is adjacent to every other vertex of positive degree.
///
/// Isolated vertices have no strategy and no vertex gains by linking to one,
/// so they can persist in an equilibrium that otherwise is a spanning star.
pub fn has_star_on_active_vertices(g: &Graph) -> bool {
    let active = g.vertices().filter(|&v| g.degree(v) > 0).count();
    active == 0 || g.vertices().any(|v| g.degree(v) + 1 == active)
}
