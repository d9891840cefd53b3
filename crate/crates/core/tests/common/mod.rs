//! Brute-force reference implementations. They read a graph only through
//! its vertex count and edge list and recompute everything from scratch.

#![allow(dead_code)]

use std::collections::VecDeque;

use swapnet::{CostDelta, Graph};

pub type Adj = Vec<Vec<usize>>;

pub fn adjacency(n: usize, edges: &[(usize, usize)]) -> Adj {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    adj
}

pub fn of(g: &Graph) -> Adj {
    adjacency(g.n(), &g.edges())
}

pub fn to_graph(adj: &Adj) -> Graph {
    let edges = adj
        .iter()
        .enumerate()
        .flat_map(|(u, nb)| nb.iter().filter(move |&&v| u < v).map(move |&v| (u, v)));
    Graph::from_edges(adj.len(), edges).unwrap()
}

pub fn adjacent(adj: &Adj, u: usize, v: usize) -> bool {
    adj[u].contains(&v)
}

/// Distances from `src` in the graph with `skip` deleted.
pub fn bfs(adj: &Adj, src: usize, skip: Option<usize>) -> Vec<Option<u64>> {
    let mut dist = vec![None; adj.len()];
    dist[src] = Some(0);
    let mut q = VecDeque::from([src]);
    while let Some(x) = q.pop_front() {
        let d = dist[x].unwrap();
        for &y in &adj[x] {
            if Some(y) != skip && dist[y].is_none() {
                dist[y] = Some(d + 1);
                q.push_back(y);
            }
        }
    }
    dist
}

/// Sum of distances from `v`; `None` when something is unreachable.
pub fn cost(adj: &Adj, v: usize) -> Option<u64> {
    bfs(adj, v, None).into_iter().sum()
}

pub fn diameter(adj: &Adj) -> Option<u64> {
    let mut best = 0;
    for v in 0..adj.len() {
        for d in bfs(adj, v, None) {
            best = best.max(d?);
        }
    }
    Some(best)
}

pub fn swapped(adj: &Adj, player: usize, removed: usize, added: usize) -> Adj {
    let mut h = adj.clone();
    h[player].retain(|&x| x != removed);
    h[removed].retain(|&x| x != player);
    h[player].push(added);
    h[added].push(player);
    h
}

/// `(removed, added)` pairs available to `v`.
pub fn moves(adj: &Adj, v: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for &r in &adj[v] {
        for a in 0..adj.len() {
            if a != v && !adjacent(adj, v, a) {
                out.push((r, a));
            }
        }
    }
    out
}

pub fn cost_delta(before: Option<u64>, after: Option<u64>) -> CostDelta {
    match (before, after) {
        (Some(b), Some(a)) => CostDelta::Finite(a as i64 - b as i64),
        (None, Some(_)) => CostDelta::NegInfinite,
        (Some(_), None) => CostDelta::PosInfinite,
        (None, None) => CostDelta::Finite(0),
    }
}

pub fn is_sse(adj: &Adj) -> bool {
    (0..adj.len()).all(|v| {
        let before = cost(adj, v);
        moves(adj, v).into_iter().all(|(r, a)| {
            let after = cost(&swapped(adj, v, r, a), v);
            match (before, after) {
                (None, Some(_)) => false,
                (Some(b), Some(a)) => a >= b,
                _ => true,
            }
        })
    })
}

pub fn degree(adj: &Adj, v: usize) -> u64 {
    adj[v].len() as u64
}

/// Twice the potential: the sum of squared degrees.
pub fn double_potential(adj: &Adj) -> u64 {
    (0..adj.len()).map(|v| degree(adj, v).pow(2)).sum()
}

pub fn profit(adj: &Adj, v: usize) -> u64 {
    adj[v].iter().map(|&x| degree(adj, x)).sum()
}

pub fn is_local_equilibrium(adj: &Adj) -> bool {
    (0..adj.len()).all(|v| {
        let before = profit(adj, v);
        moves(adj, v)
            .into_iter()
            .all(|(r, a)| profit(&swapped(adj, v, r, a), v) <= before)
    })
}

pub fn has_spanning_star(adj: &Adj) -> bool {
    let n = adj.len();
    (0..n).any(|v| adj[v].len() + 1 == n)
}

/// Some vertex is adjacent to every other vertex of positive degree.
pub fn has_star_on_non_isolated(adj: &Adj) -> bool {
    let active: Vec<usize> = (0..adj.len()).filter(|&v| !adj[v].is_empty()).collect();
    active.is_empty()
        || active
            .iter()
            .any(|&c| active.iter().all(|&x| x == c || adjacent(adj, c, x)))
}

/// Every labeled graph on `n` vertices as an edge list.
pub fn all_edge_sets(n: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &p)| p)
                .collect()
        })
        .collect()
}

/// The move a limited-query step should make for `u` given `queried`.
pub fn query_move(adj: &Adj, u: usize, queried: &[usize]) -> Option<(usize, usize)> {
    let removed = *adj[u].iter().min_by_key(|&&x| (degree(adj, x), x))?;
    let floor = degree(adj, removed);
    let added = queried
        .iter()
        .copied()
        .filter(|&a| degree(adj, a) >= floor)
        .min_by_key(|&a| (std::cmp::Reverse(degree(adj, a)), a))?;
    Some((removed, added))
}

/// Sum over `z != u, v` of `|d(u,z) - d(v,z)|`, for a connected graph.
pub fn difference_sum(adj: &Adj, u: usize, v: usize) -> u64 {
    let du = bfs(adj, u, None);
    let dv = bfs(adj, v, None);
    (0..adj.len())
        .filter(|&z| z != u && z != v)
        .map(|z| du[z].unwrap().abs_diff(dv[z].unwrap()))
        .sum()
}

pub fn robust_degree(adj: &Adj, v: usize) -> u64 {
    adj[v].iter().filter(|&&x| adj[x].len() >= 2).count() as u64
}

pub fn max_vicinity(adj: &Adj, k: u64) -> u64 {
    (0..adj.len())
        .map(|v| {
            bfs(adj, v, None)
                .into_iter()
                .filter(|d| d.is_some_and(|d| d <= k))
                .count() as u64
        })
        .max()
        .unwrap_or(0)
}
