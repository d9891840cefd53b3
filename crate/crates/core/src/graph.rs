//! Simple undirected graphs on the dense vertex set `0..n`, together with the
//! hop-distance primitives shared by both games.
//!
//! Vertex identities never change: a swap only rewires edges, so a recorded
//! sequence of moves replays exactly onto the graph it started from.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Distance marker for vertex pairs in different components.
pub const UNREACHABLE: u32 = u32::MAX;

/// A non-negative integer extended with `Infinite`, ordered above every
/// finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Extended {
    Finite(u64),
    Infinite,
}

impl Extended {
    pub fn is_finite(self) -> bool {
        matches!(self, Extended::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Extended::Finite(x) => Some(x),
            Extended::Infinite => None,
        }
    }

    /// `self - before`. Infinite minus infinite is taken as zero.
    pub fn minus(self, before: Extended) -> CostDelta {
        match (self, before) {
            (Extended::Finite(a), Extended::Finite(b)) => CostDelta::Finite(a as i64 - b as i64),
            (Extended::Infinite, Extended::Finite(_)) => CostDelta::PosInfinite,
            (Extended::Finite(_), Extended::Infinite) => CostDelta::NegInfinite,
            (Extended::Infinite, Extended::Infinite) => CostDelta::Finite(0),
        }
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(x) => write!(f, "{x}"),
            Extended::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Extended {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Extended::Finite(x) => s.serialize_u64(*x),
            Extended::Infinite => s.serialize_str("inf"),
        }
    }
}

/// Change of an extended cost. Variant order gives
/// `NegInfinite < Finite(_) < PosInfinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CostDelta {
    NegInfinite,
    Finite(i64),
    PosInfinite,
}

impl CostDelta {
    /// Strict decrease.
    pub fn is_improving(self) -> bool {
        self < CostDelta::Finite(0)
    }
}

impl fmt::Display for CostDelta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CostDelta::NegInfinite => f.write_str("-inf"),
            CostDelta::Finite(x) => write!(f, "{x}"),
            CostDelta::PosInfinite => f.write_str("inf"),
        }
    }
}

impl Serialize for CostDelta {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CostDelta::Finite(x) => s.serialize_i64(*x),
            CostDelta::NegInfinite => s.serialize_str("-inf"),
            CostDelta::PosInfinite => s.serialize_str("inf"),
        }
    }
}

/// A single player's edge swap: drop `{player, removed}`, create `{player, added}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SwapMove {
    pub player: Vertex,
    pub removed: Vertex,
    pub added: Vertex,
}

impl SwapMove {
    pub fn new(player: Vertex, removed: Vertex, added: Vertex) -> Self {
        SwapMove {
            player,
            removed,
            added,
        }
    }
}

impl fmt::Display for SwapMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} -> {}", self.player, self.removed, self.added)
    }
}

/// Simple undirected graph.
///
/// Neighbor lists are kept sorted so that every enumeration over them is
/// deterministic; an `n x n` bit matrix answers adjacency queries in O(1).
/// Equality is equality of labeled edge sets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
    neighbors: Vec<Vec<Vertex>>,
    edge_count: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        Graph {
            n,
            words,
            bits: vec![0; n * words],
            neighbors: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    #[inline]
    fn bit(&self, u: Vertex, v: Vertex) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    fn flip(&mut self, u: Vertex, v: Vertex) {
        self.bits[u * self.words + v / 64] ^= 1 << (v % 64);
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && self.bit(u, v)
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::InvalidEdge(u, v, "self-loop"));
        }
        if self.bit(u, v) {
            return Err(Error::InvalidEdge(u, v, "duplicate edge"));
        }
        self.flip(u, v);
        self.flip(v, u);
        insert_sorted(&mut self.neighbors[u], v);
        insert_sorted(&mut self.neighbors[v], u);
        self.edge_count += 1;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        if !self.has_edge(u, v) {
            return Err(Error::InvalidEdge(u, v, "no such edge"));
        }
        self.flip(u, v);
        self.flip(v, u);
        remove_sorted(&mut self.neighbors[u], v);
        remove_sorted(&mut self.neighbors[v], u);
        self.edge_count -= 1;
        Ok(())
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.neighbors[v]
    }

    /// Vertices other than `v` that are not adjacent to it, ascending.
    pub fn non_neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.n).filter(move |&w| w != v && !self.bit(v, w))
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.neighbors.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.neighbors.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.neighbors.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Neighbors of `v` that themselves have degree at least 2.
    pub fn robust_neighbors(&self, v: Vertex) -> Vec<Vertex> {
        self.neighbors[v]
            .iter()
            .copied()
            .filter(|&u| self.degree(u) >= 2)
            .collect()
    }

    pub fn robust_degree(&self, v: Vertex) -> usize {
        self.neighbors[v]
            .iter()
            .filter(|&&u| self.degree(u) >= 2)
            .count()
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.n {
            for &v in &self.neighbors[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Checks the legality of `m` against this graph.
    pub fn validate_swap(&self, m: &SwapMove) -> Result<()> {
        let SwapMove {
            player,
            removed,
            added,
        } = *m;
        if player >= self.n || removed >= self.n || added >= self.n {
            return Err(Error::InvalidSwap(*m, "vertex out of range"));
        }
        if !self.bit(player, removed) {
            return Err(Error::InvalidSwap(*m, "removed vertex is not a neighbor"));
        }
        if added == player {
            return Err(Error::InvalidSwap(*m, "added vertex is the player"));
        }
        if self.bit(player, added) {
            return Err(Error::InvalidSwap(*m, "added vertex is already a neighbor"));
        }
        Ok(())
    }

    /// Applies `m` in place.
    pub fn swap_in_place(&mut self, m: &SwapMove) -> Result<()> {
        self.validate_swap(m)?;
        self.remove_edge(m.player, m.removed)?;
        self.add_edge(m.player, m.added)
    }

    /// Reverts a swap previously applied with [`Graph::swap_in_place`].
    pub(crate) fn undo_swap(&mut self, m: &SwapMove) {
        self.remove_edge(m.player, m.added)
            .and_then(|_| self.add_edge(m.player, m.removed))
            .expect("undo of an applied swap");
    }

    /// BFS hop distances from `src`; [`UNREACHABLE`] for other components.
    pub fn bfs(&self, src: Vertex) -> Vec<u32> {
        let mut dist = Vec::new();
        let mut queue = VecDeque::new();
        self.bfs_into(src, &mut dist, &mut queue);
        dist
    }

    /// BFS reusing caller-owned buffers.
    pub fn bfs_into(&self, src: Vertex, dist: &mut Vec<u32>, queue: &mut VecDeque<Vertex>) {
        dist.clear();
        dist.resize(self.n, UNREACHABLE);
        queue.clear();
        dist[src] = 0;
        queue.push_back(src);
        while let Some(x) = queue.pop_front() {
            let d = dist[x] + 1;
            for &y in &self.neighbors[x] {
                if dist[y] == UNREACHABLE {
                    dist[y] = d;
                    queue.push_back(y);
                }
            }
        }
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.bfs(0).iter().all(|&d| d != UNREACHABLE)
    }

    /// Component index per vertex, numbered in order of smallest member.
    pub fn components(&self) -> Vec<usize> {
        components_avoiding(self, None)
    }
}

/// Component labels of `g` with `skip` deleted; the deleted vertex gets
/// `usize::MAX`.
pub(crate) fn components_avoiding(g: &Graph, skip: Option<Vertex>) -> Vec<usize> {
    let mut comp = vec![usize::MAX; g.n()];
    let mut next = 0;
    let mut stack = Vec::new();
    for s in g.vertices() {
        if comp[s] != usize::MAX || Some(s) == skip {
            continue;
        }
        comp[s] = next;
        stack.push(s);
        while let Some(x) = stack.pop() {
            for &y in g.neighbors(x) {
                if comp[y] == usize::MAX && Some(y) != skip {
                    comp[y] = next;
                    stack.push(y);
                }
            }
        }
        next += 1;
    }
    comp
}

fn insert_sorted(list: &mut Vec<Vertex>, v: Vertex) {
    let pos = list.binary_search(&v).unwrap_or_else(|p| p);
    list.insert(pos, v);
}

fn remove_sorted(list: &mut Vec<Vertex>, v: Vertex) {
    if let Ok(pos) = list.binary_search(&v) {
        list.remove(pos);
    }
}

/// All-pairs hop distances, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<u32>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Raw entry; [`UNREACHABLE`] across components.
    pub fn raw(&self, u: Vertex, v: Vertex) -> u32 {
        self.data[u * self.n + v]
    }

    pub fn get(&self, u: Vertex, v: Vertex) -> Option<u32> {
        match self.raw(u, v) {
            UNREACHABLE => None,
            d => Some(d),
        }
    }

    pub fn row(&self, u: Vertex) -> &[u32] {
        &self.data[u * self.n..(u + 1) * self.n]
    }

    pub fn diameter(&self) -> Extended {
        let mut best = 0u64;
        for &d in &self.data {
            if d == UNREACHABLE {
                return Extended::Infinite;
            }
            best = best.max(d as u64);
        }
        Extended::Finite(best)
    }
}

pub fn all_pairs_distances(g: &Graph) -> DistanceMatrix {
    let n = g.n();
    let mut data = Vec::with_capacity(n * n);
    let mut row = Vec::new();
    let mut queue = VecDeque::new();
    for s in g.vertices() {
        g.bfs_into(s, &mut row, &mut queue);
        data.extend_from_slice(&row);
    }
    DistanceMatrix { n, data }
}

/// Sum of a BFS row; infinite when any vertex is unreachable.
pub(crate) fn row_sum(row: &[u32]) -> Extended {
    let mut total = 0u64;
    for &d in row {
        if d == UNREACHABLE {
            return Extended::Infinite;
        }
        total += d as u64;
    }
    Extended::Finite(total)
}

/// Connection cost of `v`: the sum of its distances to all vertices.
pub fn sum_of_distances(g: &Graph, v: Vertex) -> Extended {
    row_sum(&g.bfs(v))
}

/// Vertices within distance `k` of `u`, ascending.
pub fn k_vicinity(g: &Graph, u: Vertex, k: u32) -> Vec<Vertex> {
    g.bfs(u)
        .iter()
        .enumerate()
        .filter(|&(_, &d)| d <= k)
        .map(|(w, _)| w)
        .collect()
}

/// Largest `k`-vicinity over all vertices.
pub fn max_vicinity_size(g: &Graph, k: u32) -> usize {
    let mut row = Vec::new();
    let mut queue = VecDeque::new();
    let mut best = 0;
    for u in g.vertices() {
        g.bfs_into(u, &mut row, &mut queue);
        best = best.max(row.iter().filter(|&&d| d <= k).count());
    }
    best
}

pub fn diameter(g: &Graph) -> Extended {
    let mut row = Vec::new();
    let mut queue = VecDeque::new();
    let mut best = 0u64;
    for u in g.vertices() {
        g.bfs_into(u, &mut row, &mut queue);
        for &d in &row {
            if d == UNREACHABLE {
                return Extended::Infinite;
            }
            best = best.max(d as u64);
        }
    }
    Extended::Finite(best)
}

/// `g` with `m` applied; `g` itself is untouched.
pub fn apply_swap(g: &Graph, m: &SwapMove) -> Result<Graph> {
    let mut out = g.clone();
    out.swap_in_place(m)?;
    Ok(out)
}
