//! Verifiers for structural properties that every sum-swap equilibrium must
//! have: the distance-difference bound and its mean form, first-edge
//! redundancy between vertices of degree at least 2, the degree-2 diameter
//! cap, and the two diameter upper bounds (vicinity-based and density-based).
//!
//! Each check is a predicate over a concrete graph. On an SSE graph every
//! predicate must hold; on other graphs they may fail, and those failures are
//! exactly what makes the checks useful as negative filters. All comparisons
//! are exact rational arithmetic.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{self, Rational};
use crate::graph::{
    all_pairs_distances, components_avoiding, diameter, max_vicinity_size, DistanceMatrix,
    Extended, Graph, Vertex,
};
use crate::sse::check_sse;

/// `counts[c]` = number of vertices `z` other than `u`, `v` whose distances
/// to `u` and to `v` differ by exactly `c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DifferenceHistogram {
    pub u: Vertex,
    pub v: Vertex,
    pub counts: BTreeMap<u32, usize>,
}

impl DifferenceHistogram {
    fn from_rows(u: Vertex, v: Vertex, du: &[u32], dv: &[u32]) -> Self {
        let mut counts = BTreeMap::new();
        for z in 0..du.len() {
            if z != u && z != v {
                *counts.entry(du[z].abs_diff(dv[z])).or_insert(0) += 1;
            }
        }
        DifferenceHistogram { u, v, counts }
    }

    /// `sum_c c * counts[c]`.
    pub fn weighted_sum(&self) -> u64 {
        self.counts.iter().map(|(&c, &k)| c as u64 * k as u64).sum()
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }
}

fn require_connected(g: &Graph) -> Result<()> {
    if g.n() == 0 {
        return Err(Error::BadSpec("empty graph".into()));
    }
    if g.is_connected() {
        Ok(())
    } else {
        Err(Error::Disconnected)
    }
}

pub fn difference_histogram(g: &Graph, u: Vertex, v: Vertex) -> Result<DifferenceHistogram> {
    for x in [u, v] {
        if x >= g.n() {
            return Err(Error::VertexOutOfRange {
                vertex: x,
                n: g.n(),
            });
        }
    }
    if u == v {
        return Err(Error::BadSpec(
            "histogram needs two distinct vertices".into(),
        ));
    }
    require_connected(g)?;
    Ok(DifferenceHistogram::from_rows(u, v, &g.bfs(u), &g.bfs(v)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairVerdict {
    pub u: Vertex,
    pub v: Vertex,
    pub lhs: u64,
    pub delta_prime: usize,
    #[serde(serialize_with = "exact::ser")]
    pub rhs: Rational,
    pub satisfied: bool,
    #[serde(serialize_with = "exact::ser")]
    pub mean_abs_difference: Rational,
}

impl PairVerdict {
    pub fn slack(&self) -> Rational {
        self.rhs - exact::int(self.lhs as i64)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SkipReason {
    Adjacent,
    LowRobustDegree,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SkippedPair {
    pub u: Vertex,
    pub v: Vertex,
    pub reason: SkipReason,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterizationReport {
    pub pairs: Vec<PairVerdict>,
    pub skipped: Vec<SkippedPair>,
}

impl CharacterizationReport {
    /// Vacuously true when no pair qualifies.
    pub fn satisfied(&self) -> bool {
        self.pairs.iter().all(|p| p.satisfied)
    }

    pub fn worst_slack(&self) -> Option<Rational> {
        self.pairs.iter().map(PairVerdict::slack).min()
    }
}

fn mean_over_others(sum: u64, n: usize) -> Rational {
    Rational::new(sum as i64, n as i64 - 2)
}

/// Distance-difference bound for unordered pairs `u < v` that are
/// non-adjacent and whose smaller robust degree `d'` is at least 2:
/// `sum_c c * |A(c)| <= (d' + 1) / (d' - 1) * n`. Other pairs are listed
/// as skipped.
pub fn check_difference_bound(g: &Graph) -> Result<CharacterizationReport> {
    require_connected(g)?;
    Ok(difference_bound_with(g, &all_pairs_distances(g)))
}

fn difference_bound_with(g: &Graph, dist: &DistanceMatrix) -> CharacterizationReport {
    let n = g.n();
    let robust: Vec<usize> = g.vertices().map(|v| g.robust_degree(v)).collect();
    let mut pairs = Vec::new();
    let mut skipped = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if g.has_edge(u, v) {
                skipped.push(SkippedPair {
                    u,
                    v,
                    reason: SkipReason::Adjacent,
                });
                continue;
            }
            let dp = robust[u].min(robust[v]);
            if dp < 2 {
                skipped.push(SkippedPair {
                    u,
                    v,
                    reason: SkipReason::LowRobustDegree,
                });
                continue;
            }
            let lhs = DifferenceHistogram::from_rows(u, v, dist.row(u), dist.row(v)).weighted_sum();
            let rhs = Rational::new((dp as i64 + 1) * n as i64, dp as i64 - 1);
            pairs.push(PairVerdict {
                u,
                v,
                lhs,
                delta_prime: dp,
                rhs,
                satisfied: exact::int(lhs as i64) <= rhs,
                mean_abs_difference: mean_over_others(lhs, n),
            });
        }
    }
    CharacterizationReport { pairs, skipped }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MeanDifferenceVerdict {
    pub u: Vertex,
    pub v: Vertex,
    #[serde(serialize_with = "exact::ser")]
    pub mean: Rational,
    pub satisfied: bool,
}

/// For unordered pairs with both degrees at least 2: the mean of
/// `|dist(u,z) - dist(v,z)|` over the other `n - 2` vertices is at most 3.
pub fn check_mean_difference(g: &Graph) -> Result<Vec<MeanDifferenceVerdict>> {
    require_connected(g)?;
    Ok(mean_difference_with(g, &all_pairs_distances(g)))
}

fn mean_difference_with(g: &Graph, dist: &DistanceMatrix) -> Vec<MeanDifferenceVerdict> {
    let n = g.n();
    let mut out = Vec::new();
    for u in 0..n {
        if g.degree(u) < 2 {
            continue;
        }
        for v in u + 1..n {
            if g.degree(v) < 2 {
                continue;
            }
            let sum = DifferenceHistogram::from_rows(u, v, dist.row(u), dist.row(v)).weighted_sum();
            let mean = mean_over_others(sum, n);
            out.push(MeanDifferenceVerdict {
                u,
                v,
                mean,
                satisfied: mean <= exact::int(3),
            });
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RedundancyVerdict {
    pub u: Vertex,
    pub v: Vertex,
    /// Neighbors `x` of `u` with `x = v` or `v` reachable from `x` once `u`
    /// is deleted.
    pub first_edges: usize,
    pub satisfied: bool,
}

/// For ordered pairs `(u, v)` with both degrees at least 2: `u` has at least
/// two distinct first edges on simple paths to `v`.
pub fn check_first_edge_redundancy(g: &Graph) -> Result<Vec<RedundancyVerdict>> {
    require_connected(g)?;
    let mut out = Vec::new();
    for u in g.vertices() {
        if g.degree(u) < 2 {
            continue;
        }
        let comp = components_avoiding(g, Some(u));
        for v in g.vertices() {
            if v == u || g.degree(v) < 2 {
                continue;
            }
            let first_edges = g
                .neighbors(u)
                .iter()
                .filter(|&&x| x == v || comp[x] == comp[v])
                .count();
            out.push(RedundancyVerdict {
                u,
                v,
                first_edges,
                satisfied: first_edges >= 2,
            });
        }
    }
    Ok(out)
}

/// True unless some vertex has degree exactly 2 and the diameter exceeds 9.
pub fn check_degree2_diameter(g: &Graph) -> Result<bool> {
    require_connected(g)?;
    Ok(!g.degrees().contains(&2) || diameter(g) <= Extended::Finite(9))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiameterBound {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_k: Option<usize>,
    #[serde(serialize_with = "exact::ser")]
    pub bound: Rational,
    pub diam: u64,
    pub satisfied: bool,
}

fn finite_diameter(g: &Graph) -> u64 {
    diameter(g)
        .finite()
        .expect("connected graph has finite diameter")
}

/// `6n / D_k + 2 + 4k`, where `D_k` is the largest `k`-vicinity.
pub fn vicinity_diameter_bound(g: &Graph, k: u32) -> Result<DiameterBound> {
    if k == 0 {
        return Err(Error::BadSpec("vicinity radius must be at least 1".into()));
    }
    require_connected(g)?;
    let n = g.n() as i64;
    let delta_k = max_vicinity_size(g, k);
    let bound = Rational::new(6 * n, delta_k as i64) + exact::int(2 + 4 * k as i64);
    let diam = finite_diameter(g);
    Ok(DiameterBound {
        k: Some(k),
        delta_k: Some(delta_k),
        bound,
        diam,
        satisfied: exact::int(diam as i64) <= bound,
    })
}

/// `6n^2 / (e + n/2) + 4`, for graphs of minimum degree at least 2.
pub fn density_diameter_bound(g: &Graph) -> Result<DiameterBound> {
    require_connected(g)?;
    let min = g.min_degree();
    if min < 2 {
        return Err(Error::MinDegreeTooLow(min));
    }
    let n = g.n() as i64;
    let e = g.edge_count() as i64;
    let bound = Rational::new(12 * n * n, 2 * e + n) + exact::int(4);
    let diam = finite_diameter(g);
    Ok(DiameterBound {
        k: None,
        delta_k: None,
        bound,
        diam,
        satisfied: exact::int(diam as i64) <= bound,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DifferenceSummary {
    pub pairs_checked: usize,
    pub pairs_skipped: usize,
    #[serde(serialize_with = "exact::ser_opt")]
    pub worst_slack: Option<Rational>,
    pub satisfied: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MeanSummary {
    #[serde(rename = "max_meanD", serialize_with = "exact::ser_opt")]
    pub max_mean: Option<Rational>,
    pub satisfied: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum DensityOutcome {
    Bound(DiameterBound),
    NotApplicable(&'static str),
}

/// Everything the structural checkers say about one graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub n: usize,
    pub m: usize,
    pub sse: bool,
    pub theorem1: DifferenceSummary,
    pub corollary: MeanSummary,
    #[serde(rename = "lemma1A")]
    pub lemma1a: bool,
    #[serde(rename = "lemma1B")]
    pub lemma1b: bool,
    pub theorem2: Vec<DiameterBound>,
    pub theorem3: DensityOutcome,
}

impl AnalysisReport {
    /// True when every applicable checker holds.
    pub fn all_satisfied(&self) -> bool {
        self.theorem1.satisfied
            && self.corollary.satisfied
            && self.lemma1a
            && self.lemma1b
            && self.theorem2.iter().all(|b| b.satisfied)
            && match &self.theorem3 {
                DensityOutcome::Bound(b) => b.satisfied,
                DensityOutcome::NotApplicable(_) => true,
            }
    }
}

pub fn analyze(g: &Graph, ks: &[u32]) -> Result<AnalysisReport> {
    require_connected(g)?;
    let dist = all_pairs_distances(g);
    let diff = difference_bound_with(g, &dist);
    let means = mean_difference_with(g, &dist);
    let theorem2 = ks
        .iter()
        .map(|&k| vicinity_diameter_bound(g, k))
        .collect::<Result<Vec<_>>>()?;
    let theorem3 = match density_diameter_bound(g) {
        Ok(b) => DensityOutcome::Bound(b),
        Err(Error::MinDegreeTooLow(_)) => DensityOutcome::NotApplicable("n/a"),
        Err(e) => return Err(e),
    };
    Ok(AnalysisReport {
        n: g.n(),
        m: g.edge_count(),
        sse: check_sse(g).is_equilibrium,
        theorem1: DifferenceSummary {
            pairs_checked: diff.pairs.len(),
            pairs_skipped: diff.skipped.len(),
            worst_slack: diff.worst_slack(),
            satisfied: diff.satisfied(),
        },
        corollary: MeanSummary {
            max_mean: means.iter().map(|m| m.mean).max(),
            satisfied: means.iter().all(|m| m.satisfied),
        },
        lemma1a: check_first_edge_redundancy(g)?.iter().all(|r| r.satisfied),
        lemma1b: check_degree2_diameter(g)?,
        theorem2,
        theorem3,
    })
}
