//! Better-response and limited-query dynamics for the local-cost game.
//!
//! A run is a Markov chain over graphs. Each step selects one vertex, which
//! either applies a profitable swap or does nothing, and records the
//! potential afterwards. Runs are fully determined by the start graph and the
//! config (including its seed).
//!
//! Random draws come from one ChaCha8 stream per run, in this order within a
//! step:
//! 1. the selected vertex (`gen_range(0..n)`), unless scheduling is
//!    round-robin;
//! 2. limited-query mode only, when the vertex has at least one neighbor and
//!    one non-neighbor: the queried set, `rand::seq::index::sample` over its
//!    ascending non-neighbor list;
//! 3. full-knowledge mode with the random rule only: the index of the chosen
//!    move among all profitable moves in enumeration order.

use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::Rng as _;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{self, Rational};
use crate::graph::{Graph, SwapMove, Vertex};
use crate::local::{has_spanning_star, is_local_equilibrium, pick_profitable, potential};
use crate::policy::Pick;
use crate::rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    FullKnowledge,
    LimitedQuery,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheduler {
    RoundRobin,
    UniformRandom,
}

/// Move choice in full-knowledge mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MoveRule {
    First,
    Best,
    Random,
}

impl FromStr for MoveRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "first" => Ok(MoveRule::First),
            "best" => Ok(MoveRule::Best),
            "random" => Ok(MoveRule::Random),
            _ => Err(Error::BadSpec(format!("unknown move rule `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DynamicsConfig {
    pub mode: Mode,
    /// Non-neighbors queried per step in limited-query mode.
    pub query_budget: usize,
    pub rule: MoveRule,
    pub scheduler: Scheduler,
    pub seed: u64,
    pub max_steps: u64,
    /// Defaults to `n^3` when unset.
    pub silence_window: Option<u64>,
}

impl DynamicsConfig {
    pub fn full_knowledge(seed: u64, max_steps: u64) -> Self {
        DynamicsConfig {
            mode: Mode::FullKnowledge,
            query_budget: 1,
            rule: MoveRule::First,
            scheduler: Scheduler::RoundRobin,
            seed,
            max_steps,
            silence_window: None,
        }
    }

    pub fn limited_query(c: usize, seed: u64, max_steps: u64) -> Self {
        DynamicsConfig {
            mode: Mode::LimitedQuery,
            query_budget: c,
            rule: MoveRule::First,
            scheduler: Scheduler::UniformRandom,
            seed,
            max_steps,
            silence_window: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.query_budget == 0 {
            return Err(Error::BadSpec("query budget must be at least 1".into()));
        }
        if self.silence_window == Some(0) {
            return Err(Error::BadSpec("silence window must be at least 1".into()));
        }
        Ok(())
    }

    pub fn window_for(&self, n: usize) -> u64 {
        self.silence_window.unwrap_or((n as u64).pow(3))
    }
}

/// Applied half of a swap; the player is the step's vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AppliedMove {
    pub removed: Vertex,
    pub added: Vertex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub t: u64,
    pub u: Vertex,
    /// Queried non-neighbors, ascending; `None` in full-knowledge mode.
    pub queried: Option<Vec<Vertex>>,
    #[serde(rename = "move")]
    pub applied: Option<AppliedMove>,
    /// Potential after the step.
    pub potential: u64,
}

impl Step {
    pub fn swap(&self) -> Option<SwapMove> {
        self.applied
            .map(|a| SwapMove::new(self.u, a.removed, a.added))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Absorbed,
    StepLimit,
    SilenceDetected,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Absorbed => "absorbed",
            Status::StepLimit => "step_limit",
            Status::SilenceDetected => "silence_detected",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynamicsTrace {
    pub config: DynamicsConfig,
    pub initial: Graph,
    pub steps: Vec<Step>,
    pub status: Status,
    pub final_graph: Graph,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceSummary {
    pub status: Status,
    pub steps: u64,
    pub applied_moves: u64,
    pub initial_potential: u64,
    pub final_potential: u64,
    pub final_is_equilibrium: bool,
    pub final_has_spanning_star: bool,
}

impl DynamicsTrace {
    pub fn n(&self) -> usize {
        self.initial.n()
    }

    pub fn applied_moves(&self) -> u64 {
        self.steps.iter().filter(|s| s.applied.is_some()).count() as u64
    }

    /// Re-applies every recorded move to the initial graph.
    pub fn replay(&self) -> Result<Graph> {
        let mut g = self.initial.clone();
        for m in self.steps.iter().filter_map(Step::swap) {
            g.swap_in_place(&m)?;
        }
        Ok(g)
    }

    /// Step at which the chain entered its final equilibrium (the time of
    /// the last applied move, 0 if none), or `None` if the final graph is not
    /// an equilibrium.
    pub fn absorption_time(&self) -> Option<u64> {
        if !is_local_equilibrium(&self.final_graph) {
            return None;
        }
        Some(
            self.steps
                .iter()
                .rev()
                .find(|s| s.applied.is_some())
                .map_or(0, |s| s.t),
        )
    }

    pub fn summary(&self) -> TraceSummary {
        TraceSummary {
            status: self.status,
            steps: self.steps.len() as u64,
            applied_moves: self.applied_moves(),
            initial_potential: potential(&self.initial),
            final_potential: potential(&self.final_graph),
            final_is_equilibrium: is_local_equilibrium(&self.final_graph),
            final_has_spanning_star: has_spanning_star(&self.final_graph),
        }
    }

    /// One JSON object per step, newline-terminated.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            out.push_str(&serde_json::to_string(s).expect("step serializes"));
            out.push('\n');
        }
        out
    }
}

/// The swap a limited-query step performs for vertex `u` after learning the
/// degrees of `queried`: drop the lightest neighbor (smallest id on ties) and
/// link to the heaviest queried vertex whose degree is at least that
/// neighbor's (smallest id on ties). `None` when no queried vertex qualifies.
pub fn limited_query_move(g: &Graph, u: Vertex, queried: &[Vertex]) -> Option<SwapMove> {
    let removed = *g.neighbors(u).iter().min_by_key(|&&w| (g.degree(w), w))?;
    let floor = g.degree(removed);
    let added = queried
        .iter()
        .copied()
        .filter(|&v| g.degree(v) >= floor)
        .min_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v))?;
    Some(SwapMove::new(u, removed, added))
}

struct Runner {
    g: Graph,
    phi: u64,
    steps: Vec<Step>,
}

impl Runner {
    fn new(g0: &Graph) -> Self {
        Runner {
            g: g0.clone(),
            phi: potential(g0),
            steps: Vec::new(),
        }
    }

    fn record(&mut self, u: Vertex, queried: Option<Vec<Vertex>>, m: Option<SwapMove>) {
        if let Some(m) = m {
            self.g
                .swap_in_place(&m)
                .expect("dynamics only applies legal moves");
            let phi = potential(&self.g);
            debug_assert!(phi > self.phi);
            self.phi = phi;
        }
        let t = self.steps.len() as u64 + 1;
        self.steps.push(Step {
            t,
            u,
            queried,
            applied: m.map(|m| AppliedMove {
                removed: m.removed,
                added: m.added,
            }),
            potential: self.phi,
        });
    }

    fn finish(self, config: &DynamicsConfig, initial: &Graph, status: Status) -> DynamicsTrace {
        DynamicsTrace {
            config: config.clone(),
            initial: initial.clone(),
            steps: self.steps,
            status,
            final_graph: self.g,
        }
    }
}

fn check_start(g0: &Graph, cfg: &DynamicsConfig, mode: Mode) -> Result<()> {
    cfg.validate()?;
    if cfg.mode != mode {
        return Err(Error::BadSpec(format!("config mode is {:?}", cfg.mode)));
    }
    if g0.n() == 0 {
        return Err(Error::BadSpec("dynamics need at least one vertex".into()));
    }
    Ok(())
}

/// Full-knowledge better-response dynamics. With round-robin scheduling a
/// full round of silent steps means absorption; with random scheduling the
/// graph is tested for equilibrium after every silent step.
pub fn run_better_response(g0: &Graph, cfg: &DynamicsConfig) -> Result<DynamicsTrace> {
    check_start(g0, cfg, Mode::FullKnowledge)?;
    let n = g0.n();
    let mut rng = rng::seeded(cfg.seed);
    let mut run = Runner::new(g0);
    let mut silent = 0usize;
    while (run.steps.len() as u64) < cfg.max_steps {
        let t = run.steps.len();
        let u = match cfg.scheduler {
            Scheduler::RoundRobin => t % n,
            Scheduler::UniformRandom => rng.gen_range(0..n),
        };
        let pick = match cfg.rule {
            MoveRule::First => Pick::First,
            MoveRule::Best => Pick::Best,
            MoveRule::Random => Pick::Random(&mut rng),
        };
        let m = pick_profitable(&run.g, u, pick).map(|(m, _)| m);
        run.record(u, None, m);
        if m.is_some() {
            silent = 0;
            continue;
        }
        silent += 1;
        let absorbed = match cfg.scheduler {
            Scheduler::RoundRobin => silent >= n,
            Scheduler::UniformRandom => is_local_equilibrium(&run.g),
        };
        if absorbed {
            return Ok(run.finish(cfg, g0, Status::Absorbed));
        }
    }
    Ok(run.finish(cfg, g0, Status::StepLimit))
}

/// Limited-query dynamics: a uniformly random vertex learns the degrees of
/// `min(c, #non-neighbors)` uniformly sampled non-neighbors and swaps when one
/// of them is at least as heavy as one of its neighbors. The run ends when
/// the silence window fires or at the step limit.
pub fn run_limited_query(g0: &Graph, cfg: &DynamicsConfig) -> Result<DynamicsTrace> {
    check_start(g0, cfg, Mode::LimitedQuery)?;
    let n = g0.n();
    let window = cfg.window_for(n);
    let mut rng = rng::seeded(cfg.seed);
    let mut run = Runner::new(g0);
    let mut silent = 0u64;
    while (run.steps.len() as u64) < cfg.max_steps {
        let u = rng.gen_range(0..n);
        let mut queried = Vec::new();
        if run.g.degree(u) > 0 {
            let non: Vec<Vertex> = run.g.non_neighbors(u).collect();
            if !non.is_empty() {
                let k = cfg.query_budget.min(non.len());
                queried = index::sample(&mut rng, non.len(), k)
                    .into_iter()
                    .map(|i| non[i])
                    .collect();
                queried.sort_unstable();
            }
        }
        let m = limited_query_move(&run.g, u, &queried);
        run.record(u, Some(queried), m);
        if m.is_some() {
            silent = 0;
        } else {
            silent += 1;
            if silent >= window {
                return Ok(run.finish(cfg, g0, Status::SilenceDetected));
            }
        }
    }
    Ok(run.finish(cfg, g0, Status::StepLimit))
}

pub fn run_dynamics(g0: &Graph, cfg: &DynamicsConfig) -> Result<DynamicsTrace> {
    match cfg.mode {
        Mode::FullKnowledge => run_better_response(g0, cfg),
        Mode::LimitedQuery => run_limited_query(g0, cfg),
    }
}

/// True iff the last `window` steps applied no move.
pub fn silence_stopping_rule(trace: &DynamicsTrace, window: u64) -> Result<bool> {
    if window == 0 {
        return Err(Error::BadSpec("silence window must be at least 1".into()));
    }
    let len = trace.steps.len() as u64;
    Ok(len >= window
        && trace.steps[(len - window) as usize..]
            .iter()
            .all(|s| s.applied.is_none()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbsorptionSummary {
    pub n: usize,
    pub c: Option<usize>,
    pub runs: usize,
    pub absorbed: usize,
    #[serde(serialize_with = "exact::ser")]
    pub mean_steps: Rational,
    pub max_steps: u64,
    pub p50: u64,
    pub p90: u64,
    pub p99: u64,
    #[serde(serialize_with = "exact::ser")]
    pub mean_applied_moves: Rational,
    /// `n^5 / (2c)`; limited-query runs only.
    #[serde(serialize_with = "exact::ser_opt")]
    pub bound: Option<Rational>,
    /// Every run absorbed and the mean is within the bound.
    pub within_bound: Option<bool>,
}

fn nearest_rank(sorted: &[u64], q: u64) -> u64 {
    if sorted.is_empty() {
        return 0;
    }
    let rank = (q as usize * sorted.len()).div_ceil(100).max(1);
    sorted[rank - 1]
}

/// Steps-to-absorption statistics over runs sharing `(n, c)`.
pub fn absorption_statistics(runs: &[DynamicsTrace]) -> Result<AbsorptionSummary> {
    let key = |t: &DynamicsTrace| {
        let c = (t.config.mode == Mode::LimitedQuery).then_some(t.config.query_budget);
        (t.n(), c)
    };
    let first = runs
        .first()
        .ok_or_else(|| Error::BadSpec("no runs to summarize".into()))?;
    let expected = key(first);
    if let Some(other) = runs.iter().find(|t| key(t) != expected) {
        return Err(Error::MixedConfig {
            expected,
            found: key(other),
        });
    }
    let mut times: Vec<u64> = runs
        .iter()
        .filter_map(DynamicsTrace::absorption_time)
        .collect();
    times.sort_unstable();
    let absorbed = times.len();
    let mean_steps = if absorbed == 0 {
        exact::int(0)
    } else {
        Rational::new(times.iter().sum::<u64>() as i64, absorbed as i64)
    };
    let moves: u64 = runs.iter().map(DynamicsTrace::applied_moves).sum();
    let (n, c) = expected;
    let bound = c.map(|c| Rational::new((n as i64).pow(5), 2 * c as i64));
    Ok(AbsorptionSummary {
        n,
        c,
        runs: runs.len(),
        absorbed,
        mean_steps,
        max_steps: times.last().copied().unwrap_or(0),
        p50: nearest_rank(&times, 50),
        p90: nearest_rank(&times, 90),
        p99: nearest_rank(&times, 99),
        mean_applied_moves: Rational::new(moves as i64, runs.len() as i64),
        within_bound: bound.map(|b| absorbed == runs.len() && mean_steps <= b),
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete, cycle, path, star};
    use crate::local::profit_delta;

    fn full(seed: u64) -> DynamicsConfig {
        DynamicsConfig::full_knowledge(seed, 100_000)
    }

    #[test]
    fn star_is_already_absorbed() {
        let t = run_better_response(&star(6), &full(0)).unwrap();
        assert_eq!(t.status, Status::Absorbed);
        assert_eq!(t.applied_moves(), 0);
        assert_eq!(t.steps.len(), 6);
        let t = run_better_response(&complete(5), &full(0)).unwrap();
        assert_eq!(t.status, Status::Absorbed);
        assert_eq!(t.applied_moves(), 0);
    }

    #[test]
    fn four_cycle_converges_to_star() {
        for rule in [MoveRule::First, MoveRule::Best, MoveRule::Random] {
            let cfg = DynamicsConfig { rule, ..full(3) };
            let t = run_better_response(&cycle(4), &cfg).unwrap();
            assert_eq!(t.status, Status::Absorbed);
            let s = t.summary();
            assert!(s.final_is_equilibrium && s.final_has_spanning_star);
            assert!(s.applied_moves >= 1);
            assert!(s.applied_moves <= s.final_potential - 8);
            assert_eq!(t.replay().unwrap(), t.final_graph);
        }
    }

    #[test]
    fn random_scheduler_absorbs() {
        let cfg = DynamicsConfig {
            scheduler: Scheduler::UniformRandom,
            ..full(11)
        };
        let t = run_better_response(&path(7), &cfg).unwrap();
        assert_eq!(t.status, Status::Absorbed);
        assert!(is_local_equilibrium(&t.final_graph));
    }

    #[test]
    fn step_limit() {
        let cfg = DynamicsConfig {
            max_steps: 1,
            ..full(0)
        };
        let t = run_better_response(&path(6), &cfg).unwrap();
        assert_eq!(t.status, Status::StepLimit);
        assert_eq!(t.steps.len(), 1);
    }

    #[test]
    fn potential_is_monotone() {
        let cfg = DynamicsConfig::limited_query(2, 5, 50_000);
        let g = path(9);
        let t = run_limited_query(&g, &cfg).unwrap();
        let mut prev = potential(&g);
        let mut h = g.clone();
        for s in &t.steps {
            match s.swap() {
                Some(m) => {
                    assert!(profit_delta(&h, &m).unwrap() >= 1);
                    h.swap_in_place(&m).unwrap();
                    assert!(s.potential > prev);
                }
                None => assert_eq!(s.potential, prev),
            }
            assert_eq!(s.potential, potential(&h));
            prev = s.potential;
        }
        assert_eq!(h, t.final_graph);
    }

    #[test]
    fn limited_query_on_star_goes_silent() {
        let cfg = DynamicsConfig::limited_query(1, 1, 10_000);
        let t = run_limited_query(&star(5), &cfg).unwrap();
        assert_eq!(t.status, Status::SilenceDetected);
        assert_eq!(t.steps.len(), 125);
        assert!(silence_stopping_rule(&t, 125).unwrap());
        assert_eq!(t.absorption_time(), Some(0));
    }

    #[test]
    fn stopping_rule() {
        let cfg = DynamicsConfig::limited_query(1, 1, 10_000);
        let t = run_limited_query(&path(4), &cfg).unwrap();
        let last_move = t.steps.iter().rposition(|s| s.applied.is_some()).unwrap();
        let mut cut = t.clone();
        cut.steps.truncate(last_move + 1);
        assert!(!silence_stopping_rule(&cut, 1).unwrap());
        assert!(silence_stopping_rule(&t, 3).unwrap());
        assert!(silence_stopping_rule(&t, 0).is_err());
        assert!(!silence_stopping_rule(&t, t.steps.len() as u64 + 1).unwrap());
    }

    #[test]
    fn empty_strategy_sets_do_nothing() {
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(limited_query_move(&g, 0, &[]), None);
        let lonely = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(limited_query_move(&lonely, 2, &[0]), None);
    }

    #[test]
    fn pairing_rule() {
        // 0 has neighbors 1 (deg 2) and 4 (deg 1); 2 has deg 2, 3 has deg 3
        let g = Graph::from_edges(7, [(0, 1), (0, 4), (1, 2), (3, 5), (3, 6), (3, 2)]).unwrap();
        assert_eq!(
            limited_query_move(&g, 0, &[2, 3]),
            Some(SwapMove::new(0, 4, 3))
        );
        assert_eq!(
            limited_query_move(&g, 0, &[2]),
            Some(SwapMove::new(0, 4, 2))
        );
        assert_eq!(
            limited_query_move(&g, 0, &[5]),
            Some(SwapMove::new(0, 4, 5))
        );
    }

    #[test]
    fn determinism() {
        let cfg = DynamicsConfig::limited_query(2, 42, 20_000);
        let a = run_limited_query(&cycle(8), &cfg).unwrap();
        let b = run_limited_query(&cycle(8), &cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_jsonl(), b.to_jsonl());
    }

    #[test]
    fn config_validation() {
        let mut cfg = DynamicsConfig::limited_query(0, 0, 10);
        assert!(run_limited_query(&path(3), &cfg).is_err());
        cfg.query_budget = 1;
        cfg.silence_window = Some(0);
        assert!(run_limited_query(&path(3), &cfg).is_err());
        assert!(run_better_response(&path(3), &DynamicsConfig::limited_query(1, 0, 10)).is_err());
        assert!(run_dynamics(&Graph::new(0), &full(0)).is_err());
    }

    #[test]
    fn statistics() {
        let runs: Vec<_> = (0..5)
            .map(|s| {
                run_limited_query(&star(4), &DynamicsConfig::limited_query(2, s, 1000)).unwrap()
            })
            .collect();
        let sum = absorption_statistics(&runs).unwrap();
        assert_eq!(sum.absorbed, 5);
        assert_eq!(sum.mean_steps, exact::int(0));
        assert_eq!(sum.bound, Some(Rational::new(1024, 4)));
        assert_eq!(sum.within_bound, Some(true));

        let one =
            run_limited_query(&path(5), &DynamicsConfig::limited_query(1, 3, 10_000)).unwrap();
        let s = absorption_statistics(std::slice::from_ref(&one)).unwrap();
        let at = one.absorption_time().unwrap();
        assert_eq!(s.mean_steps, exact::int(at as i64));
        assert_eq!((s.max_steps, s.p50, s.p99), (at, at, at));

        let other =
            run_limited_query(&star(5), &DynamicsConfig::limited_query(2, 0, 1000)).unwrap();
        assert!(matches!(
            absorption_statistics(&[runs[0].clone(), other]),
            Err(Error::MixedConfig { .. })
        ));
        let c1 = run_limited_query(&star(4), &DynamicsConfig::limited_query(1, 0, 1000)).unwrap();
        assert!(absorption_statistics(&[runs[0].clone(), c1]).is_err());
        assert!(absorption_statistics(&[]).is_err());
    }

    #[test]
    fn trace_lines() {
        let cfg = DynamicsConfig::limited_query(1, 0, 3);
        let t = run_limited_query(&path(4), &cfg).unwrap();
        let lines: Vec<serde_json::Value> = t
            .to_jsonl()
            .lines()
            .map(|l| serde_json::from_str(l).unwrap())
            .collect();
        assert_eq!(lines.len(), 3);
        for (i, v) in lines.iter().enumerate() {
            assert_eq!(v["t"], i as u64 + 1);
            assert!(v["queried"].is_array());
            assert!(v.get("move").is_some());
            assert!(v["potential"].is_u64());
        }
        let f = run_better_response(&star(3), &full(0)).unwrap();
        let v: serde_json::Value =
            serde_json::from_str(f.to_jsonl().lines().next().unwrap()).unwrap();
        assert!(v["queried"].is_null() && v["move"].is_null());
    }
}
