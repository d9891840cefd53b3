//! Graph generators.

use std::fmt;
use std::str::FromStr;

use rand::Rng as _;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::rng::{self, Rng};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    Gnp {
        n: usize,
        p: f64,
    },
    RandomTree {
        n: usize,
    },
    Path {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    Star {
        n: usize,
    },
    Complete {
        n: usize,
    },
    Barbell {
        left: usize,
        right: usize,
        bridge: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GeneratorSpec {
    #[serde(flatten)]
    pub family: Family,
    pub seed: u64,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Gnp { n, p } => write!(f, "gnp({n},{p})"),
            Family::RandomTree { n } => write!(f, "random-tree({n})"),
            Family::Path { n } => write!(f, "path({n})"),
            Family::Cycle { n } => write!(f, "cycle({n})"),
            Family::Star { n } => write!(f, "star({n})"),
            Family::Complete { n } => write!(f, "complete({n})"),
            Family::Barbell {
                left,
                right,
                bridge,
            } => write!(f, "barbell({left},{right},{bridge})"),
        }
    }
}

/// Parses `name(arg,...)`, e.g. `gnp(20,0.3)` or `barbell(4,4,1)`.
impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadSpec(format!("cannot parse generator `{s}`"));
        let s = s.trim();
        let open = s.find('(').ok_or_else(bad)?;
        let body = s[open + 1..].strip_suffix(')').ok_or_else(bad)?;
        let args: Vec<&str> = body.split(',').map(str::trim).collect();
        let int = |i: usize| -> Result<usize> {
            args.get(i).and_then(|a| a.parse().ok()).ok_or_else(bad)
        };
        let arity = |k: usize| -> Result<()> {
            if args.len() == k {
                Ok(())
            } else {
                Err(bad())
            }
        };
        let family = match &s[..open] {
            "gnp" => {
                arity(2)?;
                let p = args[1].parse().map_err(|_| bad())?;
                Family::Gnp { n: int(0)?, p }
            }
            "random-tree" | "tree" => {
                arity(1)?;
                Family::RandomTree { n: int(0)? }
            }
            "path" => {
                arity(1)?;
                Family::Path { n: int(0)? }
            }
            "cycle" => {
                arity(1)?;
                Family::Cycle { n: int(0)? }
            }
            "star" => {
                arity(1)?;
                Family::Star { n: int(0)? }
            }
            "complete" => {
                arity(1)?;
                Family::Complete { n: int(0)? }
            }
            "barbell" => {
                arity(3)?;
                Family::Barbell {
                    left: int(0)?,
                    right: int(1)?,
                    bridge: int(2)?,
                }
            }
            _ => return Err(bad()),
        };
        Ok(family)
    }
}

impl Family {
    fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::BadSpec(format!("{self}: {msg}")));
        match *self {
            Family::Gnp { n, p } => {
                if n == 0 {
                    return bad("n must be at least 1");
                }
                if !(0.0..=1.0).contains(&p) {
                    return bad("p must lie in [0, 1]");
                }
            }
            Family::Cycle { n } if n < 3 => return bad("a cycle needs at least 3 vertices"),
            Family::RandomTree { n }
            | Family::Path { n }
            | Family::Cycle { n }
            | Family::Star { n }
            | Family::Complete { n } => {
                if n == 0 {
                    return bad("n must be at least 1");
                }
            }
            Family::Barbell {
                left,
                right,
                bridge,
            } => {
                if left == 0 || right == 0 || bridge == 0 {
                    return bad("clique sizes and bridge length must be at least 1");
                }
            }
        }
        Ok(())
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<Graph> {
    spec.family.validate()?;
    let mut rng = rng::seeded(spec.seed);
    Ok(match spec.family {
        Family::Gnp { n, p } => gnp(n, p, &mut rng),
        Family::RandomTree { n } => random_tree(n, &mut rng),
        Family::Path { n } => path(n),
        Family::Cycle { n } => cycle(n),
        Family::Star { n } => star(n),
        Family::Complete { n } => complete(n),
        Family::Barbell {
            left,
            right,
            bridge,
        } => barbell(left, right, bridge),
    })
}

fn build(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Graph {
    Graph::from_edges(n, edges).expect("generator emits a simple graph")
}

pub fn path(n: usize) -> Graph {
    build(n, (1..n).map(|v| (v - 1, v)))
}

/// Cycle `0-1-...-(n-1)-0`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs n >= 3");
    build(n, (0..n).map(|v| (v, (v + 1) % n)))
}

/// Star with center 0.
pub fn star(n: usize) -> Graph {
    build(n, (1..n).map(|v| (0, v)))
}

pub fn complete(n: usize) -> Graph {
    build(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// Cliques `K_left` and `K_right` joined by a path of `bridge` edges between
/// vertex `left - 1` and the first vertex of the right clique.
pub fn barbell(left: usize, right: usize, bridge: usize) -> Graph {
    let inner = bridge - 1;
    let n = left + inner + right;
    let mut edges = Vec::new();
    for u in 0..left {
        for v in u + 1..left {
            edges.push((u, v));
        }
    }
    let r0 = left + inner;
    for u in r0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    let chain: Vec<Vertex> = std::iter::once(left - 1)
        .chain(left..r0)
        .chain(std::iter::once(r0))
        .collect();
    edges.extend(chain.windows(2).map(|w| (w[0], w[1])));
    build(n, edges)
}

/// Erdős–Rényi `G(n, p)`; may be disconnected.
pub fn gnp(n: usize, p: f64, rng: &mut Rng) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).expect("fresh pair");
            }
        }
    }
    g
}

/// Uniform labeled tree via a random Prüfer sequence.
pub fn random_tree(n: usize, rng: &mut Rng) -> Graph {
    if n <= 1 {
        return Graph::new(n);
    }
    if n == 2 {
        return path(2);
    }
    let code: Vec<Vertex> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &c in &code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &c in &code {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf exists");
        edges.push((leaf, c));
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let rest: Vec<Vertex> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    build(n, edges)
}

/// `G(n, p)` resampled until connected.
pub fn random_connected(n: usize, p: f64, rng: &mut Rng) -> Graph {
    assert!(n >= 1);
    loop {
        let g = gnp(n, p, rng);
        if g.is_connected() {
            return g;
        }
    }
}

/// Every labeled graph on `n` vertices, by edge bitmask over pairs in
/// lexicographic order. Meant for `n <= 6` (2^15 graphs).
pub fn all_labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(Vertex, Vertex)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    assert!(
        pairs.len() < 32,
        "exhaustive enumeration is for tiny graphs"
    );
    (0u32..1 << pairs.len()).map(move |mask| {
        build(
            n,
            pairs
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p),
        )
    })
}
