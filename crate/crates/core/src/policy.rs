use std::fmt;
use std::str::FromStr;

use rand::Rng as _;
use serde::Serialize;

use crate::error::Error;
use crate::graph::SwapMove;
use crate::rng::{self, Rng};

/// Which improving move a search returns when several exist.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Policy {
    /// First in enumeration order.
    First,
    /// Largest gain; ties go to enumeration order.
    Best,
    /// Uniform over all improving moves.
    Random { seed: u64 },
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Policy::First => f.write_str("first"),
            Policy::Best => f.write_str("best"),
            Policy::Random { seed } => write!(f, "random:{seed}"),
        }
    }
}

/// `first`, `best`, `random` or `random:<seed>`.
impl FromStr for Policy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "first" => Ok(Policy::First),
            "best" => Ok(Policy::Best),
            "random" => Ok(Policy::Random { seed: 0 }),
            _ => s
                .strip_prefix("random:")
                .and_then(|x| x.parse().ok())
                .map(|seed| Policy::Random { seed })
                .ok_or_else(|| Error::BadSpec(format!("unknown policy `{s}`"))),
        }
    }
}

/// Selection rule with the random source already resolved.
pub(crate) enum Pick<'a> {
    First,
    Best,
    Random(&'a mut Rng),
}

impl Policy {
    pub(crate) fn with_owned_rng<T>(self, f: impl FnOnce(Pick<'_>) -> T) -> T {
        match self {
            Policy::First => f(Pick::First),
            Policy::Best => f(Pick::Best),
            Policy::Random { seed } => {
                let mut r = rng::seeded(seed);
                f(Pick::Random(&mut r))
            }
        }
    }
}

impl Pick<'_> {
    pub(crate) fn stops_early(&self) -> bool {
        matches!(self, Pick::First)
    }

    /// Chooses among candidates listed in enumeration order; for `Best`,
    /// a smaller key is better.
    pub(crate) fn choose<K: Ord + Copy>(self, cands: &[(SwapMove, K)]) -> Option<(SwapMove, K)> {
        if cands.is_empty() {
            return None;
        }
        match self {
            Pick::First => Some(cands[0]),
            Pick::Best => {
                let mut best = cands[0];
                for &c in &cands[1..] {
                    if c.1 < best.1 {
                        best = c;
                    }
                }
                Some(best)
            }
            Pick::Random(r) => Some(cands[r.gen_range(0..cands.len())]),
        }
    }
}
