//! Edge-list text format: a header line `n m`, then `m` lines `u v`.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

pub fn parse_edgelist(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing header `n m`".into(),
    })?;
    let [n, m] = pair(hline, header)?;
    let mut g = Graph::new(n);
    let mut seen = 0;
    for (line, l) in lines {
        if seen == m {
            return Err(Error::Parse {
                line,
                msg: format!("more than the declared {m} edges"),
            });
        }
        let [u, v] = pair(line, l)?;
        g.add_edge(u as Vertex, v as Vertex)
            .map_err(|e| Error::Parse {
                line,
                msg: e.to_string(),
            })?;
        seen += 1;
    }
    if seen != m {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            msg: format!("declared {m} edges, found {seen}"),
        });
    }
    Ok(g)
}

fn pair(line: usize, l: &str) -> Result<[usize; 2]> {
    let err = |msg: String| Error::Parse { line, msg };
    let mut it = l.split_whitespace();
    let mut out = [0usize; 2];
    for slot in &mut out {
        let tok = it
            .next()
            .ok_or_else(|| err(format!("expected two integers, got `{l}`")))?;
        *slot = tok
            .parse()
            .map_err(|_| err(format!("not a non-negative integer: `{tok}`")))?;
    }
    if it.next().is_some() {
        return Err(err(format!("trailing tokens in `{l}`")));
    }
    Ok(out)
}

/// Serializes with edges sorted (`u < v`, then lexicographic).
pub fn format_edgelist(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn read_edgelist(path: impl AsRef<Path>) -> Result<Graph> {
    parse_edgelist(&fs::read_to_string(path)?)
}

pub fn write_edgelist(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, format_edgelist(g))?;
    Ok(())
}
