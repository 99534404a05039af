use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Graph;
use crate::error::{Error, Result};

/// Named graph families.
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    Path(usize),
    /// Requires at least 3 vertices.
    Cycle(usize),
    Complete(usize),
    /// `K_{1,k}`: center 0, leaves `1..=k`.
    Star(usize),
    Grid {
        rows: usize,
        cols: usize,
    },
    Gnp {
        n: usize,
        p: f64,
        seed: u64,
    },
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

impl Family {
    pub fn build(&self) -> Result<Graph> {
        match *self {
            Family::Path(n) => {
                if n == 0 {
                    return Err(invalid("path needs n >= 1"));
                }
                Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
            }
            Family::Cycle(n) => {
                if n < 3 {
                    return Err(invalid("cycle needs n >= 3"));
                }
                Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
            }
            Family::Complete(n) => {
                if n == 0 {
                    return Err(invalid("complete graph needs n >= 1"));
                }
                Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
            }
            Family::Star(k) => Graph::from_edges(k + 1, (1..=k).map(|leaf| (0, leaf))),
            Family::Grid { rows, cols } => {
                if rows == 0 || cols == 0 {
                    return Err(invalid("grid needs rows, cols >= 1"));
                }
                let id = |r: usize, c: usize| r * cols + c;
                let mut edges = Vec::new();
                for r in 0..rows {
                    for c in 0..cols {
                        if c + 1 < cols {
                            edges.push((id(r, c), id(r, c + 1)));
                        }
                        if r + 1 < rows {
                            edges.push((id(r, c), id(r + 1, c)));
                        }
                    }
                }
                Graph::from_edges(rows * cols, edges)
            }
            Family::Gnp { n, p, seed } => {
                if n == 0 {
                    return Err(invalid("gnp needs n >= 1"));
                }
                if !(0.0..=1.0).contains(&p) {
                    return Err(invalid(format!("gnp probability {p} outside [0, 1]")));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut g = Graph::empty(n);
                for u in 0..n {
                    for v in u + 1..n {
                        if rng.gen_bool(p) {
                            g.add_edge(u, v);
                        }
                    }
                }
                Ok(g)
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Path(_) => "path",
            Family::Cycle(_) => "cycle",
            Family::Complete(_) => "complete",
            Family::Star(_) => "star",
            Family::Grid { .. } => "grid",
            Family::Gnp { .. } => "gnp",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Path(n) => write!(f, "path:{n}"),
            Family::Cycle(n) => write!(f, "cycle:{n}"),
            Family::Complete(n) => write!(f, "complete:{n}"),
            Family::Star(k) => write!(f, "star:{k}"),
            Family::Grid { rows, cols } => write!(f, "grid:{rows}x{cols}"),
            Family::Gnp { n, p, seed } => write!(f, "gnp:{n}:{p}:{seed}"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Parses `path:10`, `cycle:5`, `complete:4`, `star:3`, `grid:3x4`,
    /// `gnp:12:0.3:7`.
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(':');
        let kind = parts.next().unwrap_or_default();
        let args: Vec<&str> = parts.collect();
        let num = |i: usize| -> Result<usize> {
            args.get(i)
                .and_then(|a| a.parse().ok())
                .ok_or_else(|| invalid(format!("bad family spec `{s}`")))
        };
        match kind {
            "path" => Ok(Family::Path(num(0)?)),
            "cycle" => Ok(Family::Cycle(num(0)?)),
            "complete" => Ok(Family::Complete(num(0)?)),
            "star" => Ok(Family::Star(num(0)?)),
            "grid" => {
                let (r, c) = args
                    .first()
                    .and_then(|a| a.split_once('x'))
                    .ok_or_else(|| invalid(format!("bad grid spec `{s}`")))?;
                Ok(Family::Grid {
                    rows: r.parse().map_err(|_| invalid(format!("bad grid spec `{s}`")))?,
                    cols: c.parse().map_err(|_| invalid(format!("bad grid spec `{s}`")))?,
                })
            }
            "gnp" => {
                let p = args
                    .get(1)
                    .and_then(|a| a.parse().ok())
                    .ok_or_else(|| invalid(format!("bad gnp spec `{s}`")))?;
                Ok(Family::Gnp {
                    n: num(0)?,
                    p,
                    seed: args.get(2).map_or(Ok(0), |_| num(2).map(|v| v as u64))?,
                })
            }
            _ => Err(invalid(format!("unknown family `{kind}`"))),
        }
    }
}

/// Seeded connected G(n, p): tries `seed`, `seed + 1`, ... and returns the
/// first connected sample together with the seed that produced it.
pub fn gnp_connected(n: usize, p: f64, seed: u64) -> Result<(Graph, u64)> {
    if p <= 0.0 && n > 1 {
        return Err(invalid("gnp with p = 0 is never connected"));
    }
    for s in seed..seed.saturating_add(100_000) {
        let g = Family::Gnp { n, p, seed: s }.build()?;
        if g.is_connected(&g.vertices()) {
            return Ok((g, s));
        }
    }
    Err(invalid(format!(
        "no connected G({n}, {p}) sample found near seed {seed}"
    )))
}
