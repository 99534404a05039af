use std::fmt::Write as _;
use std::str::FromStr;

use super::Graph;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    /// `p edge <n> <m>` header, `e <u> <v>` lines with 1-based ids, `c` comments.
    Dimacs,
    /// `<u> <v>` per line with 0-based ids, `#` comments, optional `n <count>`
    /// first line.
    EdgeList,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dimacs" | "gr" | "col" => Ok(Format::Dimacs),
            "edgelist" | "edges" | "el" => Ok(Format::EdgeList),
            other => Err(Error::InvalidParameter(format!("unknown graph format `{other}`"))),
        }
    }
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_num(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| perr(line, format!("missing {what}")))?;
    tok.parse::<usize>()
        .map_err(|_| perr(line, format!("invalid {what} `{tok}`")))
}

pub fn parse_graph(text: &str, format: Format) -> Result<Graph> {
    match format {
        Format::Dimacs => parse_dimacs(text),
        Format::EdgeList => parse_edgelist(text),
    }
}

fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut toks = raw.split_whitespace();
        match toks.next() {
            None | Some("c") => continue,
            Some("p") => {
                if graph.is_some() {
                    return Err(perr(line, "duplicate problem line"));
                }
                match toks.next() {
                    Some("edge") | Some("col") | Some("tw") | Some("td") => {}
                    other => return Err(perr(line, format!("malformed header: unexpected {other:?}"))),
                }
                let n = parse_num(toks.next(), line, "vertex count")?;
                parse_num(toks.next(), line, "edge count")?;
                graph = Some(Graph::empty(n));
            }
            Some("e") => {
                let g = graph
                    .as_mut()
                    .ok_or_else(|| perr(line, "edge before `p edge` header"))?;
                let u = parse_num(toks.next(), line, "endpoint")?;
                let v = parse_num(toks.next(), line, "endpoint")?;
                let n = g.n();
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(perr(line, format!("vertex id out of range 1..={n}")));
                }
                if u == v {
                    return Err(perr(line, format!("self-loop at vertex {u}")));
                }
                g.add_edge(u - 1, v - 1);
            }
            Some(tok) => return Err(perr(line, format!("unknown line type `{tok}`"))),
        }
    }
    graph.ok_or_else(|| perr(0, "missing `p edge` header"))
}

fn parse_edgelist(text: &str) -> Result<Graph> {
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    let mut seen_edge = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        let mut toks = body.split_whitespace();
        let Some(first) = toks.next() else { continue };
        if first == "n" {
            if seen_edge || declared.is_some() {
                return Err(perr(line, "`n <count>` must be the first non-comment line"));
            }
            declared = Some(parse_num(toks.next(), line, "vertex count")?);
            continue;
        }
        let u = parse_num(Some(first), line, "endpoint")?;
        let v = parse_num(toks.next(), line, "endpoint")?;
        if toks.next().is_some() {
            return Err(perr(line, "trailing tokens"));
        }
        if let Some(n) = declared {
            if u >= n || v >= n {
                return Err(perr(line, format!("vertex id out of range 0..{n}")));
            }
        }
        if u == v {
            return Err(perr(line, format!("self-loop at vertex {u}")));
        }
        seen_edge = true;
        edges.push((u, v));
    }
    let n = declared.unwrap_or_else(|| edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
    let mut g = Graph::empty(n);
    for (u, v) in edges {
        g.add_edge(u, v);
    }
    Ok(g)
}

pub fn serialize_graph(g: &Graph, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Dimacs => {
            writeln!(out, "p edge {} {}", g.n(), g.m()).unwrap();
            for (u, v) in g.edges() {
                writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
            }
        }
        Format::EdgeList => {
            writeln!(out, "n {}", g.n()).unwrap();
            for (u, v) in g.edges() {
                writeln!(out, "{u} {v}").unwrap();
            }
        }
    }
    out
}
