//! Plain-text formats. Edge list: a header line `n m` followed by `m` lines
//! `u v` with 0-based ids. Labeling: one line of `n` space-separated bits.

use super::Graph;
use crate::error::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn two_ints(line: &str, lineno: usize) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace();
    let mut next = || -> Result<usize> {
        it.next()
            .ok_or_else(|| parse_err(lineno, "expected two integers"))?
            .parse()
            .map_err(|e| parse_err(lineno, format!("{e}")))
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(parse_err(lineno, "trailing tokens"));
    }
    Ok((a, b))
}

/// Edges are written with `u < v` in lexicographic order.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.n_edges());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let (n, m) = two_ints(header, hl + 1)?;
    let mut edges = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::new();
    for (i, line) in lines {
        let (u, v) = two_ints(line, i + 1)?;
        if u >= n || v >= n {
            return Err(parse_err(i + 1, format!("node id out of range for n = {n}")));
        }
        if u == v {
            return Err(parse_err(i + 1, "self-loop"));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(parse_err(i + 1, "duplicate edge"));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(parse_err(hl + 1, format!("header announces {m} edges, found {}", edges.len())));
    }
    Graph::new(n, edges)
}

pub fn write_labeling(labels: &[bool]) -> String {
    let body: Vec<&str> = labels.iter().map(|&b| if b { "1" } else { "0" }).collect();
    format!("{}\n", body.join(" "))
}

/// Parses a labeling; `n` (when given) must match the number of entries.
pub fn parse_labeling(text: &str, n: Option<usize>) -> Result<Vec<bool>> {
    let labels = text
        .split_whitespace()
        .map(|t| match t {
            "0" => Ok(false),
            "1" => Ok(true),
            other => Err(parse_err(1, format!("label `{other}` is not 0 or 1"))),
        })
        .collect::<Result<Vec<bool>>>()?;
    if let Some(n) = n {
        if labels.len() != n {
            return Err(parse_err(1, format!("expected {n} labels, found {}", labels.len())));
        }
    }
    Ok(labels)
}
