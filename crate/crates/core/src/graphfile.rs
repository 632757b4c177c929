//! Plain-text oriented graph files.
//!
//! ```text
//! # evenly oriented hexagon
//! 6
//! 0 1
//! 1 2
//! ```
//!
//! `#` starts a comment running to the end of the line; blank lines are
//! ignored. The first data line holds the vertex count `n`, every further
//! data line an arc `u v` (0-indexed, `u → v`). At most one arc per
//! unordered pair. The canonical form written by [`to_graph_file`] has no
//! comments and lists arcs in lexicographic order.

use std::collections::HashSet;
use std::fmt::Write;

use thiserror::Error;

use crate::graph::OrientedGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing vertex count")]
    MissingVertexCount,
    #[error("invalid vertex count {0:?}")]
    InvalidVertexCount(String),
    #[error("malformed arc line {0:?}")]
    MalformedArc(String),
    #[error("self-loop")]
    SelfLoop,
    #[error("vertex {vertex} out of range for n = {n}")]
    OutOfRange { vertex: usize, n: usize },
    #[error("duplicate arc between {0} and {1}")]
    DuplicatePair(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at line {line}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

pub fn parse_graph_file(text: &str) -> Result<OrientedGraph, ParseError> {
    let mut n: Option<usize> = None;
    let mut arcs = Vec::new();
    let mut seen = HashSet::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let data = raw.split('#').next().unwrap_or("").trim();
        if data.is_empty() {
            continue;
        }
        let err = |kind| ParseError { line, kind };
        let Some(n) = n else {
            let count = data
                .parse::<usize>()
                .map_err(|_| err(ParseErrorKind::InvalidVertexCount(data.to_string())))?;
            n = Some(count);
            continue;
        };
        let fields: Vec<&str> = data.split_whitespace().collect();
        let parsed: Option<Vec<usize>> = fields.iter().map(|f| f.parse().ok()).collect();
        let (u, v) = match parsed.as_deref() {
            Some(&[u, v]) => (u, v),
            _ => return Err(err(ParseErrorKind::MalformedArc(data.to_string()))),
        };
        if u == v {
            return Err(err(ParseErrorKind::SelfLoop));
        }
        for w in [u, v] {
            if w >= n {
                return Err(err(ParseErrorKind::OutOfRange { vertex: w, n }));
            }
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(err(ParseErrorKind::DuplicatePair(u.min(v), u.max(v))));
        }
        arcs.push((u, v));
    }
    let n = n.ok_or(ParseError {
        line: last_line.max(1),
        kind: ParseErrorKind::MissingVertexCount,
    })?;
    Ok(OrientedGraph::new(n, arcs).expect("arcs validated while parsing"))
}

/// Canonical text form: vertex count, then arcs sorted lexicographically.
pub fn to_graph_file(og: &OrientedGraph) -> String {
    let mut out = format!("{}\n", og.vertex_count());
    for (u, v) in og.sorted_arcs() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}
