//! The `.mg` text format.
//!
//! ```text
//! # optional comment lines
//! p <n> <m>
//! e <u> <v>      (m lines, 0-indexed; line order is the EdgeId)
//! ```
//!
//! Comments are kept and written back first, so files in this canonical
//! layout round-trip byte for byte.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::MultiGraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MgDocument {
    /// Comment lines without the leading `#` (a single following space is
    /// part of the text).
    pub comments: Vec<String>,
    pub graph: MultiGraph,
}

impl MgDocument {
    pub fn new(graph: MultiGraph) -> Self {
        MgDocument {
            comments: Vec::new(),
            graph,
        }
    }

    pub fn with_comment(mut self, line: impl Into<String>) -> Self {
        self.comments.push(line.into());
        self
    }
}

fn parse_err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

fn field(tokens: &[(usize, &str)], idx: usize, line: usize, what: &str) -> Result<usize> {
    let (col, tok) = tokens
        .get(idx)
        .ok_or_else(|| parse_err(line, 1, format!("missing {what}")))?;
    tok.parse::<usize>().map_err(|_| {
        parse_err(
            line,
            *col,
            format!("expected non-negative integer for {what}, got `{tok}`"),
        )
    })
}

/// Splits a line into whitespace-separated tokens with 1-based columns.
fn tokenize(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

pub fn parse_mg(text: &str) -> Result<MgDocument> {
    let mut comments = Vec::new();
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        if let Some(rest) = raw.strip_prefix('#') {
            comments.push(rest.to_string());
            continue;
        }
        let tokens = tokenize(raw);
        let Some(&(col, kind)) = tokens.first() else {
            continue;
        };
        match kind {
            "p" => {
                if header.is_some() {
                    return Err(parse_err(line_no, col, "duplicate `p` line"));
                }
                let n = field(&tokens, 1, line_no, "vertex count")?;
                let m = field(&tokens, 2, line_no, "edge count")?;
                if tokens.len() > 3 {
                    return Err(parse_err(line_no, tokens[3].0, "trailing tokens"));
                }
                header = Some((n, m));
            }
            "e" => {
                let Some((n, _)) = header else {
                    return Err(parse_err(line_no, col, "edge before `p` line"));
                };
                let u = field(&tokens, 1, line_no, "endpoint")?;
                let v = field(&tokens, 2, line_no, "endpoint")?;
                if tokens.len() > 3 {
                    return Err(parse_err(line_no, tokens[3].0, "trailing tokens"));
                }
                for (x, c) in [(u, tokens[1].0), (v, tokens[2].0)] {
                    if x >= n {
                        return Err(parse_err(
                            line_no,
                            c,
                            format!("vertex {x} out of range (n = {n})"),
                        ));
                    }
                }
                if u == v {
                    return Err(parse_err(line_no, col, format!("loop at vertex {u}")));
                }
                edges.push((u, v));
            }
            other => {
                return Err(parse_err(
                    line_no,
                    col,
                    format!("unknown line kind `{other}`"),
                ));
            }
        }
    }
    let (n, m) = header.ok_or_else(|| parse_err(last_line.max(1), 1, "missing `p` line"))?;
    if edges.len() != m {
        return Err(parse_err(
            last_line.max(1),
            1,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    let graph = MultiGraph::build(n, &edges)?;
    Ok(MgDocument { comments, graph })
}

pub fn write_mg(doc: &MgDocument) -> String {
    let mut out = String::new();
    for c in &doc.comments {
        let _ = writeln!(out, "#{c}");
    }
    let g = &doc.graph;
    let _ = writeln!(out, "p {} {}", g.n(), g.m());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "e {u} {v}");
    }
    out
}
