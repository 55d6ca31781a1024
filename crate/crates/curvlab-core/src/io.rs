//! The `rotmap` text format and DOT export.
//!
//! ```text
//! rotmap 1
//! # comments and blank lines are ignored
//! v0: 1 2 3
//! v1: 0 3 2
//! ```
//!
//! Each line lists a vertex's neighbours counterclockwise. The `v` before the
//! id is optional on input and always written on output.

use crate::map::{build_map, MapError, PlanarMap};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("invalid map: {0}")]
    Map(#[from] MapError),
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, column, message: message.into() }
}

fn parse_id(tok: &str, line: usize, column: usize) -> Result<usize, ParseError> {
    let body = tok.strip_prefix('v').unwrap_or(tok);
    body.parse().map_err(|_| syntax(line, column, format!("bad vertex id `{tok}`")))
}

/// Parses rotmap text into validated rotation lists and builds the map.
pub fn parse_rotmap(text: &str) -> Result<PlanarMap, ParseError> {
    let mut header_seen = false;
    let mut rows: Vec<(usize, usize, Vec<(usize, usize)>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim_end();
        if content.trim().is_empty() {
            continue;
        }
        if !header_seen {
            if content.trim() != "rotmap 1" {
                return Err(syntax(line, 1, "expected header `rotmap 1`"));
            }
            header_seen = true;
            continue;
        }
        let Some(colon) = content.find(':') else {
            return Err(syntax(line, 1, "expected `vID: neighbours`"));
        };
        let lead = content[..colon].len() - content[..colon].trim_start().len();
        let v = parse_id(content[..colon].trim(), line, lead + 1)?;
        let mut nbrs = Vec::new();
        let rest = &content[colon + 1..];
        let mut offset = colon + 1;
        for tok in rest.split(' ') {
            if !tok.is_empty() {
                nbrs.push((parse_id(tok, line, offset + 1)?, offset + 1));
            }
            offset += tok.len() + 1;
        }
        rows.push((line, v, nbrs));
    }
    if !header_seen {
        return Err(syntax(1, 1, "missing header `rotmap 1`"));
    }
    let n = rows.len();
    let mut lists: Vec<Option<Vec<usize>>> = vec![None; n];
    for (line, v, nbrs) in &rows {
        if *v >= n {
            return Err(syntax(*line, 1, format!("vertex v{v} out of range (ids must be 0..{n})")));
        }
        if lists[*v].is_some() {
            return Err(syntax(*line, 1, format!("vertex v{v} listed twice")));
        }
        for &(w, col) in nbrs {
            if w >= n {
                return Err(syntax(*line, col, format!("vertex v{v} references unknown neighbour {w}")));
            }
        }
        lists[*v] = Some(nbrs.iter().map(|p| p.0).collect());
    }
    let lists: Vec<Vec<usize>> = lists.into_iter().map(|l| l.unwrap_or_default()).collect();
    Ok(build_map(&lists)?)
}

/// Writes a map as rotmap text. `comment` lines are emitted after the header.
pub fn write_rotmap(m: &PlanarMap, comment: Option<&str>) -> String {
    let mut out = String::from("rotmap 1\n");
    if let Some(c) = comment {
        for l in c.lines() {
            let _ = writeln!(out, "# {l}");
        }
    }
    for (v, nbrs) in m.rotation_lists().iter().enumerate() {
        let _ = write!(out, "v{v}:");
        for w in nbrs {
            let _ = write!(out, " {w}");
        }
        out.push('\n');
    }
    out
}

/// Undirected DOT graph, one line per edge, vertices labelled by id.
pub fn write_dot(m: &PlanarMap, name: &str) -> String {
    let mut out = format!("graph {name} {{\n  node [shape=circle, width=0.2, fontsize=8];\n");
    for e in 0..m.num_edges() {
        let (a, b) = m.everts(e);
        let _ = writeln!(out, "  {a} -- {b};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const TETRA: &str = "rotmap 1\n# tetrahedron\nv0: 1 2 3\nv1: 0 3 2\nv2: 0 1 3\nv3: 0 2 1\n";

    #[test]
    fn roundtrip() {
        let m = parse_rotmap(TETRA).unwrap();
        assert_eq!((m.num_vertices(), m.num_edges(), m.num_faces()), (4, 6, 4));
        let text = write_rotmap(&m, Some("tetrahedron"));
        assert_eq!(text, TETRA);
    }

    #[test]
    fn bare_ids_accepted() {
        let m = parse_rotmap("rotmap 1\n0: 1 2 3\n1: 0 3 2\n2: 0 1 3\n3: 0 2 1\n").unwrap();
        assert_eq!(m.num_faces(), 4);
    }

    #[test]
    fn unknown_neighbour_names_vertex() {
        let err = parse_rotmap("rotmap 1\nv0: 1 9\nv1: 0\n").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("v0") && msg.contains("line 2"), "{msg}");
    }

    #[test]
    fn missing_header() {
        assert!(parse_rotmap("v0: 1\n").is_err());
    }
}
