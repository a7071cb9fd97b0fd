//! Line-oriented rotation format.
//!
//! ```text
//! n m
//! outer u v
//! <id>: w1 w2 ... wk      (n lines, neighbors in CCW order)
//! ```
//!
//! Lines starting with `#` and blank lines are ignored.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use super::{BuildError, RotationGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: unknown vertex id {id}")]
    UnknownVertex { line: usize, id: u32 },
    #[error("line {line}: vertex id {id} is declared twice")]
    DuplicateVertex { line: usize, id: u32 },
    #[error("header declares {declared} vertices but {found} vertex lines follow")]
    VertexCount { declared: usize, found: usize },
    #[error("header declares {declared} edges but the lists contain {found}")]
    EdgeCount { declared: usize, found: usize },
    #[error(transparent)]
    Build(#[from] BuildError),
}

fn malformed(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Malformed { line, message: message.into() }
}

fn int<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T, ParseError> {
    tok.parse().map_err(|_| malformed(line, format!("expected a non-negative integer, got {tok:?}")))
}

/// Parses a rotation-format document.
pub fn parse_rotation_graph(text: &str) -> Result<RotationGraph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or_else(|| malformed(1, "missing `n m` header"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(malformed(hline, "header must be `n m`"));
    }
    let n: usize = int(toks[0], hline)?;
    let m: usize = int(toks[1], hline)?;

    let (oline, outer) = lines.next().ok_or_else(|| malformed(hline + 1, "missing `outer u v` line"))?;
    let toks: Vec<&str> = outer.split_whitespace().collect();
    if toks.len() != 3 || toks[0] != "outer" {
        return Err(malformed(oline, "expected `outer u v`"));
    }
    let outer_ids: (u32, u32) = (int(toks[1], oline)?, int(toks[2], oline)?);

    let mut labels = Vec::with_capacity(n);
    let mut raw: Vec<(usize, Vec<u32>)> = Vec::with_capacity(n);
    let mut dense: HashMap<u32, usize> = HashMap::with_capacity(n);
    for (line, body) in lines {
        let (id, rest) = body
            .split_once(':')
            .ok_or_else(|| malformed(line, "expected `<vertex-id>: neighbors...`"))?;
        let id: u32 = int(id.trim(), line)?;
        if dense.insert(id, labels.len()).is_some() {
            return Err(ParseError::DuplicateVertex { line, id });
        }
        labels.push(id);
        let nbrs = rest.split_whitespace().map(|t| int(t, line)).collect::<Result<Vec<u32>, _>>()?;
        raw.push((line, nbrs));
    }
    if labels.len() != n {
        return Err(ParseError::VertexCount { declared: n, found: labels.len() });
    }

    let mut lists = Vec::with_capacity(n);
    for (line, nbrs) in &raw {
        let list = nbrs
            .iter()
            .map(|&id| dense.get(&id).copied().ok_or(ParseError::UnknownVertex { line: *line, id }))
            .collect::<Result<Vec<usize>, _>>()?;
        lists.push(list);
    }
    let outer_dense = match (dense.get(&outer_ids.0), dense.get(&outer_ids.1)) {
        (Some(&u), Some(&v)) => (u, v),
        (None, _) => return Err(ParseError::UnknownVertex { line: oline, id: outer_ids.0 }),
        (_, None) => return Err(ParseError::UnknownVertex { line: oline, id: outer_ids.1 }),
    };
    let g = RotationGraph::from_rotations(&labels, &lists, outer_dense)?;
    if g.edge_count() != m {
        return Err(ParseError::EdgeCount { declared: m, found: g.edge_count() });
    }
    Ok(g)
}

/// Serializes `g` in rotation format.
///
/// Vertices are written under their origin labels when those are pairwise
/// distinct, and under their dense indices otherwise.
pub fn write_rotation_graph(g: &RotationGraph) -> String {
    let mut seen = HashMap::with_capacity(g.vertex_count());
    let distinct = g.vertices().all(|v| seen.insert(g.origin(v), ()).is_none());
    let label = |v: super::VertexId| if distinct { g.origin(v) } else { v.0 };

    let mut out = String::with_capacity(16 * g.half_edge_count() + 32);
    let _ = writeln!(out, "{} {}", g.vertex_count(), g.edge_count());
    if let Some(h) = g.outer_half_edge() {
        let _ = writeln!(out, "outer {} {}", label(g.tail(h)), label(g.head(h)));
    }
    for v in g.vertices() {
        let _ = write!(out, "{}:", label(v));
        for w in g.neighbors(v) {
            let _ = write!(out, " {}", label(w));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::VertexId;
    use crate::generators::CANON5;

    #[test]
    fn canon5_counts() {
        let g = parse_rotation_graph(CANON5).unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edge_count(), 9);
        let outer = g.outer_half_edge().unwrap();
        assert_eq!((g.origin(g.tail(outer)), g.origin(g.head(outer))), (1, 0));
        assert_eq!(g.root(), Some(VertexId(1)));
    }

    #[test]
    fn single_triangle() {
        let g = parse_rotation_graph("3 3\nouter 1 0\n0: 1 2\n1: 2 0\n2: 0 1\n").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 3));
        assert_eq!(g.faces().count(), 2);
    }

    #[test]
    fn comments_and_sparse_ids() {
        let doc = "# a triangle\n3 3\nouter 20 10\n10: 20 30\n# middle\n20: 30 10\n30: 10 20\n";
        let g = parse_rotation_graph(doc).unwrap();
        assert_eq!(g.origin(VertexId(2)), 30);
        assert_eq!(write_rotation_graph(&g), "3 3\nouter 20 10\n10: 20 30\n20: 30 10\n30: 10 20\n");
    }

    #[test]
    fn asymmetric_adjacency() {
        // 0 lists 3, 3 does not list 0.
        let doc = "4 5\nouter 1 0\n0: 1 3 2\n1: 2 3 0\n2: 0 3 1\n3: 1 2\n";
        assert_eq!(
            parse_rotation_graph(doc).err(),
            Some(ParseError::Build(BuildError::Asymmetric { vertex: 0, neighbor: 3 }))
        );
    }

    #[test]
    fn error_paths() {
        assert!(matches!(parse_rotation_graph(""), Err(ParseError::Malformed { .. })));
        assert!(matches!(
            parse_rotation_graph("3 3\nouter 1 0\n0: 1 2\n1: 2 0\n2: 0 x\n"),
            Err(ParseError::Malformed { line: 5, .. })
        ));
        assert!(matches!(
            parse_rotation_graph("3 3\nouter 1 0\n0: 1 7\n1: 2 0\n2: 0 1\n"),
            Err(ParseError::UnknownVertex { line: 3, id: 7 })
        ));
        assert_eq!(
            parse_rotation_graph("3 3\nouter 1 0\n0: 1 2 1\n1: 2 0\n2: 0 1\n").err(),
            Some(ParseError::Build(BuildError::DuplicateNeighbor { vertex: 0, neighbor: 1 }))
        );
        assert_eq!(
            parse_rotation_graph("3 2\nouter 0 2\n0: 1\n1: 2 0\n2: 1\n").err(),
            Some(ParseError::Build(BuildError::OuterEdgeAbsent { tail: 0, head: 2 }))
        );
        assert_eq!(
            parse_rotation_graph("3 3\nouter 0 0\n0: 1 2\n1: 2 0\n2: 0 1\n").err(),
            Some(ParseError::Build(BuildError::OuterEdgeAbsent { tail: 0, head: 0 }))
        );
        assert!(matches!(
            parse_rotation_graph("3 4\nouter 1 0\n0: 1 2\n1: 2 0\n2: 0 1\n"),
            Err(ParseError::EdgeCount { declared: 4, found: 3 })
        ));
        assert!(matches!(
            parse_rotation_graph("4 3\nouter 1 0\n0: 1 2\n1: 2 0\n2: 0 1\n"),
            Err(ParseError::VertexCount { declared: 4, found: 3 })
        ));
        assert!(matches!(
            parse_rotation_graph("3 3\nouter 1 0\n0: 1 2\n0: 2 0\n2: 0 1\n"),
            Err(ParseError::DuplicateVertex { line: 4, id: 0 })
        ));
    }
}
