use std::collections::VecDeque;
use std::fmt;

use super::{HalfEdgeId, RotationGraph, VertexId, NIL};

/// One failed check of [`validate_triangulation`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Finding {
    /// Incidence lists are structurally inconsistent.
    Corrupt(String),
    /// A loop or a repeated neighbor at `vertex`.
    NotSimple { vertex: VertexId, neighbor: VertexId },
    /// `unreachable` of the vertices cannot be reached from the first one.
    NotConnected { unreachable: usize },
    /// The face left of `start` has `length` sides.
    NonTriangularFace { start: HalfEdgeId, length: usize },
    /// No outer half-edge, or it refers to nothing.
    BadOuterEdge,
    /// `n - m + f` differs from 2.
    EulerViolation { vertices: usize, edges: usize, faces: usize },
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finding::Corrupt(msg) => write!(f, "corrupt incidence lists: {msg}"),
            Finding::NotSimple { vertex, neighbor } => {
                write!(f, "not simple: {vertex} has a loop or repeated neighbor {neighbor}")
            }
            Finding::NotConnected { unreachable } => {
                write!(f, "not connected: {unreachable} vertices unreachable")
            }
            Finding::NonTriangularFace { start, length } => {
                write!(f, "non-triangular face: face left of {start} has {length} sides")
            }
            Finding::BadOuterEdge => write!(f, "bad outer edge: none designated"),
            Finding::EulerViolation { vertices, edges, faces } => {
                write!(f, "euler violation: n - m + f = {vertices} - {edges} + {faces} != 2")
            }
        }
    }
}

/// Findings of [`validate_triangulation`]; empty iff the input is a valid
/// embedded triangulation with a designated outer face.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Diagnostics {
    pub findings: Vec<Finding>,
}

impl Diagnostics {
    pub fn is_empty(&self) -> bool {
        self.findings.is_empty()
    }

    pub fn not_simple(&self) -> bool {
        self.findings.iter().any(|f| matches!(f, Finding::NotSimple { .. }))
    }

    pub fn not_connected(&self) -> bool {
        self.findings.iter().any(|f| matches!(f, Finding::NotConnected { .. }))
    }

    pub fn non_triangular(&self) -> bool {
        self.findings.iter().any(|f| matches!(f, Finding::NonTriangularFace { .. }))
    }

    pub fn bad_outer_edge(&self) -> bool {
        self.findings.iter().any(|f| matches!(f, Finding::BadOuterEdge))
    }

    pub fn euler_violation(&self) -> bool {
        self.findings.iter().any(|f| matches!(f, Finding::EulerViolation { .. }))
    }
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for finding in &self.findings {
            writeln!(f, "{finding}")?;
        }
        Ok(())
    }
}

/// Checks that `g` is simple, connected, has only triangular faces, satisfies
/// Euler's formula and has a usable outer half-edge.
pub fn validate_triangulation(g: &RotationGraph) -> Diagnostics {
    let mut findings = Vec::new();
    if let Err(msg) = g.audit() {
        // Nothing below is meaningful on broken lists.
        findings.push(Finding::Corrupt(msg));
        return Diagnostics { findings };
    }

    let n = g.vertex_count();
    let mut stamp = vec![NIL; n];
    for v in g.vertices() {
        for w in g.neighbors(v) {
            if w == v || stamp[w.index()] == v.0 {
                findings.push(Finding::NotSimple { vertex: v, neighbor: w });
                break;
            }
            stamp[w.index()] = v.0;
        }
    }

    if n > 0 {
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([VertexId(0)]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for w in g.neighbors(v) {
                if !seen[w.index()] {
                    seen[w.index()] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        if reached < n {
            findings.push(Finding::NotConnected { unreachable: n - reached });
        }
    }

    let faces = g.faces();
    for (start, &len) in faces.starts.iter().zip(&faces.lengths) {
        if len != 3 {
            findings.push(Finding::NonTriangularFace { start: *start, length: len as usize });
        }
    }

    match g.outer_half_edge() {
        Some(h) if h.index() < g.half_edge_count() => {}
        _ => findings.push(Finding::BadOuterEdge),
    }

    let (m, f) = (g.edge_count(), faces.count());
    if n + f != m + 2 {
        findings.push(Finding::EulerViolation { vertices: n, edges: m, faces: f });
    }
    Diagnostics { findings }
}
