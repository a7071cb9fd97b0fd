//! Triangle listing and separating-triangle extraction.

use thiserror::Error;

use crate::embedding::{HalfEdgeId, RotationGraph, VertexId, NIL};

/// Annotations filled in by the ordering step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Discovery {
    /// The oriented edge `v -> w` of the triangle traversed last.
    pub last_edge: HalfEdgeId,
    pub time: u32,
    pub internal_angle: u32,
    /// Oriented edge with the triangle's interior to its left.
    pub reference_edge: HalfEdgeId,
}

/// A triangle of the input graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleRecord {
    /// Corners in increasing order.
    pub corners: [VertexId; 3],
    /// One half-edge per side: `corners[0]-corners[1]`, `corners[1]-corners[2]`, `corners[0]-corners[2]`.
    pub sides: [HalfEdgeId; 3],
    pub discovery: Option<Discovery>,
}

impl TriangleRecord {
    fn from_halves(g: &RotationGraph, halves: [HalfEdgeId; 3]) -> Self {
        let mut corners = [g.tail(halves[0]), g.head(halves[0]), g.tail(halves[1])];
        if corners[2] == corners[0] || corners[2] == corners[1] {
            corners[2] = g.head(halves[1]);
        }
        corners.sort_unstable();
        let side = |a: VertexId, b: VertexId| {
            *halves
                .iter()
                .find(|&&h| {
                    let (t, hd) = (g.tail(h), g.head(h));
                    (t == a && hd == b) || (t == b && hd == a)
                })
                .expect("three sides span the three corners")
        };
        let sides = [
            side(corners[0], corners[1]),
            side(corners[1], corners[2]),
            side(corners[0], corners[2]),
        ];
        TriangleRecord { corners, sides, discovery: None }
    }

    /// Origin labels of the corners.
    pub fn origins(&self, g: &RotationGraph) -> [u32; 3] {
        let mut o = self.corners.map(|v| g.origin(v));
        o.sort_unstable();
        o
    }
}

/// Chiba-Nishizeki scan: every 3-clique exactly once, as its three half-edges
/// `v -> u`, `u -> w`, `v -> w`. Returns the triangles and the number of
/// adjacency steps taken.
fn chiba_nishizeki(g: &RotationGraph) -> (Vec<[HalfEdgeId; 3]>, u64) {
    let n = g.vertex_count();
    // Non-increasing degree order via counting sort.
    let max_deg = g.max_degree();
    let mut count = vec![0usize; max_deg + 2];
    for v in g.vertices() {
        count[max_deg - g.degree(v) + 1] += 1;
    }
    for i in 1..count.len() {
        count[i] += count[i - 1];
    }
    let mut order = vec![VertexId(0); n];
    for v in g.vertices() {
        let slot = &mut count[max_deg - g.degree(v)];
        order[*slot] = v;
        *slot += 1;
    }

    let mut mark = vec![NIL; n];
    let mut removed = vec![false; n];
    let mut out = Vec::new();
    let mut ops = 0u64;
    for &v in &order {
        for h in g.outgoing(v) {
            ops += 1;
            let x = g.head(h);
            if !removed[x.index()] {
                mark[x.index()] = h.0;
            }
        }
        for vu in g.outgoing(v) {
            let u = g.head(vu);
            if removed[u.index()] {
                continue;
            }
            for uw in g.outgoing(u) {
                ops += 1;
                let vw = mark[g.head(uw).index()];
                if vw != NIL {
                    out.push([vu, uw, HalfEdgeId(vw)]);
                }
            }
            mark[u.index()] = NIL;
        }
        removed[v.index()] = true;
    }
    (out, ops)
}

/// Every triangle of `g` exactly once.
pub fn list_all_triangles(g: &RotationGraph) -> Vec<TriangleRecord> {
    list_all_triangles_counted(g).0
}

/// Like [`list_all_triangles`], also returning the adjacency step count.
pub fn list_all_triangles_counted(g: &RotationGraph) -> (Vec<TriangleRecord>, u64) {
    let (raw, ops) = chiba_nishizeki(g);
    (raw.into_iter().map(|h| TriangleRecord::from_halves(g, h)).collect(), ops)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{0:?} is not a triangle of the graph")]
pub struct NotATriangle(pub [VertexId; 3]);

#[inline]
fn cyclically_adjacent(g: &RotationGraph, a: HalfEdgeId, b: HalfEdgeId) -> bool {
    g.next_ccw(a) == b || g.prev_ccw(a) == b
}

fn facial_sides(g: &RotationGraph, t: &TriangleRecord) -> bool {
    let [c0, c1, c2] = t.corners;
    let [s01, s12, s02] = t.sides;
    let at = |h: HalfEdgeId, v: VertexId| if g.tail(h) == v { h } else { h.twin() };
    cyclically_adjacent(g, at(s01, c0), at(s02, c0))
        || cyclically_adjacent(g, at(s01, c1), at(s12, c1))
        || cyclically_adjacent(g, at(s02, c2), at(s12, c2))
}

/// Whether the triangle on `corners` bounds a face: at some corner, the edges
/// to the other two corners are consecutive in its incidence list.
pub fn is_facial(g: &RotationGraph, corners: [VertexId; 3]) -> Result<bool, NotATriangle> {
    let [a, b, c] = corners;
    let find = |u, v| g.find_half_edge(u, v).ok_or(NotATriangle(corners));
    if a == b || b == c || a == c {
        return Err(NotATriangle(corners));
    }
    let (ab, bc, ac) = (find(a, b)?, find(b, c)?, find(a, c)?);
    let t = TriangleRecord::from_halves(g, [ab, bc, ac]);
    Ok(facial_sides(g, &t))
}

/// All triangles that do not bound a face.
pub fn separating_triangles(g: &RotationGraph) -> Vec<TriangleRecord> {
    separating_triangles_counted(g).0
}

pub fn separating_triangles_counted(g: &RotationGraph) -> (Vec<TriangleRecord>, u64) {
    let (raw, ops) = chiba_nishizeki(g);
    let list = raw
        .into_iter()
        // `vu` and `vw` leave the same corner; consecutive there means facial.
        .filter(|&[vu, _, vw]| !cyclically_adjacent(g, vu, vw))
        .map(|halves| TriangleRecord::from_halves(g, halves))
        .filter(|t| !facial_sides(g, t))
        .collect();
    (list, ops)
}
