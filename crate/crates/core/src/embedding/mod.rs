//! Half-edge rotation systems.
//!
//! A [`RotationGraph`] stores an embedded graph as pairs of half-edges. Every
//! vertex owns a circular, doubly linked list of its outgoing half-edges in
//! counter-clockwise (CCW) order. Half-edges are allocated in twin pairs, so
//! `twin(h) = h ^ 1` and the undirected edge of `h` is `h >> 1`.
//!
//! Faces are traced with the convention that the face to the left of `u -> v`
//! continues with `v -> p`, where `p` is the CCW predecessor of `u` in the
//! list of `v`.

mod format;
mod validate;

pub use format::{parse_rotation_graph, write_rotation_graph, ParseError};
pub use validate::{validate_triangulation, Diagnostics, Finding};

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

pub(crate) const NIL: u32 = u32::MAX;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexId(pub u32);

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct HalfEdgeId(pub u32);

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EdgeId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl HalfEdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn twin(self) -> HalfEdgeId {
        HalfEdgeId(self.0 ^ 1)
    }

    #[inline]
    pub fn edge(self) -> EdgeId {
        EdgeId(self.0 >> 1)
    }
}

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// The two half-edges of this edge; the first is the one created as `u -> v`.
    #[inline]
    pub fn halves(self) -> [HalfEdgeId; 2] {
        [HalfEdgeId(self.0 << 1), HalfEdgeId((self.0 << 1) | 1)]
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for HalfEdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} does not exist")]
    NoSuchVertex(VertexId),
    #[error("half-edge {0} does not exist")]
    NoSuchHalfEdge(HalfEdgeId),
    #[error("{neighbor} is not adjacent to {vertex}")]
    NotAdjacent { vertex: VertexId, neighbor: VertexId },
    #[error("half-edge {half} is not incident to {vertex}")]
    NotIncident { vertex: VertexId, half: HalfEdgeId },
    #[error("loops are not supported (at {0})")]
    Loop(VertexId),
}

/// Errors raised while assembling a graph from explicit rotation lists.
///
/// Vertices are reported by their origin label.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("neighbor index {index} of vertex {vertex} is out of range")]
    UnknownVertex { vertex: u32, index: usize },
    #[error("vertex {vertex} lists itself as a neighbor")]
    SelfLoop { vertex: u32 },
    #[error("vertex {vertex} lists neighbor {neighbor} more than once")]
    DuplicateNeighbor { vertex: u32, neighbor: u32 },
    #[error("vertex {vertex} lists {neighbor}, but {neighbor} does not list {vertex}")]
    Asymmetric { vertex: u32, neighbor: u32 },
    #[error("declared outer edge {tail} -> {head} is not an edge")]
    OuterEdgeAbsent { tail: u32, head: u32 },
}

#[derive(Clone, Debug)]
struct VertexRec {
    first: u32,
    degree: u32,
    origin: u32,
}

#[derive(Clone, Debug)]
struct HalfRec {
    tail: u32,
    next: u32,
    prev: u32,
}

/// An embedded graph as a rotation system over half-edges.
#[derive(Clone, Debug, Default)]
pub struct RotationGraph {
    vertices: Vec<VertexRec>,
    halves: Vec<HalfRec>,
    outer: Option<HalfEdgeId>,
    // CCW position of each half-edge in its tail's list; valid only for
    // vertices whose `index_stale` flag is clear.
    index: Vec<u32>,
    index_stale: Vec<bool>,
}

impl RotationGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(vertices: usize, edges: usize) -> Self {
        RotationGraph {
            vertices: Vec::with_capacity(vertices),
            halves: Vec::with_capacity(2 * edges),
            outer: None,
            index: Vec::with_capacity(2 * edges),
            index_stale: Vec::with_capacity(vertices),
        }
    }

    /// Builds a graph from CCW neighbor lists given as dense vertex indices.
    ///
    /// `origins[i]` becomes the origin label of vertex `i`. The half-edge
    /// `outer.0 -> outer.1` is designated as having the outer face on its left.
    pub fn from_rotations(
        origins: &[u32],
        lists: &[Vec<usize>],
        outer: (usize, usize),
    ) -> Result<Self, BuildError> {
        let n = lists.len();
        assert_eq!(origins.len(), n, "one origin label per rotation list");
        let half_total: usize = lists.iter().map(Vec::len).sum();
        let mut pair_of: HashMap<(u32, u32), u32> = HashMap::with_capacity(half_total);
        let mut stamp = vec![NIL; n];
        let mut next_edge = 0u32;
        let mut pair_heads: Vec<u32> = Vec::with_capacity(half_total);
        for (v, list) in lists.iter().enumerate() {
            for &w in list {
                if w >= n {
                    return Err(BuildError::UnknownVertex { vertex: origins[v], index: w });
                }
                if w == v {
                    return Err(BuildError::SelfLoop { vertex: origins[v] });
                }
                if stamp[w] == v as u32 {
                    return Err(BuildError::DuplicateNeighbor {
                        vertex: origins[v],
                        neighbor: origins[w],
                    });
                }
                stamp[w] = v as u32;
                if v < w {
                    pair_of.insert((v as u32, w as u32), next_edge << 1);
                    pair_of.insert((w as u32, v as u32), (next_edge << 1) | 1);
                    pair_heads.push(w as u32);
                    pair_heads.push(v as u32);
                    next_edge += 1;
                }
            }
        }

        let mut g = RotationGraph::with_capacity(n, next_edge as usize);
        for &origin in origins {
            g.add_vertex(origin);
        }
        g.halves.resize(2 * next_edge as usize, HalfRec { tail: NIL, next: NIL, prev: NIL });
        g.index.resize(2 * next_edge as usize, 0);
        for (v, list) in lists.iter().enumerate() {
            let mut prev = NIL;
            for &w in list {
                let h = match pair_of.get(&(v as u32, w as u32)) {
                    Some(&h) => h,
                    None => {
                        return Err(BuildError::Asymmetric {
                            vertex: origins[v],
                            neighbor: origins[w],
                        })
                    }
                };
                g.halves[h as usize].tail = v as u32;
                if prev == NIL {
                    g.vertices[v].first = h;
                } else {
                    g.halves[prev as usize].next = h;
                    g.halves[h as usize].prev = prev;
                }
                prev = h;
            }
            if prev != NIL {
                let first = g.vertices[v].first;
                g.halves[prev as usize].next = first;
                g.halves[first as usize].prev = prev;
            }
            g.vertices[v].degree = list.len() as u32;
            g.index_stale[v] = true;
        }
        for (h, rec) in g.halves.iter().enumerate() {
            if rec.tail == NIL {
                // Only the twin was listed: its tail names a neighbor that never lists it back.
                let lister = g.halves[h ^ 1].tail as usize;
                let neighbor = pair_heads[h ^ 1] as usize;
                return Err(BuildError::Asymmetric { vertex: origins[lister], neighbor: origins[neighbor] });
            }
        }
        let outer_half = pair_of
            .get(&(outer.0 as u32, outer.1 as u32))
            .copied()
            .filter(|_| outer.0 < n && outer.1 < n);
        match outer_half {
            Some(h) => g.outer = Some(HalfEdgeId(h)),
            None => {
                let label = |i: usize| origins.get(i).copied().unwrap_or(i as u32);
                return Err(BuildError::OuterEdgeAbsent { tail: label(outer.0), head: label(outer.1) });
            }
        }
        g.rebuild_index();
        Ok(g)
    }

    pub fn add_vertex(&mut self, origin: u32) -> VertexId {
        let id = VertexId(self.vertices.len() as u32);
        self.vertices.push(VertexRec { first: NIL, degree: 0, origin });
        self.index_stale.push(false);
        id
    }

    /// Adds the edge `{u, v}` and returns the half-edge `u -> v`.
    ///
    /// The new half-edge at `u` is placed directly CCW after `u_after`, or
    /// becomes the only entry when `u_after` is `None` and `u` is isolated.
    /// A `None` anchor at a non-isolated vertex appends after its last entry.
    pub fn insert_edge(
        &mut self,
        u: VertexId,
        u_after: Option<HalfEdgeId>,
        v: VertexId,
        v_after: Option<HalfEdgeId>,
    ) -> Result<HalfEdgeId, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::Loop(u));
        }
        for (x, anchor) in [(u, u_after), (v, v_after)] {
            if let Some(a) = anchor {
                self.check_half(a)?;
                if self.tail(a) != x {
                    return Err(GraphError::NotIncident { vertex: x, half: a });
                }
            }
        }
        let uv = self.halves.len() as u32;
        self.halves.push(HalfRec { tail: u.0, next: NIL, prev: NIL });
        self.halves.push(HalfRec { tail: v.0, next: NIL, prev: NIL });
        self.index.push(0);
        self.index.push(0);
        self.link_after(u, u_after, uv);
        self.link_after(v, v_after, uv | 1);
        Ok(HalfEdgeId(uv))
    }

    fn link_after(&mut self, v: VertexId, after: Option<HalfEdgeId>, h: u32) {
        let rec = &mut self.vertices[v.index()];
        let anchor = match after {
            Some(a) => a.0,
            None if rec.first == NIL => NIL,
            None => self.halves[rec.first as usize].prev,
        };
        rec.degree += 1;
        if anchor == NIL {
            rec.first = h;
            self.halves[h as usize].next = h;
            self.halves[h as usize].prev = h;
        } else {
            let succ = self.halves[anchor as usize].next;
            self.halves[h as usize].prev = anchor;
            self.halves[h as usize].next = succ;
            self.halves[anchor as usize].next = h;
            self.halves[succ as usize].prev = h;
        }
        self.index_stale[v.index()] = true;
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    #[inline]
    pub fn half_edge_count(&self) -> usize {
        self.halves.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.halves.len() / 2
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = VertexId> {
        (0..self.vertices.len() as u32).map(VertexId)
    }

    pub fn half_edges(&self) -> impl ExactSizeIterator<Item = HalfEdgeId> {
        (0..self.halves.len() as u32).map(HalfEdgeId)
    }

    #[inline]
    pub fn tail(&self, h: HalfEdgeId) -> VertexId {
        VertexId(self.halves[h.index()].tail)
    }

    #[inline]
    pub fn head(&self, h: HalfEdgeId) -> VertexId {
        VertexId(self.halves[h.index() ^ 1].tail)
    }

    /// CCW successor of `h` around its tail.
    #[inline]
    pub fn next_ccw(&self, h: HalfEdgeId) -> HalfEdgeId {
        HalfEdgeId(self.halves[h.index()].next)
    }

    /// CCW predecessor of `h` around its tail.
    #[inline]
    pub fn prev_ccw(&self, h: HalfEdgeId) -> HalfEdgeId {
        HalfEdgeId(self.halves[h.index()].prev)
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        self.vertices[v.index()].degree as usize
    }

    #[inline]
    pub fn origin(&self, v: VertexId) -> u32 {
        self.vertices[v.index()].origin
    }

    pub fn first_half_edge(&self, v: VertexId) -> Option<HalfEdgeId> {
        let first = self.vertices[v.index()].first;
        (first != NIL).then_some(HalfEdgeId(first))
    }

    pub fn max_degree(&self) -> usize {
        self.vertices.iter().map(|v| v.degree as usize).max().unwrap_or(0)
    }

    /// Outgoing half-edges of `v` in CCW order, starting at its first entry.
    pub fn outgoing(&self, v: VertexId) -> Outgoing<'_> {
        let rec = &self.vertices[v.index()];
        Outgoing { graph: self, current: rec.first, remaining: rec.degree }
    }

    /// Outgoing half-edges of `tail(h)` in CCW order, starting at `h`.
    pub fn outgoing_from(&self, h: HalfEdgeId) -> Outgoing<'_> {
        let remaining = self.vertices[self.halves[h.index()].tail as usize].degree;
        Outgoing { graph: self, current: h.0, remaining }
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.outgoing(v).map(move |h| self.head(h))
    }

    pub fn outer_half_edge(&self) -> Option<HalfEdgeId> {
        self.outer
    }

    pub fn set_outer_half_edge(&mut self, h: HalfEdgeId) -> Result<(), GraphError> {
        self.check_half(h)?;
        self.outer = Some(h);
        Ok(())
    }

    /// The DFS root: the tail of the outer half-edge.
    pub fn root(&self) -> Option<VertexId> {
        self.outer.map(|h| self.tail(h))
    }

    /// Linear scan of `u`'s list for the half-edge towards `v`.
    pub fn find_half_edge(&self, u: VertexId, v: VertexId) -> Option<HalfEdgeId> {
        if u.index() >= self.vertices.len() {
            return None;
        }
        self.outgoing(u).find(|&h| self.head(h) == v)
    }

    /// Recomputes the CCW position numbers of every vertex marked stale.
    pub fn rebuild_index(&mut self) {
        for v in 0..self.vertices.len() {
            if !self.index_stale[v] {
                continue;
            }
            let rec = &self.vertices[v];
            let mut h = rec.first;
            for i in 0..rec.degree {
                self.index[h as usize] = i;
                h = self.halves[h as usize].next;
            }
            self.index_stale[v] = false;
        }
    }

    pub fn index_is_fresh(&self) -> bool {
        !self.index_stale.iter().any(|&s| s)
    }

    /// CCW position of `h` in its tail's incidence list.
    ///
    /// Constant time when the tail's index is fresh, a walk over the list otherwise.
    pub fn position(&self, h: HalfEdgeId) -> u32 {
        let v = self.halves[h.index()].tail as usize;
        if !self.index_stale[v] {
            return self.index[h.index()];
        }
        let first = self.vertices[v].first;
        let mut cur = first;
        let mut i = 0;
        while cur != h.0 {
            cur = self.halves[cur as usize].next;
            i += 1;
        }
        i
    }

    /// Number of CCW turns from `from` to `to` around their common tail.
    #[inline]
    pub fn angle_between(&self, from: HalfEdgeId, to: HalfEdgeId) -> u32 {
        debug_assert_eq!(self.tail(from), self.tail(to));
        let d = self.vertices[self.halves[from.index()].tail as usize].degree;
        let (a, b) = (self.position(from), self.position(to));
        if b >= a {
            b - a
        } else {
            b + d - a
        }
    }

    /// Size of the angle at `v` turning CCW from edge `{v, u}` to edge `{v, w}`.
    pub fn angle_size(&self, v: VertexId, u: VertexId, w: VertexId) -> Result<u32, GraphError> {
        self.check_vertex(v)?;
        let from = self
            .find_half_edge(v, u)
            .ok_or(GraphError::NotAdjacent { vertex: v, neighbor: u })?;
        let to = self
            .find_half_edge(v, w)
            .ok_or(GraphError::NotAdjacent { vertex: v, neighbor: w })?;
        Ok(self.angle_between(from, to))
    }

    /// Successor of `h` on the boundary of the face to its left.
    #[inline]
    pub fn face_next(&self, h: HalfEdgeId) -> HalfEdgeId {
        self.prev_ccw(h.twin())
    }

    /// Boundary of the face to the left of `h`, starting at `h`.
    pub fn face_walk(&self, h: HalfEdgeId) -> Vec<HalfEdgeId> {
        let mut walk = vec![h];
        let mut cur = self.face_next(h);
        while cur != h {
            walk.push(cur);
            cur = self.face_next(cur);
        }
        walk
    }

    /// Labels every half-edge with the face to its left.
    pub fn faces(&self) -> FaceMap {
        let mut face_of = vec![NIL; self.halves.len()];
        let mut starts = Vec::new();
        let mut lengths = Vec::new();
        for h in 0..self.halves.len() {
            if face_of[h] != NIL {
                continue;
            }
            let id = starts.len() as u32;
            let mut len = 0;
            let mut cur = HalfEdgeId(h as u32);
            while face_of[cur.index()] == NIL {
                face_of[cur.index()] = id;
                len += 1;
                cur = self.face_next(cur);
            }
            starts.push(HalfEdgeId(h as u32));
            lengths.push(len);
        }
        FaceMap { face_of, starts, lengths }
    }

    /// Moves the half-edges strictly CCW-between `from` and `to` at `v` to the
    /// end of `target`'s list, preserving their order. Returns how many moved.
    ///
    /// Twins are untouched, so the heads seen from the other side change to
    /// `target` automatically. Cost is linear in the number moved.
    pub fn transfer_arc(
        &mut self,
        v: VertexId,
        from: HalfEdgeId,
        to: HalfEdgeId,
        target: VertexId,
    ) -> Result<usize, GraphError> {
        self.check_vertex(v)?;
        self.check_vertex(target)?;
        for h in [from, to] {
            self.check_half(h)?;
            if self.tail(h) != v {
                return Err(GraphError::NotIncident { vertex: v, half: h });
            }
        }
        let first = self.halves[from.index()].next;
        if first == to.0 {
            return Ok(0);
        }
        let last = self.halves[to.index()].prev;
        self.halves[from.index()].next = to.0;
        self.halves[to.index()].prev = from.0;

        let mut moved = 0u32;
        let mut cur = first;
        loop {
            self.halves[cur as usize].tail = target.0;
            moved += 1;
            if cur == last {
                break;
            }
            cur = self.halves[cur as usize].next;
        }
        let src_first = self.vertices[v.index()].first;
        if self.halves[src_first as usize].tail != v.0 {
            self.vertices[v.index()].first = from.0;
        }
        self.vertices[v.index()].degree -= moved;

        let dst_first = self.vertices[target.index()].first;
        if dst_first == NIL {
            self.halves[last as usize].next = first;
            self.halves[first as usize].prev = last;
            self.vertices[target.index()].first = first;
        } else {
            let dst_last = self.halves[dst_first as usize].prev;
            self.halves[dst_last as usize].next = first;
            self.halves[first as usize].prev = dst_last;
            self.halves[last as usize].next = dst_first;
            self.halves[dst_first as usize].prev = last;
        }
        self.vertices[target.index()].degree += moved;
        self.index_stale[v.index()] = true;
        self.index_stale[target.index()] = true;
        Ok(moved as usize)
    }

    /// Full structural check of the linked incidence lists.
    pub fn audit(&self) -> Result<(), String> {
        let mut seen = vec![false; self.halves.len()];
        for (v, rec) in self.vertices.iter().enumerate() {
            if rec.degree == 0 {
                if rec.first != NIL {
                    return Err(format!("vertex {v} has degree 0 but a first entry"));
                }
                continue;
            }
            if rec.first == NIL || rec.first as usize >= self.halves.len() {
                return Err(format!("vertex {v} has degree {} but no valid first entry", rec.degree));
            }
            let mut cur = rec.first;
            for _ in 0..rec.degree {
                let h = &self.halves[cur as usize];
                if h.tail as usize != v {
                    return Err(format!("half-edge {cur} in list of {v} has tail {}", h.tail));
                }
                if seen[cur as usize] {
                    return Err(format!("half-edge {cur} appears twice"));
                }
                seen[cur as usize] = true;
                if self.halves[h.next as usize].prev != cur {
                    return Err(format!("prev/next mismatch after half-edge {cur}"));
                }
                cur = h.next;
            }
            if cur != rec.first {
                return Err(format!("list of vertex {v} does not close after {} entries", rec.degree));
            }
        }
        if let Some(h) = seen.iter().position(|&s| !s) {
            return Err(format!("half-edge {h} is in no incidence list"));
        }
        let total: usize = self.vertices.iter().map(|v| v.degree as usize).sum();
        if total != self.halves.len() {
            return Err(format!("degree sum {total} != half-edge count {}", self.halves.len()));
        }
        for v in 0..self.vertices.len() {
            if self.index_stale[v] {
                continue;
            }
            let mut cur = self.vertices[v].first;
            for i in 0..self.vertices[v].degree {
                if self.index[cur as usize] != i {
                    return Err(format!("stale position cache at vertex {v}"));
                }
                cur = self.halves[cur as usize].next;
            }
        }
        Ok(())
    }

    /// Copies the subgraph induced by `vertices` into a fresh graph.
    ///
    /// Returned vertex `i` is `vertices[i]`; origins are preserved. `outer` must
    /// be a half-edge between two of the listed vertices.
    pub fn extract(&self, vertices: &[VertexId], outer: HalfEdgeId) -> Result<RotationGraph, BuildError> {
        let mut local = HashMap::with_capacity(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            local.insert(v, i);
        }
        let origins: Vec<u32> = vertices.iter().map(|&v| self.origin(v)).collect();
        let lists: Vec<Vec<usize>> = vertices
            .iter()
            .map(|&v| self.neighbors(v).filter_map(|w| local.get(&w).copied()).collect())
            .collect();
        let o = (
            local.get(&self.tail(outer)).copied().unwrap_or(usize::MAX),
            local.get(&self.head(outer)).copied().unwrap_or(usize::MAX),
        );
        RotationGraph::from_rotations(&origins, &lists, o)
    }

    /// CCW neighbor lists as dense indices, starting at each vertex's first entry.
    pub fn rotation_lists(&self) -> Vec<Vec<usize>> {
        self.vertices().map(|v| self.neighbors(v).map(VertexId::index).collect()).collect()
    }

    fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if v.index() < self.vertices.len() {
            Ok(())
        } else {
            Err(GraphError::NoSuchVertex(v))
        }
    }

    fn check_half(&self, h: HalfEdgeId) -> Result<(), GraphError> {
        if h.index() < self.halves.len() {
            Ok(())
        } else {
            Err(GraphError::NoSuchHalfEdge(h))
        }
    }
}

/// Iterator over a vertex's outgoing half-edges in CCW order.
pub struct Outgoing<'a> {
    graph: &'a RotationGraph,
    current: u32,
    remaining: u32,
}

impl Iterator for Outgoing<'_> {
    type Item = HalfEdgeId;

    #[inline]
    fn next(&mut self) -> Option<HalfEdgeId> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let h = self.current;
        self.current = self.graph.halves[h as usize].next;
        Some(HalfEdgeId(h))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining as usize, Some(self.remaining as usize))
    }
}

impl ExactSizeIterator for Outgoing<'_> {}

/// Face labelling produced by [`RotationGraph::faces`].
#[derive(Clone, Debug)]
pub struct FaceMap {
    /// Face to the left of each half-edge.
    pub face_of: Vec<u32>,
    /// A boundary half-edge of each face.
    pub starts: Vec<HalfEdgeId>,
    pub lengths: Vec<u32>,
}

impl FaceMap {
    pub fn count(&self) -> usize {
        self.starts.len()
    }

    #[inline]
    pub fn face_left_of(&self, h: HalfEdgeId) -> u32 {
        self.face_of[h.index()]
    }
}
