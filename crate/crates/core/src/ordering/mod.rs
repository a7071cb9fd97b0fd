//! Innermost-to-outermost order of separating triangles.
//!
//! A first DFS orients and classifies the edges and gives every edge a key
//! `(-lowpt, angle)` describing how far out its fundamental cycle reaches.
//! A second DFS scans each vertex's edges in key order, so the interior of a
//! separating triangle is traversed before the triangle's last edge. Sorting
//! triangles by the timestamp of that edge, with ties broken by the angle
//! inside the triangle, yields the order.

mod dfs;
mod sort;

pub use dfs::{dfs1, dfs2, Dfs2Result};
pub use sort::{order_by_discovery, order_by_edge_key, sort_edges, sort_triangles};

use thiserror::Error;

use crate::embedding::{EdgeId, HalfEdgeId, RotationGraph, VertexId};
use crate::triangles::TriangleRecord;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("graph has no outer half-edge")]
    NoOuterEdge,
    #[error("graph is not connected: {unreachable} vertices unreachable from the root")]
    NotConnected { unreachable: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    Tree,
    LeftBack,
    RightBack,
}

impl EdgeKind {
    pub fn is_back(self) -> bool {
        self != EdgeKind::Tree
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DfsVertexState {
    pub depth: u32,
    /// `None` for the root, whose parent edge is virtual.
    pub parent_edge: Option<HalfEdgeId>,
    /// Tree edge to the child most recently descended into.
    pub active_child: Option<HalfEdgeId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DfsEdgeState {
    /// The edge as first traversed.
    pub oriented: HalfEdgeId,
    pub kind: EdgeKind,
    pub lowpt: u32,
    pub angle: u32,
    pub outermost_return_edge: Option<EdgeId>,
}

/// Output of [`dfs1`].
#[derive(Clone, Debug)]
pub struct DfsState {
    pub root: VertexId,
    pub vertices: Vec<DfsVertexState>,
    /// Indexed by edge id.
    pub edges: Vec<DfsEdgeState>,
    /// Values inherited by the root's virtual parent edge. Recorded, never sorted.
    pub root_edge_lowpt: u32,
    pub root_edge_angle: u32,
    pub root_edge_ore: Option<EdgeId>,
    /// Incidence entries scanned.
    pub steps: u64,
}

impl DfsState {
    pub fn edge(&self, h: HalfEdgeId) -> &DfsEdgeState {
        &self.edges[h.edge().index()]
    }
}

/// Outgoing oriented edges of every vertex in sorted order, stored contiguously.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeOrder {
    pub offsets: Vec<u32>,
    pub halves: Vec<HalfEdgeId>,
}

impl EdgeOrder {
    pub fn of(&self, v: VertexId) -> &[HalfEdgeId] {
        &self.halves[self.offsets[v.index()] as usize..self.offsets[v.index() + 1] as usize]
    }
}

/// Separating triangles innermost-first, with the data that produced the order.
#[derive(Clone, Debug)]
pub struct OrderedTriangleList {
    pub triangles: Vec<TriangleRecord>,
    pub edge_order: EdgeOrder,
    pub dfs: DfsState,
    pub dfs2: Dfs2Result,
}

/// Runs both DFS passes and the sorts. Every returned record carries its
/// discovery data.
pub fn order_separating_triangles(
    g: &RotationGraph,
    triangles: Vec<TriangleRecord>,
) -> Result<OrderedTriangleList, OrderError> {
    let dfs = dfs1(g)?;
    let edge_order = sort_edges(g, &dfs);
    let second = dfs2(g, &dfs, &edge_order);
    let triangles = sort_triangles(g, triangles, &dfs, &second.edge_time);
    Ok(OrderedTriangleList { triangles, edge_order, dfs, dfs2: second })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{canon5, canon7, gen_apollonian, gen_canonical, gen_nested_chain};
    use crate::triangles::separating_triangles;

    fn ordered(g: &RotationGraph) -> OrderedTriangleList {
        order_separating_triangles(g, separating_triangles(g)).unwrap()
    }

    #[test]
    fn single_triangle_dfs() {
        let g = gen_canonical("triangle").unwrap();
        let s = dfs1(&g).unwrap();
        let tree = s.edges.iter().filter(|e| e.kind == EdgeKind::Tree).count();
        assert_eq!(tree, 2);
        let back: Vec<_> = s.edges.iter().filter(|e| e.kind.is_back()).collect();
        assert_eq!(back.len(), 1);
        assert_eq!(back[0].lowpt, 0);
    }

    #[test]
    fn depths_and_orientation() {
        let g = gen_apollonian(80, 3).unwrap();
        let s = dfs1(&g).unwrap();
        assert_eq!(s.vertices[s.root.index()].depth, 0);
        for e in &s.edges {
            let (t, h) = (g.tail(e.oriented), g.head(e.oriented));
            let (dt, dh) = (s.vertices[t.index()].depth, s.vertices[h.index()].depth);
            match e.kind {
                EdgeKind::Tree => assert_eq!(dh, dt + 1),
                _ => {
                    assert!(dh < dt);
                    assert_eq!(e.lowpt, dh);
                    assert!(e.angle > 0 && (e.angle as usize) < g.degree(h));
                }
            }
        }
    }

    #[test]
    fn edge_order_keys_non_decreasing() {
        let g = gen_apollonian(120, 11).unwrap();
        let o = ordered(&g);
        for v in g.vertices() {
            let keys: Vec<(i64, u32)> = o
                .edge_order
                .of(v)
                .iter()
                .map(|&h| (-(o.dfs.edge(h).lowpt as i64), o.dfs.edge(h).angle))
                .collect();
            assert!(keys.windows(2).all(|w| w[0] <= w[1]), "{v}: {keys:?}");
        }
        let mut times = o.dfs2.edge_time.clone();
        times.sort_unstable();
        assert!(times.iter().enumerate().all(|(i, &t)| t as usize == i));
        assert!(o.dfs2.depth_test_agrees);
    }

    #[test]
    fn k4_orders_nothing() {
        let g = gen_canonical("k4").unwrap();
        assert!(ordered(&g).triangles.is_empty());
    }

    #[test]
    fn canon5_reference_edge_faces_d() {
        let g = canon5();
        let o = ordered(&g);
        assert_eq!(o.triangles.len(), 1);
        let d = o.triangles[0].discovery.unwrap();
        let r = d.reference_edge;
        // The face left of the reference edge is inside abc, so its third corner is d.
        let third = g.head(g.face_next(r));
        assert_eq!(third, VertexId(3));
    }

    #[test]
    fn canon7_inner_first() {
        let g = canon7();
        let o = ordered(&g);
        let order: Vec<[u32; 3]> = o.triangles.iter().map(|t| t.origins(&g)).collect();
        assert_eq!(order, vec![[0, 1, 4], [0, 1, 3]]);
    }

    #[test]
    fn nested_chain_order() {
        let k = 30;
        let g = gen_nested_chain(k).unwrap();
        let o = ordered(&g);
        // Triangle a b v_i encloses a b v_j exactly when j > i.
        let apex: Vec<u32> = o.triangles.iter().map(|t| t.origins(&g)[2]).collect();
        let expected: Vec<u32> = (3..3 + k as u32).rev().collect();
        assert_eq!(apex, expected);
    }

    #[test]
    fn disconnected_graph_rejected() {
        let doc = "6 6\nouter 1 0\n0: 1 2\n1: 2 0\n2: 0 1\n3: 4 5\n4: 5 3\n5: 3 4\n";
        let g = crate::embedding::parse_rotation_graph(doc).unwrap();
        assert_eq!(dfs1(&g).unwrap_err(), OrderError::NotConnected { unreachable: 3 });
    }
}
