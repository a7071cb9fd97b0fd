use crate::embedding::{EdgeId, HalfEdgeId, RotationGraph, VertexId, NIL};

use super::{DfsEdgeState, DfsState, DfsVertexState, EdgeKind, EdgeOrder, OrderError};

struct Frame {
    v: VertexId,
    cur: HalfEdgeId,
    left: u32,
}

/// Is `o2` strictly further out than `o1`: smaller lowpoint, or equal
/// lowpoint and larger angle.
#[inline]
fn outranks(lowpt: &[u32], angle: &[u32], o2: usize, o1: usize) -> bool {
    lowpt[o2] < lowpt[o1] || (lowpt[o2] == lowpt[o1] && angle[o2] > angle[o1])
}

/// First DFS from the tail of the outer half-edge.
///
/// Orients every edge, classifies it as tree, left back or right back, and
/// computes lowpoints, angles and outermost return edges. Neighbors of a
/// vertex are scanned CCW starting right after the edge to its parent; at
/// the root the virtual parent edge sits in the outer-face corner, between
/// the outer half-edge and its CCW successor.
pub fn dfs1(g: &RotationGraph) -> Result<DfsState, OrderError> {
    let outer = g.outer_half_edge().ok_or(OrderError::NoOuterEdge)?;
    let root = g.tail(outer);
    let (n, m) = (g.vertex_count(), g.edge_count());
    let virt = m;

    let mut depth = vec![NIL; n];
    let mut parent = vec![NIL; n];
    let mut active = vec![NIL; n];
    let mut start = vec![NIL; n];
    let mut oriented = vec![NIL; m];
    let mut kind = vec![EdgeKind::Tree; m];
    // Slot `m` is the root's virtual parent edge.
    let mut lowpt = vec![NIL; m + 1];
    let mut angle = vec![0u32; m + 1];
    let mut ore = vec![NIL; m + 1];

    let parent_slot = |parent: &[u32], v: VertexId| {
        let p = parent[v.index()];
        if p == NIL { virt } else { (p >> 1) as usize }
    };

    depth[root.index()] = 0;
    let root_start = g.next_ccw(outer);
    start[root.index()] = root_start.0;
    let mut stack = vec![Frame { v: root, cur: root_start, left: g.degree(root) as u32 }];
    let mut reached = 1usize;
    let mut steps = 0u64;

    while let Some(top) = stack.last_mut() {
        let v = top.v;
        if top.left == 0 {
            stack.pop();
            let e = parent_slot(&parent, v);
            let o = ore[e];
            if o != NIL {
                lowpt[e] = lowpt[o as usize];
                angle[e] = angle[o as usize];
            }
            if let Some(up) = stack.last() {
                let pe = parent_slot(&parent, up.v);
                let o2 = ore[e];
                if o2 != NIL && (ore[pe] == NIL || outranks(&lowpt, &angle, o2 as usize, ore[pe] as usize)) {
                    ore[pe] = o2;
                }
            }
            continue;
        }
        let h = top.cur;
        top.cur = g.next_ccw(h);
        top.left -= 1;
        steps += 1;
        let eid = h.edge().index();
        if oriented[eid] != NIL {
            continue;
        }
        oriented[eid] = h.0;
        let w = g.head(h);
        if depth[w.index()] == NIL {
            depth[w.index()] = depth[v.index()] + 1;
            parent[w.index()] = h.0;
            active[v.index()] = h.0;
            let s = g.next_ccw(h.twin());
            start[w.index()] = s.0;
            reached += 1;
            stack.push(Frame { v: w, cur: s, left: g.degree(w) as u32 - 1 });
            continue;
        }

        // Back edge v -> w towards an ancestor w.
        let wv = h.twin();
        let wc = HalfEdgeId(active[w.index()]);
        let s = HalfEdgeId(start[w.index()]);
        lowpt[eid] = depth[w.index()];
        if g.angle_between(s, wv) < g.angle_between(s, wc) {
            kind[eid] = EdgeKind::LeftBack;
            angle[eid] = g.angle_between(wv, wc);
        } else {
            kind[eid] = EdgeKind::RightBack;
            angle[eid] = g.angle_between(wc, wv);
        }
        ore[eid] = eid as u32;
        let pe = parent_slot(&parent, v);
        if ore[pe] == NIL || outranks(&lowpt, &angle, eid, ore[pe] as usize) {
            ore[pe] = eid as u32;
        }
    }

    if reached < n {
        return Err(OrderError::NotConnected { unreachable: n - reached });
    }

    let vertices = (0..n)
        .map(|i| DfsVertexState {
            depth: depth[i],
            parent_edge: (parent[i] != NIL).then(|| HalfEdgeId(parent[i])),
            active_child: (active[i] != NIL).then(|| HalfEdgeId(active[i])),
        })
        .collect();
    let edges = (0..m)
        .map(|e| DfsEdgeState {
            oriented: HalfEdgeId(oriented[e]),
            kind: kind[e],
            lowpt: lowpt[e],
            angle: angle[e],
            outermost_return_edge: (ore[e] != NIL).then(|| EdgeId(ore[e])),
        })
        .collect();
    Ok(DfsState {
        root,
        vertices,
        edges,
        root_edge_lowpt: lowpt[virt],
        root_edge_angle: angle[virt],
        root_edge_ore: (ore[virt] != NIL).then(|| EdgeId(ore[virt])),
        steps,
    })
}

/// Result of the second DFS.
#[derive(Clone, Debug)]
pub struct Dfs2Result {
    /// Traversal timestamp per edge, indexed by edge id.
    pub edge_time: Vec<u32>,
    /// Whether the edge led to an unvisited vertex when traversed.
    pub tree: Vec<bool>,
    /// Whether every such tree edge also passed the depth test.
    pub depth_test_agrees: bool,
}

/// Second DFS, scanning each vertex's outgoing oriented edges in `order`.
pub fn dfs2(g: &RotationGraph, state: &DfsState, order: &EdgeOrder) -> Dfs2Result {
    let (n, m) = (g.vertex_count(), g.edge_count());
    let mut edge_time = vec![NIL; m];
    let mut tree = vec![false; m];
    let mut visited = vec![false; n];
    let mut agrees = true;
    let mut now = 0u32;

    // (vertex, next index into its slice)
    let mut stack: Vec<(VertexId, usize)> = vec![(state.root, 0)];
    visited[state.root.index()] = true;
    while let Some(&mut (v, ref mut i)) = stack.last_mut() {
        let list = order.of(v);
        if *i == list.len() {
            stack.pop();
            continue;
        }
        let h = list[*i];
        *i += 1;
        let e = h.edge().index();
        edge_time[e] = now;
        now += 1;
        let w = g.head(h);
        let by_depth = state.vertices[v.index()].depth + 1 == state.vertices[w.index()].depth;
        if !visited[w.index()] {
            tree[e] = true;
            agrees &= by_depth;
            visited[w.index()] = true;
            stack.push((w, 0));
        } else {
            agrees &= !by_depth;
        }
    }
    Dfs2Result { edge_time, tree, depth_test_agrees: agrees }
}
