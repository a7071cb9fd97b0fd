//! Slow, independent reference implementations.
//!
//! Everything here trades speed for directness: exhaustive triple scans,
//! face-set flooding, explicit fundamental cycles and comparison sorts. Vertex
//! triples are sorted dense vertex indices of the input graph.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use fixedbitset::FixedBitSet;

use crate::embedding::{EdgeId, FaceMap, HalfEdgeId, RotationGraph, VertexId};
use crate::ordering::{DfsState, EdgeKind};
use crate::splitting::{Component, FourBlockTree, ParentLink};

fn adjacency(g: &RotationGraph) -> Vec<FixedBitSet> {
    let n = g.vertex_count();
    let mut adj = vec![FixedBitSet::with_capacity(n); n];
    for v in g.vertices() {
        for w in g.neighbors(v) {
            adj[v.index()].insert(w.index());
        }
    }
    adj
}

/// All 3-cliques, by exhaustive scan.
pub fn brute_triangles(g: &RotationGraph) -> Vec<[u32; 3]> {
    let n = g.vertex_count();
    let adj = adjacency(g);
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if !adj[a].contains(b) {
                continue;
            }
            for c in b + 1..n {
                if adj[a].contains(c) && adj[b].contains(c) {
                    out.push([a as u32, b as u32, c as u32]);
                }
            }
        }
    }
    out
}

fn facial_triples(g: &RotationGraph) -> BTreeSet<[u32; 3]> {
    let faces = g.faces();
    faces
        .starts
        .iter()
        .filter_map(|&h| {
            let walk = g.face_walk(h);
            (walk.len() == 3).then(|| {
                let mut t = [g.tail(walk[0]).0, g.tail(walk[1]).0, g.tail(walk[2]).0];
                t.sort_unstable();
                t
            })
        })
        .collect()
}

/// 3-cliques that bound no face, via face walks.
pub fn brute_separating_triangles(g: &RotationGraph) -> Vec<[u32; 3]> {
    let facial = facial_triples(g);
    brute_triangles(g).into_iter().filter(|t| !facial.contains(t)).collect()
}

/// 3-cliques whose removal disconnects the graph.
pub fn removal_separating_triangles(g: &RotationGraph) -> Vec<[u32; 3]> {
    let n = g.vertex_count();
    brute_triangles(g)
        .into_iter()
        .filter(|t| {
            let mut seen = vec![false; n];
            for &c in t {
                seen[c as usize] = true;
            }
            let Some(start) = (0..n).find(|&v| !seen[v]) else {
                return false;
            };
            seen[start] = true;
            let mut reached = 4;
            let mut queue = VecDeque::from([VertexId(start as u32)]);
            while let Some(v) = queue.pop_front() {
                for w in g.neighbors(v) {
                    if !seen[w.index()] {
                        seen[w.index()] = true;
                        reached += 1;
                        queue.push_back(w);
                    }
                }
            }
            reached < n
        })
        .collect()
}

fn triangle_edges(g: &RotationGraph, t: [u32; 3]) -> [EdgeId; 3] {
    let e = |a: u32, b: u32| {
        g.find_half_edge(VertexId(a), VertexId(b)).expect("triangle sides exist").edge()
    };
    [e(t[0], t[1]), e(t[1], t[2]), e(t[0], t[2])]
}

fn flood(g: &RotationGraph, faces: &FaceMap, from: HalfEdgeId, walls: &[EdgeId; 3]) -> FixedBitSet {
    let mut set = FixedBitSet::with_capacity(faces.count());
    let start = faces.face_left_of(from) as usize;
    set.insert(start);
    let mut queue = VecDeque::from([start]);
    while let Some(f) = queue.pop_front() {
        for h in g.face_walk(faces.starts[f]) {
            if walls.contains(&h.edge()) {
                continue;
            }
            let other = faces.face_left_of(h.twin()) as usize;
            if !set.contains(other) {
                set.insert(other);
                queue.push_back(other);
            }
        }
    }
    set
}

/// Faces reachable from the face left of `h` without crossing a side of `t`.
pub fn faces_left_of(g: &RotationGraph, h: HalfEdgeId, t: [u32; 3]) -> FixedBitSet {
    flood(g, &g.faces(), h, &triangle_edges(g, t))
}

/// Faces inside `t`: the side of `t` away from the outer face.
pub fn interior_faces(g: &RotationGraph, t: [u32; 3]) -> FixedBitSet {
    let faces = g.faces();
    interior_with(g, &faces, t)
}

fn interior_with(g: &RotationGraph, faces: &FaceMap, t: [u32; 3]) -> FixedBitSet {
    let walls = triangle_edges(g, t);
    let outer = faces.face_left_of(g.outer_half_edge().expect("outer half-edge")) as usize;
    let h = g.find_half_edge(VertexId(t[0]), VertexId(t[1])).expect("side");
    let side = flood(g, faces, h, &walls);
    if side.contains(outer) {
        flood(g, faces, h.twin(), &walls)
    } else {
        side
    }
}

/// Strict face-set inclusion among separating triangles.
#[derive(Clone, Debug)]
pub struct ContainmentRelation {
    pub triangles: Vec<[u32; 3]>,
    pub interiors: Vec<FixedBitSet>,
    /// Innermost triangle strictly containing each one.
    pub parent: Vec<Option<usize>>,
}

impl ContainmentRelation {
    pub fn new(g: &RotationGraph, triangles: Vec<[u32; 3]>) -> Self {
        let faces = g.faces();
        let interiors: Vec<FixedBitSet> = triangles.iter().map(|&t| interior_with(g, &faces, t)).collect();
        let k = triangles.len();
        let mut parent = vec![None; k];
        for i in 0..k {
            let mut best: Option<usize> = None;
            for j in 0..k {
                if i != j && Self::strict_subset(&interiors[i], &interiors[j]) {
                    let smaller = best.is_none_or(|b| interiors[j].count_ones(..) < interiors[b].count_ones(..));
                    if smaller {
                        best = Some(j);
                    }
                }
            }
            parent[i] = best;
        }
        ContainmentRelation { triangles, interiors, parent }
    }

    fn strict_subset(a: &FixedBitSet, b: &FixedBitSet) -> bool {
        a.is_subset(b) && a.count_ones(..) < b.count_ones(..)
    }

    /// Whether the interior of triangle `inner` lies strictly inside `outer`.
    pub fn contains(&self, outer: usize, inner: usize) -> bool {
        Self::strict_subset(&self.interiors[inner], &self.interiors[outer])
    }

    /// Any two interiors are nested or disjoint.
    pub fn is_laminar(&self) -> bool {
        let k = self.triangles.len();
        (0..k).all(|i| {
            (i + 1..k).all(|j| {
                let (a, b) = (&self.interiors[i], &self.interiors[j]);
                a.is_subset(b) || b.is_subset(a) || a.is_disjoint(b)
            })
        })
    }

    pub fn index_of(&self, t: [u32; 3]) -> Option<usize> {
        self.triangles.iter().position(|&x| x == t)
    }

    /// Whether `order` (a permutation of the triangles) puts every triangle before
    /// all triangles containing it. Returns the first violating pair.
    pub fn check_order(&self, order: &[[u32; 3]]) -> Result<(), ([u32; 3], [u32; 3])> {
        let pos: HashMap<[u32; 3], usize> = order.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        for i in 0..self.triangles.len() {
            for j in 0..self.triangles.len() {
                if self.contains(j, i) && pos[&self.triangles[i]] > pos[&self.triangles[j]] {
                    return Err((self.triangles[i], self.triangles[j]));
                }
            }
        }
        Ok(())
    }
}

/// 4-block tree built from face sets: each component is the subgraph induced by
/// the faces a separating triangle owns, and the root owns what is left.
pub fn brute_4block_tree(g: &RotationGraph) -> FourBlockTree {
    let faces = g.faces();
    let mut rel = ContainmentRelation::new(g, brute_separating_triangles(g));
    // Innermost first; root last.
    let k = rel.triangles.len();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&i| rel.interiors[i].count_ones(..));
    let rank: Vec<usize> = {
        let mut r = vec![0; k];
        for (pos, &i) in order.iter().enumerate() {
            r[i] = pos;
        }
        r
    };
    rel.parent = rel.parent.iter().map(|p| p.map(|j| rank[j])).collect();
    let reordered = order;

    let all = {
        let mut s = FixedBitSet::with_capacity(faces.count());
        s.insert_range(..);
        s
    };
    let mut owned: Vec<FixedBitSet> = reordered.iter().map(|&i| rel.interiors[i].clone()).collect();
    owned.push(all);
    for (pos, &i) in reordered.iter().enumerate() {
        let parent = rel.parent[i].unwrap_or(k);
        let taken = rel.interiors[reordered[pos]].clone();
        owned[parent].difference_with(&taken);
    }

    // Vertex sets and outer-face corners of each component.
    let outer_g = g.outer_half_edge().expect("outer half-edge");
    let mut pieces: Vec<(Vec<VertexId>, [VertexId; 3])> = Vec::with_capacity(k + 1);
    for id in 0..=k {
        let mut verts = BTreeSet::new();
        for f in owned[id].ones() {
            for h in g.face_walk(faces.starts[f]) {
                verts.insert(g.tail(h));
            }
        }
        let corners = if id == k {
            triangle_corners(g, outer_g)
        } else {
            rel.triangles[reordered[id]].map(VertexId)
        };
        verts.extend(corners);
        for (pos, &i) in reordered.iter().enumerate() {
            if pos != id && rel.parent[i].unwrap_or(k) == id {
                verts.extend(rel.triangles[i].map(VertexId));
            }
        }
        pieces.push((verts.into_iter().collect(), corners));
    }

    // One arena holding all components side by side.
    let mut origins = Vec::new();
    let mut lists: Vec<Vec<usize>> = Vec::new();
    let mut offsets = Vec::with_capacity(k + 1);
    for (verts, _) in &pieces {
        let base = origins.len();
        offsets.push(base);
        let local: HashMap<VertexId, usize> = verts.iter().enumerate().map(|(i, &v)| (v, base + i)).collect();
        for &v in verts {
            origins.push(g.origin(v));
            lists.push(g.neighbors(v).filter_map(|w| local.get(&w).copied()).collect());
        }
    }
    let locate = |pieces: &Vec<(Vec<VertexId>, [VertexId; 3])>, id: usize, v: VertexId| {
        offsets[id] + pieces[id].0.binary_search(&v).expect("vertex in component")
    };
    let root_outer = (locate(&pieces, k, g.tail(outer_g)), locate(&pieces, k, g.head(outer_g)));
    let arena = RotationGraph::from_rotations(&origins, &lists, root_outer).expect("induced rotations are symmetric");

    // Half-edge of component `id` joining `a` and `b` with `c` as the third corner on its left.
    let find_face = |id: usize, [a, b, c]: [VertexId; 3]| -> HalfEdgeId {
        let (la, lb, lc) = (
            VertexId(locate(&pieces, id, a) as u32),
            VertexId(locate(&pieces, id, b) as u32),
            VertexId(locate(&pieces, id, c) as u32),
        );
        let h = arena.find_half_edge(la, lb).expect("side present");
        if arena.head(arena.face_next(h)) == lc {
            h
        } else {
            debug_assert_eq!(arena.head(arena.face_next(h.twin())), lc);
            h.twin()
        }
    };

    let mut components = Vec::with_capacity(k + 1);
    for (id, (verts, corners)) in pieces.iter().enumerate() {
        let corners = *corners;
        let comp_outer = find_face(id, corners);
        let parent = (id < k).then(|| {
            let p = rel.parent[reordered[id]].unwrap_or(k);
            let anchor = find_face(p, corners);
            let n = arena.face_next(anchor);
            let face = [arena.origin(arena.tail(anchor)), arena.origin(arena.head(anchor)), arena.origin(arena.head(n))];
            ParentLink { parent: p, face, anchor }
        });
        let vertices = (0..verts.len()).map(|i| VertexId((offsets[id] + i) as u32)).collect();
        components.push(Component { vertices, outer: comp_outer, parent });
    }
    FourBlockTree { graph: arena, components, root: k, transfers: 0 }
}

fn triangle_corners(g: &RotationGraph, h: HalfEdgeId) -> [VertexId; 3] {
    [g.tail(h), g.head(h), g.head(g.face_next(h))]
}

type Signature = (Vec<u32>, [u32; 3], Option<[u32; 3]>);

fn signatures(t: &FourBlockTree) -> Vec<Signature> {
    t.components
        .iter()
        .enumerate()
        .map(|(id, c)| {
            let mut origins: Vec<u32> = c.vertices.iter().map(|&v| t.graph.origin(v)).collect();
            origins.sort_unstable();
            let mut outer = t.outer_face(id);
            outer.sort_unstable();
            let face = c.parent.as_ref().map(|p| {
                let mut f = p.face;
                f.sort_unstable();
                f
            });
            (origins, outer, face)
        })
        .collect()
}

fn canonical_root(t: &FourBlockTree, table: &mut BTreeMap<(Signature, Vec<usize>), usize>) -> Option<usize> {
    let sigs = signatures(t);
    let k = t.components.len();
    let mut children = vec![Vec::new(); k];
    for (i, c) in t.components.iter().enumerate() {
        if let Some(p) = &c.parent {
            children[p.parent].push(i);
        }
    }
    // Post-order without recursion.
    let mut canon = vec![usize::MAX; k];
    let mut stack = vec![(t.root, false)];
    let mut visited = 0;
    while let Some((v, expanded)) = stack.pop() {
        if expanded {
            let mut kids: Vec<usize> = children[v].iter().map(|&c| canon[c]).collect();
            kids.sort_unstable();
            let next = table.len();
            canon[v] = *table.entry((sigs[v].clone(), kids)).or_insert(next);
            visited += 1;
            continue;
        }
        stack.push((v, true));
        for &c in &children[v] {
            stack.push((c, false));
        }
    }
    (visited == k).then_some(canon[t.root])
}

/// Root-preserving isomorphism of two trees, matching every component's origin
/// multiset, outer face and parent face.
pub fn trees_isomorphic(a: &FourBlockTree, b: &FourBlockTree) -> bool {
    let mut table = BTreeMap::new();
    match (canonical_root(a, &mut table), canonical_root(b, &mut table)) {
        (Some(x), Some(y)) => x == y,
        _ => false,
    }
}

/// A short description of how two trees differ, or `None` if they are isomorphic.
pub fn tree_diff(a: &FourBlockTree, b: &FourBlockTree) -> Option<String> {
    if trees_isomorphic(a, b) {
        return None;
    }
    if a.len() != b.len() {
        return Some(format!("component counts differ: {} vs {}", a.len(), b.len()));
    }
    let (mut sa, mut sb) = (signatures(a), signatures(b));
    sa.sort();
    sb.sort();
    for (x, y) in sa.iter().zip(&sb) {
        if x != y {
            return Some(format!(
                "first differing component: vertices {:?} outer {:?} parent face {:?} vs vertices {:?} outer {:?} parent face {:?}",
                x.0, x.1, x.2, y.0, y.1, y.2
            ));
        }
    }
    Some("same components, different parent structure".to_string())
}

/// Per-edge attributes computed by [`reference_dfs1`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReferenceEdge {
    pub tail: VertexId,
    pub head: VertexId,
    pub kind: EdgeKind,
    pub lowpt: u32,
    pub angle: u32,
}

fn ccw_steps(g: &RotationGraph, v: VertexId, from: VertexId, to: VertexId) -> u32 {
    let list: Vec<VertexId> = g.neighbors(v).collect();
    let i = list.iter().position(|&x| x == from).expect("neighbor") as i64;
    let j = list.iter().position(|&x| x == to).expect("neighbor") as i64;
    (j - i).rem_euclid(list.len() as i64) as u32
}

/// First DFS computed the long way: same neighbor scan order, but back-edge
/// sides come from the explicit tree path and every tree edge takes the
/// maximum key over all fundamental cycles through it.
pub fn reference_dfs1(g: &RotationGraph) -> Vec<ReferenceEdge> {
    let n = g.vertex_count();
    let outer = g.outer_half_edge().expect("outer half-edge");
    let root = g.tail(outer);
    let mut depth = vec![u32::MAX; n];
    let mut parent: Vec<Option<VertexId>> = vec![None; n];
    let mut oriented: HashMap<(u32, u32), (VertexId, VertexId)> = HashMap::new();
    let key = |a: VertexId, b: VertexId| (a.0.min(b.0), a.0.max(b.0));

    fn visit(
        g: &RotationGraph,
        v: VertexId,
        first: VertexId,
        count: usize,
        depth: &mut Vec<u32>,
        parent: &mut Vec<Option<VertexId>>,
        oriented: &mut HashMap<(u32, u32), (VertexId, VertexId)>,
    ) {
        let list: Vec<VertexId> = g.neighbors(v).collect();
        let s = list.iter().position(|&x| x == first).expect("start neighbor");
        for i in 0..count {
            let w = list[(s + i) % list.len()];
            let k = (v.0.min(w.0), v.0.max(w.0));
            if oriented.contains_key(&k) {
                continue;
            }
            oriented.insert(k, (v, w));
            if depth[w.index()] == u32::MAX {
                depth[w.index()] = depth[v.index()] + 1;
                parent[w.index()] = Some(v);
                let after_parent = {
                    let wl: Vec<VertexId> = g.neighbors(w).collect();
                    let p = wl.iter().position(|&x| x == v).expect("parent");
                    wl[(p + 1) % wl.len()]
                };
                visit(g, w, after_parent, g.degree(w) - 1, depth, parent, oriented);
            }
        }
    }

    depth[root.index()] = 0;
    let start = g.head(g.next_ccw(outer));
    visit(g, root, start, g.degree(root), &mut depth, &mut parent, &mut oriented);
    let outer_head = g.head(outer);

    let mut edges: Vec<ReferenceEdge> = (0..g.edge_count())
        .map(|e| {
            let h = EdgeId(e as u32).halves()[0];
            let (v, w) = oriented[&key(g.tail(h), g.head(h))];
            let kind = if parent[w.index()] == Some(v) { EdgeKind::Tree } else { EdgeKind::RightBack };
            ReferenceEdge { tail: v, head: w, kind, lowpt: 0, angle: 0 }
        })
        .collect();

    // Back edges: side and angle from the explicit path w -> c -> ... -> v.
    let mut cycles: Vec<(usize, Vec<usize>)> = Vec::new();
    for (e, edge) in edges.iter_mut().enumerate() {
        if edge.kind == EdgeKind::Tree {
            continue;
        }
        let (v, w) = (edge.tail, edge.head);
        let mut path = Vec::new();
        let mut x = v;
        let mut c = v;
        while x != w {
            let p = parent[x.index()].expect("w is an ancestor of v");
            path.push(g.find_half_edge(p, x).expect("tree edge").edge().index());
            c = x;
            x = p;
        }
        let vwc = ccw_steps(g, w, v, c);
        let left = match parent[w.index()] {
            Some(p) => vwc < ccw_steps(g, w, p, c),
            None => vwc < ccw_steps(g, w, outer_head, c),
        };
        edge.lowpt = depth[w.index()];
        if left {
            edge.kind = EdgeKind::LeftBack;
            edge.angle = vwc;
        } else {
            edge.angle = ccw_steps(g, w, c, v);
        }
        cycles.push((e, path));
    }
    let mut best: Vec<Option<(u32, u32)>> = vec![None; edges.len()];
    for (b, path) in &cycles {
        let cand = (edges[*b].lowpt, edges[*b].angle);
        for &t in path {
            let better = match best[t] {
                None => true,
                Some((l, a)) => cand.0 < l || (cand.0 == l && cand.1 > a),
            };
            if better {
                best[t] = Some(cand);
            }
        }
    }
    for (e, b) in best.into_iter().enumerate() {
        if let Some((l, a)) = b {
            if edges[e].kind == EdgeKind::Tree {
                edges[e].lowpt = l;
                edges[e].angle = a;
            }
        }
    }
    edges
}

/// Each vertex's outgoing oriented edges, comparison-sorted by `(-lowpt, angle)`
/// with ties in edge-id order.
pub fn reference_edge_order(g: &RotationGraph, state: &DfsState) -> Vec<Vec<HalfEdgeId>> {
    let mut lists = vec![Vec::new(); g.vertex_count()];
    for e in &state.edges {
        lists[g.tail(e.oriented).index()].push(e.oriented);
    }
    for l in &mut lists {
        l.sort_by_key(|&h| {
            let s = state.edge(h);
            (std::cmp::Reverse(s.lowpt), s.angle, h.edge())
        });
    }
    lists
}

/// Recursive second DFS over explicit lists; returns the timestamp of each edge.
pub fn reference_dfs2(g: &RotationGraph, root: VertexId, lists: &[Vec<HalfEdgeId>]) -> Vec<u32> {
    fn go(g: &RotationGraph, v: VertexId, lists: &[Vec<HalfEdgeId>], seen: &mut [bool], now: &mut u32, time: &mut [u32]) {
        for &h in &lists[v.index()] {
            time[h.edge().index()] = *now;
            *now += 1;
            let w = g.head(h);
            if !seen[w.index()] {
                seen[w.index()] = true;
                go(g, w, lists, seen, now, time);
            }
        }
    }
    let mut seen = vec![false; g.vertex_count()];
    seen[root.index()] = true;
    let mut time = vec![u32::MAX; g.edge_count()];
    let mut now = 0;
    go(g, root, lists, &mut seen, &mut now, &mut time);
    time
}
