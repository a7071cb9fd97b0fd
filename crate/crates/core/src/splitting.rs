//! Splitting along separating triangles and the resulting 4-block tree.
//!
//! Triangles are processed innermost-first. Each split moves the half-edges
//! inside the triangle from its three corners to fresh copies and closes the
//! copies with a new triangle, so the removed part becomes its own component
//! and the triangle stays behind as a face of the remaining graph. All
//! components share one half-edge arena.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::embedding::{BuildError, GraphError, HalfEdgeId, RotationGraph, VertexId, NIL};
use crate::ordering::OrderedTriangleList;
use crate::triangles::TriangleRecord;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SplitError {
    #[error("triangle {0:?} has no reference edge")]
    Unordered([u32; 3]),
    #[error("reference edge of triangle {0:?} no longer joins its corners")]
    DeadReferenceEdge([u32; 3]),
    #[error("side {side} of triangle {corners:?} no longer leaves its corner")]
    DeadSide { corners: [u32; 3], side: HalfEdgeId },
    #[error("graph has no outer half-edge")]
    NoOuterEdge,
    #[error("child component {child} is still unattached after the root absorbed the rest")]
    DanglingLink { child: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Where a component hangs in its parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParentLink {
    pub parent: usize,
    /// Original ids of the parent face, in boundary order from `anchor`.
    pub face: [u32; 3],
    /// A half-edge of the parent component with that face on its left.
    pub anchor: HalfEdgeId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<VertexId>,
    /// Half-edge with the component's outer face on its left.
    pub outer: HalfEdgeId,
    pub parent: Option<ParentLink>,
}

/// The 4-block tree: components over a shared arena plus parent links.
///
/// Components are numbered in creation order; the root comes last.
#[derive(Clone, Debug)]
pub struct FourBlockTree {
    pub graph: RotationGraph,
    pub components: Vec<Component>,
    pub root: usize,
    /// Half-edges moved between vertices over the whole decomposition.
    pub transfers: usize,
}

/// Result of one [`split_triangle`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Split {
    /// Copies of `v1, v2, v3`, where `v1 -> v2` is the reference edge.
    pub copies: [VertexId; 3],
    /// `v1' -> v2'`, `v2' -> v3'`, `v3' -> v1'`.
    pub copy_sides: [HalfEdgeId; 3],
    /// `v1 -> v2`, `v2 -> v3`, `v3 -> v1`: the original sides, interior on the left.
    pub sides: [HalfEdgeId; 3],
    /// Outer half-edge of the new component, `v1' -> v3'`.
    pub outer: HalfEdgeId,
    pub moved: usize,
}

fn labels(g: &RotationGraph, t: &TriangleRecord) -> [u32; 3] {
    t.origins(g)
}

/// Cuts out the interior of `t` into a new component.
pub fn split_triangle(g: &mut RotationGraph, t: &TriangleRecord) -> Result<Split, SplitError> {
    let d = t.discovery.ok_or_else(|| SplitError::Unordered(labels(g, t)))?;
    let v1v2 = d.reference_edge;
    let (v1, v2) = (g.tail(v1v2), g.head(v1v2));
    if !t.corners.contains(&v1) || !t.corners.contains(&v2) || v1 == v2 {
        return Err(SplitError::DeadReferenceEdge(labels(g, t)));
    }
    let v3 = *t.corners.iter().find(|&&c| c != v1 && c != v2).expect("three corners");
    let oriented = |from: VertexId, to: VertexId| -> Result<HalfEdgeId, SplitError> {
        for &h in &t.sides {
            for h in [h, h.twin()] {
                if g.tail(h) == from && g.head(h) == to {
                    return Ok(h);
                }
            }
        }
        Err(SplitError::DeadSide { corners: labels(g, t), side: t.sides[0] })
    };
    let v2v3 = oriented(v2, v3)?;
    let v3v1 = oriented(v3, v1)?;
    let (v1v3, v2v1, v3v2) = (v3v1.twin(), v1v2.twin(), v2v3.twin());

    let c1 = g.add_vertex(g.origin(v1));
    let c2 = g.add_vertex(g.origin(v2));
    let c3 = g.add_vertex(g.origin(v3));
    let mut moved = g.transfer_arc(v1, v1v2, v1v3, c1)?;
    moved += g.transfer_arc(v2, v2v3, v2v1, c2)?;
    moved += g.transfer_arc(v3, v3v1, v3v2, c3)?;

    let last = |g: &RotationGraph, c: VertexId| g.first_half_edge(c).map(|f| g.prev_ccw(f));
    let (a1, a2, a3) = (last(g, c1), last(g, c2), last(g, c3));
    let c1c2 = g.insert_edge(c1, a1, c2, a2)?;
    let c2c3 = g.insert_edge(c2, Some(c1c2.twin()), c3, a3)?;
    let c1c3 = g.insert_edge(c1, Some(a1.unwrap_or(c1c2)), c3, Some(c2c3.twin()))?;

    Ok(Split {
        copies: [c1, c2, c3],
        copy_sides: [c1c2, c2c3, c1c3.twin()],
        sides: [v1v2, v2v3, v3v1],
        outer: c1c3,
        moved,
    })
}

fn collect_component(g: &RotationGraph, start: VertexId, seen: &mut Vec<bool>) -> Vec<VertexId> {
    if seen.len() < g.vertex_count() {
        seen.resize(g.vertex_count(), false);
    }
    let mut out = vec![start];
    seen[start.index()] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for w in g.neighbors(v) {
            if !seen[w.index()] {
                seen[w.index()] = true;
                out.push(w);
                queue.push_back(w);
            }
        }
    }
    out
}

fn face_origins(g: &RotationGraph, h: HalfEdgeId) -> [u32; 3] {
    let n = g.face_next(h);
    [g.origin(g.tail(h)), g.origin(g.head(h)), g.origin(g.head(n))]
}

struct Pending {
    child: Vec<u32>,
}

impl Pending {
    fn take(&mut self, h: HalfEdgeId) -> Option<usize> {
        let slot = self.child.get_mut(h.index())?;
        let c = std::mem::replace(slot, NIL);
        (c != NIL).then_some(c as usize)
    }

    fn set(&mut self, h: HalfEdgeId, child: usize) {
        if self.child.len() <= h.index() {
            self.child.resize(h.index() + 1, NIL);
        }
        self.child[h.index()] = child as u32;
    }
}

/// Splits `g` along every ordered triangle, innermost first.
///
/// After each split the new component adopts every earlier component whose
/// reference edge now lies in it, and then waits for a parent under its own
/// reference edge. The part left at the end is the root.
pub fn decompose(mut g: RotationGraph, ordered: &OrderedTriangleList) -> Result<FourBlockTree, SplitError> {
    let mut components: Vec<Component> = Vec::with_capacity(ordered.triangles.len() + 1);
    let mut pending = Pending { child: vec![NIL; g.half_edge_count()] };
    let mut seen = Vec::new();
    let mut transfers = 0;

    let adopt = |components: &mut Vec<Component>, g: &RotationGraph, child: usize, parent: usize, anchor| {
        components[child].parent = Some(ParentLink { parent, face: face_origins(g, anchor), anchor });
    };

    for t in &ordered.triangles {
        let split = split_triangle(&mut g, t)?;
        transfers += split.moved;
        let id = components.len();
        let vertices = collect_component(&g, split.copies[0], &mut seen);
        for &v in &vertices {
            for h in g.outgoing(v) {
                if let Some(child) = pending.take(h) {
                    adopt(&mut components, &g, child, id, h);
                }
            }
        }
        for (side, copy) in split.sides.into_iter().zip(split.copy_sides) {
            if let Some(child) = pending.take(side) {
                adopt(&mut components, &g, child, id, copy);
            }
        }
        components.push(Component { vertices, outer: split.outer, parent: None });
        pending.set(split.sides[0], id);
    }

    let outer = g.outer_half_edge().ok_or(SplitError::NoOuterEdge)?;
    let root = components.len();
    let vertices = collect_component(&g, g.tail(outer), &mut seen);
    for &v in &vertices {
        for h in g.outgoing(v) {
            if let Some(child) = pending.take(h) {
                adopt(&mut components, &g, child, root, h);
            }
        }
    }
    components.push(Component { vertices, outer, parent: None });
    if let Some(child) = pending.child.iter().position(|&c| c != NIL) {
        return Err(SplitError::DanglingLink { child: pending.child[child] as usize });
    }
    g.rebuild_index();
    Ok(FourBlockTree { graph: g, components, root, transfers })
}

/// Serialized form of a [`FourBlockTree`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDocument {
    pub root: usize,
    pub components: Vec<ComponentDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentDocument {
    pub id: usize,
    pub outer_face: [u32; 3],
    pub vertices: Vec<VertexEntry>,
    pub rotation: Vec<Vec<usize>>,
    pub parent: Option<ParentDocument>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexEntry {
    pub local: usize,
    pub origin: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParentDocument {
    pub id: usize,
    pub face: [u32; 3],
}

impl FourBlockTree {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn children(&self, id: usize) -> impl Iterator<Item = usize> + '_ {
        self.components
            .iter()
            .enumerate()
            .filter(move |(_, c)| c.parent.as_ref().is_some_and(|p| p.parent == id))
            .map(|(i, _)| i)
    }

    /// Original ids of the outer face of component `id`, in boundary order.
    pub fn outer_face(&self, id: usize) -> [u32; 3] {
        face_origins(&self.graph, self.components[id].outer)
    }

    /// Component `id` as a standalone graph; vertex `i` is `components[id].vertices[i]`.
    pub fn component_graph(&self, id: usize) -> Result<RotationGraph, BuildError> {
        let c = &self.components[id];
        self.graph.extract(&c.vertices, c.outer)
    }

    pub fn to_document(&self) -> Result<TreeDocument, BuildError> {
        let mut components = Vec::with_capacity(self.components.len());
        for (id, c) in self.components.iter().enumerate() {
            let sub = self.component_graph(id)?;
            components.push(ComponentDocument {
                id,
                outer_face: self.outer_face(id),
                vertices: sub.vertices().map(|v| VertexEntry { local: v.index(), origin: sub.origin(v) }).collect(),
                rotation: sub.rotation_lists(),
                parent: c.parent.as_ref().map(|p| ParentDocument { id: p.parent, face: p.face }),
            });
        }
        Ok(TreeDocument { root: self.root, components })
    }

    pub fn to_json(&self) -> Result<String, BuildError> {
        let doc = self.to_document()?;
        Ok(serde_json::to_string_pretty(&doc).expect("plain data serializes"))
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph fourblock {\n");
        for (id, c) in self.components.iter().enumerate() {
            let _ = writeln!(out, "  c{id} [label=\"{id}: {} vertices\"];", c.vertices.len());
        }
        for (id, c) in self.components.iter().enumerate() {
            if let Some(p) = &c.parent {
                let [a, b, d] = p.face;
                let _ = writeln!(out, "  c{} -> c{id} [label=\"{a} {b} {d}\"];", p.parent);
            }
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::validate_triangulation;
    use crate::generators::{canon5, canon7, gen_apollonian, gen_canonical, gen_nested_chain};
    use crate::ordering::order_separating_triangles;
    use crate::triangles::separating_triangles;

    fn run(g: RotationGraph) -> FourBlockTree {
        let ordered = order_separating_triangles(&g, separating_triangles(&g)).unwrap();
        decompose(g, &ordered).unwrap()
    }

    fn origin_set(tree: &FourBlockTree, id: usize) -> Vec<u32> {
        let mut o: Vec<u32> = tree.components[id].vertices.iter().map(|&v| tree.graph.origin(v)).collect();
        o.sort_unstable();
        o
    }

    fn sorted(mut t: [u32; 3]) -> [u32; 3] {
        t.sort_unstable();
        t
    }

    #[test]
    fn k4_is_single_node() {
        let tree = run(gen_canonical("k4").unwrap());
        assert_eq!(tree.len(), 1);
        assert_eq!(tree.root, 0);
        assert_eq!(tree.transfers, 0);
        assert!(tree.components[0].parent.is_none());
    }

    #[test]
    fn canon5_two_k4s() {
        let tree = run(canon5());
        assert_eq!(tree.len(), 2);
        assert_eq!(origin_set(&tree, 0), vec![0, 1, 2, 3]);
        assert_eq!(origin_set(&tree, tree.root), vec![0, 1, 2, 4]);
        let link = tree.components[0].parent.as_ref().unwrap();
        assert_eq!(link.parent, tree.root);
        assert_eq!(sorted(link.face), [0, 1, 2]);
        assert_eq!(sorted(tree.outer_face(0)), [0, 1, 2]);
        for id in 0..tree.len() {
            let sub = tree.component_graph(id).unwrap();
            assert_eq!(sub.edge_count(), 6);
            assert!(validate_triangulation(&sub).is_empty());
        }
    }

    #[test]
    fn canon7_chain() {
        let tree = run(canon7());
        assert_eq!(tree.len(), 3);
        assert_eq!(origin_set(&tree, 0), vec![0, 1, 4, 5]);
        assert_eq!(origin_set(&tree, 1), vec![0, 1, 3, 4]);
        assert_eq!(origin_set(&tree, 2), vec![0, 1, 2, 3]);
        let p0 = tree.components[0].parent.as_ref().unwrap();
        let p1 = tree.components[1].parent.as_ref().unwrap();
        assert_eq!((p0.parent, sorted(p0.face)), (1, [0, 1, 4]));
        assert_eq!((p1.parent, sorted(p1.face)), (2, [0, 1, 3]));
    }

    #[test]
    fn components_are_four_connected_triangulations() {
        for seed in 0..8 {
            let g = gen_apollonian(150, seed).unwrap();
            let (n, m) = (g.vertex_count(), g.edge_count());
            let t = separating_triangles(&g).len();
            let tree = run(g);
            assert_eq!(tree.len(), t + 1);
            assert!(tree.transfers <= 2 * m);
            let total: usize = tree.components.iter().map(|c| c.vertices.len()).sum();
            assert_eq!(total, n + 3 * t);
            for id in 0..tree.len() {
                let sub = tree.component_graph(id).unwrap();
                assert!(validate_triangulation(&sub).is_empty());
                assert!(separating_triangles(&sub).is_empty());
                if id != tree.root {
                    let link = tree.components[id].parent.as_ref().unwrap();
                    assert_eq!(sorted(link.face), sorted(tree.outer_face(id)));
                }
            }
            tree.graph.audit().unwrap();
        }
    }

    #[test]
    fn nested_chain_is_a_path() {
        let k = 25;
        let tree = run(gen_nested_chain(k).unwrap());
        assert_eq!(tree.len(), k + 1);
        for id in 0..k {
            assert_eq!(tree.components[id].parent.as_ref().unwrap().parent, id + 1);
        }
    }

    #[test]
    fn json_and_dot() {
        let tree = run(canon5());
        let doc: TreeDocument = serde_json::from_str(&tree.to_json().unwrap()).unwrap();
        assert_eq!(doc.root, 1);
        assert_eq!(doc.components.len(), 2);
        assert!(doc.components[1].parent.is_none());
        assert_eq!(doc.components[0].parent.unwrap().id, 1);
        assert_eq!(doc.components[0].rotation.len(), 4);
        let dot = tree.to_dot();
        assert!(dot.contains("c1 -> c0"));
        assert!(dot.contains("0: 4 vertices"));
    }

    #[test]
    fn unordered_triangle_rejected() {
        let mut g = canon5();
        let t = separating_triangles(&g).remove(0);
        assert!(matches!(split_triangle(&mut g, &t), Err(SplitError::Unordered(_))));
    }
}
