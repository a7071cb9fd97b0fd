use crate::embedding::{EdgeId, HalfEdgeId, RotationGraph, VertexId, NIL};
use crate::triangles::{Discovery, TriangleRecord};

use super::{DfsState, EdgeKind, EdgeOrder};

/// Stable counting sort of `items` by `key`, whose values lie in `0..domain`.
/// `count` is scratch space, resized as needed.
pub(crate) fn counting_sort<T: Copy>(
    items: &[T],
    domain: usize,
    key: impl Fn(T) -> usize,
    count: &mut Vec<usize>,
) -> Vec<T> {
    count.clear();
    count.resize(domain + 1, 0);
    for &x in items {
        count[key(x) + 1] += 1;
    }
    for i in 1..=domain {
        count[i] += count[i - 1];
    }
    // Every slot is overwritten below.
    let mut out = items.to_vec();
    for &x in items {
        let k = key(x);
        out[count[k]] = x;
        count[k] += 1;
    }
    out
}

/// Positions `0..keys.len()` sorted by `(-lowpt, angle)` with ties in index
/// order, for keys `(lowpt, angle)` with `lowpt < n` and `angle < angle_domain`.
pub fn order_by_edge_key(keys: &[(u32, u32)], n: usize, angle_domain: usize) -> Vec<u32> {
    let idx: Vec<u32> = (0..keys.len() as u32).collect();
    let mut count = Vec::new();
    let by_angle = counting_sort(&idx, angle_domain, |i| keys[i as usize].1 as usize, &mut count);
    counting_sort(&by_angle, n + 1, |i| n - keys[i as usize].0 as usize, &mut count)
}

/// Positions `0..keys.len()` sorted by `(time, internal_angle)` with ties in
/// index order: counting sort by angle, then stable counting sort by time.
pub fn order_by_discovery(keys: &[(u32, u32)], time_domain: usize, angle_domain: usize) -> Vec<u32> {
    let idx: Vec<u32> = (0..keys.len() as u32).collect();
    let mut count = Vec::new();
    let by_angle = counting_sort(&idx, angle_domain, |i| keys[i as usize].1 as usize, &mut count);
    counting_sort(&by_angle, time_domain, |i| keys[i as usize].0 as usize, &mut count)
}

/// Orders each vertex's outgoing oriented edges by `(-lowpt, angle)`, ties kept
/// in edge-id order. Two counting-sort passes over all edges, then a stable
/// partition by tail.
pub fn sort_edges(g: &RotationGraph, state: &DfsState) -> EdgeOrder {
    let n = g.vertex_count();
    let keys: Vec<(u32, u32)> = state.edges.iter().map(|e| (e.lowpt, e.angle)).collect();
    let by_low: Vec<EdgeId> = order_by_edge_key(&keys, n, g.max_degree() + 1).into_iter().map(EdgeId).collect();

    let mut offsets = vec![0u32; n + 1];
    for e in &by_low {
        offsets[g.tail(state.edges[e.index()].oriented).index() + 1] += 1;
    }
    for i in 1..=n {
        offsets[i] += offsets[i - 1];
    }
    let mut fill = offsets.clone();
    let mut halves = vec![HalfEdgeId(NIL); by_low.len()];
    for e in by_low {
        let h = state.edges[e.index()].oriented;
        let slot = &mut fill[g.tail(h).index()];
        halves[*slot as usize] = h;
        *slot += 1;
    }
    EdgeOrder { offsets, halves }
}

fn third(t: &TriangleRecord, v: VertexId, w: VertexId) -> VertexId {
    *t.corners.iter().find(|&&c| c != v && c != w).expect("distinct corners")
}

/// Annotates every triangle with its discovery data and sorts innermost-first:
/// counting sort by internal angle, then stable counting sort by time.
pub fn sort_triangles(
    g: &RotationGraph,
    triangles: Vec<TriangleRecord>,
    state: &DfsState,
    edge_time: &[u32],
) -> Vec<TriangleRecord> {
    let mut annotated = triangles;
    for t in &mut annotated {
        let last = *t
            .sides
            .iter()
            .max_by_key(|h| edge_time[h.edge().index()])
            .expect("three sides");
        let es = &state.edges[last.edge().index()];
        let vw = es.oriented;
        let (v, w) = (g.tail(vw), g.head(vw));
        let u = third(t, v, w);
        let wv = vw.twin();
        let wu = t
            .sides
            .iter()
            .map(|&h| if g.tail(h) == w { h } else { h.twin() })
            .find(|&h| g.tail(h) == w && g.head(h) == u)
            .expect("w and u are adjacent corners");
        let (reference_edge, internal_angle) = if es.kind == EdgeKind::LeftBack {
            (wv, g.angle_between(wv, wu))
        } else {
            (vw, g.angle_between(wu, wv))
        };
        t.discovery = Some(Discovery {
            last_edge: vw,
            time: edge_time[last.edge().index()],
            internal_angle,
            reference_edge,
        });
    }
    let keys: Vec<(u32, u32)> = annotated
        .iter()
        .map(|t| t.discovery.map(|d| (d.time, d.internal_angle)).expect("annotated above"))
        .collect();
    let by_time = order_by_discovery(&keys, g.edge_count().max(1), g.max_degree() + 1);
    let mut slots: Vec<Option<TriangleRecord>> = annotated.into_iter().map(Some).collect();
    by_time.into_iter().map(|i| slots[i as usize].take().expect("permutation")).collect()
}

#[cfg(test)]
mod tests {
    use super::counting_sort;

    #[test]
    fn counting_sort_is_stable() {
        let items = [(3, 'a'), (1, 'b'), (3, 'c'), (0, 'd'), (1, 'e')];
        let mut scratch = Vec::new();
        let out = counting_sort(&items, 4, |(k, _)| k, &mut scratch);
        assert_eq!(out, vec![(0, 'd'), (1, 'b'), (1, 'e'), (3, 'a'), (3, 'c')]);
        assert!(counting_sort(&[] as &[(usize, char)], 1, |(k, _)| k, &mut scratch).is_empty());
    }
}
