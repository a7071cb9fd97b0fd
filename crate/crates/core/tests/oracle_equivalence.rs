mod common;

use fourblock::embedding::{validate_triangulation, RotationGraph};
use fourblock::generators::{canon5, canon7, gen_apollonian, gen_canonical, gen_nested_chain};
use fourblock::oracle::{
    brute_4block_tree, brute_separating_triangles, faces_left_of, interior_faces, reference_dfs1,
    reference_dfs2, reference_edge_order, removal_separating_triangles, tree_diff, ContainmentRelation,
};
use fourblock::ordering::order_separating_triangles;
use fourblock::pipeline::run;
use fourblock::triangles::separating_triangles;

use common::{corners, flipped};

fn corpus() -> Vec<(String, RotationGraph)> {
    let mut out: Vec<(String, RotationGraph)> = ["triangle", "k4", "canon5", "canon7"]
        .iter()
        .map(|n| (n.to_string(), gen_canonical(n).unwrap()))
        .collect();
    for seed in 0..12 {
        out.push((format!("apollonian-{seed}"), gen_apollonian(20 + 9 * seed as usize, seed).unwrap()));
    }
    for seed in 0..16 {
        out.push((format!("flipped-{seed}"), flipped(30 + 5 * seed as usize, 40, seed)));
    }
    for k in [1, 2, 7] {
        out.push((format!("chain-{k}"), gen_nested_chain(k).unwrap()));
    }
    out
}

#[test]
fn separating_sets_agree() {
    for (name, g) in corpus() {
        let mut fast: Vec<[u32; 3]> = separating_triangles(&g).iter().map(corners).collect();
        fast.sort_unstable();
        let brute = brute_separating_triangles(&g);
        assert_eq!(fast, brute, "{name}");
        if g.vertex_count() >= 5 {
            assert_eq!(brute, removal_separating_triangles(&g), "{name}");
        }
    }
}

#[test]
fn flipped_instances_leave_the_stacked_class() {
    // Stacked triangulations peel down to K4 by deleting degree-3 vertices.
    fn stacked(g: &RotationGraph) -> bool {
        let n = g.vertex_count();
        let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
        let mut gone = vec![false; n];
        let mut left = n;
        let mut queue: Vec<usize> = (0..n).filter(|&v| deg[v] == 3).collect();
        while let Some(v) = queue.pop() {
            if gone[v] || deg[v] != 3 || left <= 4 {
                continue;
            }
            gone[v] = true;
            left -= 1;
            for w in g.neighbors(fourblock::embedding::VertexId(v as u32)) {
                if !gone[w.index()] {
                    deg[w.index()] -= 1;
                    if deg[w.index()] == 3 {
                        queue.push(w.index());
                    }
                }
            }
        }
        left <= 4
    }
    let general = (0..16)
        .map(|seed| flipped(30 + 5 * seed as usize, 40, seed))
        .filter(|g| !stacked(g) && !brute_separating_triangles(g).is_empty())
        .count();
    assert!(general >= 8, "only {general} general instances with separating triangles");
}

#[test]
fn first_dfs_matches_fundamental_cycle_reference() {
    for (name, g) in corpus() {
        let o = order_separating_triangles(&g, separating_triangles(&g)).unwrap();
        let reference = reference_dfs1(&g);
        for (e, r) in reference.iter().enumerate() {
            let s = &o.dfs.edges[e];
            assert_eq!((g.tail(s.oriented), g.head(s.oriented)), (r.tail, r.head), "{name} e{e}");
            assert_eq!((s.kind, s.lowpt, s.angle), (r.kind, r.lowpt, r.angle), "{name} e{e}");
        }
    }
}

#[test]
fn edge_order_and_times_match_references() {
    for (name, g) in corpus() {
        let o = order_separating_triangles(&g, separating_triangles(&g)).unwrap();
        let lists = reference_edge_order(&g, &o.dfs);
        for v in g.vertices() {
            assert_eq!(o.edge_order.of(v), lists[v.index()].as_slice(), "{name} {v}");
        }
        assert_eq!(o.dfs2.edge_time, reference_dfs2(&g, o.dfs.root, &lists), "{name}");
        for (e, s) in o.dfs.edges.iter().enumerate() {
            assert_eq!(o.dfs2.tree[e], !s.kind.is_back(), "{name} e{e}");
        }
        assert!(o.dfs2.depth_test_agrees, "{name}");
    }
}

#[test]
fn order_extends_containment_and_reference_edges_face_inward() {
    for (name, g) in corpus() {
        let o = order_separating_triangles(&g, separating_triangles(&g)).unwrap();
        let order: Vec<[u32; 3]> = o.triangles.iter().map(corners).collect();
        let mut sorted = order.clone();
        sorted.sort_unstable();
        let rel = ContainmentRelation::new(&g, sorted);
        assert!(rel.is_laminar(), "{name}");
        assert_eq!(rel.check_order(&order), Ok(()), "{name}");

        for t in &o.triangles {
            let d = t.discovery.unwrap();
            let c = corners(t);
            assert_eq!(faces_left_of(&g, d.reference_edge, c), interior_faces(&g, c), "{name} {c:?}");
            // Interior edges are all traversed before the last one.
            let inside = interior_faces(&g, c);
            let faces = g.faces();
            for h in g.half_edges() {
                let e = h.edge().index();
                let strictly_inside = inside.contains(faces.face_left_of(h) as usize)
                    && inside.contains(faces.face_left_of(h.twin()) as usize);
                if strictly_inside {
                    assert!(o.dfs2.edge_time[e] < d.time, "{name} {c:?}");
                }
            }
        }
        // Triangles sharing a last edge are consecutive with increasing internal angle.
        for w in o.triangles.windows(2) {
            let (a, b) = (w[0].discovery.unwrap(), w[1].discovery.unwrap());
            if a.last_edge == b.last_edge {
                assert!(a.internal_angle < b.internal_angle, "{name}");
            }
        }
        let mut seen = std::collections::HashMap::new();
        for (i, t) in o.triangles.iter().enumerate() {
            if let Some(j) = seen.insert(t.discovery.unwrap().last_edge, i) {
                assert_eq!(j + 1, i, "{name}: shared last edge not consecutive");
            }
        }
    }
}

#[test]
fn trees_match_brute_force() {
    for (name, g) in corpus() {
        let brute = brute_4block_tree(&g);
        let (n, m) = (g.vertex_count(), g.edge_count());
        let inner_faces = g.faces().count() - 1;
        let out = run(g, true).unwrap();
        assert_eq!(tree_diff(&out.tree, &brute), None, "{name}");
        let tree = &out.tree;
        assert_eq!(tree.len(), out.stats.separating + 1, "{name}");
        assert!(tree.transfers <= 2 * m, "{name}");
        let total: usize = tree.components.iter().map(|c| c.vertices.len()).sum();
        assert_eq!(total, n + 3 * out.stats.separating, "{name}");
        let mut face_total = 0;
        let mut origins = std::collections::BTreeSet::new();
        for id in 0..tree.len() {
            let sub = tree.component_graph(id).unwrap();
            assert!(validate_triangulation(&sub).is_empty(), "{name} component {id}");
            assert!(separating_triangles(&sub).is_empty(), "{name} component {id}");
            face_total += sub.faces().count() - 1;
            origins.extend(sub.vertices().map(|v| sub.origin(v)));
        }
        // Each separating triangle is an inner face of its parent and the outer face of its child.
        assert_eq!(face_total, inner_faces + out.stats.separating, "{name}");
        assert_eq!(origins.len(), n, "{name}");
    }
}

#[test]
fn fixture_trees() {
    let five = run(canon5(), true).unwrap().tree;
    assert_eq!(tree_diff(&five, &brute_4block_tree(&canon5())), None);
    let seven = run(canon7(), true).unwrap().tree;
    assert_eq!(tree_diff(&seven, &brute_4block_tree(&canon7())), None);
}
