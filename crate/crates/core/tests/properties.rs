mod common;

use fourblock::embedding::{parse_rotation_graph, validate_triangulation, write_rotation_graph, VertexId};
use fourblock::generators::{gen_apollonian, gen_nested_chain};
use fourblock::pipeline::run;
use fourblock::triangles::{list_all_triangles_counted, separating_triangles};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn angles_around_a_vertex_are_complementary(n in 4usize..80, seed in any::<u64>(), pick in any::<u64>()) {
        let g = gen_apollonian(n, seed).unwrap();
        let v = VertexId((pick % n as u64) as u32);
        let nbrs: Vec<VertexId> = g.neighbors(v).collect();
        let d = nbrs.len() as u32;
        for (i, &u) in nbrs.iter().enumerate() {
            let w = nbrs[(i + 1 + (pick as usize >> 8) % (nbrs.len() - 1)) % nbrs.len()];
            let a = g.angle_size(v, u, w).unwrap();
            let b = g.angle_size(v, w, u).unwrap();
            prop_assert_eq!(a + b, d);
            prop_assert_eq!(g.angle_size(v, u, u).unwrap(), 0);
        }
    }

    #[test]
    fn rotation_format_round_trips(n in 3usize..60, flips in 0usize..30, seed in any::<u64>()) {
        let g = if n == 3 { parse_rotation_graph(fourblock::generators::TRIANGLE).unwrap() } else { common::flipped(n.max(5), flips, seed) };
        let text = write_rotation_graph(&g);
        let back = parse_rotation_graph(&text).unwrap();
        prop_assert_eq!(write_rotation_graph(&back), text);
        prop_assert_eq!(back.rotation_lists(), g.rotation_lists());
        prop_assert_eq!(back.outer_half_edge().map(|h| (back.tail(h), back.head(h))),
                        g.outer_half_edge().map(|h| (g.tail(h), g.head(h))));
    }

    #[test]
    fn random_transfers_keep_lists_consistent(n in 5usize..60, seed in any::<u64>(), picks in prop::collection::vec(any::<(u32, u16, u16)>(), 1..12)) {
        let mut g = gen_apollonian(n, seed).unwrap();
        let m = g.half_edge_count();
        for (v, a, b) in picks {
            let v = VertexId(v % g.vertex_count() as u32);
            if g.degree(v) < 2 { continue; }
            let out: Vec<_> = g.outgoing(v).collect();
            let from = out[a as usize % out.len()];
            let to = out[b as usize % out.len()];
            if from == to { continue; }
            let before = g.degree(v);
            let target = g.add_vertex(g.origin(v));
            let moved = g.transfer_arc(v, from, to, target).unwrap();
            prop_assert_eq!(g.degree(v) + moved, before);
            prop_assert_eq!(g.degree(target), moved);
            prop_assert!(g.audit().is_ok());
        }
        prop_assert_eq!(g.half_edge_count(), m);
        g.rebuild_index();
        prop_assert!(g.audit().is_ok());
    }

    #[test]
    fn triangle_count_identity(n in 4usize..120, flips in 0usize..80, seed in any::<u64>()) {
        let g = if flips == 0 { gen_apollonian(n, seed).unwrap() } else { common::flipped(n.max(5), flips, seed) };
        let (all, ops) = list_all_triangles_counted(&g);
        prop_assert_eq!(all.len(), g.faces().count() + separating_triangles(&g).len());
        prop_assert!(ops <= 8 * g.edge_count() as u64);
    }

    #[test]
    fn every_component_is_a_separator_free_triangulation(n in 5usize..100, flips in 0usize..60, seed in any::<u64>()) {
        let g = common::flipped(n, flips, seed);
        let m = g.edge_count();
        let out = run(g, true).unwrap();
        prop_assert!(out.tree.transfers <= 2 * m);
        for id in 0..out.tree.len() {
            let sub = out.tree.component_graph(id).unwrap();
            prop_assert!(validate_triangulation(&sub).is_empty());
            prop_assert!(separating_triangles(&sub).is_empty());
        }
    }
}

#[test]
fn chain_decomposition_is_a_path() {
    let k = 200;
    let out = run(gen_nested_chain(k).unwrap(), true).unwrap();
    assert_eq!(out.tree.len(), k + 1);
    let non_root: Vec<usize> = (0..out.tree.len()).filter(|&i| i != out.tree.root).collect();
    for i in non_root {
        assert_eq!(out.tree.children(i).count(), usize::from(i != 0));
    }
}
