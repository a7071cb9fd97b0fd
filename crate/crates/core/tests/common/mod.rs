#![allow(dead_code)]

use fourblock::embedding::{validate_triangulation, RotationGraph, VertexId};
use fourblock::generators::gen_apollonian;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

fn pick(rng: &mut SplitMix64, k: usize) -> usize {
    ((rng.next_u64() as u128 * k as u128) >> 64) as usize
}

/// A stacked triangulation scrambled by `flips` random edge flips, which
/// leaves the stacked class and produces separating triangles with edges
/// strictly inside other ones.
pub fn flipped(n: usize, flips: usize, seed: u64) -> RotationGraph {
    let g = gen_apollonian(n, seed).unwrap();
    let outer = g.outer_half_edge().unwrap();
    let (r, s) = (g.tail(outer).index(), g.head(outer).index());
    let mut lists = g.rotation_lists();
    let mut rng = SplitMix64::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let at = |l: &Vec<usize>, x: usize| l.iter().position(|&y| y == x).unwrap();
    for _ in 0..flips {
        let u = pick(&mut rng, n);
        let v = lists[u][pick(&mut rng, lists[u].len())];
        if (u == r && v == s) || (u == s && v == r) || lists[u].len() <= 3 || lists[v].len() <= 3 {
            continue;
        }
        // Faces u v x (x before u around v) and v u y (y before v around u).
        let lv = &lists[v];
        let x = lv[(at(lv, u) + lv.len() - 1) % lv.len()];
        let lu = &lists[u];
        let y = lu[(at(lu, v) + lu.len() - 1) % lu.len()];
        if x == y || lists[x].contains(&y) {
            continue;
        }
        let iu = at(&lists[u], v);
        lists[u].remove(iu);
        let iv = at(&lists[v], u);
        lists[v].remove(iv);
        let ix = at(&lists[x], u);
        lists[x].insert(ix + 1, y);
        let iy = at(&lists[y], v);
        lists[y].insert(iy + 1, x);
    }
    let origins: Vec<u32> = (0..n as u32).collect();
    let g = RotationGraph::from_rotations(&origins, &lists, (r, s)).unwrap();
    let d = validate_triangulation(&g);
    assert!(d.is_empty(), "flip produced an invalid graph: {d}");
    g
}

pub fn corners(t: &fourblock::triangles::TriangleRecord) -> [u32; 3] {
    t.corners.map(|v: VertexId| v.0)
}
