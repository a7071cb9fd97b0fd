//! Triangulation instance generators.
//!
//! Randomized instances use `SplitMix64` (as provided by `rand_xoshiro`) seeded
//! with the 64-bit seed; a face among `k` candidates is picked as
//! `(next_u64() * k) >> 64`. Identical parameters yield identical documents.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use thiserror::Error;

use crate::embedding::{parse_rotation_graph, HalfEdgeId, RotationGraph, VertexId};

pub const TRIANGLE: &str = "3 3\nouter 1 0\n0: 1 2\n1: 0 2\n2: 0 1\n";

pub const K4: &str = "4 6\nouter 1 0\n0: 1 3 2\n1: 0 2 3\n2: 0 3 1\n3: 0 1 2\n";

/// Bipyramid over `{a, b, c}` with `d` inside and `e` outside.
pub const CANON5: &str = "5 9\nouter 1 0\n0: 1 3 2 4\n1: 4 2 3 0\n2: 4 0 3 1\n3: 2 0 1\n4: 0 2 1\n";

/// `a, b, c` outer; `d` stacked into `abc`, `e` into `abd`, `f` into `abe`.
pub const CANON7: &str = "6 12\nouter 1 0\n0: 1 5 4 3 2\n1: 0 2 3 4 5\n2: 0 3 1\n3: 0 4 1 2\n4: 0 5 1 3\n5: 0 1 4\n";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("unknown canonical instance {0:?} (expected triangle, k4, canon5 or canon7)")]
    UnknownName(String),
    #[error("apollonian networks need n >= 4, got {0}")]
    TooSmall(usize),
    #[error("nested chains need depth k >= 1, got {0}")]
    EmptyChain(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    Canonical,
    Apollonian,
    NestedChain,
}

impl std::str::FromStr for GenKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "canonical" => Ok(GenKind::Canonical),
            "apollonian" => Ok(GenKind::Apollonian),
            "nested-chain" => Ok(GenKind::NestedChain),
            other => Err(format!("unknown generator kind {other:?}")),
        }
    }
}

/// Parameters of one generated instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenSpec {
    pub kind: GenKind,
    /// Vertex count for apollonian networks, depth for nested chains.
    pub size: usize,
    pub seed: u64,
    /// Fixture name for canonical instances.
    pub name: String,
}

impl GenSpec {
    pub fn generate(&self) -> Result<RotationGraph, GenError> {
        match self.kind {
            GenKind::Canonical => gen_canonical(&self.name),
            GenKind::Apollonian => gen_apollonian(self.size, self.seed),
            GenKind::NestedChain => gen_nested_chain(self.size),
        }
    }
}

pub fn gen_canonical(name: &str) -> Result<RotationGraph, GenError> {
    let doc = match name {
        "triangle" => TRIANGLE,
        "k4" => K4,
        "canon5" => CANON5,
        "canon7" => CANON7,
        other => return Err(GenError::UnknownName(other.to_string())),
    };
    Ok(parse_rotation_graph(doc).expect("frozen fixtures parse"))
}

pub fn canon5() -> RotationGraph {
    gen_canonical("canon5").unwrap()
}

pub fn canon7() -> RotationGraph {
    gen_canonical("canon7").unwrap()
}

/// Triangle `0, 1, 2` whose outer face is left of `1 -> 0`; the inner face is left of `0 -> 1`.
fn base_triangle(capacity: usize) -> (RotationGraph, HalfEdgeId) {
    let mut g = RotationGraph::with_capacity(capacity, 3 * capacity);
    let (a, b, c) = (g.add_vertex(0), g.add_vertex(1), g.add_vertex(2));
    let ab = g.insert_edge(a, None, b, None).unwrap();
    let ac = g.insert_edge(a, Some(ab), c, None).unwrap();
    g.insert_edge(b, None, c, Some(ac.twin())).unwrap();
    g.set_outer_half_edge(ab.twin()).unwrap();
    (g, ab)
}

/// Inserts a new vertex into the triangular face left of `h = x -> y`,
/// joined to its three corners. Faces left of `x -> y`, `y -> z` and `z -> x`
/// are then the three new faces.
fn stack_into(g: &mut RotationGraph, h: HalfEdgeId) -> (VertexId, [HalfEdgeId; 3]) {
    let yz = g.face_next(h);
    let zx = g.face_next(yz);
    let (x, y, z) = (g.tail(h), g.tail(yz), g.tail(zx));
    let d = g.add_vertex(g.vertex_count() as u32);
    // The face sits CCW after x -> y at x, after y -> z at y and after z -> x at z.
    let dx = g.insert_edge(d, None, x, Some(h)).unwrap().0;
    let dy = g.insert_edge(d, Some(HalfEdgeId(dx)), y, Some(yz)).unwrap().0;
    g.insert_edge(d, Some(HalfEdgeId(dy)), z, Some(zx)).unwrap();
    (d, [h, yz, zx])
}

/// Stacked triangulation on `n` vertices: each new vertex goes into a
/// uniformly chosen inner face.
pub fn gen_apollonian(n: usize, seed: u64) -> Result<RotationGraph, GenError> {
    if n < 4 {
        return Err(GenError::TooSmall(n));
    }
    let mut rng = SplitMix64::seed_from_u64(seed);
    let (mut g, inner) = base_triangle(n);
    let mut faces = Vec::with_capacity(2 * n);
    faces.push(inner);
    for _ in 3..n {
        let pick = ((rng.next_u64() as u128 * faces.len() as u128) >> 64) as usize;
        let (_, [xy, yz, zx]) = stack_into(&mut g, faces[pick]);
        faces[pick] = xy;
        faces.push(yz);
        faces.push(zx);
    }
    g.rebuild_index();
    Ok(g)
}

/// `k` nested separating triangles `a b v_i`, obtained by stacking every new
/// vertex into the face left of `a -> b`. Has `k + 4` vertices.
pub fn gen_nested_chain(k: usize) -> Result<RotationGraph, GenError> {
    if k < 1 {
        return Err(GenError::EmptyChain(k));
    }
    let (mut g, ab) = base_triangle(k + 4);
    for _ in 0..=k {
        stack_into(&mut g, ab);
    }
    g.rebuild_index();
    Ok(g)
}
