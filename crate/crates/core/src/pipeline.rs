//! End-to-end decomposition with per-phase timings.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::embedding::{validate_triangulation, Diagnostics, RotationGraph};
use crate::ordering::{order_separating_triangles, OrderError};
use crate::splitting::{decompose, FourBlockTree, SplitError};
use crate::triangles::{separating_triangles_counted, TriangleRecord};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("input is not a valid triangulation:\n{0}")]
    Invalid(Diagnostics),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Split(#[from] SplitError),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PhaseTimings {
    pub validate: Duration,
    pub triangles: Duration,
    pub ordering: Duration,
    pub splitting: Duration,
}

impl PhaseTimings {
    pub fn total(&self) -> Duration {
        self.validate + self.triangles + self.ordering + self.splitting
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PipelineStats {
    pub vertices: usize,
    pub edges: usize,
    pub separating: usize,
    /// Adjacency steps of the triangle listing.
    pub triangle_ops: u64,
    /// Incidence entries scanned by the first DFS.
    pub dfs_steps: u64,
    pub transfers: usize,
    pub timings: PhaseTimings,
}

impl PipelineStats {
    /// Every counted operation.
    pub fn operations(&self) -> u64 {
        self.triangle_ops + self.dfs_steps + 2 * self.edges as u64 + self.transfers as u64
    }
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    /// Separating triangles innermost-first, with discovery data.
    pub order: Vec<TriangleRecord>,
    pub tree: FourBlockTree,
    pub stats: PipelineStats,
}

/// Lists, orders and splits along the separating triangles of `g`.
///
/// With `validate` set, `g` is checked first and rejected if it is not a
/// valid embedded triangulation.
pub fn run(mut g: RotationGraph, validate: bool) -> Result<Decomposition, PipelineError> {
    let mut timings = PhaseTimings::default();
    let clock = Instant::now();
    if validate {
        let d = validate_triangulation(&g);
        if !d.is_empty() {
            return Err(PipelineError::Invalid(d));
        }
    }
    g.rebuild_index();
    timings.validate = clock.elapsed();

    let clock = Instant::now();
    let (triangles, triangle_ops) = separating_triangles_counted(&g);
    timings.triangles = clock.elapsed();

    let clock = Instant::now();
    let ordered = order_separating_triangles(&g, triangles)?;
    timings.ordering = clock.elapsed();

    let (vertices, edges) = (g.vertex_count(), g.edge_count());
    let clock = Instant::now();
    let tree = decompose(g, &ordered)?;
    timings.splitting = clock.elapsed();

    let stats = PipelineStats {
        vertices,
        edges,
        separating: ordered.triangles.len(),
        triangle_ops,
        dfs_steps: ordered.dfs.steps,
        transfers: tree.transfers,
        timings,
    };
    Ok(Decomposition { order: ordered.triangles, tree, stats })
}
