//! Separating triangles and 4-block trees of embedded planar triangulations.

pub mod embedding;
pub mod generators;
pub mod oracle;
pub mod ordering;
pub mod pipeline;
pub mod splitting;
pub mod triangles;
