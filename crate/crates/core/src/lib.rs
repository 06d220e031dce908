//! Densification of sparse scale-free graphs.
//!
//! A seed graph is first subdivided (every edge `uv` becomes a path `u–w–v`)
//! and then replaced by its line graph. Each seed vertex of degree `k` turns
//! into a clique of `k` vertices of degree `k`, so a seed with degree exponent
//! `γ ∈ (2, 3]` yields a graph with exponent `γ − 1` and diverging average
//! degree. The crate provides the transforms, seed generators, the structural
//! metrics used to check the resulting graphs, Louvain community detection and
//! the sweep drivers behind the `netdense` command-line tool.

pub mod community;
pub mod error;
pub mod experiments;
pub mod generators;
pub mod graph;
pub mod io;
pub mod metrics;
pub mod report;
pub mod transforms;

pub use error::{Error, Result};
pub use graph::{build_from_edges, degree_histogram, DegreeHistogram, Graph, VertexId};
pub use transforms::{densify, line_graph, subdivide};
