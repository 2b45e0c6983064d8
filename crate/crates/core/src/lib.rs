//! Exact perfect-matching counts for line graphs of graphs with degrees in
//! {2, 3}, their count-preserving rewrites, and the lattice families built
//! from them (hexagonal, 3.12.12, Kagomé, Sierpinski gasket).

pub mod counters;
pub mod error;
pub mod graph;
pub mod io;
pub mod lattices;
pub mod linegraph;
pub mod random;
pub mod reduction;
pub mod transforms;

pub use counters::{count_brute, count_frontier, Algorithm, CountResult};
pub use error::{CountError, FormatError, GraphError, LineGraphError, TransformError};
pub use graph::{EdgeId, GraphBuilder, MultiGraph, VertexId};
