//! Text formats: graph6 for graphs, whitespace-separated matrices for colorings.

pub mod graph6;
pub mod matrix;

pub use graph6::{emit_graph6, parse_graph6, parse_graph6_stream};
pub use matrix::{emit_coloring_matrix, parse_coloring_matrix};
