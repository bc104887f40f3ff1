//! Computational tools for small multicolor Ramsey numbers: good-graph
//! enumeration, splittability and arrowing decisions, annealing search for
//! lower-bound colorings, and the named graphs and colorings they revolve around.

pub mod anneal;
pub mod canon;
pub mod coloring;
pub mod constructions;
pub mod detect;
mod embed;
pub mod enumerate;
pub mod error;
pub mod format;
pub mod graph;
pub mod split;
pub mod target;
pub mod verify;

pub use coloring::EdgeColoring;
pub use error::{Error, Result};
pub use graph::Graph;
pub use target::Target;
