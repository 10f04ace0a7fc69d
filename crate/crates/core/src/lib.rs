//! Enumeration, validation and geometry of planar Tangles.
//!
//! A Tangle is a smooth simple closed curve built from quarter circles of one
//! radius. It is described combinatorially by its dual graph, a polystick on the
//! square lattice whose bounded faces are unit squares. This crate enumerates
//! those graphs, relates them to polyominoes, traces the actual curves and
//! checks the counting inequalities behind their growth constants.

pub mod document;
pub mod dualgraph;
pub mod enumerator;
pub mod geometry;
pub mod grid;
pub mod growth;
pub mod polyomino;

pub use document::GraphDocument;
pub use dualgraph::{DualGraph, GraphError};
pub use enumerator::{count_tables, enumerate_by_class, ClassCount, CountTable, Counts, Kind};
pub use geometry::{GeometryConfig, TangleCurve};
pub use grid::{Dir, GridPoint, LatticeEdge, Symmetry, SymmetryGroup};
