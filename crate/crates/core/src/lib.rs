//! Exact invariants of link diagrams.
//!
//! Diagrams are planar-diagram codes ([`Diagram`]); everything downstream
//! (colorings, skein polynomials, cover groups, vertex models) consumes
//! them and returns exact values.

pub mod algebra;
pub mod codec;
pub mod coloring;
pub mod construct;
pub mod diagram;
pub mod error;
pub mod fixtures;
pub mod groups;
pub mod moves;
pub mod polynomials;
pub mod statmech;
pub mod verify;
mod net;

pub use diagram::{
    ArcDecomposition, ComponentData, Crossing, Diagram, EdgeId, HalfInteger, Orientation,
    Topology, ValidationReport,
};
pub use error::{KnotError, Result};
