//! Structural detection on plane graphs: face-degree relations, lattice
//! neighbourhoods and local configurations.

pub mod claims;
pub mod classify;
pub mod configs;
pub mod grid;
pub mod relations;
