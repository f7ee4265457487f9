//! Firefighter process on embedded plane graphs.

pub mod error;
pub mod detect;
pub mod discharge;
pub mod fire;
pub mod graph;
pub mod rates;
pub mod scalar;
pub mod strategy;
pub mod vset;

pub use error::{Error, Result};
pub use graph::generate::{generate, FamilySpec, Solid};
pub use graph::{EmbeddedGraph, Face, Girth};
pub use scalar::Scalar;
pub use vset::VertexSet;

/// Exact rational used for rates and charges.
pub type Rational = num_rational::BigRational;
