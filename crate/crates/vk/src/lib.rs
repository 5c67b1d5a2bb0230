//! Toolkit for geometric complexity of embeddings of simplicial complexes in
//! Euclidean space: van Kampen obstruction certificates, exact-rational PL
//! geometry and linking numbers, telescope constructions with exponential
//! linking, free-group word computations, and expander distortion experiments.

pub mod cli;
pub mod constructions;
pub mod expander;
pub mod geometry;
pub mod io;
pub mod obstruction;
pub mod simplicial;

pub use simplicial::{DeletedProduct, IntegerCochain, SimplicialComplex};
