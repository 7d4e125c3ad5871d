//! Exact computations for the principal subspace of the ν-twisted A2 lattice module.

pub mod analyzer;
pub mod envelope;
pub mod error;
pub mod fock;
pub mod group;
pub mod lattice;
pub mod report;
pub mod scalar;

pub use error::{Error, Result};
