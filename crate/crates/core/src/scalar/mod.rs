//! Exact scalars over Q(i), quarter-integer grading, and exact linear algebra.

pub mod gaussian;
pub mod matrix;
pub mod quarter;
pub mod rational;

pub use gaussian::{GaussianRational, GR};
pub use matrix::{is_zero_vec, span_membership, Echelon, ExactMatrix};
pub use quarter::{QuarterClass, QuarterInt};
pub use rational::Q;
