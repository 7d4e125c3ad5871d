//! Twisted Fock space V_L^T = S(ĥ[ν]⁻) ⊗ C[L/N], truncated by quarter-weight.

mod basis;
pub mod eseries;
pub mod checks;
mod space;

pub use basis::{buckets_upto, partition_count, partitions, Bucket, BucketKey, FockMonomial, FockVector, Parts};
pub use checks::{bracket_coefficient, check_brackets, check_linear_relations, check_quadratic_relations};
pub use space::{Beta, FockSpace, OpKey, Root, RootData};
