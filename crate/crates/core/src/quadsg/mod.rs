//! Triples of sets of quadratics: hypothesis validation, span dimension,
//! pair-case statistics and instance generators.

mod generate;
mod theorem;
mod triple;
mod validate;

pub use generate::{generate, random_params, GenParams, RESAMPLE_BUDGET};
pub use theorem::{assert_main_theorem, TheoremReport};
pub use triple::{span_dim, Family, Meta, Mutation, QuadTriple, Violation, ViolationKind};
pub use validate::{
    default_delta, pair_case_statistics, validate_triple, validate_with_delta, CrossPair, MemberStats,
    PartitionStats, ValidationReport,
};
