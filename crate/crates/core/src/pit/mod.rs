//! Sums of three products of quadratics: evaluation, expansion oracle,
//! randomized testing and an explicit hitting set.

mod circuit;
pub mod gen;
mod hitting;
mod sz;

pub use circuit::{evaluate, expand_oracle, simplicity_minimality, Circuit, SimplicityReport, ORACLE_MAX_VARS};
pub use hitting::{hitting_set_generate, pit_run, HittingSet, HsParams, PitVerdict};
pub use sz::{sz_test, SzVerdict};
