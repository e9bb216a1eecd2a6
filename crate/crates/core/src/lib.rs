//! Exact toolkit for quadratic Sylvester-Gallai configurations.
//!
//! Everything is computed over the Gaussian rationals with arbitrary
//! precision: quadratic-form rank and minimal spaces, pencil analysis,
//! Groebner-basis ideal and radical membership, point-configuration
//! predicates, triple validation, and a black-box identity tester for
//! sums of three products of quadratics.

pub mod error;
pub mod field;
pub mod linalg;
pub mod ideals;
pub mod json;
pub mod pencil;
pub mod pit;
pub mod poly1;
pub mod qform;
pub mod report;
pub mod quadsg;
pub mod rng;
pub mod selftest;
pub mod sg;

pub use error::{QsgError, Result};
pub use field::Scalar;
