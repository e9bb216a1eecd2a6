//! Sparse multivariate polynomials, Gröbner bases, and ideal / radical
//! membership.

mod groebner;
mod mpoly;
mod oracle;
mod radical;
mod solve;

pub use groebner::{verify_certificate, GbOptions, GroebnerBasis, MonomialOrder, MAX_VARS};
pub use mpoly::MPoly;
pub use oracle::codim2_oracle;
pub use radical::{
    degree_budget, ideal_member, product_radical_member, product_radical_member_with_budget,
    radical_member, witness_subset, DEFAULT_DEGREE_BUDGET,
};
pub use solve::{rational_point, PointSearch};
