//! Pencils of quadratic forms: low-rank members, common codimension-two
//! zero spaces, and the three-case classifier for pairs.

mod classify;
mod codim2;
mod lowrank;

pub use classify::{classify_pair, span_contains, CaseSet, CaseThree, CaseTwo};
pub use codim2::{codim2_common, vanishes_on, Codim2, ExtensionCertificate};
pub use lowrank::{low_rank_pencil, matrix_pencil_report, PencilReport};
