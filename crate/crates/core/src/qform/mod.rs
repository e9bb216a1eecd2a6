//! Linear forms, linear spaces and homogeneous quadratic forms.

mod factor;
mod form;
mod linear;
mod locus;
mod projection;

pub use factor::{factor, FactorKind, FactorWitness};
pub use form::QForm;
pub use linear::{perp_project, LinForm, LinSpace};
pub use locus::low_rank_locus_space;
pub use projection::{projection_map, ProjectionMap};
