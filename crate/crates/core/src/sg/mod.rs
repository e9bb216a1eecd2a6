//! Point configurations and Sylvester–Gallai / Edelstein–Kelly predicates.

mod config;
pub mod gen;
mod ek;
mod lines;
mod spaces;

pub use config::{config_dim, normalize_projective, ColoredConfig, Mode, PointConfig};
pub use ek::{
    check_ek_bound, ek_condition, partial_ek_condition, partial_ek_condition_with_constant, EkBoundReport,
    EkReport, PointRef, PartialEkReport, PARTIAL_EK_CONSTANT,
};
pub use lines::{check_sg_bound, is_delta_sg, lines, ordinary_lines, SgBoundReport};
pub use spaces::common_vector_or_bounded;
