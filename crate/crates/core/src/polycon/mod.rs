//! Polycons: validation, residual arrangement, sides and regularity.

pub mod arrangement;
pub mod generator;
pub mod model;
pub mod regularity;
pub mod sides;

pub use arrangement::{residual_arrangement, Locus, ResidualArrangement, ResidualPoint};
pub use model::{reduce_component, validate, Polycon, ValidationReport};
pub use regularity::{check_regularity, segment_in_s, RegularityReport, Verdict};
pub use sides::{select_sides, Side, SideParam, SideSelection};
