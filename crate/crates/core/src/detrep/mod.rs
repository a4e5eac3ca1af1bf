//! Symmetric linear determinantal representations of cubic adjoints: Dixon's
//! construction, the dictionary with three-conic polycons, and deformations.

pub mod deform;
pub mod dictionary;
pub mod divisor;
pub mod dixon;
pub mod matrix;

pub use deform::{check_res_preserv, deform, deform_adjugate, scaling_rigidity, Deformation, ResPreservReport, Rigidity};
pub use dictionary::{ldr_from_polycon, polycon_from_adjugate, polycon_from_ldr, PolyconLdr};
pub use divisor::{contact_divisor, div_eq};
pub use dixon::{divisor_bookkeeping, divisor_collinear, dixon, DivisorBookkeeping, DixonOutput};
pub use matrix::{adjugate, det, AdjugateMatrix, BasisChange, PolyMat, SymLdr};
