//! Adjoint curves: computation, behaviour along the boundary, contact with reduced
//! adjoints, and sign witnesses inside the region.

pub mod boundary;
pub mod compute;
pub mod contact;
pub mod witness;

pub use boundary::{verify_off_boundary, OffBoundaryReport};
pub use compute::{branch_series, compute_adjoint, AdjointCurve, ConditionKind, VanishingCondition};
pub use contact::{contact_check, triangulation_identity, ContactCertificate};
pub use witness::{certify_segment, wachspress_witness, Witness};
