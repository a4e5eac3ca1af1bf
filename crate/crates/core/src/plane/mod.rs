//! Projective plane geometry of lines and conics over Q and its finite extensions.

pub mod conic;
pub mod fulton;
pub mod intersect;
pub mod local;
pub mod point;

pub use conic::{classify_conic, ConicClass, ConicParam};
pub use fulton::{intersection_multiplicity, intersection_multiplicity_block};
pub use intersect::{intersect_conics, intersect_curves, shares_component};
pub use local::local_length;
pub use point::{Block, PointSet, RatPoint};

use crate::exactalg::{monomials_of_degree, Poly, RatMatrix};

/// A basis of the forms of degree `d` vanishing at all `points`.
pub fn forms_through(d: usize, points: &[RatPoint]) -> Vec<Poly> {
    let basis = monomials_of_degree(d);
    let rows: Vec<Vec<_>> = points
        .iter()
        .map(|p| basis.iter().map(|e| Poly::monomial(crate::exactalg::rat(1), *e).eval(p.coords())).collect())
        .collect();
    let m = if rows.is_empty() { RatMatrix::zeros(0, basis.len()) } else { RatMatrix::from_rows(rows) };
    m.nullspace().iter().map(|v| Poly::from_coeff_vector(&basis, v)).collect()
}
