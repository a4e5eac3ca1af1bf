//! How the adjoint meets the boundary: simple intersections at residual points, no real
//! point on the sides, smooth at residual points.

use num_traits::Zero;
use serde::Serialize;

use crate::error::Result;
use crate::exactalg::sturm::{count_roots_open, Bound};
use crate::exactalg::{with_splitting, Poly, Rat};
use crate::plane::{intersection_multiplicity, intersection_multiplicity_block};
use crate::polycon::{residual_arrangement, select_sides, Locus, Polycon};

#[derive(Clone, Debug, Serialize)]
pub struct PointCheck {
    pub locus: String,
    pub component: usize,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SideCheck {
    pub component: usize,
    pub real_zeros_on_side: usize,
    pub vertex_zero: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OffBoundaryReport {
    pub multiplicities: Vec<PointCheck>,
    pub multiplicity_one: bool,
    /// `None` when no sides could be selected.
    pub sides: Option<Vec<SideCheck>>,
    pub off_boundary: Option<bool>,
    pub smooth_at_residual: bool,
    pub passed: bool,
}

fn gradient_nonzero_rational(alpha: &Poly, q: &[Rat; 3]) -> bool {
    alpha.gradient().iter().any(|g| !g.eval(q).is_zero())
}

pub fn verify_off_boundary(p: &Polycon, alpha: &Poly) -> Result<OffBoundaryReport> {
    let arr = residual_arrangement(p)?;
    let mut checks = vec![];
    let mut smooth = true;
    for rp in &arr.points {
        for &i in &rp.components {
            let c = &p.components[i];
            match &rp.locus {
                Locus::Rational(q) => {
                    let m = match intersection_multiplicity(alpha, c, q) {
                        Ok(m) => m,
                        Err(crate::Error::InfiniteMultiplicity) => usize::MAX,
                        Err(e) => return Err(e),
                    };
                    checks.push(PointCheck { locus: q.to_string(), component: i, multiplicity: m });
                }
                Locus::Block(b) => {
                    let parts = match intersection_multiplicity_block(alpha, c, b) {
                        Ok(v) => v,
                        Err(crate::Error::InfiniteMultiplicity) => vec![(b.clone(), usize::MAX)],
                        Err(e) => return Err(e),
                    };
                    for (sub, m) in parts {
                        checks.push(PointCheck { locus: sub.describe(), component: i, multiplicity: m });
                    }
                }
            }
        }
        smooth &= match &rp.locus {
            Locus::Rational(q) => gradient_nonzero_rational(alpha, q.coords()),
            Locus::Block(b) => {
                let grad = alpha.gradient();
                with_splitting(&b.shape, |m| {
                    let c = b.ext_coords_mod(m);
                    for g in &grad {
                        if !g.eval_in(&c).zero_test()? {
                            return Ok(true);
                        }
                    }
                    Ok(false)
                })?
                .iter()
                .all(|(_, ok)| *ok)
            }
        };
    }
    let multiplicity_one = checks.iter().all(|c| c.multiplicity == 1);
    let sides = match select_sides(p, &arr) {
        Ok(sel) => {
            let mut out = vec![];
            for s in &sel.sides {
                let coords = s.pencil_coords();
                let a = alpha.compose_univariate(&coords);
                let zeros = if a.is_zero() {
                    usize::MAX
                } else if s.sigma < 0 {
                    count_roots_open(&a, &Bound::At(Rat::zero()), &Bound::PosInf)
                } else {
                    count_roots_open(&a, &Bound::NegInf, &Bound::At(Rat::zero()))
                };
                let (v1, v2) = p.vertices_of(s.component);
                let vertex_zero = v1.on(alpha) || v2.on(alpha);
                out.push(SideCheck { component: s.component, real_zeros_on_side: zeros, vertex_zero });
            }
            Some(out)
        }
        Err(_) => None,
    };
    let off_boundary = sides.as_ref().map(|v| v.iter().all(|s| s.real_zeros_on_side == 0 && !s.vertex_zero));
    let passed = multiplicity_one && smooth && off_boundary.unwrap_or(true);
    Ok(OffBoundaryReport { multiplicities: checks, multiplicity_one, sides, off_boundary, smooth_at_residual: smooth, passed })
}
