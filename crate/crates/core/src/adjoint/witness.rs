//! Sign changes of the adjoint along segments certified to lie in the closed region.

use num_traits::Zero;

use crate::exactalg::rat::sign;
use crate::exactalg::{rat, Poly, Rat};
use crate::plane::RatPoint;
use crate::polycon::{segment_in_s, Polycon, RegularityReport, Verdict};

#[derive(Clone, Debug)]
pub struct Witness {
    pub p: RatPoint,
    pub q: RatPoint,
    pub alpha_p: Rat,
    pub alpha_q: Rat,
}

/// The segment `[a, b]` as a witness: inside `S` and with `alpha(a) alpha(b) < 0`.
pub fn certify_segment(p: &Polycon, eps: &[i32], alpha: &Poly, a: &RatPoint, b: &RatPoint) -> Option<Witness> {
    let (va, vb) = (alpha.eval(a.coords()), alpha.eval(b.coords()));
    if sign(&va) * sign(&vb) >= 0 {
        return None;
    }
    segment_in_s(p, eps, a, b).then(|| Witness { p: a.clone(), q: b.clone(), alpha_p: va, alpha_q: vb })
}

/// Searches segments from points on the sides to points of successively finer grids over
/// the bounding box of those points and the vertices. Enumeration order is fixed.
pub fn wachspress_witness(p: &Polycon, reg: &RegularityReport, alpha: &Poly) -> Option<Witness> {
    if reg.verdict != Verdict::Regular || alpha.degree() == 0 {
        return None;
    }
    let eps = reg.sign_vector.as_ref()?;
    let mut anchors = reg.sample_points.clone();
    for side in reg.sides.iter().flat_map(|s| &s.sides) {
        for q in side.points_along(&[2, 4, 8, 16, 32, 64, 128, 256, 512, 1024]).unwrap_or_default() {
            if !anchors.contains(&q) {
                anchors.push(q);
            }
        }
    }
    let pts: Vec<(Rat, Rat)> = p.vertices.iter().chain(&anchors).filter_map(RatPoint::xy).collect();
    let lo_x = pts.iter().map(|p| p.0.clone()).min()?;
    let hi_x = pts.iter().map(|p| p.0.clone()).max()?;
    let lo_y = pts.iter().map(|p| p.1.clone()).min()?;
    let hi_y = pts.iter().map(|p| p.1.clone()).max()?;
    let in_s = |q: &RatPoint| p.components.iter().zip(eps).all(|(c, e)| sign(&c.eval(q.coords())) * e >= 0);
    for n in [4i64, 8, 16, 32, 64] {
        // Grid points inside S where alpha does not vanish, with the sign of alpha.
        let mut grid = vec![];
        for i in 0..=n {
            for j in 0..=n {
                let x = &lo_x + (&hi_x - &lo_x) * rat(i) / rat(n);
                let y = &lo_y + (&hi_y - &lo_y) * rat(j) / rat(n);
                let q = RatPoint::affine(x, y);
                let v = alpha.eval(q.coords());
                if !v.is_zero() && in_s(&q) {
                    grid.push((q, sign(&v)));
                }
            }
        }
        for a in &anchors {
            let sa = sign(&alpha.eval(a.coords()));
            if sa == 0 {
                continue;
            }
            for (q, sq) in &grid {
                if *sq == sa {
                    continue;
                }
                if let Some(w) = certify_segment(p, eps, alpha, a, q) {
                    return Some(w);
                }
            }
        }
    }
    None
}
