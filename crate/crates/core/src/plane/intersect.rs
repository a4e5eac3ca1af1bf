//! Intersection of plane curves by projection and subresultants.
//!
//! After a change of coordinates `A` that puts the projection centre `(1:0:0)` off both
//! curves and off the line joining any two common points, the resultant with respect
//! to `x0` factors over the fibres; each squarefree factor of multiplicity `k` carries
//! intersection points of multiplicity `k`, and the fibre gcd recovers `x0`.

use rand::{Rng, SeedableRng};
use num_traits::Zero;
use rand_chacha::ChaCha8Rng;

use super::point::{canonicalize, PointSet, RatPoint};
use crate::error::{Error, Result};
use crate::exactalg::ext::{epoly_gcd, EPoly};
use crate::exactalg::{rat, resultant, with_splitting, ExtElem, Poly, Rat, RatMatrix, Ring, UPoly};

pub(crate) fn coordinate_changes() -> impl Iterator<Item = [[Rat; 3]; 3]> {
    let id = std::array::from_fn(|i| std::array::from_fn(|j| rat((i == j) as i64)));
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let randoms = (0..80).filter_map(move |k| {
        let bound = 1 + (k / 10) as i64;
        let a: [[Rat; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| rat(rng.gen_range(-bound..=bound))));
        (!RatMatrix::from_3x3(&a).det().is_zero()).then_some(a)
    });
    std::iter::once(id).chain(randoms)
}

fn fibre_poly(f: &Poly, t: &ExtElem) -> EPoly {
    let one = t.one_like();
    let zero = t.zero_like();
    f.coefficients_in(0).iter().map(|c| c.eval_in(&[zero.clone(), t.clone(), one.clone()])).collect()
}

/// All intersection points of two curves without common component, with multiplicities,
/// after removing one unit of multiplicity at each point of `known`.
pub fn intersect_curves(f: &Poly, g: &Poly, known: &[RatPoint]) -> Result<PointSet> {
    if f.is_zero() || g.is_zero() || !f.is_homogeneous() || !g.is_homogeneous() {
        return Err(Error::PreconditionViolation("intersection needs nonzero homogeneous forms".into()));
    }
    let (df, dg) = (f.degree(), g.degree());
    if df == 0 || dg == 0 {
        let mut out = PointSet::default();
        for p in known {
            out.deflate(p)?;
        }
        return Ok(out);
    }
    for a in coordinate_changes() {
        let (fa, ga) = (f.transform(&a), g.transform(&a));
        if fa.coeff(&[df as u32, 0, 0]).is_zero() || ga.coeff(&[dg as u32, 0, 0]).is_zero() {
            continue;
        }
        let r = resultant(&fa, &ga, 0)?;
        if r.is_zero() {
            return Err(Error::SharedComponent);
        }
        let n = (df * dg) as u32;
        if r.coeff(&[0, n, 0]).is_zero() {
            continue;
        }
        let ru = r.compose_univariate(&[UPoly::zero(), UPoly::x(), UPoly::one()]);
        let mut out = PointSet::default();
        let mut generic = true;
        'factors: for (rk, k) in ru.squarefree_decomposition() {
            let parts = with_splitting(&rk, |m| {
                let t = ExtElem::generator(m);
                let h = epoly_gcd(&fibre_poly(&fa, &t), &fibre_poly(&ga, &t))?;
                Ok((h.len() == 2).then(|| h[0].neg().value().clone()))
            })?;
            for (m, x0) in parts {
                let Some(x0) = x0 else {
                    generic = false;
                    break 'factors;
                };
                let local = [x0, UPoly::x(), UPoly::one()];
                let coords: [UPoly; 3] = std::array::from_fn(|i| {
                    (0..3).fold(UPoly::zero(), |acc, j| &acc + &local[j].scale(&a[i][j])).rem(&m)
                });
                out.extend(canonicalize(&m, &coords, k)?);
            }
        }
        if !generic {
            continue;
        }
        if out.total_multiplicity() != df * dg {
            return Err(Error::AlgorithmFailure(format!(
                "Bezout audit failed: {} != {}",
                out.total_multiplicity(),
                df * dg
            )));
        }
        for p in known {
            out.deflate(p)?;
        }
        out.sort();
        return Ok(out);
    }
    Err(Error::Genericity("no admissible projection among the coordinate changes tried".into()))
}

/// Whether two nonzero forms have a common factor of positive degree.
pub fn shares_component(f: &Poly, g: &Poly) -> Result<bool> {
    let (df, dg) = (f.degree(), g.degree());
    if df == 0 || dg == 0 {
        return Ok(false);
    }
    for a in coordinate_changes() {
        let (fa, ga) = (f.transform(&a), g.transform(&a));
        if fa.coeff(&[df as u32, 0, 0]).is_zero() || ga.coeff(&[dg as u32, 0, 0]).is_zero() {
            continue;
        }
        return Ok(resultant(&fa, &ga, 0)?.is_zero());
    }
    Err(Error::Genericity("no coordinate change makes both forms monic in x0".into()))
}

/// Conic-pair intersection: at most four points, a residual block of degree at most
/// three once a rational point is deflated.
pub fn intersect_conics(c1: &Poly, c2: &Poly, known: &[RatPoint]) -> Result<PointSet> {
    for c in [c1, c2] {
        if c.degree() != 2 {
            return Err(Error::WrongDegree { expected: "2".into(), found: c.degree() });
        }
    }
    let out = intersect_curves(c1, c2, known)?;
    if !known.is_empty() && out.blocks.iter().any(|(b, _)| b.degree() > 3) {
        return Err(Error::AlgorithmFailure("conic pair left a block of degree > 3".into()));
    }
    Ok(out)
}

/// `total multiplicity + deflated = deg f * deg g`.
pub fn bezout_audit(f: &Poly, g: &Poly, out: &PointSet, deflated: usize) -> bool {
    out.total_multiplicity() + deflated == f.degree() * g.degree()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_poly;

    fn h(s: &str, d: usize) -> Poly {
        parse_poly(s).unwrap().homogenize(d)
    }

    #[test]
    fn circle_pencil() {
        let a = h("x^2+y^2-1", 2);
        let b = h("x^2 - 3x + 9/4 + y^2 - 1", 2);
        let out = intersect_conics(&a, &b, &[]).unwrap();
        assert!(out.rational.is_empty());
        // Two affine points and the two circular points at infinity.
        assert_eq!(out.blocks.len(), 2);
        let (blk, m) = out.blocks.iter().find(|(b, _)| b.is_finite()).unwrap();
        assert!(out.blocks.iter().any(|(b, _)| !b.is_finite() && b.real_count() == 0));
        assert_eq!(*m, 1);
        assert_eq!(blk.degree(), 2);
        // x = 3/4 on both points, y^2 = 7/16.
        assert!(blk.eval(&parse_poly("x - 3/4").unwrap()).is_zero());
        assert!(blk.eval(&parse_poly("16y^2 - 7").unwrap()).is_zero());
        assert_eq!(blk.real_count(), 2);
    }

    #[test]
    fn tangency_has_multiplicity_two() {
        let a = h("y - x^2", 2);
        let b = h("y", 1);
        let out = intersect_curves(&a, &b, &[]).unwrap();
        assert_eq!(out.rational, vec![(RatPoint::affine_i(0, 0), 2)]);
    }

    #[test]
    fn shared_component_detected() {
        let a = h("x^2+y^2-1", 2);
        assert!(matches!(intersect_conics(&a, &a, &[]), Err(Error::SharedComponent)));
    }

    #[test]
    fn points_at_infinity() {
        // Parallel lines meet at (0:1:0)... x = 0 and x = 1.
        let out = intersect_curves(&h("x", 1), &h("x - 1", 1), &[]).unwrap();
        assert_eq!(out.rational, vec![(RatPoint::new([rat(0), rat(1), rat(0)]).unwrap(), 1)]);
        // Hyperbola xy = 1 with x-axis: double point at (1:0:0).
        let out = intersect_curves(&h("xy - 1", 2), &h("y", 1), &[]).unwrap();
        assert_eq!(out.rational, vec![(RatPoint::new([rat(1), rat(0), rat(0)]).unwrap(), 2)]);
    }

    #[test]
    fn known_points_are_deflated() {
        let a = h("x^2+y^2-1", 2);
        let b = h("y", 1);
        let out = intersect_curves(&a, &b, &[RatPoint::affine_i(1, 0)]).unwrap();
        assert_eq!(out.rational, vec![(RatPoint::affine_i(-1, 0), 1)]);
    }
}
