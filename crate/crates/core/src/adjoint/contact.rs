//! Contact between the adjoint and the adjoint of a reduced polycon, and the linear
//! relation tying both to the boundary.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{Exp, Poly, Rat, RatMatrix};
use crate::plane::{intersect_curves, intersection_multiplicity, intersection_multiplicity_block, PointSet};
use crate::polycon::Polycon;

#[derive(Clone, Debug, Serialize)]
pub struct ContactPoint {
    pub locus: String,
    /// Conjugate points in this entry.
    pub points: usize,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ContactCertificate {
    pub contact_points: Vec<ContactPoint>,
    /// Number of geometric contact points.
    pub count: usize,
    pub total: usize,
    pub expected_total: usize,
    pub all_even: bool,
    pub support_matches: bool,
    /// Gradient of `A` nonzero at every contact point.
    pub smooth: bool,
    pub verified: bool,
    pub note: Option<String>,
    #[serde(skip)]
    pub intersection: PointSet,
}

pub fn contact_check(a: &Poly, a_prime: &Poly, expected: &PointSet) -> Result<ContactCertificate> {
    let expected_total = a.degree() * a_prime.degree();
    let inter = match intersect_curves(a, a_prime, &[]) {
        Ok(s) => s,
        Err(Error::SharedComponent) => {
            return Ok(ContactCertificate {
                contact_points: vec![],
                count: 0,
                total: 0,
                expected_total,
                all_even: false,
                support_matches: false,
                smooth: false,
                verified: false,
                note: Some("the curves share a component".into()),
                intersection: PointSet::default(),
            })
        }
        Err(e) => return Err(e),
    };
    let mut pts = vec![];
    let mut smooth = true;
    let grad = a.gradient();
    for (q, m) in &inter.rational {
        let f = intersection_multiplicity(a, a_prime, q)?;
        if f != *m {
            return Err(Error::AlgorithmFailure(format!("multiplicity at {q}: resultant {m}, local {f}")));
        }
        smooth &= grad.iter().any(|g| !num_traits::Zero::is_zero(&g.eval(q.coords())));
        pts.push(ContactPoint { locus: q.to_string(), points: 1, multiplicity: *m });
    }
    for (b, m) in &inter.blocks {
        for (_, f) in intersection_multiplicity_block(a, a_prime, b)? {
            if f != *m {
                return Err(Error::AlgorithmFailure(format!("multiplicity at {}: resultant {m}, local {f}", b.describe())));
            }
        }
        smooth &= grad.iter().any(|g| !b.eval(g).is_zero());
        pts.push(ContactPoint { locus: b.describe(), points: b.degree(), multiplicity: *m });
    }
    let total = inter.total_multiplicity();
    let all_even = pts.iter().all(|p| p.multiplicity % 2 == 0);
    let support_matches = inter.same_support(expected)?;
    Ok(ContactCertificate {
        count: inter.count(),
        contact_points: pts,
        total,
        expected_total,
        all_even,
        support_matches,
        smooth,
        verified: all_even && support_matches && total == expected_total,
        note: None,
        intersection: inter,
    })
}

/// Rationals `(b, b', b0)`, not all zero, with `b alpha l = b' alpha' c_i + b0 prod_{j != i} c_j`,
/// where `l` replaces component `i`.
pub fn triangulation_identity(p: &Polycon, i: usize, l: &Poly, alpha: &Poly, alpha_prime: &Poly) -> Option<[Rat; 3]> {
    let others = (0..p.n()).filter(|&j| j != i).fold(Poly::one(), |acc, j| &acc * &p.components[j]);
    let v = [alpha * l, alpha_prime * &p.components[i], others];
    let mut monos: Vec<Exp> = v.iter().flat_map(|f| f.terms().map(|(e, _)| *e).collect::<Vec<_>>()).collect();
    monos.sort();
    monos.dedup();
    let rows: Vec<Vec<Rat>> = monos.iter().map(|e| vec![v[0].coeff(e), -v[1].coeff(e), -v[2].coeff(e)]).collect();
    let ker = RatMatrix::from_rows(rows).nullspace();
    let sol = ker.into_iter().next()?;
    let lhs = v[0].scale(&sol[0]);
    let rhs = &v[1].scale(&sol[1]) + &v[2].scale(&sol[2]);
    (lhs == rhs).then(|| [sol[0].clone(), sol[1].clone(), sol[2].clone()])
}
