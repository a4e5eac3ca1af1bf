//! Regularity certificates: residual-free sides, one sample per side fixing the signs
//! of the semi-algebraic set `S = {eps_k c_k >= 0}`, and a local check at every vertex.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::rat::sign;
use crate::exactalg::{rat, Poly, Rat, UPoly};
use crate::plane::{intersect_curves, RatPoint};

use super::arrangement::residual_arrangement;
use super::model::{validate, Polycon};
use super::sides::{block_arc_sides, select_sides, Side, SideSelection};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Regular,
    NotRegular,
    Undecided,
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleCertificate {
    pub component: usize,
    pub point: String,
    /// Sign of every `c_k` at the sample (affine chart `z = 1`).
    pub signs: Vec<i32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexCertificate {
    pub vertex: usize,
    pub point: String,
    /// `eps_k c_k(v) > 0` for every non-adjacent component.
    pub others_positive: bool,
    /// A rational direction along which both adjacent components change sign at `v`.
    pub direction: Option<[String; 2]>,
}

#[derive(Clone, Debug)]
pub struct RegularityReport {
    pub nodal: bool,
    pub sides_found: bool,
    pub sides: Option<SideSelection>,
    pub sign_vector: Option<Vec<i32>>,
    pub samples: Vec<SampleCertificate>,
    pub sample_points: Vec<RatPoint>,
    pub vertices: Vec<VertexCertificate>,
    pub verdict: Verdict,
    pub reasons: Vec<String>,
}

impl RegularityReport {
    fn new(nodal: bool) -> Self {
        RegularityReport {
            nodal,
            sides_found: false,
            sides: None,
            sign_vector: None,
            samples: vec![],
            sample_points: vec![],
            vertices: vec![],
            verdict: Verdict::Undecided,
            reasons: vec![],
        }
    }

    fn stop(mut self, v: Verdict, reason: String) -> Self {
        self.verdict = v;
        self.reasons.push(reason);
        self
    }

    /// `S` as text, e.g. `{c1 <= 0, c2 >= 0, c3 >= 0}`.
    pub fn describe_s(&self) -> Option<String> {
        let eps = self.sign_vector.as_ref()?;
        let parts: Vec<String> = eps
            .iter()
            .enumerate()
            .map(|(k, e)| format!("c{} {} 0", k + 1, if *e > 0 { ">=" } else { "<=" }))
            .collect();
        Some(format!("{{{}}}", parts.join(", ")))
    }
}

/// Sign of `f` at a finite point in the chart `z = 1`.
pub fn affine_sign(f: &Poly, p: &RatPoint) -> i32 {
    sign(&f.eval(p.coords()))
}

/// Whether the open side meets the line at infinity in a real point.
fn side_meets_infinity(p: &Polycon, s: &Side) -> Result<bool> {
    let c = &p.components[s.component];
    let inf = intersect_curves(c, &Poly::var(2), &[])?;
    for (q, _) in &inf.rational {
        if s.contains(q)? {
            return Ok(true);
        }
    }
    for (b, _) in &inf.blocks {
        if block_arc_sides(&s.param, &s.p1, &s.p2, b).contains(&s.sigma) {
            return Ok(true);
        }
    }
    Ok(false)
}

fn transversal_direction(ci: &Poly, cj: &Poly, v: &RatPoint) -> Option<[Rat; 2]> {
    let gi = ci.dehomogenize().gradient().map(|g| g.eval(v.coords()));
    let gj = cj.dehomogenize().gradient().map(|g| g.eval(v.coords()));
    let cands = [(1, 0), (0, 1), (1, 1), (1, -1), (1, 2), (2, 1), (1, -2), (2, -1), (1, 3), (3, 1)];
    cands.iter().map(|&(a, b)| [rat(a), rat(b)]).find(|d| {
        let di = &gi[0] * &d[0] + &gi[1] * &d[1];
        let dj = &gj[0] * &d[0] + &gj[1] * &d[1];
        !di.is_zero() && !dj.is_zero()
    })
}

/// `f(v + lambda d)` in the chart `z = 1`.
pub fn restrict_affine(f: &Poly, v: &RatPoint, d: &[Rat; 2]) -> UPoly {
    let (x, y) = v.xy().expect("finite point");
    f.compose_univariate(&[
        UPoly::new(vec![x, d[0].clone()]),
        UPoly::new(vec![y, d[1].clone()]),
        UPoly::one(),
    ])
}

/// Runs the certificates. `samples` (one per side, in component order) default to
/// rational arc points; `sign_vector` defaults to the signs read off the samples.
pub fn check_regularity(p: &Polycon, samples: Option<&[RatPoint]>, sign_vector: Option<&[i32]>) -> Result<RegularityReport> {
    let n = p.n();
    let val = validate(p, false);
    let arr = residual_arrangement(p)?;
    let nodal = val.valid && val.nodal && arr.nodal;
    let mut rep = RegularityReport::new(nodal);
    if !val.valid {
        return Ok(rep.stop(Verdict::Undecided, format!("invalid polycon: {}", val.issues.join("; "))));
    }
    if !nodal {
        return Ok(rep.stop(Verdict::Undecided, "polycon is not nodal".into()));
    }
    if let Some(v) = p.vertices.iter().find(|v| !v.is_finite()) {
        return Ok(rep.stop(Verdict::Undecided, format!("vertex {v} is at infinity")));
    }
    let sel = match select_sides(p, &arr) {
        Ok(s) => s,
        Err(Error::NoResidualFreeArc(i)) => {
            return Ok(rep.stop(
                Verdict::NotRegular,
                format!("both arcs of component {i} carry a real residual point"),
            ))
        }
        Err(e @ (Error::AmbiguousArc(_) | Error::UnsupportedDegeneration(_))) => {
            return Ok(rep.stop(Verdict::Undecided, e.to_string()))
        }
        Err(e) => return Err(e),
    };
    rep.sides_found = true;
    for s in &sel.sides {
        if side_meets_infinity(p, s)? {
            rep.sides = Some(sel.clone());
            return Ok(rep.stop(
                Verdict::Undecided,
                format!("side of component {} crosses the line at infinity", s.component + 1),
            ));
        }
    }
    let pts: Vec<RatPoint> = match samples {
        Some(v) => {
            if v.len() != n {
                return Err(Error::PreconditionViolation(format!("{} samples for {n} sides", v.len())));
            }
            for (s, q) in sel.sides.iter().zip(v) {
                let c = &p.components[s.component];
                if !q.on(c) || p.is_vertex(q) || !s.contains(q)? {
                    return Err(Error::PreconditionViolation(format!(
                        "sample {q} is off the side of component {}",
                        s.component + 1
                    )));
                }
            }
            v.to_vec()
        }
        None => sel.sides.iter().map(Side::sample).collect::<Result<_>>()?,
    };
    rep.sides = Some(sel);
    rep.sample_points = pts.clone();
    for (j, q) in pts.iter().enumerate() {
        let signs = p.components.iter().map(|c| affine_sign(c, q)).collect();
        rep.samples.push(SampleCertificate { component: j, point: q.to_string(), signs });
    }
    let eps: Vec<i32> = match sign_vector {
        Some(e) => {
            if e.len() != n || e.iter().any(|s| s.abs() != 1) {
                return Err(Error::PreconditionViolation("sign vector must hold n entries of +1 or -1".into()));
            }
            e.to_vec()
        }
        None => {
            let mut eps = vec![];
            for k in 0..n {
                let seen: Vec<i32> = (0..n).filter(|&j| j != k).map(|j| rep.samples[j].signs[k]).collect();
                if seen.iter().any(|s| *s != seen[0]) || seen[0] == 0 {
                    return Ok(rep.stop(
                        Verdict::Undecided,
                        format!("samples disagree on the sign of c{}", k + 1),
                    ));
                }
                eps.push(seen[0]);
            }
            eps
        }
    };
    rep.sign_vector = Some(eps.clone());
    for j in 0..n {
        for k in (0..n).filter(|&k| k != j) {
            if rep.samples[j].signs[k] != eps[k] {
                let why = format!("sample {} of side {} violates the sign condition on c{}", pts[j], j + 1, k + 1);
                return Ok(rep.stop(Verdict::NotRegular, why));
            }
        }
    }
    let mut ok = true;
    for i in 0..n {
        let j = p.next(i);
        let v = &p.vertices[i];
        let others_positive = (0..n)
            .filter(|&k| k != i && k != j)
            .all(|k| affine_sign(&p.components[k], v) == eps[k]);
        let dir = transversal_direction(&p.components[i], &p.components[j], v);
        let changes = dir.as_ref().is_some_and(|d| {
            [i, j].iter().all(|&k| {
                let r = restrict_affine(&p.components[k], v, d);
                r.coeff(0).is_zero() && !r.coeff(1).is_zero()
            })
        });
        ok &= others_positive && changes;
        rep.vertices.push(VertexCertificate {
            vertex: i,
            point: v.to_string(),
            others_positive,
            direction: dir.filter(|_| changes).map(|d| d.map(|x| crate::exactalg::fmt_rat(&x))),
        });
    }
    if !ok {
        return Ok(rep.stop(Verdict::Undecided, "a vertex certificate failed".into()));
    }
    rep.verdict = Verdict::Regular;
    Ok(rep)
}

/// Certified containment of the segment `[a, b]` in `S`.
pub fn segment_in_s(p: &Polycon, eps: &[i32], a: &RatPoint, b: &RatPoint) -> bool {
    let (ax, ay) = a.xy().expect("finite");
    let (bx, by) = b.xy().expect("finite");
    let d = [&bx - &ax, &by - &ay];
    p.components.iter().zip(eps).all(|(c, e)| {
        let r = restrict_affine(c, a, &d).scale(&rat(*e as i64));
        crate::exactalg::sturm::nonneg_on(&r, &Rat::zero(), &Rat::one())
    })
}

/// Real points of a block lying in an open side, as a test helper for the side
/// invariant.
pub fn real_roots_on_side(s: &Side, b: &crate::plane::Block) -> usize {
    block_arc_sides(&s.param, &s.p1, &s.p2, b).iter().filter(|x| **x == s.sigma).count()
}
