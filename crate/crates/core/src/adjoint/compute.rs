//! The adjoint as the kernel of explicit linear vanishing conditions.
//!
//! At a point where every component through it is smooth, with branches `B_i`, the
//! conditions read `ord_{B_i}(alpha) >= sum_{j != i} I(B_i, B_j) - #{designated vertex
//! pairs (i, j) at the point}`. A node gives plain vanishing, two tangent components
//! give a matched tangent, three transversal components give a double point; at
//! vertices the designated pair is discounted.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{monomials_of_degree, rat, Exp, Poly, Rat, RatMatrix, UPoly};
use crate::plane::{intersection_multiplicity, shares_component, Block, RatPoint};
use crate::polycon::{residual_arrangement, validate, Locus, Polycon};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConditionKind {
    Simple,
    TangentMatched,
    MultiplicityTwo,
    VertexVanish,
    VertexTangent,
    BranchOrder,
}

#[derive(Clone, Debug, Serialize)]
pub struct VanishingCondition {
    pub kind: ConditionKind,
    pub locus: String,
    /// Number of linear conditions contributed.
    pub rows: usize,
}

#[derive(Clone, Debug)]
pub struct AdjointCurve {
    pub poly: Poly,
    pub conditions: Vec<VanishingCondition>,
    pub condition_count: usize,
    pub kernel_dim: usize,
}

impl AdjointCurve {
    pub fn degree(&self) -> usize {
        self.poly.degree()
    }
}

fn truncate(p: &UPoly, n: usize) -> UPoly {
    UPoly::new(p.coeffs().iter().take(n).cloned().collect())
}

/// A smooth branch of `c` through the rational point `q`, as homogeneous coordinates
/// in `Q[t]/(t^n)` with `t = 0` at `q`.
pub fn branch_series(c: &Poly, q: &RatPoint, n: usize) -> Result<[UPoly; 3]> {
    let qc = q.coords();
    let k = (0..3).rev().find(|&i| !qc[i].is_zero()).expect("nonzero point");
    let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
    let g = c.gradient().map(|g| g.eval(qc));
    let (free, dep) = if !g[others[1]].is_zero() {
        (others[0], others[1])
    } else if !g[others[0]].is_zero() {
        (others[1], others[0])
    } else {
        return Err(Error::UnsupportedDegeneration(format!("component singular at {q}")));
    };
    let slope = g[dep].clone();
    let mut coords: [UPoly; 3] = std::array::from_fn(|i| UPoly::constant(qc[i].clone()));
    coords[free] = UPoly::new(vec![qc[free].clone(), rat(1)]);
    for deg in 1..n {
        let v = c.compose_univariate(&coords).coeff(deg);
        let a = -v / &slope;
        coords[dep] = &coords[dep] + &UPoly::monomial(a, deg);
    }
    Ok(coords.map(|x| truncate(&x, n)))
}

pub(crate) fn point_rows(basis: &[Exp], q: &RatPoint) -> Vec<Vec<Rat>> {
    vec![basis.iter().map(|e| Poly::monomial(rat(1), *e).eval(q.coords())).collect()]
}

pub(crate) fn block_rows(basis: &[Exp], b: &Block) -> Vec<Vec<Rat>> {
    let vals: Vec<UPoly> = basis.iter().map(|e| b.eval(&Poly::monomial(rat(1), *e))).collect();
    (0..b.degree()).map(|k| vals.iter().map(|v| v.coeff(k)).collect()).collect()
}

pub(crate) fn branch_rows(basis: &[Exp], c: &Poly, q: &RatPoint, order: usize) -> Result<Vec<Vec<Rat>>> {
    let br = branch_series(c, q, order)?;
    let vals: Vec<UPoly> =
        basis.iter().map(|e| truncate(&Poly::monomial(rat(1), *e).compose_univariate(&br), order)).collect();
    Ok((0..order).map(|k| vals.iter().map(|v| v.coeff(k)).collect()).collect())
}

/// Conditions at a rational point through several components.
fn local_conditions(
    p: &Polycon,
    basis: &[Exp],
    q: &RatPoint,
    vertex: bool,
) -> Result<Option<(ConditionKind, Vec<Vec<Rat>>)>> {
    let comps: Vec<usize> = (0..p.n()).filter(|&i| q.on(&p.components[i])).collect();
    let vpairs = p.vertex_pairs_at(q);
    let mut mult = vec![vec![0usize; p.n()]; p.n()];
    for (a, &i) in comps.iter().enumerate() {
        for &j in &comps[a + 1..] {
            let m = intersection_multiplicity(&p.components[i], &p.components[j], q)?;
            mult[i][j] = m;
            mult[j][i] = m;
        }
    }
    let mut rows = vec![];
    let mut max_target = 0;
    for &i in &comps {
        let total: usize = comps.iter().map(|&j| mult[i][j]).sum();
        let discount = vpairs.iter().filter(|(a, b)| *a == i || *b == i).count();
        let target = total.saturating_sub(discount);
        max_target = max_target.max(target);
        if target > 0 {
            rows.extend(branch_rows(basis, &p.components[i], q, target)?);
        }
    }
    if rows.is_empty() {
        return Ok(None);
    }
    let pairs_mult: Vec<usize> =
        comps.iter().enumerate().flat_map(|(a, &i)| comps[a + 1..].iter().map(move |&j| (i, j))).map(|(i, j)| mult[i][j]).collect();
    let kind = match (vertex, comps.len(), max_target) {
        (true, _, 1) => ConditionKind::VertexVanish,
        (true, 3, 2) if pairs_mult.iter().all(|m| *m == 1) => ConditionKind::VertexTangent,
        (false, 2, 1) => ConditionKind::Simple,
        (false, 2, 2) => ConditionKind::TangentMatched,
        (false, 3, 2) if pairs_mult.iter().all(|m| *m == 1) => ConditionKind::MultiplicityTwo,
        _ => ConditionKind::BranchOrder,
    };
    Ok(Some((kind, rows)))
}

pub fn compute_adjoint(p: &Polycon, permissive: bool) -> Result<AdjointCurve> {
    let val = validate(p, permissive);
    if !val.valid {
        return Err(Error::InvalidPolycon(val.issues.join("; ")));
    }
    let d = p.degree();
    if d < 3 {
        return Err(Error::WrongDegree { expected: ">= 3".into(), found: d });
    }
    let basis = monomials_of_degree(d - 3);
    let arr = residual_arrangement(p)?;
    let mut rows: Vec<Vec<Rat>> = vec![];
    let mut conditions = vec![];
    for rp in &arr.points {
        let (kind, r) = match &rp.locus {
            Locus::Block(b) if rp.is_node() => (ConditionKind::Simple, block_rows(&basis, b)),
            Locus::Block(b) => {
                return Err(Error::UnsupportedDegeneration(format!(
                    "non-nodal residual points with irrational coordinates: {}",
                    b.describe()
                )))
            }
            Locus::Rational(q) if rp.is_node() => (ConditionKind::Simple, point_rows(&basis, q)),
            Locus::Rational(q) => match local_conditions(p, &basis, q, false)? {
                Some(kr) => kr,
                None => continue,
            },
        };
        conditions.push(VanishingCondition { kind, locus: rp.locus.describe(), rows: r.len() });
        rows.extend(r);
    }
    let mut seen: Vec<&RatPoint> = vec![];
    for v in &p.vertices {
        if seen.contains(&v) {
            continue;
        }
        seen.push(v);
        if let Some((kind, r)) = local_conditions(p, &basis, v, true)? {
            conditions.push(VanishingCondition { kind, locus: v.to_string(), rows: r.len() });
            rows.extend(r);
        }
    }
    for s in &val.implicit_vertices {
        if p.components.iter().filter(|c| s.on(c)).count() > 1 {
            return Err(Error::UnsupportedDegeneration(format!("implicit vertex {s} lies on another component")));
        }
    }
    let m = if rows.is_empty() { RatMatrix::zeros(0, basis.len()) } else { RatMatrix::from_rows(rows.clone()) };
    let kernel = m.nullspace();
    if kernel.len() != 1 {
        return Err(Error::NonUniqueAdjoint(kernel.len()));
    }
    let poly = Poly::from_coeff_vector(&basis, &kernel[0]).normalized();
    if poly.degree() > 0 {
        for c in &p.components {
            if shares_component(&poly, c)? {
                return Err(Error::AlgorithmFailure("adjoint shares a component with the boundary".into()));
            }
        }
    }
    Ok(AdjointCurve { poly, conditions, condition_count: rows.len(), kernel_dim: 1 })
}
