//! Between nodal three-conic polycons and symmetric determinantal representations of
//! their adjoints.

use crate::adjoint::compute_adjoint;
use crate::error::{Error, Result};
use crate::exactalg::{monomials_of_degree, Poly, Rat, RatMatrix};
use crate::plane::{intersect_curves, local_length, PointSet, RatPoint};
use crate::polycon::{reduce_component, validate, Polycon};

use super::matrix::{adjugate, divide_mat, AdjugateMatrix, SymLdr};

#[derive(Clone, Debug)]
pub struct PolyconLdr {
    pub adjugate: AdjugateMatrix,
    pub ldr: SymLdr,
    /// The adjoint of the polycon.
    pub alpha: Poly,
    /// Adjoints of the polycons with component `i` replaced by a line.
    pub reduced: [Poly; 3],
    /// Diagonal scalars: the diagonal of the assembled matrix is `lambda_i alpha_i`.
    pub lambdas: [Rat; 3],
    /// `adj(M) = kappa N` for the assembled matrix `N`.
    pub kappa: Rat,
}

/// `t` with `t a - h f = rhs` for some form `h`.
fn scalar_relation(a: &Poly, f: &Poly, rhs: &Poly) -> Option<Rat> {
    let hb = monomials_of_degree(a.degree() - f.degree());
    let target = monomials_of_degree(a.degree());
    let mut cols = vec![a.clone()];
    cols.extend(hb.iter().map(|e| -&f.mul_monomial(&crate::exactalg::rat(1), e)));
    let rows: Vec<Vec<Rat>> = target.iter().map(|e| cols.iter().map(|c| c.coeff(e)).collect()).collect();
    let b: Vec<Rat> = target.iter().map(|e| rhs.coeff(e)).collect();
    let sol = RatMatrix::from_rows(rows).solve(&b)?;
    Some(sol[0].clone())
}

pub fn ldr_from_polycon(p: &Polycon) -> Result<PolyconLdr> {
    if p.n() != 3 || p.components.iter().any(|c| c.degree() != 2) {
        return Err(Error::PreconditionViolation("expected a polycon bounded by three conics".into()));
    }
    let val = validate(p, false);
    if !val.valid || !val.nodal {
        return Err(Error::PreconditionViolation(format!("polycon is not valid and nodal: {}", val.issues.join("; "))));
    }
    let alpha = compute_adjoint(p, false)?.poly;
    let mut reduced: Vec<Poly> = vec![];
    for i in 0..3 {
        reduced.push(compute_adjoint(&reduce_component(p, i)?, false)?.poly);
    }
    let c = &p.components;
    let mut lambdas = vec![];
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let lam = scalar_relation(&(&reduced[i] * &c[i]), &alpha, &(&c[j] * &c[k]))
            .ok_or_else(|| Error::Inconsistency(format!("no scalar for the diagonal entry {}", i + 1)))?;
        lambdas.push(lam);
    }
    let diag: [Poly; 3] = std::array::from_fn(|i| reduced[i].scale(&lambdas[i]));
    let n = AdjugateMatrix::from_parts(diag, [c[0].clone(), c[1].clone(), c[2].clone()]);
    if !n.minors_divisible_by(&alpha) {
        return Err(Error::Inconsistency("2x2 minors are not divisible by the adjoint".into()));
    }
    let m = divide_mat(&adjugate(&n.entries), &alpha)?;
    let ldr = SymLdr::new(m, &alpha)?;
    let adj = ldr.adjugate();
    let kappa = adj.entries[0][1]
        .proportionality(&n.entries[0][1])
        .ok_or_else(|| Error::AlgorithmFailure("adjugate is not a multiple of the assembled matrix".into()))?;
    if adj.entries != n.entries.clone().map(|r| r.map(|e| e.scale(&kappa))) {
        return Err(Error::AlgorithmFailure("adjugate is not a multiple of the assembled matrix".into()));
    }
    Ok(PolyconLdr {
        adjugate: adj,
        ldr,
        alpha,
        reduced: [reduced[0].clone(), reduced[1].clone(), reduced[2].clone()],
        lambdas: [lambdas[0].clone(), lambdas[1].clone(), lambdas[2].clone()],
        kappa,
    })
}

/// Reads the polycon of a symmetric representation, after checking that its entries
/// have no common zero.
pub fn polycon_from_ldr(m: &SymLdr) -> Result<Polycon> {
    if m.coefficient_rank() < 3 {
        return Err(Error::RankZeroPoint);
    }
    polycon_from_adjugate(&m.adjugate())
}

/// Components `c_i` off the diagonal. The vertex between `C_j` and `C_k` is the unique
/// point where `C_j . C_k` exceeds the length of `O_P / (c_j, c_k, alpha_i)`, which for a
/// nodal polycon is the unique point of `C_j . C_k` off `A_i`.
pub fn polycon_from_adjugate(n: &AdjugateMatrix) -> Result<Polycon> {
    let c = n.conics();
    for (i, ci) in c.iter().enumerate() {
        if ci.degree() != 2 {
            return Err(Error::PreconditionViolation(format!("entry c{} is not a conic", i + 1)));
        }
    }
    let mut cuts: Vec<PointSet> = vec![];
    for (j, k) in [(0, 1), (1, 2), (2, 0)] {
        let s = intersect_curves(&c[j], &c[k], &[]).map_err(|e| Error::VertexNotIdentifiable {
            pair: (j + 1, k + 1),
            reason: e.to_string(),
        })?;
        cuts.push(s);
    }
    // Points on all three conics must make the whole adjugate vanish.
    let all_c: Vec<&Poly> = c.iter().collect();
    let (triple, _) = cuts[0].partition_by_vanishing(&all_c)?;
    let alphas: Vec<&Poly> = (0..3).map(|i| n.alpha(i)).collect();
    if !triple.all_on(&alphas) {
        return Err(Error::VertexNotIdentifiable {
            pair: (1, 2),
            reason: "a common point of the three conics is not on every diagonal curve".into(),
        });
    }
    let mut vertices: Vec<RatPoint> = vec![];
    for (idx, (j, k)) in [(0usize, 1usize), (1, 2), (2, 0)].into_iter().enumerate() {
        let i = 3 - j - k;
        let pair = (j + 1, k + 1);
        let (on, off) = cuts[idx].partition_by_vanishing(&[n.alpha(i)])?;
        if !off.blocks.is_empty() {
            return Err(Error::VertexNotIdentifiable {
                pair,
                reason: "non-rational points of the intersection avoid the diagonal curve".into(),
            });
        }
        // Excess of C_j . C_k over the part cut out together with A_i.
        let mut found: Vec<(RatPoint, usize)> = off.rational.clone();
        for (pt, m) in &on.rational {
            let len = local_length(&[&c[j], &c[k], n.alpha(i)], pt, *m);
            if *m > len {
                found.push((pt.clone(), m - len));
            }
        }
        match found.as_slice() {
            [(v, 1)] => vertices.push(v.clone()),
            _ => {
                return Err(Error::VertexNotIdentifiable {
                    pair,
                    reason: format!(
                        "expected one point of excess 1 off the diagonal curve, found excesses {:?}",
                        found.iter().map(|t| t.1).collect::<Vec<_>>()
                    ),
                })
            }
        }
    }
    for a in 0..3 {
        for b in a + 1..3 {
            if vertices[a] == vertices[b] {
                return Err(Error::VertexNotIdentifiable { pair: (a + 1, b + 1), reason: "vertices coincide".into() });
            }
        }
    }
    Polycon::new(c.to_vec(), vertices)
}
