//! Dixon's construction of a symmetric linear determinantal representation of a plane
//! cubic from one contact conic.

use serde::Serialize;

use super::divisor::{contact_divisor, div_add, div_eq, div_sub, divisor_rows, smooth_along};
use super::matrix::{adjugate, divide_mat, AdjugateMatrix, PolyMat, SymLdr};
use crate::error::{Error, Result};
use crate::exactalg::{monomials_of_degree, rat, Poly, Rat, RatMatrix};
use crate::plane::{intersect_curves, PointSet};

#[derive(Clone, Debug)]
pub struct DixonOutput {
    pub ldr: SymLdr,
    /// `adj(M)`; its (1,1) entry is proportional to the contact conic.
    pub adjugate: AdjugateMatrix,
    /// The matrix `(a_ij)` assembled in the Noether step, before normalization.
    pub raw: PolyMat,
    /// The contact divisor `D`.
    pub divisor: PointSet,
}

/// Conics through `d` (with multiplicity along `f`), as a basis.
fn conics_through(f: &Poly, d: &PointSet, deg: usize) -> Result<Vec<Poly>> {
    let basis = monomials_of_degree(deg);
    let rows = divisor_rows(&basis, f, d)?;
    let m = if rows.is_empty() { RatMatrix::zeros(0, basis.len()) } else { RatMatrix::from_rows(rows) };
    Ok(m.nullspace().iter().map(|v| Poly::from_coeff_vector(&basis, v)).collect())
}

/// Whether `d` lies on a line (multiplicities counted along `f`).
pub fn divisor_collinear(f: &Poly, d: &PointSet) -> Result<bool> {
    Ok(!conics_through(f, d, 1)?.is_empty())
}

/// `b` with `a11 b - h f = rhs` for a form `h` of degree `deg(f) - 2`.
fn noether_solve(a11: &Poly, f: &Poly, rhs: &Poly) -> Result<(Poly, Poly)> {
    let qb = monomials_of_degree(a11.degree());
    let hb = monomials_of_degree(a11.degree() + a11.degree() - f.degree());
    let target = monomials_of_degree(rhs.degree());
    let mut cols: Vec<Poly> = qb.iter().map(|e| a11.mul_monomial(&rat(1), e)).collect();
    cols.extend(hb.iter().map(|e| -&f.mul_monomial(&rat(1), e)));
    let rows: Vec<Vec<Rat>> = target.iter().map(|e| cols.iter().map(|c| c.coeff(e)).collect()).collect();
    let b: Vec<Rat> = target.iter().map(|e| rhs.coeff(e)).collect();
    let sol = RatMatrix::from_rows(rows)
        .solve(&b)
        .ok_or_else(|| Error::AlgorithmFailure("Noether system is inconsistent; the divisor is not a contact divisor".into()))?;
    let q = Poly::from_coeff_vector(&qb, &sol[..qb.len()]);
    let h = Poly::from_coeff_vector(&hb, &sol[qb.len()..]);
    if &(a11 * &q) - &(&h * f) != *rhs {
        return Err(Error::AlgorithmFailure("Noether solution does not verify".into()));
    }
    Ok((q, h))
}

/// Runs the construction with `contact` as the (1,1) entry. `divisor` is computed from
/// `contact . f` when not given.
pub fn dixon(f: &Poly, contact: &Poly, divisor: Option<&PointSet>) -> Result<DixonOutput> {
    if f.degree() != 3 || !f.is_homogeneous() {
        return Err(Error::WrongDegree { expected: "cubic form".into(), found: f.degree() });
    }
    if contact.degree() != 2 || !contact.is_homogeneous() {
        return Err(Error::WrongDegree { expected: "conic".into(), found: contact.degree() });
    }
    let d = match divisor {
        Some(d) => d.clone(),
        None => contact_divisor(f, contact)?,
    };
    if d.total_multiplicity() != 3 {
        return Err(Error::PreconditionViolation(format!("contact divisor has degree {}", d.total_multiplicity())));
    }
    if !smooth_along(f, &d)? {
        return Err(Error::PreconditionViolation("contact divisor meets the singular locus".into()));
    }
    if divisor_collinear(f, &d)? {
        return Err(Error::PreconditionViolation("contact points are collinear".into()));
    }
    let space = conics_through(f, &d, 2)?;
    if space.len() != 3 {
        return Err(Error::AlgorithmFailure(format!("conics through D form a space of dimension {}", space.len())));
    }
    let basis = monomials_of_degree(2);
    let mut chosen = vec![contact.clone()];
    for c in &space {
        let mut rows: Vec<Vec<Rat>> = chosen.iter().map(|p| p.coeff_vector(&basis)).collect();
        rows.push(c.coeff_vector(&basis));
        if RatMatrix::from_rows(rows).rank() == chosen.len() + 1 {
            chosen.push(c.normalized());
        }
        if chosen.len() == 3 {
            break;
        }
    }
    if chosen.len() != 3 || !contact_in_span(contact, &space) {
        return Err(Error::PreconditionViolation("contact conic does not vanish on D".into()));
    }
    let mut raw: PolyMat = Default::default();
    for i in 0..3 {
        raw[0][i] = chosen[i].clone();
        raw[i][0] = chosen[i].clone();
    }
    for i in 1..3 {
        for j in i..3 {
            let (q, _) = noether_solve(contact, f, &(&chosen[i] * &chosen[j]))?;
            raw[i][j] = q.clone();
            raw[j][i] = q;
        }
    }
    let m = divide_mat(&adjugate(&raw), f)
        .map_err(|_| Error::AlgorithmFailure("adjugate entries are not divisible by the cubic".into()))?;
    let ldr = SymLdr::new(m, f)?;
    let adj = ldr.adjugate();
    if !adj.entries[0][0].is_proportional(contact) {
        return Err(Error::AlgorithmFailure("(1,1) entry of the adjugate is not the contact conic".into()));
    }
    Ok(DixonOutput { ldr, adjugate: adj, raw, divisor: d })
}

fn contact_in_span(contact: &Poly, space: &[Poly]) -> bool {
    let basis = monomials_of_degree(2);
    let mut rows: Vec<Vec<Rat>> = space.iter().map(|p| p.coeff_vector(&basis)).collect();
    let r = RatMatrix::from_rows(rows.clone()).rank();
    rows.push(contact.coeff_vector(&basis));
    RatMatrix::from_rows(rows).rank() == r
}

#[derive(Clone, Debug, Serialize)]
pub struct DivisorBookkeeping {
    /// `A_{1i}.C = D + D_i` for `i = 2, 3`.
    pub first_row: bool,
    /// `A_{ij}.C = D_i + D_j` for `2 <= i <= j <= 3`.
    pub lower_block: bool,
    pub holds: bool,
}

/// Checks the divisor relations among the entries of an adjugate produced by Dixon's
/// construction with contact divisor `d` on `f`.
pub fn divisor_bookkeeping(f: &Poly, adj: &AdjugateMatrix, d: &PointSet) -> Result<DivisorBookkeeping> {
    let cut = |g: &Poly| -> Result<Option<PointSet>> {
        match intersect_curves(f, g, &[]) {
            Ok(s) => Ok(Some(s)),
            Err(Error::SharedComponent) => Ok(None),
            Err(e) => Err(e),
        }
    };
    let e11 = cut(&adj.entries[0][0])?;
    let mut first_row = e11.as_ref().map_or(Ok(false), |e| div_eq(e, &div_add(d, d)))?;
    let mut di = vec![];
    for i in 1..3 {
        let rest = match cut(&adj.entries[0][i])? {
            Some(e) => div_sub(&e, d)?,
            None => None,
        };
        match rest {
            Some(r) => di.push(r),
            None => {
                first_row = false;
                di.push(PointSet::default());
            }
        }
    }
    let mut lower_block = first_row;
    if first_row {
        for i in 1..3 {
            for j in i..3 {
                let ok = match cut(&adj.entries[i][j])? {
                    Some(e) => div_eq(&e, &div_add(&di[i - 1], &di[j - 1]))?,
                    None => false,
                };
                lower_block &= ok;
            }
        }
    }
    Ok(DivisorBookkeeping { first_row, lower_block, holds: first_row && lower_block })
}
