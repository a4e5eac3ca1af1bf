//! Effective divisors on a plane curve, stored as point sets with multiplicities.
//! Conjugate blocks are compared through their ideal generators, splitting when needed.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{with_splitting, Exp, Poly, Rat};
use crate::plane::{intersect_curves, PointSet};

/// `D` with `a.f = 2D`.
pub fn contact_divisor(f: &Poly, a: &Poly) -> Result<PointSet> {
    let cut = intersect_curves(f, a, &[])?;
    let mut d = PointSet::default();
    for (p, m) in cut.rational {
        if m % 2 == 1 {
            return Err(Error::PreconditionViolation(format!("odd contact order {m} at {p}")));
        }
        d.push_rational(p, m / 2);
    }
    for (b, m) in cut.blocks {
        if m % 2 == 1 {
            return Err(Error::PreconditionViolation(format!("odd contact order {m} at {}", b.describe())));
        }
        d.blocks.push((b, m / 2));
    }
    d.sort();
    Ok(d)
}

/// `e - d` if `d <= e`.
pub fn div_sub(e: &PointSet, d: &PointSet) -> Result<Option<PointSet>> {
    let mut out = e.clone();
    for (p, m) in &d.rational {
        match out.rational.iter().position(|(q, k)| q == p && k >= m) {
            Some(i) => {
                out.rational[i].1 -= m;
                if out.rational[i].1 == 0 {
                    out.rational.remove(i);
                }
            }
            None => return Ok(None),
        }
    }
    for (b, m) in &d.blocks {
        let gens = b.ideal_generators();
        let refs: Vec<&Poly> = gens.iter().collect();
        let mut matched = 0;
        let mut next = vec![];
        for (eb, em) in &out.blocks {
            let single = PointSet { rational: vec![], blocks: vec![(eb.clone(), *em)] };
            let (inside, outside) = single.partition_by_vanishing(&refs)?;
            for (ib, k) in inside.blocks {
                if k < *m {
                    return Ok(None);
                }
                matched += ib.degree();
                if k > *m {
                    next.push((ib, k - m));
                }
            }
            next.extend(outside.blocks);
        }
        if matched != b.degree() {
            return Ok(None);
        }
        out.blocks = next;
    }
    Ok(Some(out))
}

pub fn div_add(a: &PointSet, b: &PointSet) -> PointSet {
    let mut out = a.clone();
    out.extend(b.clone());
    out
}

pub fn div_eq(a: &PointSet, b: &PointSet) -> Result<bool> {
    if a.total_multiplicity() != b.total_multiplicity() {
        return Ok(false);
    }
    Ok(div_sub(a, b)?.is_some_and(|r| r.total_multiplicity() == 0))
}

/// Linear conditions on forms over `basis` for vanishing on `d`, counted along the
/// smooth branches of `f`.
pub fn divisor_rows(basis: &[Exp], f: &Poly, d: &PointSet) -> Result<Vec<Vec<Rat>>> {
    use crate::adjoint::compute::{block_rows, branch_rows, point_rows};
    let mut rows = vec![];
    for (p, m) in &d.rational {
        if *m == 1 {
            rows.extend(point_rows(basis, p));
        } else {
            rows.extend(branch_rows(basis, f, p, *m)?);
        }
    }
    for (b, m) in &d.blocks {
        if *m != 1 {
            return Err(Error::UnsupportedDegeneration(format!(
                "multiple contact at conjugate points {}",
                b.describe()
            )));
        }
        rows.extend(block_rows(basis, b));
    }
    Ok(rows)
}

/// Whether `f` is smooth at every point of `d`.
pub fn smooth_along(f: &Poly, d: &PointSet) -> Result<bool> {
    let grad = f.gradient();
    for (p, _) in &d.rational {
        if grad.iter().all(|g| g.eval(p.coords()).is_zero()) {
            return Ok(false);
        }
    }
    for (b, _) in &d.blocks {
        let parts = with_splitting(&b.shape, |m| {
            let c = b.ext_coords_mod(m);
            for g in &grad {
                if !g.eval_in(&c).zero_test()? {
                    return Ok(true);
                }
            }
            Ok(false)
        })?;
        if parts.iter().any(|(_, ok)| !ok) {
            return Ok(false);
        }
    }
    Ok(true)
}
