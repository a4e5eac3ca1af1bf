//! Symmetric basis changes acting on representations, the polycons they carry, and the
//! objects a shear `T_g` leaves in place.

use num_traits::Zero;
use serde::Serialize;

use super::dictionary::{polycon_from_adjugate, polycon_from_ldr};
use super::divisor::div_eq;
use super::matrix::{minors_2x2, AdjugateMatrix, BasisChange, SymLdr};
use crate::error::{Error, Result};
use crate::exactalg::{fmt_rat, rat, Poly, Rat, UPoly};
use crate::plane::point::canonicalize;
use crate::plane::{intersect_curves, PointSet};
use crate::polycon::{residual_arrangement, Polycon};

#[derive(Clone, Debug)]
pub struct Deformation {
    pub ldr: SymLdr,
    pub adjugate: AdjugateMatrix,
    pub polycon: Polycon,
}

fn chart_exit(e: Error) -> Error {
    match e {
        Error::RankZeroPoint | Error::VertexNotIdentifiable { .. } | Error::PreconditionViolation(_) | Error::InvalidPolycon(_) => {
            Error::LeavesChart(e.to_string())
        }
        e => e,
    }
}

/// `M -> det(T) T^{-t} M T^{-1}`, so that the adjugate becomes `T adj(M) T^t`.
pub fn deform(m: &SymLdr, t: &BasisChange) -> Result<Deformation> {
    let entries = t.act_on_ldr(&m.entries);
    let ldr = SymLdr::new(entries, &m.cubic)?;
    let adjugate = ldr.adjugate();
    let polycon = polycon_from_ldr(&ldr).map_err(chart_exit)?;
    Ok(Deformation { ldr, adjugate, polycon })
}

/// `T N T^t` and its polycon.
pub fn deform_adjugate(n: &AdjugateMatrix, t: &BasisChange) -> Result<(AdjugateMatrix, Polycon)> {
    let out = n.transform(t);
    let p = polycon_from_adjugate(&out).map_err(chart_exit)?;
    Ok((out, p))
}

#[derive(Clone, Debug, Serialize)]
pub struct ResPreservReport {
    #[serde(serialize_with = "ser_rat")]
    pub gamma: Rat,
    /// `c3' = c3 + g alpha2`, `c2' = c2 + g c1`, `alpha1' = alpha1 + 2g c3 + g^2 alpha2`,
    /// other entries unchanged.
    pub pencil_identities: bool,
    /// `C1`, `A2` and `A3` unchanged.
    pub claim1: bool,
    /// `C1 . C2` unchanged, and the residual points on `C1` and `C3`.
    pub claim2: bool,
    /// The line through `v12` and `v23` unchanged.
    pub claim3: bool,
    pub verified: bool,
    pub notes: Vec<String>,
}

fn ser_rat<S: serde::Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rat(r))
}

fn same_curve(a: &Poly, b: &Poly) -> bool {
    a.is_proportional(b)
}

fn residual_on(p: &Polycon, i: usize, j: usize) -> Result<PointSet> {
    let arr = residual_arrangement(p)?;
    let mut out = PointSet::default();
    for rp in arr.points.iter().filter(|rp| rp.components.contains(&i) && rp.components.contains(&j)) {
        out.extend(rp.locus.as_point_set());
    }
    Ok(out)
}

fn cut(a: &Poly, b: &Poly) -> Result<Option<PointSet>> {
    match intersect_curves(a, b, &[]) {
        Ok(s) => Ok(Some(s)),
        Err(Error::SharedComponent) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn check_res_preserv(before: &AdjugateMatrix, after: &AdjugateMatrix, gamma: &Rat) -> Result<ResPreservReport> {
    let (b, a) = (&before.entries, &after.entries);
    let g = gamma;
    let mut notes = vec![];
    let c3g = &b[0][1] + &b[1][1].scale(g);
    let c2g = &b[0][2] + &b[1][2].scale(g);
    let a1g = &(&b[0][0] + &b[0][1].scale(&(rat(2) * g))) + &b[1][1].scale(&(g * g));
    let mut pencil = a[0][1] == c3g && a[1][0] == c3g && a[0][2] == c2g && a[2][0] == c2g && a[0][0] == a1g;
    for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        pencil &= a[i][j] == b[i][j];
    }
    if !pencil {
        notes.push("entries differ from the sheared matrix".into());
    }
    let claim1 = same_curve(after.conic(0), before.conic(0))
        && same_curve(after.alpha(1), before.alpha(1))
        && same_curve(after.alpha(2), before.alpha(2));

    let mut claim2 = match (cut(before.conic(0), before.conic(1))?, cut(after.conic(0), after.conic(1))?) {
        (Some(x), Some(y)) => div_eq(&x, &y)?,
        _ => false,
    };
    if !claim2 {
        notes.push("C1 . C2 changed".into());
    }
    let polys = (polycon_from_adjugate(before), polycon_from_adjugate(after));
    let (claim3, r_ok) = match polys {
        (Ok(p0), Ok(p1)) => {
            let r = div_eq(&residual_on(&p0, 0, 2)?, &residual_on(&p1, 0, 2)?)?;
            if !r {
                notes.push("residual points on C1 and C3 changed".into());
            }
            let l0 = p0.vertices[0].line_through(&p0.vertices[1]);
            let l1 = p1.vertices[0].line_through(&p1.vertices[1]);
            let l = matches!((&l0, &l1), (Some(x), Some(y)) if same_curve(x, y));
            if !l {
                notes.push("line through v12 and v23 changed".into());
            }
            (l, r)
        }
        (e0, e1) => {
            for e in [e0.err(), e1.err()].into_iter().flatten() {
                notes.push(format!("polycon not readable: {e}"));
            }
            (false, false)
        }
    };
    claim2 &= r_ok;
    Ok(ResPreservReport {
        gamma: gamma.clone(),
        pencil_identities: pencil,
        claim1,
        claim2,
        claim3,
        verified: pencil && claim1 && claim2 && claim3,
        notes,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "verdict")]
pub enum Rigidity {
    /// `N2 = s N` for a scalar `s`; the sign records `s < 0`.
    Identical { negative: bool },
    /// Entry scales `s_ij` satisfy `s_ij^2 = s_ii s_jj`: a diagonal symmetric basis change.
    DiagonalConjugation,
    /// A principal 2x2 minor of `N2` fails to vanish at a point of the cubic.
    MinorIdentityFails { minor: (usize, usize) },
    NotEntrywiseScaling,
    Undecided,
}

/// Whether `n2` differs from `n` only by scaling entries, decided by evaluating 2x2
/// minors at a point of `cubic` where no entry of `n` vanishes.
pub fn scaling_rigidity(n: &AdjugateMatrix, n2: &AdjugateMatrix, cubic: &Poly) -> Result<Rigidity> {
    let mut s: [[Rat; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| Rat::zero()));
    for i in 0..3 {
        for j in 0..3 {
            let (x, y) = (&n.entries[i][j], &n2.entries[i][j]);
            if x.is_zero() && y.is_zero() {
                continue;
            }
            match y.proportionality(x) {
                Some(k) => s[i][j] = k,
                None => return Ok(Rigidity::NotEntrywiseScaling),
            }
        }
    }
    let nonzero: Vec<&Rat> = s.iter().flatten().filter(|k| !k.is_zero()).collect();
    if let Some(first) = nonzero.first() {
        if nonzero.iter().all(|k| k == first) {
            return Ok(Rigidity::Identical { negative: **first < Rat::zero() });
        }
    }
    let principal = [(0, 1), (0, 2), (1, 2)];
    let consistent =
        principal.iter().all(|&(i, j)| s[i][j].is_zero() || &s[i][j] * &s[i][j] == &s[i][i] * &s[j][j]);
    if consistent && (0..3).all(|i| !s[i][i].is_zero()) {
        return Ok(Rigidity::DiagonalConjugation);
    }
    let entries: Vec<&Poly> = n.entries.iter().flatten().collect();
    let minors = minors_2x2(&n2.entries);
    for x0 in search_grid() {
        let q = cubic.compose_univariate(&[UPoly::constant(x0.clone()), UPoly::x(), UPoly::one()]);
        if q.is_zero() || q.deg() == 0 {
            continue;
        }
        let pts = canonicalize(&q.squarefree_part(), &[UPoly::constant(x0), UPoly::x(), UPoly::one()], 1)?;
        let mut good = pts;
        for e in &entries {
            good = good.partition_by_vanishing(&[e])?.1;
        }
        if good.count() == 0 {
            continue;
        }
        for &(i, j) in &principal {
            let m = minors.iter().find(|(r, c, _)| *r == (i, j) && *c == (i, j)).map(|t| &t.2).expect("minor");
            let (zero, _) = good.partition_by_vanishing(&[m])?;
            if zero.count() < good.count() {
                return Ok(Rigidity::MinorIdentityFails { minor: (i + 1, j + 1) });
            }
        }
        return Ok(Rigidity::Undecided);
    }
    Ok(Rigidity::Undecided)
}

fn search_grid() -> Vec<Rat> {
    let mut v = vec![];
    for k in 0..=8i64 {
        v.push(rat(k));
        if k > 0 {
            v.push(rat(-k));
        }
    }
    for k in 1..=4i64 {
        v.push(Rat::new(1.into(), (2 * k + 1).into()));
    }
    v
}
