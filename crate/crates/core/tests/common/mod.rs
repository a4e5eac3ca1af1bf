#![allow(dead_code)]

use adjugate_core::adjoint::{compute_adjoint, contact_check, triangulation_identity, verify_off_boundary};
use adjugate_core::detrep::{check_res_preserv, deform, dixon, ldr_from_polycon, polycon_from_ldr, BasisChange};
use adjugate_core::exactalg::{rat, Poly, Rat};
use adjugate_core::io::counterexample;
use adjugate_core::plane::{intersect_curves, intersection_multiplicity, PointSet};
use adjugate_core::polycon::generator::{generate, perturb};
use adjugate_core::polycon::{check_regularity, reduce_component, residual_arrangement, validate, Polycon, Verdict};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;

pub const SEED: u64 = 20240611;

const GENERATED: usize = 20;

/// The counterexample followed by `n <= 20` generated nodal three-conic polycons.
pub fn instances(n: usize) -> Vec<Polycon> {
    static CACHE: OnceLock<Vec<Polycon>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        let mut v = vec![counterexample()];
        v.extend(generate(SEED, GENERATED, false));
        v
    });
    all[..(n + 1).min(all.len())].to_vec()
}

/// Regular polycons: the generated ones that are regular, and a family of regular
/// perturbations of the counterexample.
pub fn regular_instances() -> Vec<Polycon> {
    static CACHE: OnceLock<Vec<Polycon>> = OnceLock::new();
    CACHE
        .get_or_init(|| {
            let mut v: Vec<Polycon> = instances(GENERATED)
                .into_iter()
                .filter(|p| matches!(check_regularity(p, None, None), Ok(r) if r.verdict == Verdict::Regular))
                .collect();
            v.extend(perturb(&counterexample(), SEED, GENERATED));
            v
        })
        .clone()
}

/// Residual points of `p` on neither component `i`.
pub fn residual_off(p: &Polycon, i: usize) -> PointSet {
    let arr = residual_arrangement(p).unwrap();
    let mut s = PointSet::default();
    for rp in arr.points.iter().filter(|rp| !rp.components.contains(&i)) {
        s.extend(rp.locus.as_point_set());
    }
    s
}

pub struct ContactOutcome {
    pub count: usize,
    pub total: usize,
    pub all_double: bool,
    pub verified: bool,
    pub triangulation: bool,
}

pub fn contact_outcome(p: &Polycon, i: usize) -> Result<ContactOutcome, String> {
    let a = compute_adjoint(p, false).map_err(|e| e.to_string())?.poly;
    let red = reduce_component(p, i).map_err(|e| e.to_string())?;
    let a1 = compute_adjoint(&red, false).map_err(|e| e.to_string())?.poly;
    let cert = contact_check(&a, &a1, &residual_off(p, i)).map_err(|e| e.to_string())?;
    let l = &red.components[i];
    let triangulation = match triangulation_identity(p, i, l, &a, &a1) {
        // Independent substitution check of the returned coefficients.
        Some([b, b1, b0]) => {
            let others = (0..p.n()).filter(|&k| k != i).fold(Poly::one(), |acc, k| &acc * &p.components[k]);
            let lhs = &(&a * l).scale(&b);
            let rhs = &(&a1 * &p.components[i]).scale(&b1) + &others.scale(&b0);
            let nontrivial = !(b == rat(0) && b1 == rat(0) && b0 == rat(0));
            nontrivial && *lhs == rhs
        }
        None => false,
    };
    Ok(ContactOutcome {
        count: cert.count,
        total: cert.total,
        all_double: cert.contact_points.iter().all(|c| c.multiplicity == 2),
        verified: cert.verified,
        triangulation,
    })
}

pub fn contact_ok(o: &ContactOutcome) -> bool {
    o.count == 3 && o.total == 6 && o.all_double && o.verified
}

/// Round trip through the dictionary and Dixon's construction.
pub fn round_trip(p: &Polycon) -> Result<(), String> {
    let alpha = compute_adjoint(p, false).map_err(|e| e.to_string())?.poly;
    let r = ldr_from_polycon(p).map_err(|e| e.to_string())?;
    if !r.ldr.determinant().is_proportional(&alpha) {
        return Err("det(M) is not proportional to the adjoint".into());
    }
    let q = polycon_from_ldr(&r.ldr).map_err(|e| e.to_string())?;
    if q.vertices != p.vertices {
        return Err("vertices differ after the round trip".into());
    }
    if (0..3).any(|k| !q.components[k].is_proportional(&p.components[k])) {
        return Err("components differ after the round trip".into());
    }
    let contact = compute_adjoint(&reduce_component(p, 0).map_err(|e| e.to_string())?, false)
        .map_err(|e| e.to_string())?
        .poly;
    let d = dixon(&alpha, &contact, None).map_err(|e| e.to_string())?;
    if !d.ldr.determinant().is_proportional(&alpha) {
        return Err("Dixon: det(M) is not proportional to the adjoint".into());
    }
    if !d.adjugate.entries[0][0].is_proportional(&contact) {
        return Err("Dixon: (1,1) entry of the adjugate is not the contact conic".into());
    }
    Ok(())
}

/// `|R(P)| = 9`, `|R(P) & R(P')| = 3` for each reduction, and Bezout totals with every
/// rational multiplicity confirmed by the local computation.
pub fn counting(p: &Polycon) -> Result<(), String> {
    let arr = residual_arrangement(p).map_err(|e| e.to_string())?;
    if arr.count() != 9 {
        return Err(format!("|R(P)| = {}", arr.count()));
    }
    for i in 0..3 {
        let red = reduce_component(p, i).map_err(|e| e.to_string())?;
        let r2 = residual_arrangement(&red).map_err(|e| e.to_string())?.point_set();
        let mut common = 0;
        for rp in &arr.points {
            if rp.locus.as_point_set().subset_of(&r2).map_err(|e| e.to_string())? {
                common += rp.locus.degree();
            }
        }
        if common != 3 {
            return Err(format!("|R(P) & R(P')| = {common} for component {}", i + 1));
        }
    }
    for i in 0..3 {
        for j in i + 1..3 {
            let (f, g) = (&p.components[i], &p.components[j]);
            let s = intersect_curves(f, g, &[]).map_err(|e| e.to_string())?;
            if s.total_multiplicity() != f.degree() * g.degree() {
                return Err(format!("Bezout total {} for pair ({}, {})", s.total_multiplicity(), i + 1, j + 1));
            }
            for (q, m) in &s.rational {
                if intersection_multiplicity(f, g, q).map_err(|e| e.to_string())? != *m {
                    return Err(format!("multiplicity mismatch at {q}"));
                }
            }
        }
    }
    Ok(())
}

/// `None` when the instance is not regular (the suite does not apply).
pub fn lemma_suite(p: &Polycon) -> Result<Option<()>, String> {
    let reg = check_regularity(p, None, None).map_err(|e| e.to_string())?;
    if reg.verdict != Verdict::Regular {
        return Ok(None);
    }
    let alpha = compute_adjoint(p, false).map_err(|e| e.to_string())?.poly;
    let rep = verify_off_boundary(p, &alpha).map_err(|e| e.to_string())?;
    if !rep.multiplicity_one {
        return Err("an adjoint/boundary intersection at a residual point is not simple".into());
    }
    if rep.off_boundary != Some(true) {
        return Err(format!("adjoint meets the sides: {:?}", rep.sides));
    }
    Ok(Some(()))
}

pub fn shears() -> Vec<Rat> {
    [(1, 10), (-1, 10), (1, 3), (-1, 3), (1, 1)].iter().map(|&(a, b)| rat(a) / rat(b)).collect()
}

/// Random small integer basis changes for which the deformed representation still
/// reads as a valid polycon.
pub fn random_valid_changes(p: &Polycon, n: usize, seed: u64) -> Vec<BasisChange> {
    let r = ldr_from_polycon(p).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![];
    let mut tries = 0;
    while out.len() < n && tries < 400 {
        tries += 1;
        let m: [[Rat; 3]; 3] = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let base = if i == j { 1 } else { 0 };
                rat(base + rng.gen_range(-1..=1i64)) / rat(rng.gen_range(1..=4i64))
            })
        });
        let Ok(t) = BasisChange::new(m) else { continue };
        if t.is_identity() {
            continue;
        }
        if let Ok(d) = deform(&r.ldr, &t) {
            if validate(&d.polycon, false).valid {
                out.push(t);
            }
        }
    }
    out
}

/// The deformed polycon keeps the adjoint; shears also keep the objects of the lemma.
pub fn fiber_check(p: &Polycon, t: &BasisChange) -> Result<(), String> {
    let alpha = compute_adjoint(p, false).map_err(|e| e.to_string())?.poly;
    let r = ldr_from_polycon(p).map_err(|e| e.to_string())?;
    let d = deform(&r.ldr, t).map_err(|e| e.to_string())?;
    let a2 = compute_adjoint(&d.polycon, false).map_err(|e| e.to_string())?.poly;
    if !a2.is_proportional(&alpha) {
        return Err("adjoint changed".into());
    }
    if let Some(g) = &t.gamma {
        let rep = check_res_preserv(&r.adjugate, &d.adjugate, g).map_err(|e| e.to_string())?;
        if !(rep.claim1 && rep.claim2 && rep.claim3) {
            return Err(format!("preservation claims fail: {:?}", rep.notes));
        }
    }
    Ok(())
}
