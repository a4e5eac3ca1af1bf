//! Random polycons with rational residual data: pick vertices and residual points, then
//! take each conic through five assigned points.

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactalg::{rat, Poly};
use crate::plane::{forms_through, RatPoint};

use super::arrangement::residual_arrangement;
use super::model::{reduce_component, validate, Polycon};
use super::regularity::{check_regularity, Verdict};

fn random_point(rng: &mut ChaCha8Rng, r: i64) -> RatPoint {
    RatPoint::affine_i(rng.gen_range(-r..=r), rng.gen_range(-r..=r))
}

fn distinct_points(rng: &mut ChaCha8Rng, k: usize, r: i64) -> Vec<RatPoint> {
    let mut v: Vec<RatPoint> = vec![];
    while v.len() < k {
        let p = random_point(rng, r);
        if !v.contains(&p) {
            v.push(p);
        }
    }
    v
}

fn unique_conic(points: &[RatPoint]) -> Option<Poly> {
    let mut b = forms_through(2, points);
    (b.len() == 1).then(|| b.remove(0).normalized())
}

fn accept(p: Polycon) -> Option<Polycon> {
    let v = validate(&p, false);
    if !v.valid || !v.nodal {
        return None;
    }
    let arr = residual_arrangement(&p).ok()?;
    arr.nodal.then_some(p)
}

/// One attempt at a three-conic polycon whose three reductions are nodal as well; `None`
/// when the draw is degenerate.
pub fn try_three_conics(rng: &mut ChaCha8Rng) -> Option<Polycon> {
    let pts = distinct_points(rng, 9, 6);
    let (v12, v23, v31) = (&pts[0], &pts[1], &pts[2]);
    let (r12, r23, r31) = (&pts[3], &pts[4], &pts[5]);
    let c1 = unique_conic(&[v31.clone(), v12.clone(), r31.clone(), r12.clone(), pts[6].clone()])?;
    let c2 = unique_conic(&[v12.clone(), v23.clone(), r12.clone(), r23.clone(), pts[7].clone()])?;
    let c3 = unique_conic(&[v23.clone(), v31.clone(), r23.clone(), r31.clone(), pts[8].clone()])?;
    for c in [&c1, &c2, &c3] {
        if !crate::plane::classify_conic(c).ok()?.is_smooth() {
            return None;
        }
    }
    let p = accept(Polycon::new(vec![c1, c2, c3], vec![v12.clone(), v23.clone(), v31.clone()]).ok()?)?;
    // Replacing a conic by the line through its vertices must leave a nodal polycon too.
    for i in 0..3 {
        accept(reduce_component(&p, i).ok()?)?;
    }
    Some(p)
}

/// One attempt at a polycon bounded by two conics and a line (degree five).
pub fn try_two_conics_and_line(rng: &mut ChaCha8Rng) -> Option<Polycon> {
    let pts = distinct_points(rng, 8, 6);
    let (v12, v23, v31) = (&pts[0], &pts[1], &pts[2]);
    let l3 = v23.line_through(v31)?.normalized();
    let c1 = unique_conic(&[v31.clone(), v12.clone(), pts[3].clone(), pts[4].clone(), pts[5].clone()])?;
    let c2 = unique_conic(&[v12.clone(), v23.clone(), pts[3].clone(), pts[6].clone(), pts[7].clone()])?;
    for c in [&c1, &c2] {
        if !crate::plane::classify_conic(c).ok()?.is_smooth() {
            return None;
        }
    }
    accept(Polycon::new(vec![c1, c2, l3], vec![v12.clone(), v23.clone(), v31.clone()]).ok()?)
}

/// `count` valid nodal polycons from a fixed seed; `five` selects the degree-five family.
pub fn generate(seed: u64, count: usize, five: bool) -> Vec<Polycon> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![];
    let mut attempts = 0;
    while out.len() < count && attempts < 200 * count.max(1) {
        attempts += 1;
        let p = if five { try_two_conics_and_line(&mut rng) } else { try_three_conics(&mut rng) };
        out.extend(p);
    }
    out
}

/// Nearby polycons: every conic of `base` moves inside the pencil of conics through four
/// of its rational vertices and residual points, `c + t l1 l2` with `l1`, `l2` lines
/// through pairs of them. Only valid, nodal and regular results with nodal reductions
/// are kept, so a regular `base` with rational residual points yields a regular family.
pub fn perturb(base: &Polycon, seed: u64, count: usize) -> Vec<Polycon> {
    let Ok(arr) = residual_arrangement(base) else { return vec![] };
    let mut known: Vec<RatPoint> = base.vertices.clone();
    known.extend(arr.rational_points());
    let mut pencils = vec![];
    for c in &base.components {
        let a: Vec<&RatPoint> = known.iter().filter(|q| q.on(c)).take(4).collect();
        if c.degree() != 2 || a.len() < 4 {
            return vec![];
        }
        let (Some(l1), Some(l2)) = (a[0].line_through(a[1]), a[2].line_through(a[3])) else { return vec![] };
        let q = (&l1 * &l2).normalized();
        let size = |f: &Poly| f.terms().map(|(_, k)| k.abs()).max().unwrap_or_else(|| rat(1));
        let scale = (size(c) / size(&q)).ceil();
        pencils.push(q.scale(&scale.max(rat(1))));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![];
    let mut attempts = 0;
    while out.len() < count && attempts < 20 * count.max(1) {
        attempts += 1;
        let comps: Vec<Poly> = base
            .components
            .iter()
            .zip(&pencils)
            .map(|(c, q)| {
                let t = rat(rng.gen_range(-3..=3i64)) / rat(rng.gen_range(10..=40i64));
                c + &q.scale(&t)
            })
            .collect();
        if comps == base.components || out.iter().any(|o: &Polycon| o.components == comps) {
            continue;
        }
        let Ok(p) = Polycon::new(comps, base.vertices.clone()) else { continue };
        let Some(p) = accept(p) else { continue };
        if (0..p.n()).any(|i| reduce_component(&p, i).ok().and_then(accept).is_none()) {
            continue;
        }
        if matches!(check_regularity(&p, None, None), Ok(r) if r.verdict == Verdict::Regular) {
            out.push(p);
        }
    }
    out
}
