//! The residual arrangement: pairwise intersections of boundary components with the
//! each designated vertex's own crossing removed.

use crate::error::Result;
use crate::exactalg::{Poly, UPoly};
use crate::plane::{intersect_curves, Block, PointSet, RatPoint};

use super::model::{validate, Polycon};

#[derive(Clone, Debug)]
pub enum Locus {
    Rational(RatPoint),
    Block(Block),
}

impl Locus {
    pub fn degree(&self) -> usize {
        match self {
            Locus::Rational(_) => 1,
            Locus::Block(b) => b.degree(),
        }
    }

    pub fn is_real(&self) -> bool {
        match self {
            Locus::Rational(_) => true,
            Locus::Block(b) => b.real_count() > 0,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Locus::Rational(p) => p.to_string(),
            Locus::Block(b) => b.describe(),
        }
    }

    pub fn as_point_set(&self) -> PointSet {
        match self {
            Locus::Rational(p) => PointSet { rational: vec![(p.clone(), 1)], blocks: vec![] },
            Locus::Block(b) => PointSet { rational: vec![], blocks: vec![(b.clone(), 1)] },
        }
    }
}

/// One residual point (or conjugate block) with the components through it.
#[derive(Clone, Debug)]
pub struct ResidualPoint {
    pub locus: Locus,
    pub components: Vec<usize>,
    /// `(i, j, multiplicity)` for every pair of components through the point.
    pub pairs: Vec<(usize, usize, usize)>,
    /// Some component vanishes at only part of a block.
    pub partial: bool,
}

impl ResidualPoint {
    /// Two components crossing transversally.
    pub fn is_node(&self) -> bool {
        !self.partial && self.components.len() == 2 && self.pairs.iter().all(|p| p.2 == 1)
    }
}

#[derive(Clone, Debug)]
pub struct ResidualArrangement {
    pub pairs: Vec<((usize, usize), PointSet)>,
    pub points: Vec<ResidualPoint>,
    pub nodal: bool,
}

impl ResidualArrangement {
    /// Number of points, conjugates counted individually.
    pub fn count(&self) -> usize {
        self.points.iter().map(|p| p.locus.degree()).sum()
    }

    pub fn point_set(&self) -> PointSet {
        let mut s = PointSet::default();
        for p in &self.points {
            s.extend(p.locus.as_point_set());
        }
        s.sort();
        s
    }

    pub fn rational_points(&self) -> Vec<RatPoint> {
        self.points
            .iter()
            .filter_map(|p| match &p.locus {
                Locus::Rational(q) => Some(q.clone()),
                Locus::Block(_) => None,
            })
            .collect()
    }

    pub fn blocks(&self) -> Vec<&Block> {
        self.points
            .iter()
            .filter_map(|p| match &p.locus {
                Locus::Block(b) => Some(b),
                Locus::Rational(_) => None,
            })
            .collect()
    }

    /// Residual points lying on component `i`.
    pub fn on_component(&self, i: usize) -> impl Iterator<Item = &ResidualPoint> {
        self.points.iter().filter(move |p| p.components.contains(&i))
    }
}

fn vanishing_on_block(b: &Block, f: &Poly) -> (bool, bool) {
    let v = b.eval(f);
    if v.is_zero() {
        return (true, false);
    }
    (false, UPoly::gcd(&v, &b.shape).deg() > 0)
}

pub fn residual_arrangement(p: &Polycon) -> Result<ResidualArrangement> {
    let n = p.n();
    let report = validate(p, true);
    let excluded: Vec<RatPoint> = report.implicit_vertices.clone();
    let mut pairs = vec![];
    let mut points: Vec<ResidualPoint> = vec![];
    for i in 0..n {
        for j in i + 1..n {
            let mut inter = intersect_curves(&p.components[i], &p.components[j], &[])?;
            inter.rational.retain(|(q, _)| !excluded.contains(q));
            // A designated vertex takes one unit of its own pair's intersection; anything
            // beyond that stays residual.
            for (q, m) in inter.rational.iter_mut() {
                let own = p.vertex_pairs_at(q).iter().filter(|&&(a, b)| (a.min(b), a.max(b)) == (i, j)).count();
                *m = m.saturating_sub(own);
            }
            inter.rational.retain(|(_, m)| *m > 0);
            for (q, m) in &inter.rational {
                if let Some(e) = points.iter_mut().find(|e| matches!(&e.locus, Locus::Rational(r) if r == q)) {
                    e.pairs.push((i, j, *m));
                    continue;
                }
                let comps: Vec<usize> = (0..n).filter(|&k| q.on(&p.components[k])).collect();
                points.push(ResidualPoint { locus: Locus::Rational(q.clone()), components: comps, pairs: vec![(i, j, *m)], partial: false });
            }
            for (b, m) in &inter.blocks {
                let mut found = false;
                for e in points.iter_mut() {
                    if let Locus::Block(eb) = &e.locus {
                        if b.degree() == eb.degree() {
                            let one = PointSet { rational: vec![], blocks: vec![(b.clone(), 1)] };
                            if one.same_support(&e.locus.as_point_set())? {
                                e.pairs.push((i, j, *m));
                                found = true;
                                break;
                            }
                        }
                    }
                }
                if found {
                    continue;
                }
                let mut comps = vec![];
                let mut partial = false;
                for k in 0..n {
                    let (all, some) = vanishing_on_block(b, &p.components[k]);
                    if all {
                        comps.push(k);
                    }
                    partial |= some;
                }
                points.push(ResidualPoint { locus: Locus::Block(b.clone()), components: comps, pairs: vec![(i, j, *m)], partial });
            }
            inter.sort();
            pairs.push(((i, j), inter));
        }
    }
    let nodal = points.iter().all(ResidualPoint::is_node) && report.nodal;
    Ok(ResidualArrangement { pairs, points, nodal })
}
