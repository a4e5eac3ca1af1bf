//! Rational projective points and blocks of conjugate algebraic points.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::sturm::count_real_roots;
use crate::exactalg::{fmt_rat, rat, with_splitting, ExtElem, Poly, Rat, RatMatrix, Ring, UPoly};

/// A point of P^2(Q), normalized so that its last nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatPoint {
    coords: [Rat; 3],
}

impl RatPoint {
    pub fn new(c: [Rat; 3]) -> Result<Self> {
        let Some(k) = (0..3).rev().find(|&i| !c[i].is_zero()) else {
            return Err(Error::InvalidPolycon("the zero vector is not a projective point".into()));
        };
        let s = Rat::one() / &c[k];
        Ok(RatPoint { coords: c.map(|x| x * &s) })
    }

    pub fn affine(x: Rat, y: Rat) -> Self {
        RatPoint { coords: [x, y, Rat::one()] }
    }

    pub fn affine_i(x: i64, y: i64) -> Self {
        Self::affine(rat(x), rat(y))
    }

    pub fn coords(&self) -> &[Rat; 3] {
        &self.coords
    }

    pub fn is_finite(&self) -> bool {
        !self.coords[2].is_zero()
    }

    /// Affine coordinates when the point is finite.
    pub fn xy(&self) -> Option<(Rat, Rat)> {
        self.is_finite().then(|| (self.coords[0].clone(), self.coords[1].clone()))
    }

    pub fn on(&self, f: &Poly) -> bool {
        f.eval(&self.coords).is_zero()
    }

    pub fn to_f64(&self) -> [f64; 3] {
        self.coords.clone().map(|c| crate::exactalg::rat::to_f64(&c))
    }

    /// The line through two distinct points, as a linear form.
    pub fn line_through(&self, o: &RatPoint) -> Option<Poly> {
        let l = cross(&self.coords, &o.coords);
        (!l.iter().all(Zero::is_zero)).then(|| Poly::linear(&l))
    }

    /// `A p` for a 3x3 matrix given by rows.
    pub fn transform(&self, a: &[[Rat; 3]; 3]) -> Result<RatPoint> {
        RatPoint::new(std::array::from_fn(|i| (0..3).map(|j| &a[i][j] * &self.coords[j]).sum()))
    }
}

pub fn cross(a: &[Rat; 3], b: &[Rat; 3]) -> [Rat; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

impl fmt::Debug for RatPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.xy() {
            Some((x, y)) => write!(f, "({}, {})", fmt_rat(&x), fmt_rat(&y)),
            None => write!(f, "({}:{}:0)", fmt_rat(&self.coords[0]), fmt_rat(&self.coords[1])),
        }
    }
}

impl fmt::Display for RatPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// The conjugate points `(X(u), Y(u), Z(u))` for the roots of a squarefree `shape(u)`.
///
/// Finite blocks have `Z = 1` and `u = sep[0] x + sep[1] y`; blocks at infinity have
/// `Z = 0`, `Y = 1` and `u = x`. Coordinate maps are reduced modulo the shape. The
/// shape is squarefree and has no rational root, but it need not be irreducible.
#[derive(Clone, PartialEq, Eq)]
pub struct Block {
    pub shape: Arc<UPoly>,
    pub sep: [Rat; 2],
    pub coords: [UPoly; 3],
}

impl Block {
    pub fn degree(&self) -> usize {
        self.shape.deg()
    }

    pub fn is_finite(&self) -> bool {
        !self.coords[2].is_zero()
    }

    /// Coordinates as elements of `Q[u]/(shape)`.
    pub fn ext_coords(&self) -> [ExtElem; 3] {
        self.ext_coords_mod(&self.shape)
    }

    pub fn ext_coords_mod(&self, m: &Arc<UPoly>) -> [ExtElem; 3] {
        std::array::from_fn(|i| ExtElem::new(m, &self.coords[i]))
    }

    /// The restriction of this block to a factor of its shape.
    pub fn restrict(&self, m: &Arc<UPoly>) -> Block {
        Block { shape: m.clone(), sep: self.sep.clone(), coords: self.coords.clone().map(|c| c.rem(m)) }
    }

    pub fn real_count(&self) -> usize {
        count_real_roots(&self.shape)
    }

    /// `f(X(u), Y(u), Z(u)) mod shape`.
    pub fn eval(&self, f: &Poly) -> UPoly {
        f.compose_univariate(&self.coords).rem(&self.shape)
    }

    /// Polynomials cutting out exactly this block in the affine chart (or at infinity).
    pub fn ideal_generators(&self) -> Vec<Poly> {
        let (x, y, z) = (Poly::var(0), Poly::var(1), Poly::var(2));
        let u = if self.is_finite() {
            &x.scale(&self.sep[0]) + &y.scale(&self.sep[1])
        } else {
            x.clone()
        };
        let sub = |p: &UPoly| -> Poly {
            let zero = Poly::zero();
            Poly::from_upoly(p, 0).compose(&[u.clone(), zero.clone(), zero])
        };
        let mut gens = vec![];
        for (i, v) in [&x, &y].into_iter().enumerate() {
            let g = v - &sub(&self.coords[i]);
            if !g.is_zero() {
                gens.push(g.normalized());
            }
        }
        if !self.is_finite() {
            gens.push(z);
        }
        gens.push(sub(&self.shape).normalized());
        gens
    }

    pub fn describe(&self) -> String {
        let g: Vec<String> = self.ideal_generators().iter().map(Poly::display_affine).collect();
        format!("V({})", g.join(", "))
    }
}

impl fmt::Debug for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// A zero-dimensional point set with multiplicities: the residual-scheme currency.
#[derive(Clone, Debug, Default)]
pub struct PointSet {
    pub rational: Vec<(RatPoint, usize)>,
    pub blocks: Vec<(Block, usize)>,
}

impl PointSet {
    /// Number of geometric points, conjugates counted individually.
    pub fn count(&self) -> usize {
        self.rational.len() + self.blocks.iter().map(|(b, _)| b.degree()).sum::<usize>()
    }

    /// Sum of multiplicities over all geometric points.
    pub fn total_multiplicity(&self) -> usize {
        self.rational.iter().map(|(_, m)| m).sum::<usize>() + self.blocks.iter().map(|(b, m)| b.degree() * m).sum::<usize>()
    }

    pub fn points(&self) -> impl Iterator<Item = &RatPoint> {
        self.rational.iter().map(|(p, _)| p)
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.rational.iter().map(|(_, m)| *m).collect();
        for (b, m) in &self.blocks {
            v.extend(std::iter::repeat(*m).take(b.degree()));
        }
        v
    }

    pub fn contains_rational(&self, p: &RatPoint) -> bool {
        self.rational.iter().any(|(q, _)| q == p)
    }

    /// Removes one unit of multiplicity at `p`.
    pub fn deflate(&mut self, p: &RatPoint) -> Result<()> {
        let i = self
            .rational
            .iter()
            .position(|(q, _)| q == p)
            .ok_or_else(|| Error::NotOnCurve(format!("known point {p} is not an intersection point")))?;
        self.rational[i].1 -= 1;
        if self.rational[i].1 == 0 {
            self.rational.remove(i);
        }
        Ok(())
    }

    pub fn push_rational(&mut self, p: RatPoint, m: usize) {
        if let Some(e) = self.rational.iter_mut().find(|(q, _)| *q == p) {
            e.1 += m;
        } else {
            self.rational.push((p, m));
        }
    }

    pub fn extend(&mut self, o: PointSet) {
        for (p, m) in o.rational {
            self.push_rational(p, m);
        }
        self.blocks.extend(o.blocks);
    }

    pub fn sort(&mut self) {
        self.rational.sort_by(|a, b| point_key(&a.0).cmp(&point_key(&b.0)));
        self.blocks.sort_by_key(|(b, _)| (b.degree(), format!("{b:?}")));
    }

    /// Whether every point of `self` is a common zero of all `fs`.
    pub fn all_on(&self, fs: &[&Poly]) -> bool {
        self.rational.iter().all(|(p, _)| fs.iter().all(|f| p.on(f)))
            && self.blocks.iter().all(|(b, _)| fs.iter().all(|f| b.eval(f).is_zero()))
    }

    /// Splits `self` by a predicate evaluated exactly at each point: returns the points
    /// where every polynomial of `fs` vanishes, and the rest.
    pub fn partition_by_vanishing(&self, fs: &[&Poly]) -> Result<(PointSet, PointSet)> {
        let mut yes = PointSet::default();
        let mut no = PointSet::default();
        for (p, m) in &self.rational {
            if fs.iter().all(|f| p.on(f)) {
                yes.push_rational(p.clone(), *m);
            } else {
                no.push_rational(p.clone(), *m);
            }
        }
        for (b, m) in &self.blocks {
            let parts = with_splitting(&b.shape, |q| {
                let c = b.ext_coords_mod(q);
                for f in fs {
                    if !f.eval_in(&c).zero_test()? {
                        return Ok(false);
                    }
                }
                Ok(true)
            })?;
            for (q, inside) in parts {
                let sub = b.restrict(&q);
                if inside {
                    yes.blocks.push((sub, *m));
                } else {
                    no.blocks.push((sub, *m));
                }
            }
        }
        Ok((yes, no))
    }

    /// Whether `self` and `other` are the same set of points (multiplicities ignored).
    pub fn same_support(&self, other: &PointSet) -> Result<bool> {
        Ok(self.count() == other.count() && other.subset_of(self)? && self.subset_of(other)?)
    }

    /// Whether every point of `self` is a point of `other`.
    pub fn subset_of(&self, other: &PointSet) -> Result<bool> {
        for (p, _) in &self.rational {
            if !other.contains_rational(p) {
                return Ok(false);
            }
        }
        for (b, _) in &self.blocks {
            // Each part of b must land inside some block of other.
            let mut remaining = vec![b.clone()];
            for (ob, _) in &other.blocks {
                let gens = ob.ideal_generators();
                let refs: Vec<&Poly> = gens.iter().collect();
                let mut next = vec![];
                for r in remaining {
                    let single = PointSet { rational: vec![], blocks: vec![(r, 1)] };
                    let (_, out) = single.partition_by_vanishing(&refs)?;
                    next.extend(out.blocks.into_iter().map(|(b, _)| b));
                }
                remaining = next;
            }
            if !remaining.is_empty() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn point_key(p: &RatPoint) -> (bool, Rat, Rat) {
    let c = p.coords();
    (!p.is_finite(), c[0].clone(), c[1].clone())
}

/// Normalizes points given over `Q[t]/(q)` into rational points and canonical blocks.
pub fn canonicalize(q: &UPoly, coords: &[UPoly; 3], mult: usize) -> Result<PointSet> {
    let parts = with_splitting(q, |m| {
        let c: [ExtElem; 3] = std::array::from_fn(|i| ExtElem::new(m, &coords[i]));
        if c[2].zero_test()? {
            if c[1].zero_test()? {
                return Ok((false, [UPoly::one(), UPoly::zero(), UPoly::zero()]));
            }
            let inv = c[1].inv()?;
            Ok((false, [c[0].times(&inv).value().clone(), UPoly::one(), UPoly::zero()]))
        } else {
            let inv = c[2].inv()?;
            Ok((true, [c[0].times(&inv).value().clone(), c[1].times(&inv).value().clone(), UPoly::one()]))
        }
    })?;
    let mut out = PointSet::default();
    for (m, (finite, c)) in parts {
        out.extend(rur(&m, &c, finite, mult)?);
    }
    Ok(out)
}

fn sep_candidates() -> impl Iterator<Item = [Rat; 2]> {
    let mut v = vec![[rat(0), rat(1)], [rat(1), rat(0)]];
    for k in 1..40i64 {
        v.push([rat(1), rat(k)]);
        v.push([rat(1), rat(-k)]);
    }
    v.into_iter()
}

/// Rational univariate representation of already-normalized coordinates over `Q[t]/(m)`.
fn rur(m: &Arc<UPoly>, c: &[UPoly; 3], finite: bool, mult: usize) -> Result<PointSet> {
    let k = m.deg();
    let vec_of = |p: &UPoly| -> Vec<Rat> { (0..k).map(|i| p.coeff(i)).collect() };
    let cands: Box<dyn Iterator<Item = [Rat; 2]>> =
        if finite { Box::new(sep_candidates()) } else { Box::new(std::iter::once([rat(1), rat(0)])) };
    for sep in cands {
        let u = (&c[0].scale(&sep[0]) + &c[1].scale(&sep[1])).rem(m);
        let mut powers = vec![UPoly::one().rem(m)];
        for i in 0..k {
            powers.push((&powers[i] * &u).rem(m));
        }
        // Columns u^0 .. u^(k-1).
        let mut a = RatMatrix::zeros(k, k);
        for (j, p) in powers[..k].iter().enumerate() {
            for (i, v) in vec_of(p).into_iter().enumerate() {
                a[(i, j)] = v;
            }
        }
        if a.rank() < k {
            continue;
        }
        let low = a.solve(&vec_of(&powers[k])).expect("full rank");
        let mut sc: Vec<Rat> = low.into_iter().map(|x| -x).collect();
        sc.push(Rat::one());
        let shape = UPoly::new(sc);
        let express = |p: &UPoly| UPoly::new(a.solve(&vec_of(p)).expect("full rank"));
        let coords = [express(&c[0]), express(&c[1]), c[2].clone()];
        return Ok(split_rational(shape, sep, coords, mult));
    }
    Err(Error::Genericity(format!("no separating linear form for a block of degree {k}")))
}

fn split_rational(shape: UPoly, sep: [Rat; 2], coords: [UPoly; 3], mult: usize) -> PointSet {
    let mut out = PointSet::default();
    let mut rest = shape;
    for r in rest.rational_roots() {
        let p = coords.clone().map(|c| c.eval(&r));
        out.push_rational(RatPoint::new(p).expect("normalized coordinates"), mult);
        rest = rest.exact_div(&UPoly::linear_root(&r)).expect("root");
    }
    if rest.deg() > 0 {
        let shape = Arc::new(rest);
        let coords = coords.map(|c| c.rem(&shape));
        out.blocks.push((Block { shape, sep, coords }, mult));
    }
    out
}
