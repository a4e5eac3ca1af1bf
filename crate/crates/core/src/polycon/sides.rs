//! Choosing the side of each boundary component: the arc between its two vertices that
//! carries no real residual point.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::sturm::isolate_real_roots;
use crate::exactalg::{rat, Poly, Rat, UPoly};
use crate::plane::conic::{arc_pencil, arc_side, arc_side_poly, classify_conic, ConicClass, ConicParam};
use crate::plane::{intersect_curves, Block, PointSet, RatPoint};

use super::arrangement::{Locus, ResidualArrangement};
use super::model::Polycon;

/// Coordinates on a boundary component: projection from a point for a conic, and the
/// basis `(a, b)` of its two vertices for a line.
#[derive(Clone, Debug)]
pub enum SideParam {
    Conic(ConicParam),
    Line { a: [Rat; 3], b: [Rat; 3] },
}

fn line_rows(a: &[Rat; 3], b: &[Rat; 3]) -> (usize, usize, Rat) {
    for (r, s) in [(0, 1), (0, 2), (1, 2)] {
        let d = &a[r] * &b[s] - &a[s] * &b[r];
        if !d.is_zero() {
            return (r, s, d);
        }
    }
    unreachable!("line basis points are distinct")
}

impl SideParam {
    pub fn new(c: &Poly, a: &RatPoint, b: &RatPoint) -> Result<Self> {
        if c.degree() == 1 {
            if a == b {
                return Err(Error::PreconditionViolation("a line side needs two distinct vertices".into()));
            }
            return Ok(SideParam::Line { a: a.coords().clone(), b: b.coords().clone() });
        }
        let base = if a.is_finite() { a } else { b };
        Ok(SideParam::Conic(ConicParam::new(c, base)?))
    }

    pub fn forward(&self, p: &RatPoint) -> Result<[Rat; 2]> {
        match self {
            SideParam::Conic(pi) => pi.forward(p),
            SideParam::Line { a, b } => {
                let (r, s, d) = line_rows(a, b);
                let q = p.coords();
                let line = crate::plane::point::cross(a, b);
                if !(0..3).map(|i| &line[i] * &q[i]).sum::<Rat>().is_zero() {
                    return Err(Error::NotOnCurve(p.to_string()));
                }
                Ok([(&q[r] * &b[s] - &q[s] * &b[r]) / &d, (&a[r] * &q[s] - &a[s] * &q[r]) / &d])
            }
        }
    }

    /// Parameters of points with polynomial coordinates (reduce modulo a shape).
    pub fn forward_poly(&self, c: &[UPoly; 3]) -> [UPoly; 2] {
        match self {
            SideParam::Conic(pi) => pi.forward_poly(c),
            SideParam::Line { a, b } => {
                let (r, s, d) = line_rows(a, b);
                let inv = Rat::from_integer(1.into()) / d;
                [
                    (&c[r].scale(&b[s]) - &c[s].scale(&b[r])).scale(&inv),
                    (&c[s].scale(&a[r]) - &c[r].scale(&a[s])).scale(&inv),
                ]
            }
        }
    }

    pub fn backward(&self, s: &[Rat; 2]) -> Result<RatPoint> {
        match self {
            SideParam::Conic(pi) => pi.backward(s),
            SideParam::Line { a, b } => RatPoint::new(std::array::from_fn(|i| &s[0] * &a[i] + &s[1] * &b[i])),
        }
    }

    /// Homogeneous coordinates of the point with parameter `(s(t) : u(t))`.
    pub fn backward_poly(&self, s: &[UPoly; 2]) -> [UPoly; 3] {
        match self {
            SideParam::Conic(pi) => {
                let d = [-&s[1], s[0].clone(), UPoly::zero()];
                let cd = pi.conic.compose_univariate(&d);
                let b = pi.base.coords();
                let g = pi.conic.gradient().map(|g| g.eval(b));
                let gd = (0..3).fold(UPoly::zero(), |acc, i| &acc + &d[i].scale(&g[i]));
                std::array::from_fn(|i| &cd.scale(&b[i]) - &(&gd * &d[i]))
            }
            SideParam::Line { a, b } => std::array::from_fn(|i| &s[0].scale(&a[i]) + &s[1].scale(&b[i])),
        }
    }
}

/// The closed side of component `component`: the parameters strictly between `p1`
/// (previous vertex) and `p2` (next vertex) on the arc `sigma`, in the sense of
/// [`arc_side`].
#[derive(Clone, Debug)]
pub struct Side {
    pub component: usize,
    pub param: SideParam,
    pub p1: [Rat; 2],
    pub p2: [Rat; 2],
    pub sigma: i32,
}

impl Side {
    /// Whether a point of the component lies in the open arc.
    pub fn contains(&self, p: &RatPoint) -> Result<bool> {
        Ok(arc_side(&self.param.forward(p)?, &self.p1, &self.p2) == self.sigma)
    }

    /// Coordinates of `p1 + lambda p2`; the open arc is `lambda > 0` when `sigma = -1`
    /// and `lambda < 0` when `sigma = +1`.
    pub fn pencil_coords(&self) -> [UPoly; 3] {
        self.param.backward_poly(&arc_pencil(&self.p1, &self.p2))
    }

    /// A rational point in the open arc, finite if possible.
    pub fn sample(&self) -> Result<RatPoint> {
        let dir = -self.sigma as i64;
        let mut first = None;
        for k in [1i64, 2, 3, 5, 7, 11, 13] {
            for lam in [rat(k) * rat(dir), Rat::new(dir.into(), k.into())] {
                let s = [&self.p1[0] + &lam * &self.p2[0], &self.p1[1] + &lam * &self.p2[1]];
                let q = self.param.backward(&s)?;
                if q.is_finite() {
                    return Ok(q);
                }
                first.get_or_insert(q);
            }
        }
        Ok(first.expect("candidates tried"))
    }

    /// Finite points of the open arc at `lambda = +-k` and `+-1/k`.
    pub fn points_along(&self, ks: &[i64]) -> Result<Vec<RatPoint>> {
        let dir = -self.sigma as i64;
        let mut out = vec![];
        for &k in ks {
            for lam in [rat(k) * rat(dir), Rat::new(dir.into(), k.into())] {
                let s = [&self.p1[0] + &lam * &self.p2[0], &self.p1[1] + &lam * &self.p2[1]];
                let q = self.param.backward(&s)?;
                if q.is_finite() && !out.contains(&q) {
                    out.push(q);
                }
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug)]
pub struct SideSelection {
    pub sides: Vec<Side>,
    /// Components where both arcs were residual-free and the arc avoiding the line at
    /// infinity was taken.
    pub tie_breaks: Vec<usize>,
}

/// For each arc `(-1, +1)`, whether it carries a real point of the set.
fn arcs_hit(param: &SideParam, p1: &[Rat; 2], p2: &[Rat; 2], pts: &[Locus]) -> Result<[bool; 2]> {
    let mut hit = [false; 2];
    let mut mark = |s: i32| {
        if s != 0 {
            hit[((s + 1) / 2) as usize] = true;
        }
    };
    for l in pts {
        match l {
            Locus::Rational(q) => mark(arc_side(&param.forward(q)?, p1, p2)),
            Locus::Block(b) => {
                for s in block_arc_sides(param, p1, p2, b) {
                    mark(s);
                }
            }
        }
    }
    Ok(hit)
}

/// Arc side of each real point of a block lying on the component.
pub fn block_arc_sides(param: &SideParam, p1: &[Rat; 2], p2: &[Rat; 2], b: &Block) -> Vec<i32> {
    let pr = param.forward_poly(&b.coords).map(|c| c.rem(&b.shape));
    let side = arc_side_poly(&pr, p1, p2).rem(&b.shape);
    isolate_real_roots(&b.shape).iter().map(|r| r.sign_of(&side)).collect()
}

fn loci(s: &PointSet) -> Vec<Locus> {
    s.rational
        .iter()
        .map(|(p, _)| Locus::Rational(p.clone()))
        .chain(s.blocks.iter().map(|(b, _)| Locus::Block(b.clone())))
        .collect()
}

pub fn select_sides(p: &Polycon, arr: &ResidualArrangement) -> Result<SideSelection> {
    let mut sides = vec![];
    let mut tie_breaks = vec![];
    for i in 0..p.n() {
        let c = &p.components[i];
        if c.degree() == 2 && classify_conic(c)? != ConicClass::SmoothRealNonempty {
            return Err(Error::UnsupportedDegeneration(format!(
                "component {} is not a smooth real conic",
                i + 1
            )));
        }
        let (a, b) = p.vertices_of(i);
        let param = SideParam::new(c, a, b)?;
        let (p1, p2) = (param.forward(a)?, param.forward(b)?);
        if crate::plane::conic::same_param(&p1, &p2) {
            return Err(Error::AdjacentVerticesEqual(i + 1));
        }
        let residual: Vec<Locus> = arr.on_component(i).map(|r| r.locus.clone()).collect();
        let hit = arcs_hit(&param, &p1, &p2, &residual)?;
        let sigma = match hit {
            [false, true] => -1,
            [true, false] => 1,
            [true, true] => return Err(Error::NoResidualFreeArc(i + 1)),
            [false, false] => {
                let at_inf = intersect_curves(c, &Poly::var(2), &[])?;
                match arcs_hit(&param, &p1, &p2, &loci(&at_inf))? {
                    [false, true] => {
                        tie_breaks.push(i);
                        -1
                    }
                    [true, false] => {
                        tie_breaks.push(i);
                        1
                    }
                    _ => return Err(Error::AmbiguousArc(i + 1)),
                }
            }
        };
        sides.push(Side { component: i, param, p1, p2, sigma });
    }
    Ok(SideSelection { sides, tie_breaks })
}
