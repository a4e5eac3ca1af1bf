//! Conics: classification by the signature of the symmetric matrix, and rational
//! parametrization by projection from a rational point.

use num_traits::{One, Zero};

use super::point::{cross, RatPoint};
use crate::error::{Error, Result};
use crate::exactalg::{rat, Poly, Rat, RatMatrix, UPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConicClass {
    SmoothRealNonempty,
    SmoothRealEmpty,
    RealLinePair { singular: RatPoint },
    ConjugateLinePair { singular: RatPoint },
    DoubleLine { line: Poly },
}

impl ConicClass {
    pub fn is_smooth(&self) -> bool {
        matches!(self, ConicClass::SmoothRealNonempty | ConicClass::SmoothRealEmpty)
    }

    pub fn name(&self) -> &'static str {
        match self {
            ConicClass::SmoothRealNonempty => "smooth-real-nonempty",
            ConicClass::SmoothRealEmpty => "smooth-real-empty",
            ConicClass::RealLinePair { .. } => "real-line-pair",
            ConicClass::ConjugateLinePair { .. } => "conjugate-line-pair",
            ConicClass::DoubleLine { .. } => "double-line",
        }
    }
}

/// Symmetric matrix `Q` with `C(p) = p^T Q p`.
pub fn conic_matrix(c: &Poly) -> [[Rat; 3]; 3] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut e = [0u32; 3];
            e[i] += 1;
            e[j] += 1;
            let v = c.coeff(&e);
            if i == j {
                v
            } else {
                v / rat(2)
            }
        })
    })
}

fn sign_variations(cs: &[Rat]) -> usize {
    let s: Vec<bool> = cs.iter().filter(|c| !c.is_zero()).map(|c| c > &Rat::zero()).collect();
    s.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Numbers of positive and negative eigenvalues of a real symmetric 3x3 matrix. The
/// characteristic polynomial has only real roots, so Descartes' rule is exact.
fn inertia(q: &[[Rat; 3]; 3]) -> (usize, usize) {
    let m = RatMatrix::from_3x3(q);
    let tr: Rat = (0..3).map(|i| q[i][i].clone()).sum();
    let minors: Rat = [(0, 1), (0, 2), (1, 2)]
        .iter()
        .map(|&(i, j)| &q[i][i] * &q[j][j] - &q[i][j] * &q[j][i])
        .sum();
    let det = m.det();
    // lambda^3 - tr lambda^2 + minors lambda - det
    let p = [Rat::one(), -tr.clone(), minors.clone(), -det.clone()];
    let n = [-Rat::one(), -tr, -minors, -det];
    (sign_variations(&p), sign_variations(&n))
}

pub fn classify_conic(c: &Poly) -> Result<ConicClass> {
    if c.degree() != 2 || !c.is_homogeneous() {
        return Err(Error::WrongDegree { expected: "2".into(), found: c.degree() });
    }
    let q = conic_matrix(c);
    let m = RatMatrix::from_3x3(&q);
    let (pos, neg) = inertia(&q);
    match m.rank() {
        3 => Ok(if pos == 3 || neg == 3 { ConicClass::SmoothRealEmpty } else { ConicClass::SmoothRealNonempty }),
        2 => {
            let k = m.nullspace().remove(0);
            let singular = RatPoint::new([k[0].clone(), k[1].clone(), k[2].clone()])?;
            Ok(if pos == 1 && neg == 1 {
                ConicClass::RealLinePair { singular }
            } else {
                ConicClass::ConjugateLinePair { singular }
            })
        }
        _ => {
            // Rank one: C = l^2 up to scale, with l read off a nonzero row.
            let i = (0..3).find(|&i| !q[i][i].is_zero()).expect("rank one has a nonzero diagonal");
            let line = Poly::linear(&q[i]);
            Ok(ConicClass::DoubleLine { line })
        }
    }
}

fn bracket(p: &[Rat; 2], q: &[Rat; 2]) -> Rat {
    &p[0] * &q[1] - &p[1] * &q[0]
}

/// Projection of a smooth conic from a rational base point onto the pencil of lines
/// through it. A point maps to the first two coefficients of the line joining it to the
/// base; the base itself maps to its tangent line.
#[derive(Clone, Debug)]
pub struct ConicParam {
    pub conic: Poly,
    pub base: RatPoint,
    grad: [Rat; 3],
}

impl ConicParam {
    pub fn new(conic: &Poly, base: &RatPoint) -> Result<Self> {
        if !classify_conic(conic)?.is_smooth() {
            return Err(Error::SingularConic(conic.to_string()));
        }
        if !base.on(conic) {
            return Err(Error::NotOnCurve(format!("base {base} is not on {conic}")));
        }
        if !base.is_finite() {
            return Err(Error::PreconditionViolation("parametrization base must be a finite point".into()));
        }
        let grad = conic.gradient().map(|g| g.eval(base.coords()));
        Ok(ConicParam { conic: conic.clone(), base: base.clone(), grad })
    }

    pub fn forward(&self, p: &RatPoint) -> Result<[Rat; 2]> {
        if !p.on(&self.conic) {
            return Err(Error::NotOnCurve(format!("{p}")));
        }
        let l = if p == &self.base { self.grad.clone() } else { cross(self.base.coords(), p.coords()) };
        Ok([l[0].clone(), l[1].clone()])
    }

    /// The parameter of points given by polynomial coordinates (reduce modulo a shape).
    pub fn forward_poly(&self, c: &[UPoly; 3]) -> [UPoly; 2] {
        let b = self.base.coords();
        let k = |i: usize, j: usize| &c[j].scale(&b[i]) - &c[i].scale(&b[j]);
        [k(1, 2), k(2, 0)]
    }

    pub fn backward(&self, s: &[Rat; 2]) -> Result<RatPoint> {
        if s[0].is_zero() && s[1].is_zero() {
            return Err(Error::PreconditionViolation("(0:0) is not a parameter".into()));
        }
        let d = [-s[1].clone(), s[0].clone(), Rat::zero()];
        let cd = self.conic.eval(&d);
        let gd: Rat = (0..3).map(|i| &self.grad[i] * &d[i]).sum();
        let b = self.base.coords();
        RatPoint::new(std::array::from_fn(|i| &cd * &b[i] - &gd * &d[i]))
    }
}

/// Whether two parameters are the same point of P^1.
pub fn same_param(a: &[Rat; 2], b: &[Rat; 2]) -> bool {
    bracket(a, b).is_zero()
}

/// Which of the two open arcs between `p1` and `p2` contains `p`: `-1` for the arc
/// containing `p1 + p2`, `+1` for the arc containing `p1 - p2`, `0` at an endpoint.
pub fn arc_side(p: &[Rat; 2], p1: &[Rat; 2], p2: &[Rat; 2]) -> i32 {
    let v = bracket(p, p1) * bracket(p, p2);
    crate::exactalg::rat::sign(&v)
}

/// The polynomial whose sign at `t` gives [`arc_side`] for the parameter `(s(t) : u(t))`.
pub fn arc_side_poly(p: &[UPoly; 2], p1: &[Rat; 2], p2: &[Rat; 2]) -> UPoly {
    let br = |q: &[Rat; 2]| &p[0].scale(&q[1]) - &p[1].scale(&q[0]);
    &br(p1) * &br(p2)
}

/// A rational parameter strictly inside the chosen arc (`sigma = -1` or `+1`).
pub fn arc_sample(p1: &[Rat; 2], p2: &[Rat; 2], sigma: i32) -> [Rat; 2] {
    let s = rat(-(sigma as i64));
    [&p1[0] + &p2[0] * &s, &p1[1] + &p2[1] * &s]
}

/// The parameter `p1 + lambda p2`, linear in `lambda`. The open arc `sigma` is
/// `lambda > 0` for `sigma = -1` and `lambda < 0` for `sigma = +1`.
pub fn arc_pencil(p1: &[Rat; 2], p2: &[Rat; 2]) -> [UPoly; 2] {
    [UPoly::new(vec![p1[0].clone(), p2[0].clone()]), UPoly::new(vec![p1[1].clone(), p2[1].clone()])]
}
