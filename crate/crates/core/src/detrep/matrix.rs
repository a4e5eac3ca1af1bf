//! 3x3 matrices of homogeneous forms, symmetric linear determinantal representations and
//! their adjugates, and symmetric basis changes.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{Poly, Rat, RatMatrix};

pub type PolyMat = [[Poly; 3]; 3];

pub fn mat_mul(a: &PolyMat, b: &PolyMat) -> PolyMat {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (0..3).fold(Poly::zero(), |acc, k| &acc + &(&a[i][k] * &b[k][j])))
    })
}

fn minor(a: &PolyMat, r: [usize; 2], c: [usize; 2]) -> Poly {
    &(&a[r[0]][c[0]] * &a[r[1]][c[1]]) - &(&a[r[0]][c[1]] * &a[r[1]][c[0]])
}

fn others(i: usize) -> [usize; 2] {
    match i {
        0 => [1, 2],
        1 => [0, 2],
        _ => [0, 1],
    }
}

/// Classical adjugate: `adj(A)_{ij} = (-1)^{i+j} det(A with row j and column i removed)`.
pub fn adjugate(a: &PolyMat) -> PolyMat {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let m = minor(a, others(j), others(i));
            if (i + j) % 2 == 0 {
                m
            } else {
                -&m
            }
        })
    })
}

pub fn det(a: &PolyMat) -> Poly {
    (0..3).fold(Poly::zero(), |acc, j| {
        let t = &a[0][j] * &minor(a, [1, 2], others(j));
        if j % 2 == 0 {
            &acc + &t
        } else {
            &acc - &t
        }
    })
}

pub fn is_symmetric(a: &PolyMat) -> bool {
    (0..3).all(|i| (0..i).all(|j| a[i][j] == a[j][i]))
}

/// All 2x2 minors, indexed by (rows, columns).
pub fn minors_2x2(a: &PolyMat) -> Vec<((usize, usize), (usize, usize), Poly)> {
    let pairs = [(0, 1), (0, 2), (1, 2)];
    let mut out = vec![];
    for r in pairs {
        for c in pairs {
            out.push((r, c, minor(a, [r.0, r.1], [c.0, c.1])));
        }
    }
    out
}

/// `T A T^t` for a rational `T`.
pub fn congruence(t: &[[Rat; 3]; 3], a: &PolyMat) -> PolyMat {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut acc = Poly::zero();
            for k in 0..3 {
                for l in 0..3 {
                    let c = &t[i][k] * &t[j][l];
                    if !c.is_zero() {
                        acc = &acc + &a[k][l].scale(&c);
                    }
                }
            }
            acc
        })
    })
}

pub fn scale_mat(a: &PolyMat, c: &Rat) -> PolyMat {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][j].scale(c)))
}

pub fn divide_mat(a: &PolyMat, f: &Poly) -> Result<PolyMat> {
    let mut out: PolyMat = Default::default();
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = a[i][j].exact_divide(f)?;
        }
    }
    Ok(out)
}

fn mat_eq_scalar_identity(a: &PolyMat, d: &Poly) -> bool {
    (0..3).all(|i| (0..3).all(|j| if i == j { a[i][j] == *d } else { a[i][j].is_zero() }))
}

/// A symmetric matrix of linear forms with `det(M) = det_scale * cubic`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymLdr {
    pub entries: PolyMat,
    pub det_scale: Rat,
    pub cubic: Poly,
}

impl SymLdr {
    /// Checks symmetry, linearity and proportionality of the determinant to `cubic`.
    pub fn new(entries: PolyMat, cubic: &Poly) -> Result<Self> {
        if !is_symmetric(&entries) {
            return Err(Error::PreconditionViolation("matrix is not symmetric".into()));
        }
        for row in &entries {
            for e in row {
                if !e.is_zero() && (e.degree() != 1 || !e.is_homogeneous()) {
                    return Err(Error::WrongDegree { expected: "linear form".into(), found: e.degree() });
                }
            }
        }
        let d = det(&entries);
        let det_scale = d
            .proportionality(cubic)
            .ok_or_else(|| Error::Inconsistency("det(M) is not proportional to the cubic".into()))?;
        Ok(SymLdr { entries, det_scale, cubic: cubic.clone() })
    }

    /// `M` alone; the reference cubic is `det(M)` itself.
    pub fn from_entries(entries: PolyMat) -> Result<Self> {
        let d = det(&entries);
        if d.is_zero() {
            return Err(Error::PreconditionViolation("det(M) vanishes identically".into()));
        }
        SymLdr::new(entries, &d.normalized())
    }

    pub fn adjugate(&self) -> AdjugateMatrix {
        AdjugateMatrix { entries: adjugate(&self.entries) }
    }

    pub fn determinant(&self) -> Poly {
        det(&self.entries)
    }

    /// `M M^adj = det(M) Id`, exactly.
    pub fn adjugate_consistent(&self, adj: &AdjugateMatrix) -> bool {
        mat_eq_scalar_identity(&mat_mul(&self.entries, &adj.entries), &self.determinant())
    }

    /// Coefficient vectors of the entries as rows; a common zero exists iff the rank is below 3.
    pub fn coefficient_rank(&self) -> usize {
        let rows: Vec<Vec<Rat>> = self
            .entries
            .iter()
            .flatten()
            .map(|e| vec![e.coeff(&[1, 0, 0]), e.coeff(&[0, 1, 0]), e.coeff(&[0, 0, 1])])
            .collect();
        RatMatrix::from_rows(rows).rank()
    }
}

/// The adjugate of a symmetric linear determinantal representation: quadratic forms,
/// `alpha_i` on the diagonal and the boundary conics `c_k` off it.
#[derive(Clone, Debug, PartialEq)]
pub struct AdjugateMatrix {
    pub entries: PolyMat,
}

impl AdjugateMatrix {
    pub fn from_parts(alpha: [Poly; 3], c: [Poly; 3]) -> Self {
        let [a1, a2, a3] = alpha;
        let [c1, c2, c3] = c;
        AdjugateMatrix {
            entries: [[a1, c3.clone(), c2.clone()], [c3, a2, c1.clone()], [c2, c1, a3]],
        }
    }

    /// The diagonal entry `alpha_i` (0-based).
    pub fn alpha(&self, i: usize) -> &Poly {
        &self.entries[i][i]
    }

    /// The off-diagonal entry `c_k` (0-based), sitting opposite `alpha_k`.
    pub fn conic(&self, k: usize) -> &Poly {
        let [a, b] = others(k);
        &self.entries[a][b]
    }

    pub fn conics(&self) -> [Poly; 3] {
        std::array::from_fn(|k| self.conic(k).clone())
    }

    pub fn transform(&self, t: &BasisChange) -> AdjugateMatrix {
        AdjugateMatrix { entries: congruence(&t.matrix, &self.entries) }
    }

    /// Every 2x2 minor is divisible by `f`.
    pub fn minors_divisible_by(&self, f: &Poly) -> bool {
        minors_2x2(&self.entries).iter().all(|(_, _, m)| f.divides(m))
    }
}

/// An invertible rational `T`, acting by `N -> T N T^t`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BasisChange {
    #[serde(serialize_with = "crate::detrep::matrix::ser_rat_grid")]
    pub matrix: [[Rat; 3]; 3],
    #[serde(serialize_with = "crate::detrep::matrix::ser_opt_rat")]
    pub gamma: Option<Rat>,
}

pub(crate) fn ser_rat_grid<S: serde::Serializer>(m: &[[Rat; 3]; 3], s: S) -> std::result::Result<S::Ok, S::Error> {
    let g: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(crate::exactalg::fmt_rat).collect()).collect();
    serde::Serialize::serialize(&g, s)
}

pub(crate) fn ser_opt_rat<S: serde::Serializer>(g: &Option<Rat>, s: S) -> std::result::Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&g.as_ref().map(crate::exactalg::fmt_rat), s)
}

impl BasisChange {
    pub fn new(matrix: [[Rat; 3]; 3]) -> Result<Self> {
        if RatMatrix::from_3x3(&matrix).det().is_zero() {
            return Err(Error::PreconditionViolation("basis change is singular".into()));
        }
        Ok(BasisChange { matrix, gamma: None })
    }

    pub fn identity() -> Self {
        BasisChange { matrix: RatMatrix::identity(3).to_3x3(), gamma: None }
    }

    /// `T_g = (1 g 0; 0 1 0; 0 0 1)`.
    pub fn t_gamma(g: Rat) -> Self {
        let mut m = RatMatrix::identity(3).to_3x3();
        m[0][1] = g.clone();
        BasisChange { matrix: m, gamma: Some(g) }
    }

    pub fn det(&self) -> Rat {
        RatMatrix::from_3x3(&self.matrix).det()
    }

    /// `det(T) T^{-t} M T^{-1}`: the companion of `T N T^t` when `N = adj(M)`.
    pub fn act_on_ldr(&self, m: &PolyMat) -> PolyMat {
        let inv = RatMatrix::from_3x3(&self.matrix).inverse().expect("invertible").to_3x3();
        let inv_t: [[Rat; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| inv[j][i].clone()));
        scale_mat(&congruence(&inv_t, m), &self.det())
    }

    pub fn is_identity(&self) -> bool {
        (0..3).all(|i| (0..3).all(|j| self.matrix[i][j] == if i == j { Rat::one() } else { Rat::zero() }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_poly;

    fn pm(rows: [[&str; 3]; 3]) -> PolyMat {
        rows.map(|r| r.map(|s| parse_poly(s).unwrap()))
    }

    #[test]
    fn adjugate_of_triple_line_ldr() {
        let m = pm([["x2", "x1", "x0"], ["x1", "-x0", "0"], ["x0", "0", "0"]]);
        let n = adjugate(&m);
        let want = pm([["0", "0", "x0^2"], ["0", "-x0^2", "x0*x1"], ["x0^2", "x0*x1", "-x1^2 - x0*x2"]]);
        assert_eq!(n, want);
        assert_eq!(det(&m), parse_poly("x0^3").unwrap());
        let l = SymLdr::from_entries(m).unwrap();
        assert!(l.adjugate_consistent(&l.adjugate()));
    }

    #[test]
    fn basis_change_keeps_pair_consistent() {
        let m = pm([["x2", "x1", "x0"], ["x1", "-x0", "0"], ["x0", "0", "0"]]);
        let l = SymLdr::from_entries(m).unwrap();
        let t = BasisChange::new([[1, 0, 1], [0, 1, 1], [2, 0, 1]].map(|r| r.map(crate::exactalg::rat))).unwrap();
        let m2 = t.act_on_ldr(&l.entries);
        assert_eq!(adjugate(&m2), l.adjugate().transform(&t).entries);
    }
}
