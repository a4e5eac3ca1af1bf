//! Resultants by the subresultant pseudo-remainder sequence.
//!
//! The sign convention is Sylvester's: for `f` of degree `m` and `g` of degree `n` in the
//! eliminated variable, `res(f, g) = lc(f)^n lc(g)^m prod (a_i - b_j)` over the roots.
//! In particular `res(f h, g) = res(f, g) res(h, g)` and `res(g, f) = (-1)^(mn) res(f, g)`.

use super::poly::Poly;
use crate::error::{Error, Result};

type VPoly = Vec<Poly>;

fn trim(p: &mut VPoly) {
    while p.last().is_some_and(Poly::is_zero) {
        p.pop();
    }
}

fn deg(p: &VPoly) -> usize {
    p.len() - 1
}

fn lc(p: &VPoly) -> &Poly {
    p.last().expect("nonzero")
}

/// `lc(b)^(deg a - deg b + 1) * a mod b`.
fn prem(a: &VPoly, b: &VPoly) -> VPoly {
    let mut r = a.clone();
    let lb = lc(b).clone();
    let db = deg(b);
    let mut e = deg(a) + 1 - db;
    while !r.is_empty() && r.len() > db {
        let lr = lc(&r).clone();
        let shift = deg(&r) - db;
        for c in r.iter_mut() {
            *c = &*c * &lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &(&lr * bc);
        }
        trim(&mut r);
        e -= 1;
    }
    let f = lb.pow(e);
    r.iter().map(|c| c * &f).collect()
}

fn divide_all(p: &VPoly, d: &Poly) -> Result<VPoly> {
    p.iter().map(|c| c.exact_divide(d)).collect()
}

/// Resultant of `f` and `g` with respect to `x_var`.
pub fn resultant(f: &Poly, g: &Poly, var: usize) -> Result<Poly> {
    if f.is_zero() || g.is_zero() {
        return Ok(Poly::zero());
    }
    let (m, n) = (f.degree_in(var), g.degree_in(var));
    if m == 0 && n == 0 {
        return Err(Error::DegenerateElimination(var));
    }
    if n == 0 {
        return Ok(g.pow(m));
    }
    if m == 0 {
        return Ok(f.pow(n));
    }
    let mut a = f.coefficients_in(var);
    let mut b = g.coefficients_in(var);
    let mut s = 1i32;
    if m < n {
        std::mem::swap(&mut a, &mut b);
        if m % 2 == 1 && n % 2 == 1 {
            s = -s;
        }
    }
    let mut gg = Poly::one();
    let mut h = Poly::one();
    loop {
        let (da, db) = (deg(&a), deg(&b));
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
        let r = prem(&a, &b);
        if r.is_empty() {
            return Ok(Poly::zero());
        }
        a = b;
        b = divide_all(&r, &(&gg * &h.pow(delta)))?;
        gg = lc(&a).clone();
        h = if delta == 0 { h } else { gg.pow(delta).exact_divide(&h.pow(delta - 1))? };
        if deg(&b) == 0 {
            break;
        }
    }
    let da = deg(&a);
    let res = if da == 0 { Poly::one() } else { lc(&b).pow(da).exact_divide(&h.pow(da - 1))? };
    Ok(if s < 0 { -&res } else { res })
}

/// Sylvester-matrix determinant by cofactor-free elimination over Q[other vars];
/// slow but obviously correct, kept as a test oracle.
pub fn resultant_sylvester(f: &Poly, g: &Poly, var: usize) -> Poly {
    let a = f.coefficients_in(var);
    let b = g.coefficients_in(var);
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    let mut mat = vec![vec![Poly::zero(); size]; size];
    for i in 0..n {
        for (k, c) in a.iter().rev().enumerate() {
            mat[i][i + k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in b.iter().rev().enumerate() {
            mat[n + i][i + k] = c.clone();
        }
    }
    det_laplace(&mat)
}

fn det_laplace(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Poly::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, p)| p.clone()).collect()).collect();
        let t = &m[0][j] * &det_laplace(&minor);
        acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::poly::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn monic_linear_substitution() {
        assert_eq!(resultant(&p("y^2 + x^2 - 1"), &p("y - x"), 1).unwrap(), p("2x^2 - 1"));
    }

    #[test]
    fn common_root_gives_zero() {
        assert!(resultant(&p("y^2"), &p("y"), 1).unwrap().is_zero());
    }

    #[test]
    fn absent_variable_is_an_error() {
        assert!(matches!(resultant(&p("x"), &p("x+1"), 1), Err(Error::DegenerateElimination(1))));
    }

    #[test]
    fn agrees_with_sylvester_determinant() {
        let cases = [
            ("x^3 - 2xy + y^2 - 1", "x^2 + 3y - 2"),
            ("20x^2+27y^2-120x+108y-864", "80x^2+102xy+57y^2-400x-96y"),
            ("2x^2 + y", "3x^4 - x*y + 7"),
            ("x + y", "x^3 + y^3 + 1"),
        ];
        for (a, b) in cases {
            let (a, b) = (p(a), p(b));
            assert_eq!(resultant(&a, &b, 0).unwrap(), resultant_sylvester(&a, &b, 0), "{a} / {b}");
            assert_eq!(resultant(&b, &a, 0).unwrap(), resultant_sylvester(&b, &a, 0), "{b} / {a}");
        }
    }
}
