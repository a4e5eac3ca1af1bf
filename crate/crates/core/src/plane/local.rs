//! Lengths of zero-dimensional local algebras at rational points.

use num_traits::Zero;

use crate::exactalg::{rat, Exp, Poly, Rat, RatMatrix};
use crate::plane::RatPoint;

/// Moves `p` to `(0:0:1)` and dehomogenizes.
fn at_origin(f: &Poly, p: &RatPoint) -> Poly {
    let c = p.coords();
    let k = (0..3).rev().find(|&i| !c[i].is_zero()).expect("nonzero point");
    let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
    // Columns of A: e_{others[0]}, e_{others[1]}, p.
    let mut a: [[Rat; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| Rat::zero()));
    a[others[0]][0] = rat(1);
    a[others[1]][1] = rat(1);
    for i in 0..3 {
        a[i][2] = c[i].clone();
    }
    f.transform(&a).dehomogenize()
}

fn truncated(f: &Poly, n: u32) -> Poly {
    Poly::from_terms(f.terms().filter(|(e, _)| e[0] + e[1] < n).map(|(e, c)| (*e, c.clone())))
}

/// `dim O_p / (gens)`, assuming the ideal contains the `bound`-th power of the maximal
/// ideal at `p` (true when `bound` is at least the length).
pub fn local_length(gens: &[&Poly], p: &RatPoint, bound: usize) -> usize {
    let n = bound.max(1) as u32;
    let monos: Vec<Exp> = (0..n).flat_map(|d| (0..=d).map(move |i| [d - i, i, 0])).collect();
    let local: Vec<Poly> = gens.iter().map(|g| at_origin(g, p)).collect();
    let mut rows = vec![];
    for g in &local {
        for m in &monos {
            let t = truncated(&g.mul_monomial(&rat(1), m), n);
            if !t.is_zero() {
                rows.push(t.coeff_vector(&monos));
            }
        }
    }
    if rows.is_empty() {
        return monos.len();
    }
    monos.len() - RatMatrix::from_rows(rows).rank()
}
