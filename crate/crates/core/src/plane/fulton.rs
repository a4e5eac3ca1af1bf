//! Local intersection numbers by Fulton's algorithm, over `Q[t]/(q)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::point::{Block, RatPoint};
use crate::error::{Error, Result};
use crate::exactalg::{with_splitting, ExtElem, Poly, Rat, Ring, UPoly};

/// Bivariate polynomial with coefficients in `Q[t]/(m)`, stored as reduced residues.
#[derive(Clone, Debug)]
struct BiPoly {
    m: Arc<UPoly>,
    terms: BTreeMap<(u32, u32), UPoly>,
}

impl BiPoly {
    fn zero(m: &Arc<UPoly>) -> Self {
        BiPoly { m: m.clone(), terms: BTreeMap::new() }
    }

    fn term(m: &Arc<UPoly>, e: (u32, u32), c: UPoly) -> Self {
        let mut p = Self::zero(m);
        p.add_term(e, c);
        p
    }

    fn add_term(&mut self, e: (u32, u32), c: UPoly) {
        let v = self.terms.remove(&e).unwrap_or_default();
        let s = (&v + &c).rem(&self.m);
        if !s.is_zero() {
            self.terms.insert(e, s);
        }
    }

    fn elem(&self, c: &UPoly) -> ExtElem {
        ExtElem::new(&self.m, c)
    }

    fn constant_term(&self) -> ExtElem {
        self.elem(&self.terms.get(&(0, 0)).cloned().unwrap_or_default())
    }

    /// Coefficients of `P(x, 0)`, trimmed with exact zero tests.
    fn on_x_axis(&self) -> Result<Vec<ExtElem>> {
        let d = self.terms.keys().filter(|e| e.1 == 0).map(|e| e.0).max();
        let Some(d) = d else { return Ok(vec![]) };
        let mut v: Vec<ExtElem> =
            (0..=d).map(|i| self.elem(&self.terms.get(&(i, 0)).cloned().unwrap_or_default())).collect();
        crate::exactalg::ext::epoly_trim(&mut v)?;
        Ok(v)
    }

    /// Divides by `y`; every term must contain `y`.
    fn div_y(&self) -> Self {
        BiPoly { m: self.m.clone(), terms: self.terms.iter().map(|(e, c)| ((e.0, e.1 - 1), c.clone())).collect() }
    }

    fn scale_elem(&self, c: &ExtElem) -> Self {
        let mut p = Self::zero(&self.m);
        for (e, v) in &self.terms {
            p.add_term(*e, v * c.value());
        }
        p
    }

    fn shift_x(&self, k: u32) -> Self {
        BiPoly { m: self.m.clone(), terms: self.terms.iter().map(|(e, c)| ((e.0 + k, e.1), c.clone())).collect() }
    }
}

impl Ring for BiPoly {
    fn zero_like(&self) -> Self {
        Self::zero(&self.m)
    }
    fn one_like(&self) -> Self {
        Self::term(&self.m, (0, 0), UPoly::one())
    }
    fn plus(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(*e, c.clone());
        }
        p
    }
    fn minus(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(*e, -c);
        }
        p
    }
    fn times(&self, o: &Self) -> Self {
        let mut p = Self::zero(&self.m);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                p.add_term((a.0 + b.0, a.1 + b.1), x * y);
            }
        }
        p
    }
    fn scale_rat(&self, c: &Rat) -> Self {
        let mut p = Self::zero(&self.m);
        for (e, v) in &self.terms {
            p.add_term(*e, v.scale(c));
        }
        p
    }
    fn vanishes(&self) -> bool {
        self.terms.is_empty()
    }
}

/// `f` in the affine chart where coordinate `k` of the point is 1, translated so that the
/// point is the origin.
fn local_chart(f: &Poly, m: &Arc<UPoly>, p: &[UPoly; 3], k: usize) -> BiPoly {
    let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
    let subst: [BiPoly; 3] = std::array::from_fn(|i| {
        if i == k {
            BiPoly::term(m, (0, 0), UPoly::one())
        } else {
            let e = if i == others[0] { (1, 0) } else { (0, 1) };
            let mut b = BiPoly::term(m, e, UPoly::one());
            b.add_term((0, 0), p[i].clone());
            b
        }
    });
    f.eval_in(&subst)
}

fn fulton(mut f: BiPoly, mut g: BiPoly) -> Result<usize> {
    let mut acc = 0;
    loop {
        if f.vanishes() || g.vanishes() {
            return Err(Error::InfiniteMultiplicity);
        }
        if !f.constant_term().zero_test()? || !g.constant_term().zero_test()? {
            return Ok(acc);
        }
        let mut f0 = f.on_x_axis()?;
        let mut g0 = g.on_x_axis()?;
        if f0.is_empty() && g0.is_empty() {
            return Err(Error::InfiniteMultiplicity);
        }
        if g0.is_empty() || (!f0.is_empty() && f0.len() > g0.len()) {
            std::mem::swap(&mut f, &mut g);
            std::mem::swap(&mut f0, &mut g0);
        }
        if f0.is_empty() {
            // f = y f1: I(f, g) = ord_x g(x, 0) + I(f1, g).
            let mut ord = 0;
            while g0[ord].zero_test()? {
                ord += 1;
            }
            acc += ord;
            f = f.div_y();
            continue;
        }
        let (r, s) = (f0.len() - 1, g0.len() - 1);
        let lf = f0[r].clone();
        let lg = g0[s].clone();
        g = g.scale_elem(&lf).minus(&f.shift_x((s - r) as u32).scale_elem(&lg));
    }
}

fn pivot_index(p: &[UPoly; 3]) -> usize {
    (0..3).rev().find(|&i| p[i] == UPoly::one()).expect("normalized point has a unit coordinate")
}

/// Intersection multiplicity of `f` and `g` at a rational point.
pub fn intersection_multiplicity(f: &Poly, g: &Poly, p: &RatPoint) -> Result<usize> {
    let m = Arc::new(UPoly::x());
    let c: [UPoly; 3] = p.coords().clone().map(UPoly::constant);
    let k = pivot_index(&c);
    fulton(local_chart(f, &m, &c, k), local_chart(g, &m, &c, k))
}

/// Intersection multiplicity at each point of a block. The block is split wherever the
/// multiplicity differs between conjugates.
pub fn intersection_multiplicity_block(f: &Poly, g: &Poly, b: &Block) -> Result<Vec<(Block, usize)>> {
    let k = pivot_index(&b.coords);
    let parts = with_splitting(&b.shape, |m| {
        let c = b.coords.clone().map(|x| x.rem(m));
        fulton(local_chart(f, m, &c, k), local_chart(g, m, &c, k))
    })?;
    Ok(parts.into_iter().map(|(m, n)| (b.restrict(&m), n)).collect())
}
