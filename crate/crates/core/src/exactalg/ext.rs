//! Arithmetic in `Q[t]/(q)` for a monic squarefree `q`.
//!
//! When `q` is irreducible this is a number field. The geometric code also works over
//! reducible squarefree moduli in the style of dynamic evaluation: any attempt to invert a
//! zero divisor (or to decide whether one is zero) reports the factor of `q` it exposed,
//! and the caller recomputes over each factor separately (see [`with_splitting`]).

use std::fmt;
use std::sync::Arc;

use num_traits::One;

use super::rat::Rat;
use super::upoly::UPoly;
use super::Ring;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExtElem {
    modulus: Arc<UPoly>,
    value: UPoly,
}

impl ExtElem {
    /// `modulus` must be monic and squarefree of positive degree.
    pub fn new(modulus: &Arc<UPoly>, value: &UPoly) -> Self {
        ExtElem { modulus: modulus.clone(), value: value.rem(modulus) }
    }

    pub fn from_rat(modulus: &Arc<UPoly>, c: Rat) -> Self {
        ExtElem { modulus: modulus.clone(), value: UPoly::constant(c).rem(modulus) }
    }

    /// The class of `t`.
    pub fn generator(modulus: &Arc<UPoly>) -> Self {
        Self::new(modulus, &UPoly::x())
    }

    pub fn modulus(&self) -> &Arc<UPoly> {
        &self.modulus
    }

    pub fn value(&self) -> &UPoly {
        &self.value
    }

    /// Coefficient vector of length `deg(q)` in the basis `1, t, t^2, ...`.
    pub fn coeffs(&self) -> Vec<Rat> {
        (0..self.modulus.deg()).map(|i| self.value.coeff(i)).collect()
    }

    pub fn as_rat(&self) -> Option<Rat> {
        self.value.is_constant().then(|| self.value.coeff(0))
    }

    /// Literal zero test on the reduced representative.
    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// Decides whether the element is zero at every root of the modulus, or reports a
    /// splitting of the modulus when it vanishes at some roots only.
    pub fn zero_test(&self) -> Result<bool> {
        if self.value.is_zero() {
            return Ok(true);
        }
        let g = UPoly::gcd(&self.value, &self.modulus);
        if g.deg() == 0 {
            Ok(false)
        } else {
            Err(Error::ZeroDivisor(g))
        }
    }

    pub fn inv(&self) -> Result<ExtElem> {
        if self.value.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (g, s, _) = UPoly::ext_gcd(&self.value, &self.modulus);
        if g.deg() > 0 {
            return Err(Error::ZeroDivisor(g));
        }
        let s = s.scale(&(Rat::one() / g.coeff(0)));
        Ok(ExtElem::new(&self.modulus, &s))
    }

    pub fn div(&self, o: &ExtElem) -> Result<ExtElem> {
        Ok(self.times(&o.inv()?))
    }

    pub fn pow(&self, k: usize) -> ExtElem {
        let mut acc = self.one_like();
        for _ in 0..k {
            acc = acc.times(self);
        }
        acc
    }

    pub fn neg(&self) -> ExtElem {
        ExtElem { modulus: self.modulus.clone(), value: -&self.value }
    }
}

impl Ring for ExtElem {
    fn zero_like(&self) -> Self {
        ExtElem { modulus: self.modulus.clone(), value: UPoly::zero() }
    }
    fn one_like(&self) -> Self {
        ExtElem::from_rat(&self.modulus, Rat::one())
    }
    fn plus(&self, o: &Self) -> Self {
        ExtElem { modulus: self.modulus.clone(), value: &self.value + &o.value }
    }
    fn minus(&self, o: &Self) -> Self {
        ExtElem { modulus: self.modulus.clone(), value: &self.value - &o.value }
    }
    fn times(&self, o: &Self) -> Self {
        ExtElem::new(&self.modulus, &(&self.value * &o.value))
    }
    fn scale_rat(&self, c: &Rat) -> Self {
        ExtElem { modulus: self.modulus.clone(), value: self.value.scale(c) }
    }
    fn vanishes(&self) -> bool {
        self.value.is_zero()
    }
}

impl fmt::Debug for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} mod {}]", self.value, self.modulus)
    }
}

/// Certifies that `q` (made monic) is irreducible of degree 2 or 3 and returns it as a
/// shared modulus. Squarefreeness is checked first; a quadratic or cubic without
/// rational roots is irreducible.
pub fn number_field(q: &UPoly) -> Result<Arc<UPoly>> {
    let d = q.deg();
    if !(2..=3).contains(&d) {
        return Err(Error::WrongDegree { expected: "2 or 3".into(), found: d });
    }
    if !q.is_squarefree() || !q.rational_roots().is_empty() {
        return Err(Error::FactorizationRequired(q.to_string()));
    }
    Ok(Arc::new(q.monic()))
}

/// Reduces `value` modulo a certified degree-2 or degree-3 field modulus.
pub fn ext_reduce(value: &UPoly, modulus: &UPoly) -> Result<ExtElem> {
    let m = number_field(modulus)?;
    Ok(ExtElem::new(&m, value))
}

/// Runs `f` over `Q[t]/(q)` and, whenever it reports a zero divisor, over both factors.
/// Returns the final factorization of `q` paired with the per-factor results.
pub fn with_splitting<T>(q: &UPoly, mut f: impl FnMut(&Arc<UPoly>) -> Result<T>) -> Result<Vec<(Arc<UPoly>, T)>> {
    let mut todo = vec![q.monic()];
    let mut out = Vec::new();
    while let Some(m) = todo.pop() {
        let m = Arc::new(m);
        match f(&m) {
            Ok(t) => out.push((m, t)),
            Err(Error::ZeroDivisor(g)) => {
                let g = g.monic();
                let h = m.exact_div(&g).filter(|_| g.deg() > 0 && g.deg() < m.deg()).ok_or_else(|| {
                    Error::AlgorithmFailure(format!("bogus splitting factor {g} of {m}"))
                })?;
                todo.push(h.monic());
                todo.push(g);
            }
            Err(e) => return Err(e),
        }
    }
    out.sort_by_key(|(m, _)| m.deg());
    Ok(out)
}

/// Univariate polynomials with coefficients in `Q[t]/(q)`, low degree first.
pub type EPoly = Vec<ExtElem>;

/// Drops leading coefficients that are zero; a zero-divisor leading coefficient forces a split.
pub fn epoly_trim(p: &mut EPoly) -> Result<()> {
    while let Some(c) = p.last() {
        if c.zero_test()? {
            p.pop();
        } else {
            break;
        }
    }
    Ok(())
}

pub fn epoly_rem(a: &EPoly, b: &EPoly) -> Result<EPoly> {
    let mut r = a.clone();
    epoly_trim(&mut r)?;
    let mut b = b.clone();
    epoly_trim(&mut b)?;
    let Some(lb) = b.last() else {
        return Err(Error::DivisionByZero);
    };
    let inv = lb.inv()?;
    while r.len() >= b.len() {
        let c = r.last().unwrap().times(&inv);
        let shift = r.len() - b.len();
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] = r[shift + i].minus(&c.times(bi));
        }
        r.pop();
        epoly_trim(&mut r)?;
    }
    Ok(r)
}

/// Monic gcd over `Q[t]/(q)`; splits on zero divisors.
pub fn epoly_gcd(a: &EPoly, b: &EPoly) -> Result<EPoly> {
    let mut a = a.clone();
    let mut b = b.clone();
    epoly_trim(&mut a)?;
    epoly_trim(&mut b)?;
    while !b.is_empty() {
        let r = epoly_rem(&a, &b)?;
        a = b;
        b = r;
    }
    if let Some(l) = a.last() {
        let inv = l.inv()?;
        a = a.iter().map(|c| c.times(&inv)).collect();
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat::rat;

    #[test]
    fn reduction_examples() {
        let q = UPoly::from_ints(&[-2, 0, 1]);
        assert!(ext_reduce(&q, &q).unwrap().is_zero());
        let t3 = UPoly::monomial(rat(1), 3);
        assert_eq!(ext_reduce(&t3, &q).unwrap().value(), &UPoly::from_ints(&[0, 2]));
    }

    #[test]
    fn reducible_cubic_rejected() {
        // (t - 1)(t^2 + 1)
        let q = UPoly::from_ints(&[-1, 1]) * UPoly::from_ints(&[1, 0, 1]);
        assert!(matches!(ext_reduce(&UPoly::x(), &q), Err(Error::FactorizationRequired(_))));
    }

    #[test]
    fn inverse_in_cubic_field() {
        let m = number_field(&UPoly::from_ints(&[-2, 0, 0, 1])).unwrap();
        let a = ExtElem::new(&m, &UPoly::from_ints(&[1, 1, 3]));
        let b = a.inv().unwrap();
        assert_eq!(a.times(&b), a.one_like());
    }

    #[test]
    fn zero_divisor_reports_factor() {
        let m = Arc::new(UPoly::from_ints(&[-1, 0, 1]));
        let a = ExtElem::new(&m, &UPoly::from_ints(&[-1, 1]));
        match a.inv() {
            Err(Error::ZeroDivisor(g)) => assert_eq!(g, UPoly::from_ints(&[-1, 1])),
            other => panic!("{other:?}"),
        }
        let parts = with_splitting(&m, |m| {
            let a = ExtElem::new(m, &UPoly::from_ints(&[-1, 1]));
            Ok(a.zero_test()?)
        })
        .unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts.iter().filter(|(_, z)| *z).count(), 1);
    }
}
