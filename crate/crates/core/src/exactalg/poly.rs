//! Sparse polynomials over Q in the three fixed variables `x0, x1, x2`.
//!
//! The affine chart is `x2 = 1` and is written with `(x, y)`. Affine polynomials are
//! simply polynomials in which `x2` does not occur; conversions are explicit.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rat::{fmt_rat, rat, Rat};
use super::upoly::UPoly;
use super::Ring;
use crate::error::{Error, Result};

pub type Exp = [u32; 3];

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Exp, Rat>,
}

fn exp_add(a: &Exp, b: &Exp) -> Exp {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn exp_divides(a: &Exp, b: &Exp) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn total(e: &Exp) -> u32 {
    e[0] + e[1] + e[2]
}

/// Graded-lex comparison key: total degree first, then lex with `x0 > x1 > x2`.
fn grlex_key(e: &Exp) -> (u32, Exp) {
    (total(e), *e)
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(c, [0, 0, 0])
    }

    pub fn monomial(c: Rat, e: Exp) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Poly { terms }
    }

    /// The variable `x_i`.
    pub fn var(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Self::monomial(Rat::one(), e)
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Exp, Rat)>) -> Self {
        let mut p = Poly::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn from_int_terms(ts: &[(i64, Exp)]) -> Self {
        Self::from_terms(ts.iter().map(|(c, e)| (*e, rat(*c))))
    }

    /// Linear form `a x0 + b x1 + c x2`.
    pub fn linear(c: &[Rat; 3]) -> Self {
        Self::from_terms((0..3).map(|i| {
            let mut e = [0; 3];
            e[i] = 1;
            (e, c[i].clone())
        }))
    }

    pub fn add_term(&mut self, e: Exp, c: Rat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &Exp) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| total(e) == 0)
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(total).max().unwrap_or(0) as usize
    }

    pub fn degree_in(&self, var: usize) -> usize {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0) as usize
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(total);
        match it.next() {
            None => true,
            Some(d) => it.all(|k| k == d),
        }
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|e| e[var] > 0)
    }

    /// Leading term in lex order (x0 > x1 > x2).
    pub fn lex_leading(&self) -> Option<(&Exp, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Leading coefficient in graded-lex order.
    pub fn grlex_leading(&self) -> Option<(&Exp, &Rat)> {
        self.terms.iter().max_by_key(|(e, _)| grlex_key(e))
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect() }
    }

    pub fn mul_monomial(&self, c: &Rat, m: &Exp) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(e, v)| (exp_add(e, m), v * c)).collect() }
    }

    pub fn pow(&self, k: usize) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Poly {
        Poly::from_terms(self.terms.iter().filter(|(e, _)| e[var] > 0).map(|(e, c)| {
            let mut f = *e;
            f[var] -= 1;
            (f, c * rat(e[var] as i64))
        }))
    }

    pub fn gradient(&self) -> [Poly; 3] {
        [self.derivative(0), self.derivative(1), self.derivative(2)]
    }

    pub fn eval(&self, p: &[Rat; 3]) -> Rat {
        self.eval_in(p)
    }

    /// Evaluation at a point with coordinates in any ring containing Q.
    pub fn eval_in<T: Ring>(&self, p: &[T; 3]) -> T {
        let mut pows: [Vec<T>; 3] = Default::default();
        for i in 0..3 {
            let d = self.degree_in(i);
            let mut v = Vec::with_capacity(d + 1);
            v.push(p[i].one_like());
            for k in 0..d {
                let next = v[k].times(&p[i]);
                v.push(next);
            }
            pows[i] = v;
        }
        let mut acc = p[0].zero_like();
        for (e, c) in &self.terms {
            let t = pows[0][e[0] as usize].times(&pows[1][e[1] as usize]).times(&pows[2][e[2] as usize]);
            acc = acc.plus(&t.scale_rat(c));
        }
        acc
    }

    /// Affine evaluation at `(x, y)` with `x2 = 1`.
    pub fn eval_affine(&self, x: &Rat, y: &Rat) -> Rat {
        self.eval(&[x.clone(), y.clone(), Rat::one()])
    }

    pub fn eval_f64(&self, p: [f64; 3]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                super::rat::to_f64(c)
                    * p[0].powi(e[0] as i32)
                    * p[1].powi(e[1] as i32)
                    * p[2].powi(e[2] as i32)
            })
            .sum()
    }

    /// Substitutes `x_i -> s_i` for univariate polynomials `s_i`.
    pub fn compose_univariate(&self, s: &[UPoly; 3]) -> UPoly {
        self.eval_in(s)
    }

    /// `f(p + t q)` as a polynomial in `t`.
    pub fn restrict_to_line(&self, p: &[Rat; 3], q: &[Rat; 3]) -> UPoly {
        let s: [UPoly; 3] = std::array::from_fn(|i| UPoly::new(vec![p[i].clone(), q[i].clone()]));
        self.compose_univariate(&s)
    }

    /// Substitutes `x_i -> s_i` for polynomials `s_i`.
    pub fn compose(&self, s: &[Poly; 3]) -> Poly {
        self.eval_in(s)
    }

    /// `f(A x)` for a 3x3 matrix `A` given by rows.
    pub fn transform(&self, a: &[[Rat; 3]; 3]) -> Poly {
        let s: [Poly; 3] = std::array::from_fn(|i| Poly::linear(&a[i]));
        self.compose(&s)
    }

    /// Homogenizes with `x2` to total degree `d` (at least the current degree).
    pub fn homogenize(&self, d: usize) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(e, c)| {
            let k = total(e) as usize;
            assert!(k <= d, "homogenize: degree {k} exceeds target {d}");
            ([e[0], e[1], e[2] + (d - k) as u32], c.clone())
        }))
    }

    /// Sets `x2 = 1`.
    pub fn dehomogenize(&self) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(e, c)| ([e[0], e[1], 0], c.clone())))
    }

    /// Restriction to the line at infinity `x2 = 0`.
    pub fn at_infinity(&self) -> Poly {
        Poly::from_terms(self.terms.iter().filter(|(e, _)| e[2] == 0).map(|(e, c)| (*e, c.clone())))
    }

    /// Exact quotient `self / g`; fails with a divisibility error otherwise.
    pub fn exact_divide(&self, g: &Poly) -> Result<Poly> {
        let (ge, gc) = match g.lex_leading() {
            Some((e, c)) => (*e, c.clone()),
            None => return Err(Error::DivisionByZero),
        };
        let mut r = self.clone();
        let mut q = Poly::zero();
        while let Some((re, rc)) = r.lex_leading().map(|(e, c)| (*e, c.clone())) {
            if !exp_divides(&ge, &re) {
                return Err(Error::NotDivisible(format!("{self} by {g}")));
            }
            let m = [re[0] - ge[0], re[1] - ge[1], re[2] - ge[2]];
            let c = rc / &gc;
            r = &r - &g.mul_monomial(&c, &m);
            q.add_term(m, c);
        }
        Ok(q)
    }

    pub fn divides(&self, f: &Poly) -> bool {
        self.exact_divide_opt(f).is_some()
    }

    fn exact_divide_opt(&self, f: &Poly) -> Option<Poly> {
        f.exact_divide(self).ok()
    }

    /// Coefficients as a polynomial in `var`: `result[k]` multiplies `x_var^k`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); self.degree_in(var) + 1];
        for (e, c) in &self.terms {
            let mut f = *e;
            let k = f[var] as usize;
            f[var] = 0;
            out[k].add_term(f, c.clone());
        }
        out
    }

    pub fn from_coefficients_in(var: usize, cs: &[Poly]) -> Poly {
        let mut e = [0; 3];
        let mut acc = Poly::zero();
        for (k, c) in cs.iter().enumerate() {
            e[var] = k as u32;
            acc = &acc + &c.mul_monomial(&Rat::one(), &e);
        }
        acc
    }

    /// Univariate view when only `var` occurs.
    pub fn to_upoly(&self, var: usize) -> Option<UPoly> {
        let mut v = vec![Rat::zero(); self.degree_in(var) + 1];
        for (e, c) in &self.terms {
            if (0..3).any(|i| i != var && e[i] > 0) {
                return None;
            }
            v[e[var] as usize] = c.clone();
        }
        Some(UPoly::new(v))
    }

    pub fn from_upoly(u: &UPoly, var: usize) -> Poly {
        Poly::from_terms(u.coeffs().iter().enumerate().map(|(k, c)| {
            let mut e = [0; 3];
            e[var] = k as u32;
            (e, c.clone())
        }))
    }

    /// Primitive integer multiple with positive leading graded-lex coefficient.
    pub fn normalized(&self) -> Poly {
        let Some((_, lc)) = self.grlex_leading() else {
            return Poly::zero();
        };
        let den = self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let nums: Vec<BigInt> = self.terms.values().map(|c| (c * Rat::from_integer(den.clone())).to_integer()).collect();
        let g = nums.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        let mut s = Rat::new(den, g);
        if lc.is_negative() {
            s = -s;
        }
        self.scale(&s)
    }

    /// Monic in graded-lex order.
    pub fn monic(&self) -> Poly {
        match self.grlex_leading() {
            Some((_, c)) => self.scale(&(Rat::one() / c)),
            None => Poly::zero(),
        }
    }

    /// `Some(c)` with `self = c * other`, if the two are proportional (both nonzero).
    pub fn proportionality(&self, other: &Poly) -> Option<Rat> {
        let (e, c) = other.grlex_leading()?;
        let k = self.coeff(e) / c;
        if k.is_zero() {
            return None;
        }
        (&other.scale(&k) == self).then_some(k)
    }

    pub fn is_proportional(&self, other: &Poly) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.proportionality(other).is_some()
    }

    /// Coefficient vector over the given monomial basis.
    pub fn coeff_vector(&self, basis: &[Exp]) -> Vec<Rat> {
        basis.iter().map(|e| self.coeff(e)).collect()
    }

    pub fn from_coeff_vector(basis: &[Exp], v: &[Rat]) -> Poly {
        Poly::from_terms(basis.iter().cloned().zip(v.iter().cloned()))
    }

    pub fn display_with(&self, names: [&str; 3]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut keys: Vec<&Exp> = self.terms.keys().collect();
        keys.sort_by_key(|e| std::cmp::Reverse(grlex_key(e)));
        let mut s = String::new();
        for (i, e) in keys.into_iter().enumerate() {
            let c = &self.terms[e];
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono: String = (0..3)
                .filter(|&k| e[k] > 0)
                .map(|k| if e[k] == 1 { names[k].to_string() } else { format!("{}^{}", names[k], e[k]) })
                .collect::<Vec<_>>()
                .join("*");
            let sep = if names.iter().all(|n| n.len() == 1) { "" } else { "*" };
            let mono = if sep.is_empty() { mono.replace('*', "") } else { mono };
            if mono.is_empty() {
                s.push_str(&fmt_rat(&a));
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{}{}{}", fmt_rat(&a), sep, mono));
            }
        }
        s
    }

    pub fn display_affine(&self) -> String {
        self.display_with(["x", "y", "z"])
    }

    pub fn display_projective(&self) -> String {
        self.display_with(["x0", "x1", "x2"])
    }
}

/// Monomials of total degree exactly `d` in graded-lex descending order.
pub fn monomials_of_degree(d: usize) -> Vec<Exp> {
    let d = d as u32;
    let mut v = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            v.push([a, b, d - a - b]);
        }
    }
    v
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_projective())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_projective())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c.clone());
        }
        r
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, -c.clone());
        }
        r
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let mut r = Poly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                r.add_term(exp_add(a, b), x * y);
            }
        }
        r
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rat::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, o: Poly) -> Poly {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Ring for Poly {
    fn zero_like(&self) -> Self {
        Poly::zero()
    }
    fn one_like(&self) -> Self {
        Poly::one()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn scale_rat(&self, c: &Rat) -> Self {
        self.scale(c)
    }
    fn vanishes(&self) -> bool {
        Poly::is_zero(self)
    }
}

/// Parses a polynomial written in `x, y, z` or `x0, x1, x2`, e.g. `"20x^2 + 27y^2 - 120x"`.
/// Coefficients may be `p/q`; juxtaposition and `*` both denote multiplication.
pub fn parse_poly(src: &str) -> Result<Poly> {
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    let bytes = s.as_bytes();
    let mut i = 0;
    let mut out = Poly::zero();
    let err = |pos: usize, m: &str| Error::parse(format!("{src:?} at {pos}"), m.to_string());
    if s.is_empty() {
        return Err(err(0, "empty polynomial"));
    }
    while i < bytes.len() {
        let mut sign = Rat::one();
        if bytes[i] == b'+' || bytes[i] == b'-' {
            if bytes[i] == b'-' {
                sign = -sign;
            }
            i += 1;
        }
        let start = i;
        while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'/') {
            i += 1;
        }
        let coeff = if i > start {
            super::rat::parse_rat(&s[start..i]).map_err(|_| err(start, "bad coefficient"))?
        } else {
            Rat::one()
        };
        let mut e = [0u32; 3];
        let mut saw_var = false;
        while i < bytes.len() && bytes[i] != b'+' && bytes[i] != b'-' {
            if bytes[i] == b'*' {
                i += 1;
                continue;
            }
            let v = match bytes[i] {
                b'x' if bytes.get(i + 1).is_some_and(|b| matches!(b, b'0'..=b'2')) => {
                    i += 2;
                    (bytes[i - 1] - b'0') as usize
                }
                b'x' => {
                    i += 1;
                    0
                }
                b'y' => {
                    i += 1;
                    1
                }
                b'z' => {
                    i += 1;
                    2
                }
                _ => return Err(err(i, "unexpected character")),
            };
            let mut k = 1;
            if bytes.get(i) == Some(&b'^') {
                i += 1;
                let st = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                k = s[st..i].parse().map_err(|_| err(st, "bad exponent"))?;
            }
            e[v] += k;
            saw_var = true;
        }
        if i == start && !saw_var {
            return Err(err(start, "empty term"));
        }
        out.add_term(e, sign * coeff);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn parse_and_display() {
        let c1 = p("20x^2+27y^2-120x+108y-864");
        assert_eq!(c1.display_affine(), "20x^2 + 27y^2 - 120x + 108y - 864");
        assert_eq!(p("x0*x1 - 1/2x2^2").display_projective(), "x0*x1 - 1/2*x2^2");
    }

    #[test]
    fn exact_division() {
        assert_eq!(p("x^2-1").exact_divide(&p("x-1")).unwrap(), p("x+1"));
        assert!(matches!(p("x").exact_divide(&p("y")), Err(Error::NotDivisible(_))));
        let f = p("x^2 + 3xy - z^2");
        let g = p("2x - y + 5z");
        assert_eq!((&f * &g).exact_divide(&g).unwrap(), f);
    }

    #[test]
    fn homogenize_round_trip() {
        let c = p("80x^2+102xy+57y^2-400x-96y");
        let h = c.homogenize(2);
        assert!(h.is_homogeneous());
        assert_eq!(h.dehomogenize(), c);
    }

    #[test]
    fn restriction_to_line() {
        // x^2 + y^2 - 1 on (t, 0, 1)
        let f = p("x^2+y^2-z^2");
        let u = f.restrict_to_line(&[rat(0), rat(0), rat(1)], &[rat(1), rat(0), rat(0)]);
        assert_eq!(u, UPoly::from_ints(&[-1, 0, 1]));
    }

    #[test]
    fn normalization_is_primitive_positive() {
        let f = p("-3/2x^2 + 6y - 9/4");
        assert_eq!(f.normalized(), p("2x^2 - 8y + 3"));
    }

    #[test]
    fn transform_composes() {
        let f = p("x^2 - y*z");
        let a = [[rat(1), rat(1), rat(0)], [rat(0), rat(1), rat(0)], [rat(0), rat(0), rat(2)]];
        assert_eq!(f.transform(&a), p("x^2 + 2xy + y^2 - 2yz"));
    }
}
