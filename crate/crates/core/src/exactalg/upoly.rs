//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rat::{fmt_rat, rat, round, sign, Rat};
use super::sturm;

/// Coefficients are stored low degree first; trailing zeros are never kept.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<Rat>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// The variable `t`.
    pub fn x() -> Self {
        Self::monomial(Rat::one(), 1)
    }

    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut v = vec![Rat::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `t - r`
    pub fn linear_root(r: &Rat) -> Self {
        Self::new(vec![-r.clone(), Rat::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn lc(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Sign of the polynomial at `x`.
    pub fn sign_at(&self, x: &Rat) -> i32 {
        sign(&self.eval(x))
    }

    /// Sign as `x -> +inf` (`positive`) or `x -> -inf`.
    pub fn sign_at_infinity(&self, positive: bool) -> i32 {
        let s = sign(&self.lc());
        if positive || self.deg() % 2 == 0 {
            s
        } else {
            -s
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().recip();
        self.scale(&inv)
    }

    pub fn shift_degree(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![Rat::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(v)
    }

    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.deg();
        if self.is_zero() || self.deg() < dd {
            return (UPoly::zero(), self.clone());
        }
        let inv_lc = d.lc().recip();
        let mut r = self.coeffs.clone();
        let mut q = vec![Rat::zero(); self.deg() - dd + 1];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv_lc;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] -= &c * dc;
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.div_rem(d).1
    }

    /// Exact quotient, or `None` when the division leaves a remainder.
    pub fn exact_div(&self, d: &UPoly) -> Option<UPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(a: &UPoly, b: &UPoly) -> UPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
    pub fn ext_gcd(a: &UPoly, b: &UPoly) -> (UPoly, UPoly, UPoly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (UPoly::one(), UPoly::zero());
        let (mut t0, mut t1) = (UPoly::zero(), UPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// `self(other(t))`
    pub fn compose(&self, other: &UPoly) -> UPoly {
        let mut acc = UPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * other) + &UPoly::constant(c.clone());
        }
        acc
    }

    pub fn pow(&self, e: usize) -> UPoly {
        let mut acc = UPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Yun's squarefree decomposition: pairs `(p_k, k)` with `self = lc * prod p_k^k`,
    /// each `p_k` monic, squarefree and pairwise coprime. Constant factors are dropped.
    pub fn squarefree_decomposition(&self) -> Vec<(UPoly, usize)> {
        let mut out = Vec::new();
        if self.deg() == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = UPoly::gcd(&f, &df);
        let mut b = f.exact_div(&a0).expect("gcd divides");
        let mut c = df.exact_div(&a0).expect("gcd divides");
        let mut d = &c - &b.derivative();
        let mut k = 1;
        while b.deg() > 0 {
            let a = UPoly::gcd(&b, &d);
            if a.deg() > 0 {
                out.push((a.clone(), k));
            }
            b = b.exact_div(&a).expect("gcd divides");
            c = d.exact_div(&a).expect("gcd divides");
            d = &c - &b.derivative();
            k += 1;
        }
        out
    }

    pub fn squarefree_part(&self) -> UPoly {
        if self.deg() == 0 {
            return UPoly::one();
        }
        let g = UPoly::gcd(self, &self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }

    pub fn is_squarefree(&self) -> bool {
        UPoly::gcd(self, &self.derivative()).deg() == 0
    }

    /// Primitive integer polynomial proportional to `self` with positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let den = self.coeffs.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let ints: Vec<BigInt> =
            self.coeffs.iter().map(|c| (c * Rat::from_integer(den.clone())).to_integer()).collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        if g.is_zero() {
            return ints;
        }
        if ints.last().is_some_and(|l| l.is_negative()) {
            g = -g;
        }
        ints.into_iter().map(|v| v / &g).collect()
    }

    /// Distinct rational roots, ascending.
    ///
    /// A rational root `p/q` of a primitive integer polynomial with leading coefficient
    /// `a` has `q | a`, so `a * root` is an integer. Roots are isolated by Sturm bisection
    /// until the isolating interval is narrower than `1/(2|a|)`, then the unique candidate
    /// `round(a * mid) / a` is tested exactly.
    pub fn rational_roots(&self) -> Vec<Rat> {
        if self.deg() == 0 {
            return Vec::new();
        }
        let mut roots = Vec::new();
        let mut p = self.squarefree_part();
        while p.coeff(0).is_zero() && !p.is_zero() {
            roots.push(Rat::zero());
            p = p.exact_div(&UPoly::x()).expect("t divides");
        }
        if p.deg() == 0 {
            return roots;
        }
        let ints = p.primitive_integer();
        let lead = Rat::from_integer(ints.last().expect("nonzero").abs());
        let width = (rat(4) * &lead).recip();
        for mut root in sturm::isolate_real_roots(&p) {
            if let Some(r) = root.exact() {
                roots.push(r.clone());
                continue;
            }
            root.refine_to_width(&width);
            if let Some(r) = root.exact() {
                roots.push(r.clone());
                continue;
            }
            let mid = root.midpoint();
            let cand = Rat::from_integer(round(&(&mid * &lead))) / &lead;
            if p.eval(&cand).is_zero() {
                roots.push(cand);
            }
        }
        roots.sort();
        roots.dedup();
        roots
    }

    pub fn discriminant_quadratic(&self) -> Option<Rat> {
        (self.deg() == 2).then(|| {
            let (a, b, c) = (self.coeff(2), self.coeff(1), self.coeff(0));
            &b * &b - rat(4) * a * c
        })
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(super::rat::to_f64).collect()
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.to_f64_coeffs().iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    /// Substitute `t -> t + a`.
    pub fn translate(&self, a: &Rat) -> UPoly {
        self.compose(&UPoly::new(vec![a.clone(), Rat::one()]))
    }

    /// Renders with variable name `var`.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                k => format!("{var}^{k}"),
            };
            if mono.is_empty() || !abs.is_one() {
                s.push_str(&fmt_rat(&abs));
            }
            s.push_str(&mono);
        }
        s
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly({})", self.display_with("t"))
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("t"))
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![Rat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UPoly::new(v)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for UPoly {
            type Output = UPoly;
            fn $m(self, o: UPoly) -> UPoly {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat::ratio;

    #[test]
    fn division_and_gcd() {
        let f = UPoly::from_ints(&[-1, 0, 1]);
        let g = UPoly::from_ints(&[-1, 1]);
        let (q, r) = f.div_rem(&g);
        assert_eq!(q, UPoly::from_ints(&[1, 1]));
        assert!(r.is_zero());
        let h = UPoly::from_ints(&[1, 2, 1]);
        assert_eq!(UPoly::gcd(&f, &h), UPoly::from_ints(&[1, 1]));
    }

    #[test]
    fn ext_gcd_bezout_identity() {
        let a = UPoly::from_ints(&[-2, 0, 1]);
        let b = UPoly::from_ints(&[1, 1]);
        let (g, s, t) = UPoly::ext_gcd(&a, &b);
        assert_eq!(g, UPoly::one());
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn yun_decomposition() {
        // (t-1)^2 (t+2)^3 t
        let f = UPoly::from_ints(&[-1, 1]).pow(2)
            * UPoly::from_ints(&[2, 1]).pow(3)
            * UPoly::x();
        let d = f.squarefree_decomposition();
        assert_eq!(
            d,
            vec![
                (UPoly::x(), 1),
                (UPoly::from_ints(&[-1, 1]), 2),
                (UPoly::from_ints(&[2, 1]), 3)
            ]
        );
    }

    #[test]
    fn rational_roots_found_exactly() {
        // (3t - 2)(7t + 5)(t^2 - 2)
        let f = UPoly::from_ints(&[-2, 3]) * UPoly::from_ints(&[5, 7]) * UPoly::from_ints(&[-2, 0, 1]);
        assert_eq!(f.rational_roots(), vec![ratio(-5, 7), ratio(2, 3)]);
        let g = UPoly::from_ints(&[0, 0, -2, 0, 1]);
        assert_eq!(g.rational_roots(), vec![rat(0)]);
        // Large-height root.
        let r = ratio(123457, 1024);
        let h = UPoly::linear_root(&r) * UPoly::from_ints(&[1, 0, 1]);
        assert_eq!(h.rational_roots(), vec![r]);
    }

    #[test]
    fn compose_and_translate() {
        let f = UPoly::from_ints(&[1, 0, 1]);
        assert_eq!(f.translate(&rat(1)), UPoly::from_ints(&[2, 2, 1]));
    }

    #[test]
    fn display_format() {
        assert_eq!(UPoly::from_ints(&[4820, -2295, 289]).display_with("y"), "289y^2 - 2295y + 4820");
    }
}
