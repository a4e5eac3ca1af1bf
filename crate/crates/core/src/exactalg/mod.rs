//! Exact arithmetic: rationals, univariate and trivariate polynomials, resultants,
//! algebraic extensions and linear algebra over Q.

pub mod ext;
pub mod linalg;
pub mod poly;
pub mod rat;
pub mod resultant;
pub mod sturm;
pub mod upoly;

pub use ext::{ext_reduce, number_field, with_splitting, ExtElem};
pub use linalg::RatMatrix;
pub use poly::{monomials_of_degree, parse_poly, Exp, Poly};
pub use rat::{fmt_rat, parse_rat, rat, ratio, Rat};
pub use resultant::resultant;
pub use upoly::UPoly;

/// Minimal commutative-ring interface used for evaluating polynomials in Q-algebras.
pub trait Ring: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn scale_rat(&self, c: &Rat) -> Self;
    fn vanishes(&self) -> bool;
}

impl Ring for Rat {
    fn zero_like(&self) -> Self {
        <Rat as num_traits::Zero>::zero()
    }
    fn one_like(&self) -> Self {
        <Rat as num_traits::One>::one()
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
        self * c
    }
    fn vanishes(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
}

impl Ring for UPoly {
    fn zero_like(&self) -> Self {
        UPoly::zero()
    }
    fn one_like(&self) -> Self {
        UPoly::one()
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
        UPoly::is_zero(self)
    }
}
