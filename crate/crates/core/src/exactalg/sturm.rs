//! Sturm sequences, certified real-root isolation and sign determination at real
//! algebraic numbers.

use num_traits::{One, Signed, Zero};

use super::rat::{rat, ratio, Rat};
use super::upoly::UPoly;

/// Signed remainder sequence `p, p', -rem(p, p'), ...`.
#[derive(Clone, Debug)]
pub struct SturmSeq {
    seq: Vec<UPoly>,
}

/// An endpoint of a real interval.
#[derive(Clone, Debug, PartialEq)]
pub enum Bound {
    NegInf,
    PosInf,
    At(Rat),
}

impl SturmSeq {
    pub fn new(p: &UPoly) -> Self {
        let mut seq = vec![p.clone()];
        if p.deg() == 0 {
            return SturmSeq { seq };
        }
        seq.push(p.derivative());
        loop {
            let n = seq.len();
            let r = seq[n - 2].rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(-&r);
        }
        SturmSeq { seq }
    }

    fn variations(signs: impl Iterator<Item = i32>) -> usize {
        let mut last = 0;
        let mut v = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    pub fn variations_at(&self, b: &Bound) -> usize {
        match b {
            Bound::NegInf => Self::variations(self.seq.iter().map(|p| p.sign_at_infinity(false))),
            Bound::PosInf => Self::variations(self.seq.iter().map(|p| p.sign_at_infinity(true))),
            Bound::At(x) => Self::variations(self.seq.iter().map(|p| p.sign_at(x))),
        }
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count(&self, a: &Bound, b: &Bound) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }
}

/// Distinct real roots of `p` in `(a, b]`.
pub fn count_roots(p: &UPoly, a: &Bound, b: &Bound) -> usize {
    if p.is_zero() {
        return usize::MAX;
    }
    if p.deg() == 0 {
        return 0;
    }
    SturmSeq::new(&p.squarefree_part()).count(a, b)
}

/// Distinct real roots of `p` in the open interval `(a, b)`.
pub fn count_roots_open(p: &UPoly, a: &Bound, b: &Bound) -> usize {
    let n = count_roots(p, a, b);
    match b {
        Bound::At(x) if p.eval(x).is_zero() => n - 1,
        _ => n,
    }
}

pub fn count_real_roots(p: &UPoly) -> usize {
    count_roots(p, &Bound::NegInf, &Bound::PosInf)
}

/// Cauchy bound: every complex root has modulus strictly below the result.
pub fn root_bound(p: &UPoly) -> Rat {
    let lc = p.lc().abs();
    let m = p.coeffs()[..p.deg()].iter().map(|c| c.abs() / &lc).max().unwrap_or_else(Rat::zero);
    m + Rat::one()
}

/// A real root of a squarefree polynomial, certified by an isolating interval.
///
/// Either `lo == hi` and the root is the rational `lo`, or `poly(lo) * poly(hi) < 0`
/// and `(lo, hi)` contains exactly one root.
#[derive(Clone, Debug)]
pub struct RealRoot {
    pub poly: UPoly,
    pub lo: Rat,
    pub hi: Rat,
}

impl RealRoot {
    pub fn exact(&self) -> Option<&Rat> {
        (self.lo == self.hi).then_some(&self.lo)
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / rat(2)
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn bisect(&mut self) {
        if self.exact().is_some() {
            return;
        }
        let mid = self.midpoint();
        let s = self.poly.sign_at(&mid);
        if s == 0 {
            self.lo = mid.clone();
            self.hi = mid;
        } else if s == self.poly.sign_at(&self.lo) {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    pub fn refine_to_width(&mut self, w: &Rat) {
        while self.exact().is_none() && &self.width() > w {
            self.bisect();
        }
    }

    /// Sign of `f` at this root, decided exactly.
    pub fn sign_of(&self, f: &UPoly) -> i32 {
        if let Some(x) = self.exact() {
            return f.sign_at(x);
        }
        let g = UPoly::gcd(&self.poly, f);
        if g.deg() > 0 && g.sign_at(&self.lo) * g.sign_at(&self.hi) < 0 {
            return 0;
        }
        let mut r = self.clone();
        loop {
            if let Some(x) = r.exact() {
                return f.sign_at(x);
            }
            let (a, b) = (Bound::At(r.lo.clone()), Bound::At(r.hi.clone()));
            if f.sign_at(&r.lo) != 0 && count_roots(f, &a, &b) == 0 {
                return f.sign_at(&r.lo);
            }
            r.bisect();
        }
    }

    pub fn to_f64(&self) -> f64 {
        let mut r = self.clone();
        r.refine_to_width(&ratio(1, 1 << 30).pow(2));
        super::rat::to_f64(&r.midpoint())
    }

    /// Orders two real roots (possibly of different polynomials).
    pub fn cmp_root(&self, other: &RealRoot) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        let g = UPoly::gcd(&self.poly, &other.poly);
        let shared = g.deg() > 0 && self.sign_of(&g) == 0 && other.sign_of(&g) == 0;
        let (mut a, mut b) = (self.clone(), other.clone());
        loop {
            if let (Some(x), Some(y)) = (a.exact(), b.exact()) {
                return x.cmp(y);
            }
            if a.hi < b.lo || (a.hi == b.lo && a.exact().is_none()) {
                return Ordering::Less;
            }
            if b.hi < a.lo || (b.hi == a.lo && b.exact().is_none()) {
                return Ordering::Greater;
            }
            if shared {
                let lo = a.lo.clone().min(b.lo.clone());
                let hi = a.hi.clone().max(b.hi.clone());
                let n = count_roots(&g, &Bound::At(lo.clone()), &Bound::At(hi))
                    + usize::from(g.eval(&lo).is_zero());
                if n == 1 {
                    return Ordering::Equal;
                }
            }
            if a.width() >= b.width() {
                a.bisect();
            } else {
                b.bisect();
            }
        }
    }
}

/// Isolates every real root of `p` (squarefree part taken internally), ascending.
pub fn isolate_real_roots(p: &UPoly) -> Vec<RealRoot> {
    if p.deg() == 0 {
        return Vec::new();
    }
    let q = p.squarefree_part();
    let sturm = SturmSeq::new(&q);
    let b = root_bound(&q);
    let mut out = Vec::new();
    isolate_in(&q, &sturm, -b.clone(), b, &mut out);
    out
}

/// Real roots of `p` inside the open interval `(lo, hi)`.
pub fn isolate_in_interval(p: &UPoly, lo: &Rat, hi: &Rat) -> Vec<RealRoot> {
    isolate_real_roots(p)
        .into_iter()
        .filter_map(|mut r| loop {
            if let Some(x) = r.exact() {
                return (x > lo && x < hi).then_some(r);
            }
            if &r.lo >= lo && &r.hi <= hi {
                return Some(r);
            }
            if &r.hi <= lo || &r.lo >= hi {
                return None;
            }
            // An endpoint inside the isolating interval that is itself a root is the root.
            if (&r.lo < lo && lo < &r.hi && r.poly.eval(lo).is_zero())
                || (&r.lo < hi && hi < &r.hi && r.poly.eval(hi).is_zero())
            {
                return None;
            }
            r.bisect();
        })
        .collect()
}

fn split_point(q: &UPoly, lo: &Rat, hi: &Rat) -> Rat {
    let w = hi - lo;
    for (n, d) in [(1, 2), (3, 7), (4, 7), (5, 11), (6, 11), (7, 17), (10, 17)] {
        let m = lo + &w * ratio(n, d);
        if !q.eval(&m).is_zero() {
            return m;
        }
    }
    // Only finitely many roots: one of these shrinking offsets avoids them.
    let mut k = 19;
    loop {
        let m = lo + &w * ratio(k / 2, k);
        if !q.eval(&m).is_zero() {
            return m;
        }
        k += 2;
    }
}

fn isolate_in(q: &UPoly, sturm: &SturmSeq, lo: Rat, hi: Rat, out: &mut Vec<RealRoot>) {
    let n = sturm.count(&Bound::At(lo.clone()), &Bound::At(hi.clone()));
    if n == 0 {
        return;
    }
    if n == 1 {
        out.push(RealRoot { poly: q.clone(), lo, hi });
        return;
    }
    let mid = split_point(q, &lo, &hi);
    isolate_in(q, sturm, lo, mid.clone(), out);
    isolate_in(q, sturm, mid, hi, out);
}

/// Whether `p >= 0` on the closed interval `[a, b]`, decided exactly.
///
/// `p` keeps its sign on `(a, b)` iff it has no root of odd multiplicity there; the sign
/// is then read at any interior non-root.
pub fn nonneg_on(p: &UPoly, a: &Rat, b: &Rat) -> bool {
    if p.is_zero() {
        return true;
    }
    if p.sign_at(a) < 0 || p.sign_at(b) < 0 {
        return false;
    }
    if a >= b {
        return true;
    }
    let odd = p
        .squarefree_decomposition()
        .into_iter()
        .filter(|(_, k)| k % 2 == 1)
        .fold(UPoly::one(), |acc, (f, _)| &acc * &f);
    if count_roots_open(&odd, &Bound::At(a.clone()), &Bound::At(b.clone())) > 0 {
        return false;
    }
    p.sign_at(&split_point(p, a, b)) > 0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_roots_of_product() {
        // (t-1)(t+2)(t^2+1)
        let p = UPoly::from_ints(&[-1, 1]) * UPoly::from_ints(&[2, 1]) * UPoly::from_ints(&[1, 0, 1]);
        assert_eq!(count_real_roots(&p), 2);
        assert_eq!(count_roots(&p, &Bound::At(rat(0)), &Bound::At(rat(1))), 1);
        assert_eq!(count_roots_open(&p, &Bound::At(rat(0)), &Bound::At(rat(1))), 0);
    }

    #[test]
    fn isolation_and_sign_at_root() {
        let p = UPoly::from_ints(&[-2, 0, 1]);
        let roots = isolate_real_roots(&p);
        assert_eq!(roots.len(), 2);
        // t - 1 at -sqrt2 < 0, at sqrt2 > 0.
        let f = UPoly::from_ints(&[-1, 1]);
        assert_eq!(roots[0].sign_of(&f), -1);
        assert_eq!(roots[1].sign_of(&f), 1);
        // t^2 - 2 vanishes at both.
        assert_eq!(roots[1].sign_of(&p), 0);
        // 2t^2 - 4 shares the root.
        assert_eq!(roots[0].sign_of(&UPoly::from_ints(&[-4, 0, 2])), 0);
    }

    #[test]
    fn nonneg_detects_touching_and_crossing() {
        // (t - 1/2)^2 >= 0 on [0,1]
        let sq = UPoly::new(vec![ratio(1, 4), rat(-1), rat(1)]);
        assert!(nonneg_on(&sq, &rat(0), &rat(1)));
        // t - 1/2 changes sign
        assert!(!nonneg_on(&UPoly::new(vec![ratio(-1, 2), rat(1)]), &rat(0), &rat(1)));
        // t(1 - t) >= 0 on [0,1] with zeros at the ends
        assert!(nonneg_on(&UPoly::from_ints(&[0, 1, -1]), &rat(0), &rat(1)));
    }

    #[test]
    fn compare_roots_of_different_polys() {
        let a = isolate_real_roots(&UPoly::from_ints(&[-2, 0, 1]));
        let b = isolate_real_roots(&UPoly::from_ints(&[-8, 0, 4]));
        assert_eq!(a[1].cmp_root(&b[1]), std::cmp::Ordering::Equal);
        let c = isolate_real_roots(&UPoly::from_ints(&[-3, 0, 1]));
        assert_eq!(a[1].cmp_root(&c[1]), std::cmp::Ordering::Less);
    }
}
