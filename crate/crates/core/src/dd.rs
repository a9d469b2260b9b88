//! Double-word ("double-double") arithmetic: an unevaluated sum `hi + lo` of
//! two working-scalar values, giving roughly twice the native precision.
//!
//! Used by the Wright series when catastrophic cancellation pushes the native
//! rounding floor above the requested tolerance, and by test oracles. Only the
//! operations the series needs are provided; error-free transforms assume
//! round-to-nearest IEEE arithmetic and a fused multiply-add.

use crate::scalar::Real;

/// Two-word value `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Dd<R> {
    pub hi: R,
    pub lo: R,
}

#[inline]
fn two_sum<R: Real>(a: R, b: R) -> (R, R) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum<R: Real>(a: R, b: R) -> (R, R) {
    // requires |a| >= |b|
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod<R: Real>(a: R, b: R) -> (R, R) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

impl<R: Real> Dd<R> {
    #[inline]
    pub fn new(hi: R, lo: R) -> Self {
        Dd { hi, lo }
    }

    #[inline]
    pub fn from_scalar(x: R) -> Self {
        Dd { hi: x, lo: R::zero() }
    }

    /// From an (hi, lo) pair tabulated in f64.
    #[inline]
    pub fn from_f64_pair(pair: (f64, f64)) -> Self {
        Dd::new(crate::cst(pair.0), crate::cst(pair.1))
    }

    /// Exact product of two scalars.
    #[inline]
    pub fn from_product(a: R, b: R) -> Self {
        let (hi, lo) = two_prod(a, b);
        Dd { hi, lo }
    }

    #[inline]
    pub fn zero() -> Self {
        Dd::from_scalar(R::zero())
    }

    #[inline]
    pub fn one() -> Self {
        Dd::from_scalar(R::one())
    }

    #[inline]
    pub fn to_scalar(self) -> R {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs(self) -> Self {
        if self.hi < R::zero() {
            self.neg()
        } else {
            self
        }
    }

    #[inline]
    pub fn neg(self) -> Self {
        Dd::new(-self.hi, -self.lo)
    }

    #[inline]
    pub fn add(self, rhs: Self) -> Self {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let e = e + self.lo + rhs.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn sub(self, rhs: Self) -> Self {
        self.add(rhs.neg())
    }

    #[inline]
    pub fn add_scalar(self, rhs: R) -> Self {
        self.add(Dd::from_scalar(rhs))
    }

    #[inline]
    pub fn mul(self, rhs: Self) -> Self {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + self.hi * rhs.lo + self.lo * rhs.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul_scalar(self, rhs: R) -> Self {
        let (p, e) = two_prod(self.hi, rhs);
        let e = e + self.lo * rhs;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn div(self, rhs: Self) -> Self {
        let q1 = self.hi / rhs.hi;
        let r = self.sub(rhs.mul_scalar(q1));
        let q2 = r.hi / rhs.hi;
        let r2 = r.sub(rhs.mul_scalar(q2));
        let q3 = r2.hi / rhs.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add_scalar(q3)
    }

    #[inline]
    pub fn div_scalar(self, rhs: R) -> Self {
        self.div(Dd::from_scalar(rhs))
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }
}
