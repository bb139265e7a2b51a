//! Closed rational intervals with outward dyadic rounding.

use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A closed interval `[lo, hi]` of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: BigRational,
    hi: BigRational,
}

impl Interval {
    /// Panics if `lo > hi`.
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Self { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    pub fn from_int(n: i64) -> Self {
        Self::point(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&BigRational::zero())
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Certified comparison; `None` when the intervals overlap and are not the same point.
    pub fn compare(&self, other: &Self) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if self.lo > other.hi {
            Some(Ordering::Greater)
        } else if self.is_point() && other.is_point() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    pub fn neg(&self) -> Self {
        Self { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let p = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let mut lo = p[0].clone();
        let mut hi = p[0].clone();
        for x in &p[1..] {
            if *x < lo {
                lo = x.clone();
            }
            if *x > hi {
                hi = x.clone();
            }
        }
        Self { lo, hi }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let a = &self.lo * c;
        let b = &self.hi * c;
        if a <= b {
            Self { lo: a, hi: b }
        } else {
            Self { lo: b, hi: a }
        }
    }

    /// Reciprocal; `None` when the interval contains zero.
    pub fn recip(&self) -> Option<Self> {
        if self.contains_zero() {
            return None;
        }
        Some(Self { lo: self.hi.recip(), hi: self.lo.recip() })
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        other.recip().map(|r| self.mul(&r))
    }

    pub fn abs(&self) -> Self {
        if self.lo >= BigRational::zero() {
            self.clone()
        } else if self.hi <= BigRational::zero() {
            self.neg()
        } else {
            let hi = if -&self.lo > self.hi { -&self.lo } else { self.hi.clone() };
            Self { lo: BigRational::zero(), hi }
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::from_int(1);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &Self) -> Self {
        let lo = if self.lo < other.lo { self.lo.clone() } else { other.lo.clone() };
        let hi = if self.hi > other.hi { self.hi.clone() } else { other.hi.clone() };
        Self { lo, hi }
    }

    /// Rounds the endpoints outward to multiples of `2^-bits`.
    pub fn round_outward(self, bits: u32) -> Self {
        let scale = BigInt::one() << bits as usize;
        let lo = round_dyadic(&self.lo, &scale, false);
        let hi = round_dyadic(&self.hi, &scale, true);
        Self { lo, hi }
    }

    /// `floor` of every point, when it is the same integer.
    pub fn floor(&self) -> Option<BigInt> {
        let a = self.lo.floor().to_integer();
        let b = self.hi.floor().to_integer();
        (a == b).then_some(a)
    }

    /// Outward `f64` bounds.
    pub fn to_f64_bounds(&self) -> (f64, f64) {
        (down(to_f64(&self.lo)), up(to_f64(&self.hi)))
    }

    pub fn mid_f64(&self) -> f64 {
        to_f64(&self.midpoint())
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.to_f64_bounds();
        write!(f, "[{a:e}, {b:e}]")
    }
}

fn round_dyadic(x: &BigRational, scale: &BigInt, upward: bool) -> BigRational {
    if x.denom().is_one() {
        return x.clone();
    }
    let num = x.numer() * scale;
    let (q, r) = num.div_mod_floor(x.denom());
    let q = if upward && !r.is_zero() { q + 1 } else { q };
    BigRational::new(q, scale.clone())
}

/// Nearest-ish `f64` of a rational; exact rounding is not required by callers.
pub fn to_f64(x: &BigRational) -> f64 {
    if let Some(v) = x.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let n = x.numer().bits() as i64;
    let d = x.denom().bits() as i64;
    let shift = n - d;
    let scaled = if shift > 0 {
        BigRational::new(x.numer().clone(), x.denom() << shift as usize)
    } else {
        BigRational::new(x.numer() << (-shift) as usize, x.denom().clone())
    };
    let m = scaled.to_f64().unwrap_or(if x.is_negative() { -1.0 } else { 1.0 });
    m * libm::exp2(shift as f64)
}

fn down(v: f64) -> f64 {
    if v.is_finite() { v.next_down() } else { v }
}

fn up(v: f64) -> f64 {
    if v.is_finite() { v.next_up() } else { v }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn multiplication_spans_sign_cases() {
        let a = Interval::new(r(-1, 1), r(2, 1));
        let b = Interval::new(r(-3, 1), r(1, 1));
        assert_eq!(a.mul(&b), Interval::new(r(-6, 1), r(3, 1)));
    }

    #[test]
    fn rounding_contains_original() {
        let x = Interval::new(r(1, 3), r(2, 3));
        let y = x.clone().round_outward(8);
        assert!(y.lo() <= x.lo() && y.hi() >= x.hi());
        assert!(y.width() - x.width() <= r(2, 256));
    }

    #[test]
    fn floor_needs_agreement() {
        assert_eq!(Interval::new(r(4, 3), r(5, 3)).floor(), Some(1.into()));
        assert_eq!(Interval::new(r(2, 3), r(4, 3)).floor(), None);
    }

    #[test]
    fn recip_rejects_zero() {
        assert!(Interval::new(r(-1, 2), r(1, 2)).recip().is_none());
    }

    #[test]
    fn huge_rationals_convert() {
        let big = BigRational::new(BigInt::one() << 2000usize, BigInt::one() << 1999usize);
        assert!((to_f64(&big) - 2.0).abs() < 1e-12);
    }
}
