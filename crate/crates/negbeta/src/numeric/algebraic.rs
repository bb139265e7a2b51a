//! Real algebraic numbers given by a defining polynomial and an isolating interval.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::interval::Interval;
use super::poly::{Polynomial, RatPoly};
use super::NumericError;

/// Non-fatal observations made while isolating a root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Warning {
    /// The defining polynomial has repeated factors.
    NotSquarefree,
    /// The hint contained this many distinct roots; the smallest was taken.
    MultipleRoots(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Isolation {
    Exact(BigRational),
    /// Exactly one root of the squarefree part lies in `(lo, hi)`, with a sign change.
    Open { lo: BigRational, hi: BigRational, lo_sign: Ordering },
}

/// A real root of an integer polynomial, refinable to any width.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicReal {
    defining: Polynomial,
    squarefree: RatPoly,
    isolation: Isolation,
    warnings: Vec<Warning>,
}

/// Isolates a root of `p` in the closed interval `[lo, hi]`.
///
/// When several roots lie in the interval the smallest is chosen and a
/// [`Warning::MultipleRoots`] is attached.
pub fn isolate_root(
    p: &Polynomial,
    lo: &BigRational,
    hi: &BigRational,
) -> Result<AlgebraicReal, NumericError> {
    if p.degree() == 0 {
        return Err(NumericError::ConstantPolynomial);
    }
    if lo > hi {
        return Err(NumericError::NoRootInInterval);
    }
    let full = p.to_rational();
    let squarefree = full.squarefree_part();
    let mut warnings = Vec::new();
    if squarefree.degree() != full.degree() {
        warnings.push(Warning::NotSquarefree);
    }
    let build = |isolation, warnings| AlgebraicReal {
        defining: p.clone(),
        squarefree: squarefree.clone(),
        isolation,
        warnings,
    };
    if squarefree.degree() == Some(1) {
        let c = squarefree.coeffs();
        let root = -&c[0] / &c[1];
        if &root < lo || &root > hi {
            return Err(NumericError::NoRootInInterval);
        }
        return Ok(build(Isolation::Exact(root), warnings));
    }
    if squarefree.sign_at(lo) == Ordering::Equal {
        let extra = squarefree.count_roots(lo, hi);
        if extra > 0 {
            warnings.push(Warning::MultipleRoots(extra + 1));
        }
        return Ok(build(Isolation::Exact(lo.clone()), warnings));
    }
    let total = squarefree.count_roots(lo, hi);
    if total == 0 {
        return Err(NumericError::NoRootInInterval);
    }
    if total > 1 {
        warnings.push(Warning::MultipleRoots(total));
    }
    let (mut a, mut b) = (lo.clone(), hi.clone());
    while total > 1 && squarefree.count_roots(&a, &b) > 1 {
        let mid = dyadic_mid(&a, &b);
        if squarefree.count_roots(&a, &mid) >= 1 {
            b = mid;
        } else {
            a = mid;
        }
    }
    // Now exactly one root in (a, b].
    if squarefree.sign_at(&b) == Ordering::Equal {
        return Ok(build(Isolation::Exact(b), warnings));
    }
    let lo_sign = squarefree.sign_at(&a);
    Ok(build(Isolation::Open { lo: a, hi: b, lo_sign }, warnings))
}

/// Root of a squarefree `p` that is known to be the only root in `(lo, hi)`.
///
/// Skips the Sturm sequence; fails unless `p` changes sign strictly between the ends.
pub fn isolate_simple_root(
    p: &Polynomial,
    lo: &BigRational,
    hi: &BigRational,
) -> Result<AlgebraicReal, NumericError> {
    let squarefree = p.to_rational();
    let lo_sign = squarefree.sign_at(lo);
    let hi_sign = squarefree.sign_at(hi);
    if lo_sign == Ordering::Equal || hi_sign == Ordering::Equal || lo_sign == hi_sign {
        return Err(NumericError::NoRootInInterval);
    }
    Ok(AlgebraicReal {
        defining: p.clone(),
        squarefree,
        isolation: Isolation::Open { lo: lo.clone(), hi: hi.clone(), lo_sign },
        warnings: Vec::new(),
    })
}

/// Rational number viewed as an algebraic real with a linear defining polynomial.
pub fn rational(x: &BigRational) -> AlgebraicReal {
    let p = Polynomial::new(alloc::vec![-x.numer().clone(), x.denom().clone()])
        .expect("denominator is nonzero");
    let squarefree = p.to_rational().monic();
    AlgebraicReal {
        defining: p,
        squarefree,
        isolation: Isolation::Exact(x.clone()),
        warnings: Vec::new(),
    }
}

fn dyadic_mid(a: &BigRational, b: &BigRational) -> BigRational {
    (a + b) / BigRational::from_integer(BigInt::from(2))
}

impl AlgebraicReal {
    pub fn defining(&self) -> &Polynomial {
        &self.defining
    }

    pub fn squarefree(&self) -> &RatPoly {
        &self.squarefree
    }

    pub fn warnings(&self) -> &[Warning] {
        &self.warnings
    }

    pub fn exact_value(&self) -> Option<&BigRational> {
        match &self.isolation {
            Isolation::Exact(x) => Some(x),
            Isolation::Open { .. } => None,
        }
    }

    /// The current isolating interval (closed hull of the open interval).
    pub fn interval(&self) -> Interval {
        match &self.isolation {
            Isolation::Exact(x) => Interval::point(x.clone()),
            Isolation::Open { lo, hi, .. } => Interval::new(lo.clone(), hi.clone()),
        }
    }

    /// An enclosure of width at most `width`; a point when the root is rational.
    pub fn refine(&self, width: &BigRational) -> Interval {
        self.refined(width).interval()
    }

    /// A copy whose isolating interval has width at most `width`.
    pub fn refined(&self, width: &BigRational) -> AlgebraicReal {
        let Isolation::Open { lo, hi, lo_sign } = &self.isolation else {
            return self.clone();
        };
        let (mut a, mut b) = (lo.clone(), hi.clone());
        while &(&b - &a) > width {
            let mid = dyadic_mid(&a, &b);
            match self.squarefree.sign_at(&mid) {
                Ordering::Equal => {
                    return AlgebraicReal { isolation: Isolation::Exact(mid), ..self.clone() };
                }
                s if s == *lo_sign => a = mid,
                _ => b = mid,
            }
        }
        AlgebraicReal {
            isolation: Isolation::Open { lo: a, hi: b, lo_sign: *lo_sign },
            ..self.clone()
        }
    }

    /// Refines to width `2^-bits`.
    pub fn refined_bits(&self, bits: u32) -> AlgebraicReal {
        self.refined(&pow2_neg(bits))
    }

    /// Whether the root is also a root of `q` (exact test).
    pub fn is_root_of(&self, q: &RatPoly) -> bool {
        if q.is_zero() {
            return true;
        }
        match &self.isolation {
            Isolation::Exact(x) => q.eval(x).is_zero(),
            Isolation::Open { lo, hi, .. } => {
                let g = q.gcd(&self.squarefree);
                if g.degree().unwrap_or(0) == 0 {
                    return false;
                }
                g.count_roots(lo, hi) > 0
            }
        }
    }

    /// Exact comparison with another algebraic real.
    pub fn compare(&self, other: &AlgebraicReal) -> Ordering {
        let mut bits = 32;
        loop {
            let a = self.refined_bits(bits).interval();
            let b = other.refined_bits(bits).interval();
            if let Some(o) = a.compare(&b) {
                return o;
            }
            if bits >= 128 && self.equals(other) {
                return Ordering::Equal;
            }
            bits *= 2;
        }
    }

    fn equals(&self, other: &AlgebraicReal) -> bool {
        match (&self.isolation, &other.isolation) {
            (Isolation::Exact(x), Isolation::Exact(y)) => x == y,
            (Isolation::Exact(x), _) => other.squarefree.eval(x).is_zero() && other.interval().contains(x),
            (_, Isolation::Exact(y)) => self.squarefree.eval(y).is_zero() && self.interval().contains(y),
            _ => {
                let g = self.squarefree.gcd(&other.squarefree);
                if g.degree().unwrap_or(0) == 0 {
                    return false;
                }
                let a = self.interval();
                let b = other.interval();
                if !a.overlaps(&b) {
                    return false;
                }
                let lo = if a.lo() > b.lo() { a.lo() } else { b.lo() };
                let hi = if a.hi() < b.hi() { a.hi() } else { b.hi() };
                lo <= hi && self.is_root_of(&g) && g.count_roots(lo, hi) > 0 && other.is_root_of(&g)
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.refined_bits(60).interval().mid_f64()
    }

    /// Negation: the corresponding root of `p(-x)`.
    pub fn neg(&self) -> AlgebraicReal {
        let defining = self.defining.reflect();
        let squarefree = reflect_rat(&self.squarefree);
        let isolation = match &self.isolation {
            Isolation::Exact(x) => Isolation::Exact(-x),
            Isolation::Open { lo, hi, .. } => {
                let lo_sign = squarefree.sign_at(&-hi);
                Isolation::Open { lo: -hi, hi: -lo, lo_sign }
            }
        };
        AlgebraicReal { defining, squarefree, isolation, warnings: self.warnings.clone() }
    }
}

fn reflect_rat(p: &RatPoly) -> RatPoly {
    RatPoly::new(
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
            .collect(),
    )
}

/// `2^-bits` as a rational.
pub fn pow2_neg(bits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << bits as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn golden_ratio() {
        let p = Polynomial::from_i64(&[-1, -1, 1]).unwrap();
        let g = isolate_root(&p, &q(1), &q(2)).unwrap();
        let iv = g.refine(&BigRational::new(1.into(), 10_000_000_000i64.into()));
        assert!((iv.mid_f64() - 1.618_033_988_7).abs() < 1e-10);
    }

    #[test]
    fn linear_is_exact() {
        let p = Polynomial::from_i64(&[2, 1]).unwrap();
        let r = isolate_root(&p, &q(-3), &q(-1)).unwrap();
        assert_eq!(r.exact_value(), Some(&q(-2)));
        assert!(r.refine(&q(1)).is_point());
    }

    #[test]
    fn smallest_of_several_roots() {
        let p = Polynomial::from_i64(&[-1, -1, 1]).unwrap();
        let r = isolate_root(&p, &q(-2), &q(2)).unwrap();
        assert!(r.to_f64() < 0.0);
        assert_eq!(r.warnings(), &[Warning::MultipleRoots(2)]);
    }

    #[test]
    fn no_root_is_an_error() {
        let p = Polynomial::from_i64(&[1, 0, 1]).unwrap();
        assert_eq!(isolate_root(&p, &q(-5), &q(5)), Err(NumericError::NoRootInInterval));
    }

    #[test]
    fn non_squarefree_warns() {
        let p = Polynomial::from_i64(&[1, -2, 1]).unwrap();
        let r = isolate_root(&p, &BigRational::new(1.into(), 2.into()), &q(2)).unwrap();
        assert!(r.warnings().contains(&Warning::NotSquarefree));
    }

    #[test]
    fn refinement_halves() {
        let p = Polynomial::from_i64(&[-1, -1, 0, 1]).unwrap();
        let r = isolate_root(&p, &q(1), &q(2)).unwrap();
        let w0 = r.interval().width();
        let w1 = r.refined(&(w0.clone() / q(2))).interval().width();
        assert!(w1 * q(2) <= w0);
    }

    #[test]
    fn negation_flips() {
        let p = Polynomial::from_i64(&[-1, -1, 1]).unwrap();
        let g = isolate_root(&p, &q(1), &q(2)).unwrap();
        assert!((g.neg().to_f64() + 1.618_033_988_7).abs() < 1e-9);
    }

    #[test]
    fn compare_detects_equality() {
        let p = Polynomial::from_i64(&[-1, -1, 1]).unwrap();
        let a = isolate_root(&p, &q(1), &q(2)).unwrap();
        // same root, different (non-minimal) polynomial: (x^2 - x - 1)(x + 5)
        let p2 = Polynomial::from_i64(&[-5, -6, 4, 1]).unwrap();
        let b = isolate_root(&p2, &q(1), &q(2)).unwrap();
        assert_eq!(a.compare(&b), Ordering::Equal);
    }
}
