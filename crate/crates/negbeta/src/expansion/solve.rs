//! Recovering β from its boundary sequence `d(l_β, β)`.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::numeric::{isolate_root, Base, NumberField, Polynomial, RatPoly};

use super::{DigitSeq, EventuallyPeriodic, ExpansionError, NegativeBase};

/// Isolation precision of the recovered base.
const ISOLATION_BITS: u32 = 64;

fn int_poly(c: Vec<i64>) -> RatPoly {
    RatPoly::new(c.into_iter().map(|x| BigRational::from_integer(BigInt::from(x))).collect())
}

/// `Σ wᵢ X^{n-i}` for a word `w₁…w_n`.
fn digit_poly(w: &[u32]) -> RatPoly {
    int_poly(w.iter().rev().map(|&x| i64::from(x)).collect())
}

/// Polynomial whose roots include every β with `f_β(d) = l_β`:
/// `(A(X)(X^p − 1) + B(X))(1 − X) − X^{m+1}(X^p − 1)`.
fn boundary_polynomial(d: &EventuallyPeriodic) -> Result<Polynomial, ExpansionError> {
    let (m, p) = (d.preperiod().len(), d.period().len());
    let xp_minus_one = RatPoly::monomial(BigRational::one(), p).sub(&int_poly(vec![1]));
    let lhs = digit_poly(d.preperiod())
        .mul(&xp_minus_one)
        .add(&digit_poly(d.period()))
        .mul(&int_poly(vec![1, -1]));
    let rhs = RatPoly::monomial(BigRational::one(), m + 1).mul(&xp_minus_one);
    let q = lhs.sub(&rhs);
    let coeffs = q.coeffs().iter().map(|c| c.to_integer()).collect();
    Ok(Polynomial::new(coeffs)?)
}

/// Splits `(lo, hi]` into pieces holding one root each.
fn isolate_all(q: &RatPoly, lo: BigRational, hi: BigRational, out: &mut Vec<(BigRational, BigRational)>) {
    match q.count_roots(&lo, &hi) {
        0 => {}
        1 => out.push((lo, hi)),
        _ => {
            let mid = (&lo + &hi) / BigRational::from_integer(2.into());
            isolate_all(q, lo, mid.clone(), out);
            isolate_all(q, mid, hi, out);
        }
    }
}

/// The base β < −1 whose sequence `d(l_β, β)` is `d`.
///
/// Candidates are the roots of the boundary polynomial with `⌊−β⌋ = d₁`; the first whose
/// orbit reproduces `d` is returned.
pub fn base_from_boundary(d: &EventuallyPeriodic) -> Result<NegativeBase, ExpansionError> {
    if !crate::order::is_self_admissible(d) {
        return Err(ExpansionError::NotSelfAdmissible);
    }
    let d1 = d.digit(0);
    if d1 == 0 {
        return Err(ExpansionError::BetaOutOfRange);
    }
    let poly = boundary_polynomial(d)?;
    let sq = poly.to_rational().squarefree_part();
    let int = |n: i64| BigRational::from_integer(BigInt::from(n));
    let hi = int(-i64::from(d1));
    let mut pieces = Vec::new();
    isolate_all(&sq, int(-i64::from(d1) - 1), hi, &mut pieces);
    let target = DigitSeq::Periodic(d.clone());
    for (mut a, mut b) in pieces {
        let root = if sq.sign_at(&b) == Ordering::Equal {
            isolate_root(&poly, &b, &b)?
        } else {
            while sq.sign_at(&a) == Ordering::Equal {
                let mid = (&a + &b) / int(2);
                if sq.count_roots(&mid, &b) == 1 {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            if sq.sign_at(&b) == Ordering::Equal {
                isolate_root(&poly, &b, &b)?
            } else {
                isolate_root(&poly, &a, &b)?
            }
        };
        if root.compare(&crate::numeric::rational(&int(-1))) != Ordering::Less {
            continue;
        }
        let nb = NegativeBase::new(Base::Algebraic(NumberField::new(root, ISOLATION_BITS)))?;
        if nb.boundary_sequences().raw_d == target {
            return Ok(nb);
        }
    }
    Err(ExpansionError::NoMatchingBase)
}
