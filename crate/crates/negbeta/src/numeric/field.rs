//! Exact arithmetic in ℚ(β) = ℚ[X]/(p) for an isolated real root β of p.
//!
//! The modulus is the squarefree part of the defining polynomial, which need
//! not be irreducible. Zero testing therefore goes through `gcd(g, p)` and a
//! Sturm count on the isolating interval instead of coordinate comparison.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::algebraic::AlgebraicReal;
use super::interval::Interval;
use super::poly::RatPoly;
use super::NumericError;

/// Element of a [`NumberField`], as coordinates in the power basis `1, β, β², …`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coords: Vec<BigRational>,
}

impl FieldElement {
    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_structurally_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn as_poly(&self) -> RatPoly {
        RatPoly::new(self.coords.clone())
    }
}

/// The field generated by a real algebraic β.
#[derive(Clone, Debug)]
pub struct NumberField {
    modulus: RatPoly,
    generator: AlgebraicReal,
    base_bits: u32,
}

impl NumberField {
    /// Builds the field; the generator is refined to width `2^-isolation_bits` once.
    pub fn new(generator: AlgebraicReal, isolation_bits: u32) -> Self {
        let modulus = match generator.exact_value() {
            Some(x) => RatPoly::new(vec![-x.clone(), BigRational::one()]),
            None => generator.squarefree().monic(),
        };
        let generator = generator.refined_bits(isolation_bits);
        Self { modulus, generator, base_bits: isolation_bits }
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }

    pub fn generator(&self) -> &AlgebraicReal {
        &self.generator
    }

    pub fn modulus(&self) -> &RatPoly {
        &self.modulus
    }

    fn reduce(&self, p: RatPoly) -> FieldElement {
        let r = p.rem(&self.modulus);
        let mut coords = r.into_coeffs();
        coords.resize(self.degree(), BigRational::zero());
        FieldElement { coords }
    }

    pub fn element(&self, poly: RatPoly) -> FieldElement {
        self.reduce(poly)
    }

    pub fn from_rational(&self, x: BigRational) -> FieldElement {
        self.reduce(RatPoly::constant(x))
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(&self, n: BigInt) -> FieldElement {
        self.from_rational(BigRational::from_integer(n))
    }

    /// The element β itself.
    pub fn beta(&self) -> FieldElement {
        self.reduce(RatPoly::monomial(BigRational::one(), 1))
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coords = a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect();
        FieldElement { coords }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coords = a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect();
        FieldElement { coords }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldElement { coords: a.coords.iter().map(|x| -x).collect() }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.reduce(a.as_poly().mul(&b.as_poly()))
    }

    pub fn pow(&self, a: &FieldElement, mut n: u32) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.from_int(1);
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }

    /// Exact zero test at β.
    pub fn is_zero(&self, a: &FieldElement) -> bool {
        a.is_structurally_zero() || self.generator.is_root_of(&a.as_poly())
    }

    pub fn eq(&self, a: &FieldElement, b: &FieldElement) -> bool {
        a == b || self.is_zero(&self.sub(a, b))
    }

    /// Multiplicative inverse; works modulo the factor of the modulus that vanishes at β.
    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, NumericError> {
        let g = a.as_poly();
        let mut modulus = self.modulus.clone();
        loop {
            let (h, s) = g.gcd_cofactor(&modulus);
            if h.degree() == Some(0) {
                return Ok(self.reduce(s));
            }
            if h.is_zero() || self.generator.is_root_of(&h) {
                return Err(NumericError::DivisionByZero);
            }
            modulus = modulus.div_rem(&h).0;
        }
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, NumericError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Enclosure of the value, using β refined to `2^-bits`.
    pub fn enclose(&self, a: &FieldElement, bits: u32) -> Interval {
        let beta = if bits <= self.base_bits {
            self.generator.interval()
        } else {
            self.generator.refined_bits(bits).interval()
        };
        a.as_poly().eval_interval(&beta, bits + 32)
    }

    /// Exact sign.
    pub fn sign(&self, a: &FieldElement) -> Ordering {
        if self.is_zero(a) {
            return Ordering::Equal;
        }
        let mut bits = self.base_bits.max(32);
        loop {
            let iv = self.enclose(a, bits);
            if let Some(o) = iv.compare(&Interval::from_int(0)) {
                return o;
            }
            bits *= 2;
        }
    }

    pub fn compare(&self, a: &FieldElement, b: &FieldElement) -> Ordering {
        self.sign(&self.sub(a, b))
    }

    /// Exact floor, deciding boundary hits by the zero test.
    pub fn floor(&self, a: &FieldElement) -> BigInt {
        let mut bits = self.base_bits.max(32);
        let mut tested_boundary = false;
        loop {
            let iv = self.enclose(a, bits);
            if let Some(k) = iv.floor() {
                return k;
            }
            if !tested_boundary {
                tested_boundary = true;
                let k = iv.hi().floor().to_integer();
                if self.is_zero(&self.sub(a, &self.from_bigint(k.clone()))) {
                    return k;
                }
            }
            bits *= 2;
        }
    }

    pub fn to_f64(&self, a: &FieldElement) -> f64 {
        self.enclose(a, self.base_bits).mid_f64()
    }
}
