//! A base β together with the arithmetic used on its orbit points.
//!
//! Algebraic bases compute exactly in ℚ(β). Decimal bases carry dyadic
//! enclosures and report [`NumericError::Undecidable`] when a floor or a
//! comparison cannot be certified.

use core::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::field::{FieldElement, NumberField};
use super::interval::Interval;
use super::real::CertifiedReal;
use super::NumericError;

#[derive(Clone, Debug)]
pub enum Base {
    Algebraic(NumberField),
    Decimal { beta: CertifiedReal, bits: u32 },
}

/// A number in the arithmetic of a [`Base`].
#[derive(Clone, Debug)]
pub enum Value {
    Exact(FieldElement),
    Approx(Interval),
}

impl Value {
    pub fn as_exact(&self) -> Option<&FieldElement> {
        match self {
            Value::Exact(x) => Some(x),
            Value::Approx(_) => None,
        }
    }
}

impl Base {
    pub fn is_exact(&self) -> bool {
        matches!(self, Base::Algebraic(_))
    }

    pub fn field(&self) -> Option<&NumberField> {
        match self {
            Base::Algebraic(f) => Some(f),
            Base::Decimal { .. } => None,
        }
    }

    fn bits(&self) -> u32 {
        match self {
            Base::Algebraic(_) => 64,
            Base::Decimal { bits, .. } => *bits,
        }
    }

    pub fn from_rational(&self, x: BigRational) -> Value {
        match self {
            Base::Algebraic(f) => Value::Exact(f.from_rational(x)),
            Base::Decimal { bits, .. } => Value::Approx(Interval::point(x).round_outward(*bits)),
        }
    }

    pub fn from_int(&self, n: i64) -> Value {
        self.from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(&self, n: BigInt) -> Value {
        self.from_rational(BigRational::from_integer(n))
    }

    pub fn beta(&self) -> Value {
        match self {
            Base::Algebraic(f) => Value::Exact(f.beta()),
            Base::Decimal { beta, .. } => Value::Approx(beta.interval().clone()),
        }
    }

    fn binary(
        &self,
        a: &Value,
        b: &Value,
        exact: impl Fn(&NumberField, &FieldElement, &FieldElement) -> FieldElement,
        approx: impl Fn(&Interval, &Interval) -> Interval,
    ) -> Value {
        match (self, a, b) {
            (Base::Algebraic(f), Value::Exact(x), Value::Exact(y)) => Value::Exact(exact(f, x, y)),
            _ => Value::Approx(approx(&self.enclose(a), &self.enclose(b)).round_outward(self.bits())),
        }
    }

    pub fn add(&self, a: &Value, b: &Value) -> Value {
        self.binary(a, b, NumberField::add, Interval::add)
    }

    pub fn sub(&self, a: &Value, b: &Value) -> Value {
        self.binary(a, b, NumberField::sub, Interval::sub)
    }

    pub fn mul(&self, a: &Value, b: &Value) -> Value {
        self.binary(a, b, NumberField::mul, Interval::mul)
    }

    pub fn neg(&self, a: &Value) -> Value {
        match (self, a) {
            (Base::Algebraic(f), Value::Exact(x)) => Value::Exact(f.neg(x)),
            _ => Value::Approx(self.enclose(a).neg()),
        }
    }

    pub fn div(&self, a: &Value, b: &Value) -> Result<Value, NumericError> {
        match (self, a, b) {
            (Base::Algebraic(f), Value::Exact(x), Value::Exact(y)) => Ok(Value::Exact(f.div(x, y)?)),
            _ => self
                .enclose(a)
                .div(&self.enclose(b))
                .map(|iv| Value::Approx(iv.round_outward(self.bits())))
                .ok_or(NumericError::Undecidable),
        }
    }

    pub fn pow(&self, a: &Value, n: u32) -> Value {
        let mut acc = self.from_int(1);
        for _ in 0..n {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Enclosure of a value (exact values at 64 bits or better).
    pub fn enclose(&self, a: &Value) -> Interval {
        match (self, a) {
            (Base::Algebraic(f), Value::Exact(x)) => f.enclose(x, 64),
            (_, Value::Approx(iv)) => iv.clone(),
            (Base::Decimal { .. }, Value::Exact(_)) => unreachable!("exact value with decimal base"),
        }
    }

    /// Enclosure refined to `2^-bits` where the base allows it.
    pub fn enclose_bits(&self, a: &Value, bits: u32) -> Interval {
        match (self, a) {
            (Base::Algebraic(f), Value::Exact(x)) => f.enclose(x, bits),
            _ => self.enclose(a),
        }
    }

    pub fn floor(&self, a: &Value) -> Result<BigInt, NumericError> {
        match (self, a) {
            (Base::Algebraic(f), Value::Exact(x)) => Ok(f.floor(x)),
            _ => self.enclose(a).floor().ok_or(NumericError::Undecidable),
        }
    }

    pub fn compare(&self, a: &Value, b: &Value) -> Result<Ordering, NumericError> {
        match (self, a, b) {
            (Base::Algebraic(f), Value::Exact(x), Value::Exact(y)) => Ok(f.compare(x, y)),
            _ => self.enclose(a).compare(&self.enclose(b)).ok_or(NumericError::Undecidable),
        }
    }

    /// Exact equality; `None` when the base is not exact.
    pub fn exact_eq(&self, a: &Value, b: &Value) -> Option<bool> {
        match (self, a, b) {
            (Base::Algebraic(f), Value::Exact(x), Value::Exact(y)) => Some(f.eq(x, y)),
            _ => None,
        }
    }

    pub fn to_f64(&self, a: &Value) -> f64 {
        self.enclose(a).mid_f64()
    }

    /// Enclosure of β itself.
    pub fn beta_interval(&self, bits: u32) -> Interval {
        match self {
            Base::Algebraic(f) => f.generator().refined_bits(bits).interval(),
            Base::Decimal { beta, .. } => beta.interval().clone(),
        }
    }

    pub fn beta_f64(&self) -> f64 {
        self.beta_interval(64).mid_f64()
    }
}
