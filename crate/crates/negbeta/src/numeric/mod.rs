//! Numeric kernel: exact polynomials, algebraic reals, number fields and
//! certified enclosures.

mod algebraic;
mod base;
mod field;
mod interval;
mod poly;
mod real;

pub use algebraic::{isolate_root, isolate_simple_root, pow2_neg, rational, AlgebraicReal, Warning};
pub use base::{Base, Value};
pub use field::{FieldElement, NumberField};
pub use interval::{to_f64, Interval};
pub use poly::{Polynomial, RatPoly};
pub use real::{parse_decimal_exact, CertifiedReal};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Default refinement target for isolating intervals, as a power of two.
pub const DEFAULT_ISOLATION_BITS: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum NumericError {
    #[error("the zero polynomial has no roots to isolate")]
    ZeroPolynomial,
    #[error("constant polynomial")]
    ConstantPolynomial,
    #[error("no root in the given interval")]
    NoRootInInterval,
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot be decided at the configured precision")]
    Undecidable,
    #[error("malformed number: {0}")]
    Malformed(alloc::string::String),
}

/// Rational `n / d`.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
