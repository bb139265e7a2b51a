//! Base specifications read from JSON.

use std::path::Path;

use negbeta::expansion::{base_from_boundary, EventuallyPeriodic, ExpansionError, NegativeBase, Word};
use negbeta::numeric::{
    isolate_root, parse_decimal_exact, Base, BigRational, CertifiedReal, NumberField, NumericError, Polynomial,
    DEFAULT_ISOLATION_BITS,
};
use negbeta::order::is_self_admissible;
use serde::{Deserialize, Serialize};

/// Default precision of decimal bases, in bits.
pub const DEFAULT_PRECISION_BITS: u32 = 128;

#[derive(Debug, thiserror::Error)]
pub enum SpecError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed base specification: {0}")]
    Malformed(String),
    #[error("d_sequence {0} is not self-admissible")]
    NotSelfAdmissible(String),
    #[error("d_sequence has an empty period")]
    EmptyPeriod,
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error(transparent)]
    Expansion(#[from] ExpansionError),
}

/// A rational bound written as a JSON number or a decimal string.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Bound {
    Int(i64),
    Text(String),
    Float(f64),
}

impl Bound {
    fn to_rational(&self) -> Result<BigRational, SpecError> {
        match self {
            Bound::Int(n) => Ok(BigRational::from_integer((*n).into())),
            Bound::Text(s) => Ok(parse_decimal_exact(s)?),
            Bound::Float(x) => Ok(parse_decimal_exact(&x.to_string())?),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DigitsSpec {
    #[serde(default)]
    pub preperiod: Vec<u32>,
    pub period: Vec<u32>,
}

/// One of the three accepted ways to name a base.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BetaSpec {
    /// Root of an integer polynomial, coefficients constant first, inside `interval`.
    Polynomial {
        polynomial: Vec<i64>,
        interval: [Bound; 2],
        #[serde(default, skip_serializing_if = "Option::is_none")]
        isolation_bits: Option<u32>,
    },
    /// A decimal enclosed by a dyadic interval.
    Decimal {
        decimal: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        precision_bits: Option<u32>,
    },
    /// The base whose boundary sequence `d(l_β, β)` is given.
    Boundary { d_sequence: DigitsSpec },
}

impl BetaSpec {
    pub fn parse(text: &str) -> Result<Self, SpecError> {
        let spec: BetaSpec = serde_json::from_str(text).map_err(|e| SpecError::Malformed(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<Self, SpecError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| SpecError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text)
    }

    fn validate(&self) -> Result<(), SpecError> {
        match self {
            BetaSpec::Polynomial { polynomial, .. } if polynomial.len() < 2 => {
                Err(SpecError::Malformed("polynomial needs degree at least 1".into()))
            }
            BetaSpec::Boundary { d_sequence } => {
                let d = d_sequence.to_periodic()?;
                if is_self_admissible(&d) {
                    Ok(())
                } else {
                    Err(SpecError::NotSelfAdmissible(render_periodic(&d)))
                }
            }
            _ => Ok(()),
        }
    }

    /// The base with the given iteration cap for period detection.
    pub fn resolve(&self, iteration_cap: usize) -> Result<NegativeBase, SpecError> {
        let nb = match self {
            BetaSpec::Polynomial { polynomial, interval, isolation_bits } => {
                let p = Polynomial::from_i64(polynomial)?;
                let root = isolate_root(&p, &interval[0].to_rational()?, &interval[1].to_rational()?)?;
                let field = NumberField::new(root, isolation_bits.unwrap_or(DEFAULT_ISOLATION_BITS));
                NegativeBase::new(Base::Algebraic(field))?
            }
            BetaSpec::Decimal { decimal, precision_bits } => {
                let bits = precision_bits.unwrap_or(DEFAULT_PRECISION_BITS);
                let beta = CertifiedReal::parse_decimal(decimal, bits)?;
                NegativeBase::new(Base::Decimal { beta, bits })?
            }
            BetaSpec::Boundary { d_sequence } => base_from_boundary(&d_sequence.to_periodic()?)?,
        };
        Ok(nb.with_iteration_cap(iteration_cap))
    }
}

impl DigitsSpec {
    pub fn to_periodic(&self) -> Result<EventuallyPeriodic, SpecError> {
        EventuallyPeriodic::new(Word::new(self.preperiod.clone()), Word::new(self.period.clone()))
            .map_err(|_| SpecError::EmptyPeriod)
    }
}

/// `u·(v)^∞` rendered as `u(v)`.
pub fn render_periodic(d: &EventuallyPeriodic) -> String {
    format!("{}({})", d.preperiod(), d.period())
}

/// Named bases used by `verify` and accepted by `--preset`.
pub fn preset(name: &str) -> Option<BetaSpec> {
    let poly = |c: &[i64], lo: i64, hi: i64| BetaSpec::Polynomial {
        polynomial: c.to_vec(),
        interval: [Bound::Int(lo), Bound::Int(hi)],
        isolation_bits: None,
    };
    Some(match name {
        "minus-two" => poly(&[2, 1], -3, -1),
        "minus-golden" => poly(&[-1, 1, 1], -2, -1),
        "minus-gamma1" => poly(&[1, -1, 0, 1], -2, -1),
        "first-example" => poly(&[1, 2, -2, -1, 2, -1, -1, 0, 0, 0, 0, 2, -1, 0, 3, 1], -3, -2),
        "second-example" => poly(&[1, 0, -2, 1, 1, -2, 1, -1, 1, -1, 1, 1, -2, 2, 1], -3, -2),
        _ => {
            let text = name.strip_prefix("decimal:")?;
            BetaSpec::Decimal { decimal: text.to_string(), precision_bits: None }
        }
    })
}

pub const PRESET_NAMES: &[&str] =
    &["minus-two", "minus-golden", "minus-gamma1", "first-example", "second-example", "decimal:<x>"];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_three_forms() {
        let p = BetaSpec::parse(r#"{"polynomial":[-1,1,1],"interval":[-2,-1]}"#).unwrap();
        assert!(matches!(p, BetaSpec::Polynomial { .. }));
        let d = BetaSpec::parse(r#"{"decimal":"-1.3","precision_bits":96}"#).unwrap();
        assert_eq!(d, BetaSpec::Decimal { decimal: "-1.3".into(), precision_bits: Some(96) });
        let b = BetaSpec::parse(r#"{"d_sequence":{"preperiod":[],"period":[2]}}"#).unwrap();
        let nb = b.resolve(64).unwrap();
        assert!((nb.base().beta_f64() + 2.0).abs() < 1e-12);
    }

    #[test]
    fn string_bounds_are_exact() {
        let p = BetaSpec::parse(r#"{"polynomial":[-1,1,1],"interval":["-1.7","-1.5"]}"#).unwrap();
        let nb = p.resolve(64).unwrap();
        assert!((nb.base().beta_f64() + 1.618_033_988_749_895).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(BetaSpec::parse(r#"{"beta":1}"#), Err(SpecError::Malformed(_))));
        assert!(matches!(
            BetaSpec::parse(r#"{"d_sequence":{"preperiod":[0],"period":[1]}}"#),
            Err(SpecError::NotSelfAdmissible(_))
        ));
        assert!(matches!(BetaSpec::parse(r#"{"d_sequence":{"period":[]}}"#), Err(SpecError::EmptyPeriod)));
        let out_of_range = BetaSpec::parse(r#"{"decimal":"-0.5"}"#).unwrap();
        assert!(matches!(out_of_range.resolve(64), Err(SpecError::Expansion(ExpansionError::BetaOutOfRange))));
    }

    #[test]
    fn presets_resolve() {
        for name in ["minus-two", "minus-golden", "minus-gamma1", "first-example", "second-example", "decimal:-1.3"] {
            preset(name).unwrap().resolve(64).unwrap();
        }
        assert!(preset("nope").is_none());
    }
}
