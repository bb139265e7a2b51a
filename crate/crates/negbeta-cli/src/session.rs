//! A resolved base with its derived structures.

use negbeta::codes::{build_code, classify_regime, CodeEnumeration, CodeError, ListCaps, RegimeReport};
use negbeta::expansion::{BoundsPair, DigitSeq, NegativeBase};
use negbeta::gaps::{GapError, SupportCaps, SupportModel};
use negbeta::measure::{MeasureError, Rho};
use negbeta::numeric::NumericError;
use negbeta::order::OrderError;

use crate::spec::{render_periodic, BetaSpec, SpecError};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("no base given; use --spec, --beta or --preset")]
    MissingBase,
    #[error("unknown preset {0}")]
    UnknownPreset(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error(transparent)]
    Expansion(#[from] negbeta::expansion::ExpansionError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Gap(#[from] GapError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

/// A base and its boundary sequences.
#[derive(Clone, Debug)]
pub struct Session {
    base: NegativeBase,
    bounds: BoundsPair,
}

impl Session {
    pub fn new(base: NegativeBase) -> Self {
        let bounds = base.boundary_sequences();
        Self { base, bounds }
    }

    pub fn from_spec(spec: &BetaSpec, iteration_cap: usize) -> Result<Self, CliError> {
        Ok(Self::new(spec.resolve(iteration_cap)?))
    }

    pub fn base(&self) -> &NegativeBase {
        &self.base
    }

    pub fn bounds(&self) -> &BoundsPair {
        &self.bounds
    }

    pub fn beta(&self) -> f64 {
        self.base.base().beta_f64()
    }

    pub fn regime(&self) -> Result<RegimeReport, CliError> {
        Ok(classify_regime(&self.base, &self.bounds)?)
    }

    pub fn code(&self, cap: usize) -> Result<(RegimeReport, CodeEnumeration), CliError> {
        let report = self.regime()?;
        let code = build_code(&self.bounds, &report, cap, ListCaps::default())?;
        Ok((report, code))
    }

    pub fn model(&self, cap: usize, caps: SupportCaps) -> Result<SupportModel, CliError> {
        let (report, code) = self.code(cap)?;
        Ok(SupportModel::new(self.bounds.clone(), report, code, caps)?)
    }

    pub fn rho(&self) -> Result<Rho, CliError> {
        Ok(Rho::of(self.base.base())?)
    }
}

/// `u(v)` for a periodic sequence, `w…` for a known prefix.
pub fn render_seq(s: &DigitSeq, prefix_len: usize) -> String {
    match s {
        DigitSeq::Periodic(p) => render_periodic(p),
        DigitSeq::Prefix(w) => format!("{}…", s.prefix_up_to(prefix_len.min(w.len()))),
    }
}
