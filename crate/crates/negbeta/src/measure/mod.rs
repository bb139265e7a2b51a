//! Series over support codes: Kraft sums, average length, the maximal-entropy measure of
//! cylinders, entropy estimates and a Champernowne sampler.

mod sample;
mod series;

pub use sample::{sample_champernowne, ChampernowneSample};
pub use series::{series_identity_check, IdentityReport};

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Zero};

use crate::codes::{prefix_violation, unique_decodability, CodeEnumeration, CodeError};
use crate::expansion::{BoundsPair, Word};
use crate::gaps::{GapError, SupportModel, Transitivity};
use crate::numeric::{Base, FieldElement, Interval, NumberField, NumericError};
use crate::order::{count_words_recurrence, fibonacci_census, OrderError};

/// Dyadic precision of enclosures.
pub const ENCLOSURE_BITS: u32 = 160;

/// Longest listed words fed to the Sardinas–Patterson test for suffix-type codes.
const DECODABILITY_CHECK_LEN: usize = 24;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum MeasureError {
    #[error("code has no listed words")]
    EmptyCode,
    #[error("census growth {growth:.4} reaches the radius of convergence; no tail bound")]
    TailBoundUnavailable { growth: f64 },
    #[error("listed code words are not uniquely decodable (witness {0})")]
    NotUniquelyDecodable(Word),
    #[error("{word} could not be placed in or out of the support within radius {radius}")]
    NotInSupportLanguage { word: Word, radius: usize },
    #[error("{0} is a support factor outside the code monoid; no closed form")]
    NoClosedForm(Word),
    #[error("{0} is not admissible")]
    NotAdmissible(Word),
    #[error(transparent)]
    Gap(GapError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

impl From<GapError> for MeasureError {
    fn from(e: GapError) -> Self {
        match e {
            GapError::CapInconclusive { word, radius } => MeasureError::NotInSupportLanguage { word, radius },
            GapError::NotAdmissible(w) => MeasureError::NotAdmissible(w),
            other => MeasureError::Gap(other),
        }
    }
}

/// `ρ = 1/|β|`, kept exact in ℚ(β) for algebraic bases.
#[derive(Clone, Debug)]
pub struct Rho {
    exact: Option<(NumberField, FieldElement)>,
    interval: Interval,
}

impl Rho {
    pub fn of(base: &Base) -> Result<Self, MeasureError> {
        match base {
            Base::Algebraic(f) => {
                let rho = f.div(&f.from_int(-1), &f.beta())?;
                let interval = f.enclose(&rho, ENCLOSURE_BITS);
                Ok(Self { exact: Some((f.clone(), rho)), interval })
            }
            Base::Decimal { beta, .. } => {
                let interval = beta.interval().abs().recip().ok_or(NumericError::Undecidable)?;
                Ok(Self { exact: None, interval: interval.round_outward(ENCLOSURE_BITS) })
            }
        }
    }

    pub fn interval(&self) -> &Interval {
        &self.interval
    }

    pub fn to_f64(&self) -> f64 {
        self.interval.mid_f64()
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    /// `ρ⁰, ρ¹, …, ρ^max` as enclosures.
    fn powers(&self, max: usize) -> Vec<Interval> {
        let mut out = Vec::with_capacity(max + 1);
        let mut acc = Interval::from_int(1);
        for _ in 0..=max {
            out.push(acc.clone());
            acc = acc.mul(&self.interval).round_outward(ENCLOSURE_BITS + 32);
        }
        out
    }

    /// `Σ weight(n)·cₙ ρⁿ` computed in ℚ(β).
    fn exact_sum(&self, census: &[u128], weight: impl Fn(usize) -> i64) -> Option<FieldElement> {
        let (f, rho) = self.exact.as_ref()?;
        let mut acc = f.from_int(0);
        let mut p = f.from_int(1);
        for (n, &c) in census.iter().enumerate() {
            if c > 0 {
                let k = f.from_bigint(BigInt::from(c) * weight(n));
                acc = f.add(&acc, &f.mul(&k, &p));
            }
            p = f.mul(&p, rho);
        }
        Some(acc)
    }
}

/// How the part of a series beyond the listed lengths is bounded.
#[derive(Clone, Debug, PartialEq)]
pub enum TailBound {
    /// The code is finite and the sum is complete.
    Exact,
    /// A Kraft sum of a uniquely decodable code is at most 1; decodability was checked on
    /// listed words up to `checked_len`.
    McMillan { checked_len: usize },
    /// `cₙ ≤ scale·growthⁿ` fitted on the upper half of the census; heuristic.
    Envelope { growth: f64, scale: f64 },
}

impl TailBound {
    pub fn is_certified(&self) -> bool {
        !matches!(self, TailBound::Envelope { .. })
    }
}

/// A series over a code: its partial sum through `len` and an enclosure of the full value.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesEnclosure {
    pub len: usize,
    pub partial: Interval,
    pub value: Interval,
    pub tail: TailBound,
    /// The value in ℚ(β) when the code is finite and the base algebraic.
    pub exact: Option<FieldElement>,
}

fn weighted_partial(census: &[u128], powers: &[Interval], weight: impl Fn(usize) -> i64) -> Interval {
    let mut acc = Interval::from_int(0);
    for (n, &c) in census.iter().enumerate() {
        if c > 0 {
            let k = BigRational::from_integer(BigInt::from(c) * weight(n));
            acc = acc.add(&powers[n].scale(&k));
        }
    }
    acc
}

fn truncated(code: &CodeEnumeration, len: usize) -> &[u128] {
    &code.census[..=len.min(code.cap).min(code.census.len() - 1)]
}

fn ensure_listed(code: &CodeEnumeration) -> Result<(), MeasureError> {
    if code.words.is_empty() {
        Err(MeasureError::EmptyCode)
    } else {
        Ok(())
    }
}

/// `Σ cₙ ρⁿ` over the code, with lengths through `len` summed exactly.
pub fn kraft_sum(code: &CodeEnumeration, rho: &Rho, len: usize) -> Result<SeriesEnclosure, MeasureError> {
    ensure_listed(code)?;
    let census = truncated(code, len);
    let len = census.len() - 1;
    let partial = weighted_partial(census, &rho.powers(len), |_| 1);
    if code.is_finite() {
        let exact = rho.exact_sum(census, |_| 1);
        let value = exact.as_ref().map_or_else(|| partial.clone(), |x| enclose(rho, x));
        return Ok(SeriesEnclosure { len, partial, value, tail: TailBound::Exact, exact });
    }
    let checked_len = if code.kind.is_prefix_type() {
        if let Some((short, _)) = prefix_violation(&code.words) {
            return Err(MeasureError::NotUniquelyDecodable(short));
        }
        code.listed_len
    } else {
        let checked_len = code.listed_len.min(DECODABILITY_CHECK_LEN);
        let words: Vec<Word> = code.words_up_to(checked_len).cloned().collect();
        unique_decodability(&words).map_err(MeasureError::NotUniquelyDecodable)?;
        checked_len
    };
    let one = BigRational::one();
    let hi = if partial.hi() > &one { partial.hi().clone() } else { one };
    let value = Interval::new(partial.lo().clone(), hi);
    Ok(SeriesEnclosure { len, partial, value, tail: TailBound::McMillan { checked_len }, exact: None })
}

/// `Σ n·cₙ ρⁿ`, the mean code-word length under the Bernoulli weights `ρ^l(x)`.
pub fn average_length(code: &CodeEnumeration, rho: &Rho, len: usize) -> Result<SeriesEnclosure, MeasureError> {
    ensure_listed(code)?;
    let census = truncated(code, len);
    let len = census.len() - 1;
    let weight = |n: usize| i64::try_from(n).expect("length fits");
    let partial = weighted_partial(census, &rho.powers(len), weight);
    if code.is_finite() {
        let exact = rho.exact_sum(census, weight);
        let value = exact.as_ref().map_or_else(|| partial.clone(), |x| enclose(rho, x));
        return Ok(SeriesEnclosure { len, partial, value, tail: TailBound::Exact, exact });
    }
    let (growth, scale) = census_envelope(census).ok_or(MeasureError::TailBoundUnavailable { growth: f64::NAN })?;
    let q = growth * crate::numeric::to_f64(rho.interval().hi());
    if q.is_nan() || q >= 1.0 {
        return Err(MeasureError::TailBoundUnavailable { growth: q });
    }
    // Σ_{n>L} n qⁿ = q^{L+1} ((L+1) − L q) / (1 − q)².
    let l = len as f64;
    let tail = scale * libm::pow(q, l + 1.0) * ((l + 1.0) - l * q) / ((1.0 - q) * (1.0 - q));
    let tail = BigRational::from_f64(tail * (1.0 + 1e-9)).unwrap_or_else(BigRational::zero);
    let value = Interval::new(partial.lo().clone(), partial.hi() + tail);
    Ok(SeriesEnclosure { len, partial, value, tail: TailBound::Envelope { growth, scale }, exact: None })
}

/// Least-squares growth rate of `ln cₙ` over the upper half of the census and the smallest
/// scale that dominates it there.
fn census_envelope(census: &[u128]) -> Option<(f64, f64)> {
    let len = census.len() - 1;
    let pts: Vec<(f64, f64)> = (len / 2 + 1..=len)
        .filter(|&n| census[n] > 0)
        .map(|n| (n as f64, libm::log(census[n] as f64)))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let m = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), &(x, y)| (a + x, b + y));
    let (mx, my) = (sx / m, sy / m);
    let (sxy, sxx) = pts.iter().fold((0.0, 0.0), |(a, b), &(x, y)| (a + (x - mx) * (y - my), b + (x - mx) * (x - mx)));
    let growth = libm::exp(sxy / sxx).max(1.0);
    let scale = pts.iter().map(|&(x, y)| libm::exp(y - x * libm::log(growth))).fold(0.0, f64::max);
    Some((growth, scale))
}

fn enclose(rho: &Rho, x: &FieldElement) -> Interval {
    let (f, _) = rho.exact.as_ref().expect("exact sums need a field");
    f.enclose(x, ENCLOSURE_BITS)
}

/// Measure of a cylinder under the maximal-entropy measure.
#[derive(Clone, Debug, PartialEq)]
pub struct CylinderMeasure {
    pub value: Interval,
    pub basis: MeasureBasis,
}

#[derive(Clone, Debug, PartialEq)]
pub enum MeasureBasis {
    /// The word is a concatenation of code words: `ρ^l / avg_length`.
    CodeProduct { avg_length: alloc::boxed::Box<SeriesEnclosure> },
    /// The cylinder carries no mass.
    Null(Transitivity),
}

/// `μ([word])` for a word of `P*` or a word off the support.
///
/// For `word ∈ P*` the value is the mass of `[word]` starting at a code-word boundary,
/// `ρ^l(word) / Σ l(x) ρ^l(x)`.
pub fn cylinder_measure(model: &SupportModel, rho: &Rho, word: &[u32], radius: usize) -> Result<CylinderMeasure, MeasureError> {
    let t = model.is_intransitive(word, radius)?;
    if t.has_null_cylinder() {
        return Ok(CylinderMeasure { value: Interval::from_int(0), basis: MeasureBasis::Null(t) });
    }
    if !model.in_code_monoid(word) {
        return Err(MeasureError::NoClosedForm(Word::from(word)));
    }
    let code = model.code();
    let avg = average_length(code, rho, code.cap)?;
    let l = word.len();
    let value = match (&avg.exact, &rho.exact) {
        (Some(a), Some((f, r))) => f.enclose(&f.div(&f.pow(r, l as u32), a)?, ENCLOSURE_BITS),
        _ => {
            let p = rho.powers(l).pop().expect("nonempty");
            p.div(&avg.value).ok_or(NumericError::Undecidable)?
        }
    };
    Ok(CylinderMeasure { value, basis: MeasureBasis::CodeProduct { avg_length: avg.into() } })
}

/// Greatest common divisor of the listed code-word lengths.
pub fn gcd_lengths(code: &CodeEnumeration) -> Result<usize, MeasureError> {
    code.words.iter().map(|w| w.len()).reduce(|a, b| a.gcd(&b)).ok_or(MeasureError::EmptyCode)
}

/// `(1/n) ln Hₙ` next to `ln |β|`, in nats.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntropyEstimate {
    pub n: usize,
    pub value: f64,
    pub log_beta: f64,
}

impl EntropyEstimate {
    pub fn error(&self) -> f64 {
        (self.value - self.log_beta).abs()
    }
}

/// Entropy estimate from the language census of `S_β`.
pub fn entropy_estimate(bounds: &BoundsPair, base: &Base, n: usize) -> Result<EntropyEstimate, MeasureError> {
    let h = count_words_recurrence(&bounds.raw_d, n)?.counts[n];
    let value = if n == 0 { 0.0 } else { libm::log(h as f64) / n as f64 };
    Ok(EntropyEstimate { n, value, log_beta: libm::log(base.beta_f64().abs()) })
}

/// `ln(fₙ / fₙ₋₁)` for the census of concatenations of odd prefixes.
pub fn fibonacci_growth(n: usize) -> f64 {
    let f = fibonacci_census(n.max(1));
    libm::log(f[n.max(1)] as f64 / f[n.max(1) - 1] as f64)
}

/// `(1/n) ln fₙ`.
pub fn fibonacci_entropy(n: usize) -> f64 {
    let f = fibonacci_census(n.max(1));
    if n == 0 {
        0.0
    } else {
        libm::log(f[n] as f64) / n as f64
    }
}

/// Summary of the measure computations for one base.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasureReport {
    pub rho: Interval,
    pub kraft_sum: SeriesEnclosure,
    pub avg_length: Result<SeriesEnclosure, MeasureError>,
    pub gcd_lengths: usize,
    pub entropy: EntropyEstimate,
}

pub fn measure_report(
    code: &CodeEnumeration,
    bounds: &BoundsPair,
    base: &Base,
    len: usize,
    entropy_len: usize,
) -> Result<MeasureReport, MeasureError> {
    let rho = Rho::of(base)?;
    Ok(MeasureReport {
        rho: rho.interval().clone(),
        kraft_sum: kraft_sum(code, &rho, len)?,
        avg_length: average_length(code, &rho, len),
        gcd_lengths: gcd_lengths(code)?,
        entropy: entropy_estimate(bounds, base, entropy_len)?,
    })
}

#[cfg(test)]
mod tests;
