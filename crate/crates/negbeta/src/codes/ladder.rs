//! The morphism `0 ↦ 1, 1 ↦ 100`, the constants γₙ and the regime of a base.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::expansion::{BoundsPair, DigitSeq, EventuallyPeriodic, NegativeBase, Word};
use crate::numeric::{isolate_simple_root, AlgebraicReal, Base, Interval, NumericError, Polynomial};

use super::CodeError;

/// Deepest ladder level the classifier examines.
pub const MAX_LADDER_LEVEL: usize = 10;

/// Digits of the pulled-back sequence to produce when `d` is only known as a prefix
/// or has to be decoded from a period.
const PULLBACK_DECODE_LEN: usize = 4096;

/// Applies the morphism `n` times.
pub fn phi_word(w: &[u32], n: usize) -> Result<Word, CodeError> {
    if let Some(&a) = w.iter().find(|&&a| a > 1) {
        return Err(CodeError::NonBinary(a));
    }
    let mut cur: Vec<u32> = w.to_vec();
    for _ in 0..n {
        let mut next = Vec::with_capacity(cur.len() * 2);
        for &a in &cur {
            if a == 1 {
                next.extend_from_slice(&[1, 0, 0]);
            } else {
                next.push(1);
            }
        }
        cur = next;
    }
    Ok(Word::new(cur))
}

/// `uₙ = φⁿ(1)`.
pub fn u_word(n: usize) -> Word {
    phi_word(&[1], n).expect("binary")
}

/// `vₙ = φⁿ(00)`.
pub fn v_word(n: usize) -> Word {
    phi_word(&[0, 0], n).expect("binary")
}

/// `uₙ` with the convention `u₋₁ = 0`.
pub fn u_word_from(m: isize) -> Word {
    if m < 0 {
        Word::new(vec![0])
    } else {
        u_word(m as usize)
    }
}

/// `lₙ = max(l(uₙ), l(vₙ))`.
pub fn ladder_exponent(n: usize) -> usize {
    u_word(n).len().max(v_word(n).len())
}

/// γₙ: the root in `(1, 2)` of `X^lₙ − X − 1`.
pub fn gamma_ladder(n: usize) -> AlgebraicReal {
    let l = ladder_exponent(n);
    let mut c = vec![BigInt::from(0); l + 1];
    c[0] = BigInt::from(-1);
    c[1] = BigInt::from(-1);
    c[l] = BigInt::from(1);
    let p = Polynomial::new(c).expect("nonzero");
    // One sign change in the coefficients, squarefree since no root of the
    // derivative satisfies the equation.
    let one = BigRational::from_integer(1.into());
    let two = BigRational::from_integer(2.into());
    isolate_simple_root(&p, &one, &two).expect("X^l - X - 1 changes sign on (1, 2)")
}

/// Position of β relative to the γ ladder.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    /// β < −γ₀.
    BelowGamma0,
    /// β = −γ₀.
    AtGamma0,
    /// `−γₙ ≤ β < −γₙ₊₁` (open at the left for `n = 0`).
    Band(usize),
}

#[derive(Clone, Debug)]
pub struct RegimeReport {
    pub regime: Regime,
    /// Whether `S_β` itself is coded: β ≤ −γ₀ and `d` not purely periodic with odd period.
    pub coded: bool,
    pub odd_period: bool,
    /// `(γₙ₊₁, γₙ)` with `γₙ₊₁ < |β| ≤ γₙ`; the upper end is absent below −γ₀.
    pub gamma_bracket: (AlgebraicReal, Option<AlgebraicReal>),
    /// For `Band(n)`, the binary sequence `w` with `d = φⁿ(w)`.
    pub pulled_back: Option<DigitSeq>,
}

/// Comparison of β with −γₙ, certified or exact.
fn compare_with_ladder(base: &Base, gamma: &AlgebraicReal) -> Result<Ordering, CodeError> {
    let minus = gamma.neg();
    match base {
        Base::Algebraic(f) => Ok(f.generator().compare(&minus)),
        Base::Decimal { bits, .. } => {
            let beta = base.beta_interval(*bits);
            let g: Interval = minus.refined_bits(bits + 16).interval();
            beta.compare(&g).ok_or(CodeError::Numeric(NumericError::Undecidable))
        }
    }
}

/// Locates β on the ladder and, inside a band, pulls `d` back through φⁿ.
pub fn classify_regime(base: &NegativeBase, bounds: &BoundsPair) -> Result<RegimeReport, CodeError> {
    let b = base.base();
    let odd_period = bounds.odd_period;
    let g0 = gamma_ladder(0);
    let report = |regime, bracket, pulled_back| RegimeReport {
        regime,
        coded: matches!(regime, Regime::BelowGamma0 | Regime::AtGamma0) && !odd_period,
        odd_period,
        gamma_bracket: bracket,
        pulled_back,
    };
    match compare_with_ladder(b, &g0)? {
        Ordering::Less => return Ok(report(Regime::BelowGamma0, (g0, None), None)),
        Ordering::Equal => return Ok(report(Regime::AtGamma0, (gamma_ladder(1), Some(g0)), None)),
        Ordering::Greater => {}
    }
    let mut upper = g0;
    for n in 0..MAX_LADDER_LEVEL {
        let lower = gamma_ladder(n + 1);
        if compare_with_ladder(b, &lower)? == Ordering::Less {
            let w = pullback(bounds.structural(), n)?;
            return Ok(report(Regime::Band(n), (lower, Some(upper)), Some(w)));
        }
        upper = lower;
    }
    Err(CodeError::BeyondLadder(MAX_LADDER_LEVEL))
}

/// One level of greedy decoding: `100 ↦ 1`, `1 ↦ 0`. Stops before an incomplete token.
fn decode_level(w: &[u32]) -> Result<Vec<u32>, CodeError> {
    let mut out = Vec::with_capacity(w.len() / 2);
    let mut i = 0;
    while i + 3 <= w.len() {
        match (w[i], w[i + 1], w[i + 2]) {
            (1, 0, 0) => {
                out.push(1);
                i += 3;
            }
            (1, _, _) => {
                out.push(0);
                i += 1;
            }
            _ => return Err(CodeError::PullbackFailed(i)),
        }
    }
    Ok(out)
}

/// `w` with `φⁿ(w) = d`; exact and periodic when `d` is, otherwise a decoded prefix.
pub fn pullback(d: &DigitSeq, n: usize) -> Result<DigitSeq, CodeError> {
    if n == 0 {
        return Ok(d.clone());
    }
    let source = match d {
        DigitSeq::Periodic(p) => {
            let golden = EventuallyPeriodic::new(u_word(n), u_word(n - 1)).expect("nonempty");
            if *p == golden {
                let w = EventuallyPeriodic::new(Word::new(vec![1]), Word::new(vec![0])).expect("nonempty");
                return Ok(DigitSeq::Periodic(w));
            }
            p.prefix(PULLBACK_DECODE_LEN.max(p.preperiod().len() + 4 * p.period().len()))
        }
        DigitSeq::Prefix(w) => w.clone(),
    };
    let mut w = source.into_digits();
    for _ in 0..n {
        w = decode_level(&w)?;
    }
    if let DigitSeq::Periodic(p) = d {
        if let Some(exact) = periodic_preimage(&w, p, n) {
            return Ok(DigitSeq::Periodic(exact));
        }
    }
    Ok(DigitSeq::Prefix(Word::new(w)))
}

/// Smallest eventually periodic sequence consistent with the decoded digits whose image is `d`.
fn periodic_preimage(w: &[u32], d: &EventuallyPeriodic, n: usize) -> Option<EventuallyPeriodic> {
    let limit = 256.min(w.len() / 3);
    for total in 1..=limit {
        for per in 1..=total {
            let pre = total - per;
            if (pre + per..w.len()).any(|i| w[i] != w[i - per]) {
                continue;
            }
            let image_pre = phi_word(&w[..pre], n).ok()?;
            let image_per = phi_word(&w[pre..pre + per], n).ok()?;
            let image = EventuallyPeriodic::new(image_pre, image_per).ok()?;
            if image == *d {
                return EventuallyPeriodic::new(Word::from(&w[..pre]), Word::from(&w[pre..pre + per])).ok();
            }
        }
    }
    None
}
