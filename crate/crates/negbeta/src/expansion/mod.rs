//! The negative β-transformation, digit expansions and boundary sequences.

mod solve;
mod word;

pub use solve::base_from_boundary;
pub use word::{DigitSeq, EmptyPeriod, EventuallyPeriodic, ParseWordError, Word};

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{Signed, ToPrimitive};

use crate::numeric::{Base, NumericError, Value};

/// Default bound on orbit length when searching for a period.
pub const DEFAULT_ITERATION_CAP: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ExpansionError {
    #[error("base must satisfy β < -1")]
    BetaOutOfRange,
    #[error("point outside the domain [l_β, r_β)")]
    OutOfDomain,
    #[error("digit {digit} exceeds the alphabet bound {bound}")]
    DigitOutOfRange { digit: u32, bound: u32 },
    #[error("sequence is not self-admissible")]
    NotSelfAdmissible,
    #[error("no base reproduces the sequence")]
    NoMatchingBase,
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// Result of searching the orbit of `l_β` for a repetition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PeriodSearch {
    Found { preperiod_len: usize, period_len: usize, sequence: EventuallyPeriodic },
    /// No repetition within the cap; `digits` are the certified digits obtained.
    NotFound { digits: Word, undecidable: bool },
}

/// Digits of a point, after pre-scaling by `β^-shift` when it lies outside the domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub shift: usize,
    pub digits: Word,
}

/// The sequences bounding admissible words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsPair {
    /// `d*`: equal to `d` unless `d` is purely periodic with odd period.
    pub lower: DigitSeq,
    /// `r`, the parity-corrected limit sequence at `r_β`.
    pub upper: DigitSeq,
    /// `d = d(l_β, β)`.
    pub raw_d: DigitSeq,
    /// `r* = lim_{x→r_β⁻} d(x, β)`.
    pub raw_rstar: DigitSeq,
    pub odd_period: bool,
    /// Largest digit `d₁`.
    pub digit_bound: u32,
}

impl BoundsPair {
    /// Builds bounds from an exactly known `d`.
    pub fn from_periodic(d: EventuallyPeriodic) -> Self {
        let odd_period = d.preperiod().is_empty() && d.period().len() % 2 == 1;
        let lower = if odd_period { DigitSeq::Periodic(odd_correction(&d)) } else { DigitSeq::Periodic(d.clone()) };
        let digit_bound = d.digit(0);
        let raw_d = DigitSeq::Periodic(d);
        let raw_rstar = raw_d.prepend(0);
        Self { lower, upper: raw_rstar.clone(), raw_d, raw_rstar, odd_period, digit_bound }
    }

    /// Builds bounds from a finite prefix of `d`; the period is unknown.
    pub fn from_prefix(d: Word) -> Self {
        let digit_bound = d.first().copied().unwrap_or(0);
        let raw_d = DigitSeq::Prefix(d);
        let raw_rstar = raw_d.prepend(0);
        Self {
            lower: raw_d.clone(),
            upper: raw_rstar.clone(),
            raw_d,
            raw_rstar,
            odd_period: false,
            digit_bound,
        }
    }

    /// The sequence driving the code construction: `d*` when the period is odd, else `d`.
    pub fn structural(&self) -> &DigitSeq {
        &self.lower
    }
}

/// `d*` for a purely periodic `d` of odd period `2n-1`.
fn odd_correction(d: &EventuallyPeriodic) -> EventuallyPeriodic {
    let mut per = d.period().clone().into_digits();
    let last = per.len() - 1;
    per[last] -= 1;
    per.push(0);
    EventuallyPeriodic::purely_periodic(Word::new(per)).expect("nonempty period")
}

/// A base β < -1 with its transformation `T_β(x) = βx - ⌊βx - l_β⌋`.
#[derive(Clone, Debug)]
pub struct NegativeBase {
    base: Base,
    iteration_cap: usize,
    l: Value,
    r: Value,
    inv_beta: Value,
}

impl NegativeBase {
    pub fn new(base: Base) -> Result<Self, ExpansionError> {
        let beta = base.beta();
        if base.compare(&beta, &base.from_int(-1))? != Ordering::Less {
            return Err(ExpansionError::BetaOutOfRange);
        }
        let one = base.from_int(1);
        let l = base.div(&beta, &base.sub(&one, &beta))?;
        let r = base.add(&l, &one);
        let inv_beta = base.div(&one, &beta)?;
        Ok(Self { base, iteration_cap: DEFAULT_ITERATION_CAP, l, r, inv_beta })
    }

    pub fn with_iteration_cap(mut self, cap: usize) -> Self {
        self.iteration_cap = cap;
        self
    }

    pub fn base(&self) -> &Base {
        &self.base
    }

    pub fn iteration_cap(&self) -> usize {
        self.iteration_cap
    }

    /// `(l_β, r_β)` with `l_β = β/(1-β)` and `r_β = l_β + 1`.
    pub fn endpoints(&self) -> (Value, Value) {
        (self.l.clone(), self.r.clone())
    }

    /// `d₁ = ⌊-β⌋`, the largest digit.
    pub fn digit_bound(&self) -> Result<u32, ExpansionError> {
        let k = self.base.floor(&self.base.neg(&self.base.beta()))?;
        Ok(k.to_u32().expect("digit bound fits in u32"))
    }

    fn in_domain(&self, x: &Value) -> Result<bool, ExpansionError> {
        let lo = self.base.compare(x, &self.l)?;
        let hi = self.base.compare(x, &self.r)?;
        Ok(lo != Ordering::Less && hi == Ordering::Less)
    }

    /// One step of the transformation, without the domain check.
    fn step_unchecked(&self, x: &Value) -> Result<(u32, Value), ExpansionError> {
        let bx = self.base.mul(&self.base.beta(), x);
        let k = self.base.floor(&self.base.sub(&bx, &self.l))?;
        if k.is_negative() {
            return Err(ExpansionError::OutOfDomain);
        }
        let next = self.base.sub(&bx, &self.base.from_bigint(k.clone()));
        Ok((k.to_u32().ok_or(ExpansionError::OutOfDomain)?, next))
    }

    /// `(⌊βx - l_β⌋, T_β(x))` for `x ∈ [l_β, r_β)`.
    pub fn t_step(&self, x: &Value) -> Result<(u32, Value), ExpansionError> {
        if !self.in_domain(x)? {
            return Err(ExpansionError::OutOfDomain);
        }
        self.step_unchecked(x)
    }

    /// First `count` digits of the expansion of `x`.
    ///
    /// Points outside the domain are first divided by the smallest power of β
    /// bringing them inside; the exponent is returned as `shift`. The right
    /// endpoint itself is expanded by its left limit `0·d`.
    pub fn expand(&self, x: &Value, count: usize) -> Result<Expansion, ExpansionError> {
        let mut y = x.clone();
        let mut shift = 0;
        loop {
            if self.base.compare(&y, &self.r)? == Ordering::Equal {
                let mut v = alloc::vec![0u32];
                v.extend_from_slice(&self.orbit_digits(count.saturating_sub(1))?);
                v.truncate(count);
                return Ok(Expansion { shift, digits: Word::new(v) });
            }
            if self.in_domain(&y)? {
                break;
            }
            y = self.base.mul(&y, &self.inv_beta);
            shift += 1;
            if shift > self.iteration_cap {
                return Err(ExpansionError::OutOfDomain);
            }
        }
        let mut digits = Vec::with_capacity(count);
        for _ in 0..count {
            let (d, next) = self.step_unchecked(&y)?;
            digits.push(d);
            y = next;
        }
        Ok(Expansion { shift, digits: Word::new(digits) })
    }

    /// First `count` digits of `d(l_β, β)`.
    pub fn orbit_digits(&self, count: usize) -> Result<Word, ExpansionError> {
        let mut y = self.l.clone();
        let mut digits = Vec::with_capacity(count);
        for _ in 0..count {
            let (d, next) = self.step_unchecked(&y)?;
            digits.push(d);
            y = next;
        }
        Ok(Word::new(digits))
    }

    /// Searches the orbit of `l_β` for an exact repetition within `cap` steps.
    pub fn detect_period(&self, cap: usize) -> PeriodSearch {
        let mut points: Vec<(f64, Value)> = Vec::new();
        let mut digits = Vec::new();
        let mut y = self.l.clone();
        for j in 0..=cap {
            if self.base.is_exact() {
                let approx = self.base.to_f64(&y);
                let tol = 1e-9 * approx.abs().max(1.0);
                let hit = points.iter().position(|(a, v)| {
                    (a - approx).abs() <= tol && self.base.exact_eq(v, &y) == Some(true)
                });
                if let Some(i) = hit {
                    let pre = Word::from(&digits[..i]);
                    let per = Word::from(&digits[i..j]);
                    let sequence = EventuallyPeriodic::new(pre, per).expect("nonempty period");
                    return PeriodSearch::Found {
                        preperiod_len: sequence.preperiod().len(),
                        period_len: sequence.period().len(),
                        sequence,
                    };
                }
                points.push((approx, y.clone()));
            }
            if j == cap {
                break;
            }
            match self.step_unchecked(&y) {
                Ok((d, next)) => {
                    digits.push(d);
                    y = next;
                }
                Err(_) => return PeriodSearch::NotFound { digits: Word::new(digits), undecidable: true },
            }
        }
        PeriodSearch::NotFound { digits: Word::new(digits), undecidable: false }
    }

    /// `d`, `d*`, `r*` and `r`, with the odd-period flag.
    ///
    /// When no period is found the bounds carry the certified prefix of `d`.
    pub fn boundary_sequences(&self) -> BoundsPair {
        match self.detect_period(self.iteration_cap) {
            PeriodSearch::Found { sequence, .. } => BoundsPair::from_periodic(sequence),
            PeriodSearch::NotFound { digits, .. } => BoundsPair::from_prefix(digits),
        }
    }

    /// `Σ x_k β^-k` for a finite word.
    pub fn eval_word(&self, w: &[u32]) -> Value {
        let b = &self.base;
        let mut acc = b.from_int(0);
        for &x in w.iter().rev() {
            acc = b.mul(&b.add(&acc, &b.from_int(i64::from(x))), &self.inv_beta);
        }
        acc
    }

    /// `Σ x_k β^-k` for an eventually periodic sequence, in closed form.
    pub fn eval_periodic(&self, s: &EventuallyPeriodic) -> Result<Value, ExpansionError> {
        let b = &self.base;
        let head = self.eval_word(s.preperiod());
        let cycle = self.eval_word(s.period());
        let zp = b.pow(&self.inv_beta, s.period().len() as u32);
        let zm = b.pow(&self.inv_beta, s.preperiod().len() as u32);
        let tail = b.div(&cycle, &b.sub(&b.from_int(1), &zp))?;
        Ok(b.add(&head, &b.mul(&zm, &tail)))
    }

    /// Enclosure of `f_β(w·t)` over all tails `t` whose value lies in `[l_β, r_β]`.
    pub fn cylinder_values(&self, w: &[u32]) -> crate::numeric::Interval {
        let b = &self.base;
        let head = self.eval_word(w);
        let scale = b.pow(&self.inv_beta, w.len() as u32);
        let lo = b.enclose(&b.add(&head, &b.mul(&scale, &self.l)));
        let hi = b.enclose(&b.add(&head, &b.mul(&scale, &self.r)));
        lo.hull(&hi)
    }

    /// `d₁ |β|^-n / (|β| - 1)`, bounding the value of any digit tail after `n` digits.
    pub fn tail_bound(&self, digit_bound: u32, n: usize) -> crate::numeric::Interval {
        let abs = self.base.beta_interval(64).abs();
        let one = crate::numeric::Interval::from_int(1);
        let denom = abs.sub(&one);
        let scale = abs.pow(n as u32);
        let num = crate::numeric::Interval::from_int(i64::from(digit_bound));
        num.div(&denom.mul(&scale)).expect("|β| > 1")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{isolate_root, rational, ratio, NumberField, Polynomial};

    fn exact_base(n: i64) -> NegativeBase {
        NegativeBase::new(Base::Algebraic(NumberField::new(rational(&ratio(n, 1)), 64))).unwrap()
    }

    fn golden() -> NegativeBase {
        let p = Polynomial::from_i64(&[-1, 1, 1]).unwrap();
        let g = isolate_root(&p, &ratio(-2, 1), &ratio(-1, 1)).unwrap();
        NegativeBase::new(Base::Algebraic(NumberField::new(g, 64))).unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn rejects_beta_above_minus_one() {
        let b = Base::Algebraic(NumberField::new(rational(&ratio(-1, 2)), 64));
        assert_eq!(NegativeBase::new(b).unwrap_err(), ExpansionError::BetaOutOfRange);
    }

    #[test]
    fn endpoints_minus_two() {
        let nb = exact_base(-2);
        let (l, r) = nb.endpoints();
        let b = nb.base();
        assert_eq!(b.exact_eq(&l, &b.from_rational(ratio(-2, 3))), Some(true));
        assert_eq!(b.exact_eq(&r, &b.from_rational(ratio(1, 3))), Some(true));
    }

    #[test]
    fn fixed_point_of_left_endpoint() {
        let nb = exact_base(-2);
        let (l, _) = nb.endpoints();
        let (d, next) = nb.t_step(&l).unwrap();
        assert_eq!(d, 2);
        assert_eq!(nb.base().exact_eq(&next, &l), Some(true));
        let zero = nb.base().from_int(0);
        let (d0, n0) = nb.t_step(&zero).unwrap();
        assert_eq!(d0, 0);
        assert_eq!(nb.base().exact_eq(&n0, &zero), Some(true));
    }

    #[test]
    fn out_of_domain_step_is_rejected() {
        let nb = exact_base(-2);
        let x = nb.base().from_rational(ratio(1, 2));
        assert_eq!(nb.t_step(&x).unwrap_err(), ExpansionError::OutOfDomain);
    }

    #[test]
    fn golden_left_endpoint() {
        let nb = golden();
        let (l, _) = nb.endpoints();
        let (d, next) = nb.t_step(&l).unwrap();
        assert_eq!(d, 1);
        assert_eq!(nb.base().exact_eq(&next, &nb.base().from_int(0)), Some(true));
        let bounds = nb.boundary_sequences();
        assert_eq!(bounds.raw_d, DigitSeq::Periodic(EventuallyPeriodic::new(w("1"), w("0")).unwrap()));
        assert!(!bounds.odd_period);
        assert_eq!(bounds.lower, bounds.raw_d);
    }

    #[test]
    fn minus_two_bounds() {
        let nb = exact_base(-2);
        let bounds = nb.boundary_sequences();
        assert_eq!(bounds.raw_d, DigitSeq::Periodic(EventuallyPeriodic::purely_periodic(w("2")).unwrap()));
        assert!(bounds.odd_period);
        assert_eq!(bounds.lower, DigitSeq::Periodic(EventuallyPeriodic::purely_periodic(w("10")).unwrap()));
        assert_eq!(bounds.upper.prefix(4).unwrap(), w("0222"));
        assert_eq!(nb.expand(&nb.endpoints().0, 5).unwrap().digits, w("22222"));
        match nb.detect_period(16) {
            PeriodSearch::Found { preperiod_len, period_len, .. } => assert_eq!((preperiod_len, period_len), (0, 1)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn evaluates_boundary_sequences() {
        for nb in [exact_base(-2), exact_base(-3), golden()] {
            let bounds = nb.boundary_sequences();
            let (l, r) = nb.endpoints();
            let d = bounds.raw_d.as_periodic().unwrap();
            let rs = bounds.raw_rstar.as_periodic().unwrap();
            assert_eq!(nb.base().exact_eq(&nb.eval_periodic(d).unwrap(), &l), Some(true));
            assert_eq!(nb.base().exact_eq(&nb.eval_periodic(rs).unwrap(), &r), Some(true));
        }
    }

    #[test]
    fn zero_expands_to_zeros() {
        let nb = golden();
        let z = nb.base().from_int(0);
        assert_eq!(nb.expand(&z, 5).unwrap().digits, w("00000"));
        let zeros = EventuallyPeriodic::purely_periodic(w("0")).unwrap();
        assert_eq!(nb.base().exact_eq(&nb.eval_periodic(&zeros).unwrap(), &z), Some(true));
    }

    #[test]
    fn right_endpoint_uses_left_limit() {
        let nb = exact_base(-2);
        let (_, r) = nb.endpoints();
        assert_eq!(nb.expand(&r, 4).unwrap().digits, w("0222"));
    }

    #[test]
    fn prescales_points_outside_domain() {
        let nb = exact_base(-2);
        let x = nb.base().from_int(5);
        let e = nb.expand(&x, 8).unwrap();
        assert!(e.shift > 0);
        // 5 / β^shift has the returned digits; scale back and compare with a tail bound.
        let b = nb.base();
        let v = b.mul(&nb.eval_word(&e.digits), &b.pow(&b.beta(), e.shift as u32));
        let err = (b.to_f64(&v) - 5.0).abs();
        assert!(err <= 2.0 * 2f64.powi(e.shift as i32) * 2f64.powi(-8));
    }

    #[test]
    fn decimal_base_gives_certified_prefix() {
        use crate::numeric::CertifiedReal;
        let beta = CertifiedReal::parse_decimal("-1.8", 128).unwrap();
        let nb = NegativeBase::new(Base::Decimal { beta, bits: 128 }).unwrap();
        match nb.detect_period(10_000) {
            PeriodSearch::NotFound { digits, .. } => assert!(digits.len() > 50),
            other => panic!("{other:?}"),
        }
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(64))]
        #[test]
        fn alternating_order_agrees_with_values(seed in proptest::prelude::any::<u64>(), pick in 0usize..2) {
            use rand::SeedableRng;
            let nb = if pick == 0 { exact_base(-2) } else { golden() };
            let bounds = nb.boundary_sequences();
            let adm = crate::order::Admissibility::new(&bounds, crate::order::ShiftKind::Plain);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let x = adm.random_word(12, &mut rng).unwrap();
            let y = adm.random_word(12, &mut rng).unwrap();
            let (vx, vy) = (nb.cylinder_values(&x), nb.cylinder_values(&y));
            if let Some(c) = vx.compare(&vy) {
                proptest::prop_assert_eq!(crate::order::alt_compare(&x, &y), c, "{} {}", x, y);
            }
        }
    }
}
