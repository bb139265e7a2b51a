//! Alternating order, admissibility of finite words, and language censuses.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::expansion::{BoundsPair, DigitSeq, EventuallyPeriodic, Word};

/// Default bound on the length of brute-force enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 18;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum OrderError {
    #[error("bound sequence known only to {known} digits, {needed} needed")]
    InsufficientDigits { known: usize, needed: usize },
    #[error("length {requested} exceeds the enumeration cap {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("census overflow at length {0}")]
    Overflow(usize),
}

/// Compares two words in the alternating order over their common length.
///
/// At the first difference `k` (1-based) the sign of `(-1)^k (x_k - y_k)`
/// decides: negative means `x ≺ y`.
pub fn alt_compare(x: &[u32], y: &[u32]) -> Ordering {
    alt_compare_by(|i| x.get(i).copied(), |i| y.get(i).copied(), x.len().min(y.len()))
}

/// Alternating comparison of the first `horizon` digits of two sequences.
pub fn alt_compare_seq(x: &DigitSeq, y: &DigitSeq, horizon: usize) -> Ordering {
    alt_compare_by(|i| x.digit(i), |i| y.digit(i), horizon)
}

fn alt_compare_by(x: impl Fn(usize) -> Option<u32>, y: impl Fn(usize) -> Option<u32>, horizon: usize) -> Ordering {
    for i in 0..horizon {
        let (Some(a), Some(b)) = (x(i), y(i)) else {
            return Ordering::Equal;
        };
        if a != b {
            return digit_order(i, a, b);
        }
    }
    Ordering::Equal
}

/// Order decided by differing digits `a ≠ b` at 0-based position `i`.
#[inline]
fn digit_order(i: usize, a: u32, b: u32) -> Ordering {
    // k = i + 1; (-1)^k (a - b) < 0 means Less.
    let odd = i.is_multiple_of(2);
    match (odd, a < b) {
        (true, true) | (false, false) => Ordering::Greater,
        _ => Ordering::Less,
    }
}

/// Which one-sided shift the admissibility test refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ShiftKind {
    /// `S_β`: every suffix lies between `d` and `r`.
    Plain,
    /// The corrected shift: the lower bound is `d*`.
    Corrected,
}

/// Admissibility test for finite words against a pair of bound sequences.
#[derive(Clone, Debug)]
pub struct Admissibility {
    lower: DigitSeq,
    upper: DigitSeq,
    digit_bound: u32,
}

/// Pending comparisons of suffixes with the bounds while a word is built left to right.
#[derive(Clone, Debug, Default)]
pub struct Frontier {
    len: usize,
    lower_ties: Vec<usize>,
    upper_ties: Vec<usize>,
}

impl Admissibility {
    pub fn new(bounds: &BoundsPair, kind: ShiftKind) -> Self {
        let lower = match kind {
            ShiftKind::Plain => bounds.raw_d.clone(),
            ShiftKind::Corrected => bounds.lower.clone(),
        };
        Self { lower, upper: bounds.upper.clone(), digit_bound: bounds.digit_bound }
    }

    /// Admissibility with respect to an explicit lower bound `x` and upper bound `0·x`.
    pub fn from_lower(lower: DigitSeq) -> Self {
        let digit_bound = lower.digit(0).unwrap_or(0);
        let upper = lower.prepend(0);
        Self { lower, upper, digit_bound }
    }

    pub fn lower(&self) -> &DigitSeq {
        &self.lower
    }

    pub fn digit_bound(&self) -> u32 {
        self.digit_bound
    }

    fn need(&self, n: usize) -> Result<(), OrderError> {
        match self.lower.known_len() {
            Some(k) if k + 1 < n => Err(OrderError::InsufficientDigits { known: k, needed: n }),
            _ => Ok(()),
        }
    }

    /// Whether every suffix `s` of `word` satisfies `lower ⪯ s ⪯ upper` on its length.
    pub fn is_admissible(&self, word: &[u32]) -> Result<bool, OrderError> {
        Ok(self.frontier(word)?.is_some())
    }

    /// The frontier after reading `word`, or `None` if it is not admissible.
    pub fn frontier(&self, word: &[u32]) -> Result<Option<Frontier>, OrderError> {
        self.need(word.len())?;
        let mut f = Frontier::default();
        for &a in word {
            match self.extend(&f, a) {
                Some(next) => f = next,
                None => return Ok(None),
            }
        }
        Ok(Some(f))
    }

    /// Appends `a`; `None` when the extended word is not admissible.
    pub fn extend(&self, f: &Frontier, a: u32) -> Option<Frontier> {
        if a > self.digit_bound {
            return None;
        }
        let n = f.len;
        let mut lower_ties = Vec::with_capacity(f.lower_ties.len() + 1);
        for &s in f.lower_ties.iter().chain(core::iter::once(&n)) {
            let t = n - s;
            let b = self.lower.digit(t)?;
            if a == b {
                lower_ties.push(s);
            } else if digit_order(t, a, b) == Ordering::Less {
                return None;
            }
        }
        let mut upper_ties = Vec::with_capacity(f.upper_ties.len() + 1);
        for &s in f.upper_ties.iter().chain(core::iter::once(&n)) {
            let t = n - s;
            let b = self.upper.digit(t)?;
            if a == b {
                upper_ties.push(s);
            } else if digit_order(t, a, b) == Ordering::Greater {
                return None;
            }
        }
        Some(Frontier { len: n + 1, lower_ties, upper_ties })
    }

    /// A random admissible word of length `n`: each digit is uniform among the admissible
    /// continuations.
    pub fn random_word<R: rand::Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Result<Word, OrderError> {
        self.need(n)?;
        let mut f = Frontier::default();
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let mut options: Vec<(u32, Frontier)> =
                (0..=self.digit_bound).filter_map(|a| self.extend(&f, a).map(|g| (a, g))).collect();
            let (a, g) = options.swap_remove(rng.gen_range(0..options.len()));
            out.push(a);
            f = g;
        }
        Ok(Word::new(out))
    }

    /// All admissible words of length `n`, in length-then-lexicographic order.
    pub fn enumerate_words(&self, n: usize, cap: usize) -> Result<Vec<Word>, OrderError> {
        if n > cap {
            return Err(OrderError::CapExceeded { requested: n, cap });
        }
        self.need(n)?;
        let mut out = Vec::new();
        let mut stack = Vec::with_capacity(n);
        self.dfs(&Frontier::default(), n, &mut stack, &mut |w| out.push(Word::from(w)));
        Ok(out)
    }

    /// Census `H_0..=H_n` by exhaustive extension.
    pub fn census_by_enumeration(&self, n: usize, cap: usize) -> Result<Vec<u128>, OrderError> {
        if n > cap {
            return Err(OrderError::CapExceeded { requested: n, cap });
        }
        self.need(n)?;
        let mut counts = vec![0u128; n + 1];
        self.count(&Frontier::default(), n, &mut counts);
        Ok(counts)
    }

    fn dfs(&self, f: &Frontier, n: usize, stack: &mut Vec<u32>, emit: &mut impl FnMut(&[u32])) {
        if stack.len() == n {
            emit(stack);
            return;
        }
        for a in 0..=self.digit_bound {
            if let Some(next) = self.extend(f, a) {
                stack.push(a);
                self.dfs(&next, n, stack, emit);
                stack.pop();
            }
        }
    }

    fn count(&self, f: &Frontier, n: usize, counts: &mut [u128]) {
        counts[f.len] += 1;
        if f.len == n {
            return;
        }
        for a in 0..=self.digit_bound {
            if let Some(next) = self.extend(f, a) {
                self.count(&next, n, counts);
            }
        }
    }
}

/// Word counts, optionally with the words themselves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LanguageCensus {
    pub counts: Vec<u128>,
    pub words: Option<Vec<Vec<Word>>>,
}

/// `H_n` for `n ≤ max_len` from `H_n = Σ (-1)^k (d_{k-1} - d_k) H_{n-k} + 1` with `d_0 = 0`.
pub fn count_words_recurrence(d: &DigitSeq, max_len: usize) -> Result<LanguageCensus, OrderError> {
    let digits = d
        .prefix(max_len)
        .ok_or(OrderError::InsufficientDigits { known: d.known_len().unwrap_or(0), needed: max_len })?;
    let dd = |k: usize| if k == 0 { 0i128 } else { i128::from(digits[k - 1]) };
    let mut h: Vec<i128> = vec![1];
    for n in 1..=max_len {
        let mut acc: i128 = 1;
        for k in 1..=n {
            let c = dd(k - 1) - dd(k);
            if c == 0 {
                continue;
            }
            let term = c.checked_mul(h[n - k]).ok_or(OrderError::Overflow(n))?;
            acc = if k % 2 == 0 { acc.checked_add(term) } else { acc.checked_sub(term) }
                .ok_or(OrderError::Overflow(n))?;
        }
        h.push(acc);
    }
    let counts = h.into_iter().map(|x| u128::try_from(x).expect("census is nonnegative")).collect();
    Ok(LanguageCensus { counts, words: None })
}

/// Census of concatenations of odd-length prefixes: `f_0 = f_1 = 1`, `f_n = f_{n-1} + f_{n-2}`.
pub fn fibonacci_census(max_len: usize) -> Vec<u128> {
    let mut f = vec![1u128, 1];
    while f.len() <= max_len {
        let n = f.len();
        f.push(f[n - 1] + f[n - 2]);
    }
    f.truncate(max_len + 1);
    f
}

/// Whether every shift of `d` is `⪰ d` in the alternating order.
pub fn is_self_admissible(d: &EventuallyPeriodic) -> bool {
    let horizon = d.preperiod().len() + 2 * d.period().len() + 1;
    let seq = DigitSeq::Periodic(d.clone());
    (1..d.preperiod().len() + d.period().len()).all(|k| {
        let shifted = DigitSeq::Periodic(d.shift(k));
        alt_compare_seq(&shifted, &seq, horizon) != Ordering::Less
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn periodic(pre: &str, per: &str) -> BoundsPair {
        let pre = if pre.is_empty() { Word::empty() } else { w(pre) };
        BoundsPair::from_periodic(EventuallyPeriodic::new(pre, w(per)).unwrap())
    }

    #[test]
    fn alternating_examples() {
        assert_eq!(alt_compare(&w("10"), &w("11")), Ordering::Less);
        assert_eq!(alt_compare(&w("0000"), &w("1000")), Ordering::Greater);
        assert_eq!(alt_compare(&w("12"), &w("12")), Ordering::Equal);
    }

    #[test]
    fn minus_two_language() {
        let b = periodic("", "2");
        let adm = Admissibility::new(&b, ShiftKind::Plain);
        assert_eq!(adm.enumerate_words(1, 18).unwrap(), [w("0"), w("1"), w("2")]);
        assert_eq!(adm.enumerate_words(0, 18).unwrap(), [Word::empty()]);
        let h = count_words_recurrence(&b.raw_d, 10).unwrap().counts;
        assert_eq!(h[1], 3);
        assert_eq!(adm.census_by_enumeration(10, 18).unwrap(), h);
        let tilde = Admissibility::new(&b, ShiftKind::Corrected);
        for n in 1..=10 {
            assert!(tilde.is_admissible(&vec![1; n]).unwrap());
        }
        assert_eq!(tilde.census_by_enumeration(8, 18).unwrap()[8], 256);
    }

    #[test]
    fn golden_language_matches_recurrence() {
        let b = periodic("1", "0");
        let adm = Admissibility::new(&b, ShiftKind::Plain);
        let h = count_words_recurrence(&b.raw_d, 12).unwrap().counts;
        assert_eq!(&h[..5], &[1, 2, 4, 7, 12]);
        assert_eq!(adm.census_by_enumeration(12, 18).unwrap(), h);
        assert_eq!(adm.enumerate_words(2, 18).unwrap().len(), 4);
    }

    #[test]
    fn cap_is_enforced() {
        let adm = Admissibility::new(&periodic("", "2"), ShiftKind::Plain);
        assert_eq!(adm.enumerate_words(19, 18), Err(OrderError::CapExceeded { requested: 19, cap: 18 }));
    }

    #[test]
    fn fibonacci_values() {
        assert_eq!(fibonacci_census(2), [1, 1, 2]);
        assert_eq!(fibonacci_census(10)[10], 89);
        let f = fibonacci_census(21);
        let ratio = f[21] as f64 / f[20] as f64;
        assert!((ratio - 1.618).abs() < 0.01);
    }

    #[test]
    fn self_admissibility() {
        assert!(is_self_admissible(&EventuallyPeriodic::purely_periodic(w("2")).unwrap()));
        assert!(is_self_admissible(&EventuallyPeriodic::new(w("2012121201200"), w("21")).unwrap()));
        // 0·1^∞ has the shift 1^∞ ≺ 01^∞.
        assert!(!is_self_admissible(&EventuallyPeriodic::new(w("0"), w("1")).unwrap()));
    }

    #[test]
    fn truncated_bounds_report_missing_digits() {
        let b = BoundsPair::from_prefix(w("10011"));
        let adm = Admissibility::new(&b, ShiftKind::Plain);
        assert!(adm.is_admissible(&w("1001")).is_ok());
        assert!(matches!(adm.is_admissible(&w("10011111")), Err(OrderError::InsufficientDigits { .. })));
    }

    fn ternary_words(n: usize) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|w| (0..3).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                }))
                .collect();
        }
        out
    }

    #[test]
    fn strict_weak_order_on_short_words() {
        for n in 1..=4 {
            let ws = ternary_words(n);
            for x in &ws {
                for y in &ws {
                    let xy = alt_compare(x, y);
                    assert_eq!(xy, alt_compare(y, x).reverse());
                    assert_eq!(xy == Ordering::Equal, x == y);
                    if n <= 3 {
                        for z in &ws {
                            if xy == Ordering::Less && alt_compare(y, z) == Ordering::Less {
                                assert_eq!(alt_compare(x, z), Ordering::Less);
                            }
                        }
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn factors_of_admissible_words_are_admissible(word in prop::collection::vec(0u32..3, 0..10)) {
            let b = periodic("2012121201200", "21");
            let adm = Admissibility::new(&b, ShiftKind::Plain);
            if adm.is_admissible(&word).unwrap() {
                for i in 0..=word.len() {
                    for j in i..=word.len() {
                        prop_assert!(adm.is_admissible(&word[i..j]).unwrap());
                    }
                }
            }
        }

        #[test]
        fn order_is_total_and_antisymmetric(x in prop::collection::vec(0u32..3, 10), y in prop::collection::vec(0u32..3, 10)) {
            let xy = alt_compare(&x, &y);
            prop_assert_eq!(xy, alt_compare(&y, &x).reverse());
            prop_assert_eq!(xy == Ordering::Equal, x == y);
        }
    }
}
