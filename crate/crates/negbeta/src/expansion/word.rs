//! Finite digit words and eventually periodic digit sequences.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Deref;
use core::str::FromStr;

/// A finite word over the digit alphabet.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<u32>);

impl Word {
    pub fn new(digits: Vec<u32>) -> Self {
        Self(digits)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn digits(&self) -> &[u32] {
        &self.0
    }

    pub fn into_digits(self) -> Vec<u32> {
        self.0
    }

    pub fn push(&mut self, d: u32) {
        self.0.push(d);
    }

    pub fn concat(&self, other: &[u32]) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(other);
        Word(v)
    }

    pub fn repeat(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }

    /// Renders concatenated when every digit is below 10, space-separated otherwise.
    pub fn render(&self) -> String {
        render_digits(&self.0)
    }
}

pub(crate) fn render_digits(d: &[u32]) -> String {
    use core::fmt::Write;
    let spaced = d.iter().any(|&x| x > 9);
    let mut s = String::new();
    for (i, x) in d.iter().enumerate() {
        if spaced && i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{x}");
    }
    s
}

impl Deref for Word {
    type Target = [u32];
    fn deref(&self) -> &[u32] {
        &self.0
    }
}

impl core::borrow::Borrow<[u32]> for Word {
    fn borrow(&self) -> &[u32] {
        &self.0
    }
}

impl From<Vec<u32>> for Word {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

impl From<&[u32]> for Word {
    fn from(v: &[u32]) -> Self {
        Self(v.to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("not a digit word: {0:?}")]
pub struct ParseWordError(pub String);

impl FromStr for Word {
    type Err = ParseWordError;

    /// Accepts `"20121"` (one digit per character) or `"2 0 12 1"` (space-separated).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let err = || ParseWordError(String::from(s));
        if t.contains(char::is_whitespace) {
            t.split_whitespace().map(|p| p.parse::<u32>().map_err(|_| err())).collect::<Result<_, _>>().map(Word)
        } else {
            t.chars().map(|c| c.to_digit(10).ok_or_else(err)).collect::<Result<_, _>>().map(Word)
        }
    }
}

/// A sequence `preperiod · period^∞` in canonical form.
///
/// The period is primitive and the preperiod as short as possible.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EventuallyPeriodic {
    preperiod: Word,
    period: Word,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("the period of an eventually periodic sequence must be nonempty")]
pub struct EmptyPeriod;

impl EventuallyPeriodic {
    pub fn new(preperiod: Word, period: Word) -> Result<Self, EmptyPeriod> {
        if period.is_empty() {
            return Err(EmptyPeriod);
        }
        let mut pre = preperiod.into_digits();
        let mut per = period.into_digits();
        let p = primitive_root_len(&per);
        per.truncate(p);
        while let (Some(&a), Some(&b)) = (pre.last(), per.last()) {
            if a != b {
                break;
            }
            pre.pop();
            per.rotate_right(1);
        }
        Ok(Self { preperiod: Word(pre), period: Word(per) })
    }

    pub fn purely_periodic(period: Word) -> Result<Self, EmptyPeriod> {
        Self::new(Word::empty(), period)
    }

    pub fn preperiod(&self) -> &Word {
        &self.preperiod
    }

    pub fn period(&self) -> &Word {
        &self.period
    }

    /// Digit at 0-based position `i`.
    pub fn digit(&self, i: usize) -> u32 {
        let m = self.preperiod.len();
        if i < m {
            self.preperiod[i]
        } else {
            self.period[(i - m) % self.period.len()]
        }
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word((0..n).map(|i| self.digit(i)).collect())
    }

    /// The shifted sequence `σ^k(self)`.
    pub fn shift(&self, k: usize) -> EventuallyPeriodic {
        let m = self.preperiod.len();
        if k <= m {
            return Self::new(Word::from(&self.preperiod[k..]), self.period.clone()).expect("nonempty period");
        }
        let mut per = self.period.0.clone();
        let len = per.len();
        per.rotate_left((k - m) % len);
        Self::new(Word::empty(), Word(per)).expect("nonempty period")
    }

    /// `a · self`.
    pub fn prepend(&self, a: u32) -> EventuallyPeriodic {
        let mut pre = alloc::vec![a];
        pre.extend_from_slice(&self.preperiod);
        Self::new(Word(pre), self.period.clone()).expect("nonempty period")
    }
}

impl fmt::Display for EventuallyPeriodic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let spaced = self.preperiod.iter().chain(self.period.iter()).any(|&x| x > 9);
        let pre = self.preperiod.render();
        let per = self.period.render();
        if spaced && !pre.is_empty() {
            write!(f, "{pre} ({per})")
        } else {
            write!(f, "{pre}({per})")
        }
    }
}

fn primitive_root_len(w: &[u32]) -> usize {
    let n = w.len();
    (1..=n).find(|&p| n.is_multiple_of(p) && (p..n).all(|i| w[i] == w[i - p])).unwrap_or(n)
}

/// A one-sided digit sequence: exactly periodic, or known only up to a finite prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DigitSeq {
    Periodic(EventuallyPeriodic),
    Prefix(Word),
}

impl DigitSeq {
    /// Digit at 0-based position `i`, if known.
    pub fn digit(&self, i: usize) -> Option<u32> {
        match self {
            DigitSeq::Periodic(p) => Some(p.digit(i)),
            DigitSeq::Prefix(w) => w.get(i).copied(),
        }
    }

    /// Number of known digits; `None` for a fully known infinite sequence.
    pub fn known_len(&self) -> Option<usize> {
        match self {
            DigitSeq::Periodic(_) => None,
            DigitSeq::Prefix(w) => Some(w.len()),
        }
    }

    pub fn knows(&self, n: usize) -> bool {
        self.known_len().is_none_or(|k| n <= k)
    }

    pub fn prefix(&self, n: usize) -> Option<Word> {
        match self {
            DigitSeq::Periodic(p) => Some(p.prefix(n)),
            DigitSeq::Prefix(w) => (n <= w.len()).then(|| Word::from(&w[..n])),
        }
    }

    /// Longest available prefix up to `n` digits.
    pub fn prefix_up_to(&self, n: usize) -> Word {
        match self {
            DigitSeq::Periodic(p) => p.prefix(n),
            DigitSeq::Prefix(w) => Word::from(&w[..n.min(w.len())]),
        }
    }

    pub fn as_periodic(&self) -> Option<&EventuallyPeriodic> {
        match self {
            DigitSeq::Periodic(p) => Some(p),
            DigitSeq::Prefix(_) => None,
        }
    }

    pub fn prepend(&self, a: u32) -> DigitSeq {
        match self {
            DigitSeq::Periodic(p) => DigitSeq::Periodic(p.prepend(a)),
            DigitSeq::Prefix(w) => {
                let mut v = alloc::vec![a];
                v.extend_from_slice(w);
                DigitSeq::Prefix(Word(v))
            }
        }
    }

    pub fn shift(&self, k: usize) -> DigitSeq {
        match self {
            DigitSeq::Periodic(p) => DigitSeq::Periodic(p.shift(k)),
            DigitSeq::Prefix(w) => DigitSeq::Prefix(Word::from(&w[k.min(w.len())..])),
        }
    }
}

impl fmt::Display for DigitSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DigitSeq::Periodic(p) => write!(f, "{p}"),
            DigitSeq::Prefix(w) => write!(f, "{w}..."),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_form() {
        let e = EventuallyPeriodic::new(w("2012121201200212121"), w("2121")).unwrap();
        assert_eq!(e.preperiod(), &w("2012121201200"));
        assert_eq!(e.period(), &w("21"));
        assert_eq!(alloc::format!("{e}"), "2012121201200(21)");
    }

    #[test]
    fn digits_and_shift() {
        let e = EventuallyPeriodic::new(w("1"), w("0")).unwrap();
        assert_eq!(e.prefix(4), w("1000"));
        assert_eq!(e.shift(3), EventuallyPeriodic::purely_periodic(w("0")).unwrap());
        assert_eq!(e.prepend(0).prefix(3), w("010"));
    }

    #[test]
    fn spaced_rendering_for_large_digits() {
        assert_eq!(Word::new(alloc::vec![1, 12, 0]).render(), "1 12 0");
        assert_eq!(w("1 12 0"), Word::new(alloc::vec![1, 12, 0]));
    }

    #[test]
    fn prefix_sequences_report_unknown_digits() {
        let s = DigitSeq::Prefix(w("100"));
        assert_eq!(s.digit(2), Some(0));
        assert_eq!(s.digit(3), None);
        assert!(s.prefix(4).is_none());
    }
}
