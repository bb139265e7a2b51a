//! Intransitive words: the forbidden patterns of the support, factor tests against
//! the support code and per-length gap tables.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

mod factors;

use factors::{in_monoid, windows_of, FactorIndex};

use crate::codes::{band_base_code, phi_word, u_word_from, CodeEnumeration, CodeError, Regime, RegimeReport};
use crate::expansion::{BoundsPair, Word};
use crate::order::{Admissibility, OrderError, ShiftKind, DEFAULT_ENUMERATION_CAP};

/// Default two-sided extension radius for proving that a word is not a support factor.
pub const DEFAULT_EXTENSION_RADIUS: usize = 4;

/// Flagged words kept per length in a [`GapReport`].
pub const MAX_FLAGGED_EXAMPLES: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GapError {
    #[error("gap patterns need a band regime, found {0:?}")]
    NotApplicable(Regime),
    #[error("{0} is not admissible")]
    NotAdmissible(Word),
    #[error("{word}: no overhang decomposition and no forbidden pattern within radius {radius}")]
    CapInconclusive { word: Word, radius: usize },
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Order(#[from] OrderError),
}

/// The three shapes of intransitive words, with `u₋₁ = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PatternFamily {
    /// `σⁱ(u_{m-2}) u_{m-1} u_m`.
    Step,
    /// `σⁱ(u_{m-1}) u_{m-1} u_{m-1} u_{m-1}`.
    Cube,
    /// `σⁱ(u_{m-1}) u_{m-1} u_m u_m ⋯ u_{n-2} u_{n-2} u_{n-1}^{2k₁+1} u_n`.
    Ladder,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapPattern {
    pub family: PatternFamily,
    pub m: usize,
    pub i: usize,
    /// Band level of the base.
    pub n: usize,
    /// Half the first zero run of the pulled-back sequence, when it is finite.
    pub k1: Option<usize>,
    pub word: Word,
}

/// Instantiates the pattern families of a band regime, keeping words of length `≤ max_len`.
///
/// Ranges: `1 ≤ m ≤ n` for [`PatternFamily::Step`], `0 ≤ m < n` for the other two, plus
/// `m = n` for [`PatternFamily::Cube`] when `k₁ = 1`.
pub fn gap_patterns(report: &RegimeReport, max_len: usize) -> Result<Vec<GapPattern>, GapError> {
    let n = match report.regime {
        Regime::Band(n) => n,
        Regime::AtGamma0 => return Ok(Vec::new()),
        r @ Regime::BelowGamma0 => return Err(GapError::NotApplicable(r)),
    };
    let w = report.pulled_back.as_ref().ok_or(CodeError::MissingPullback)?;
    let k1 = zero_run(w, 2 * max_len + 2).map(|z| z / 2);
    let u = |m: isize| u_word_from(m);
    let mut out = Vec::new();
    let mut push = |family, m: usize, i: usize, word: Word| {
        if word.len() <= max_len {
            out.push(GapPattern { family, m, i, n, k1, word });
        }
    };
    for m in 1..=n {
        let head = u(m as isize - 2);
        for i in 0..head.len() {
            push(PatternFamily::Step, m, i, Word::from(&head[i..]).concat(&u(m as isize - 1)).concat(&u(m as isize)));
        }
    }
    for m in (0..n).chain((k1 == Some(1)).then_some(n)) {
        let a = u(m as isize - 1);
        for i in 0..a.len() {
            push(PatternFamily::Cube, m, i, Word::from(&a[i..]).concat(&a.repeat(3)));
        }
    }
    if let Some(k1) = k1 {
        for m in 0..n {
            let a = u(m as isize - 1);
            let mut body = a.clone();
            for j in m..n.saturating_sub(1) {
                body = body.concat(&u(j as isize).repeat(2));
            }
            body = body.concat(&u(n as isize - 1).repeat(2 * k1 + 1)).concat(&u(n as isize));
            for i in 0..a.len() {
                push(PatternFamily::Ladder, m, i, Word::from(&a[i..]).concat(&body));
            }
        }
    }
    Ok(out)
}

/// Length of the zero run after the first digit of `w`, if it ends within `limit` digits.
fn zero_run(w: &crate::expansion::DigitSeq, limit: usize) -> Option<usize> {
    (1..limit).find(|&i| w.digit(i) != Some(0)).filter(|&i| w.digit(i).is_some()).map(|i| i - 1)
}

/// Why a word is intransitive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// The word contains this pattern.
    Pattern(GapPattern),
    /// Every admissible two-sided extension by `radius` digits contains a pattern.
    Extensions { radius: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Transitivity {
    /// A factor of the support language.
    Supported,
    Intransitive(Witness),
    /// Admissible in `S_β` but not in the corrected shift; only sequences ending in `d` carry it.
    OddPeriodTail,
}

impl Transitivity {
    pub fn has_null_cylinder(&self) -> bool {
        !matches!(self, Transitivity::Supported)
    }
}

/// Lengths used when indexing the support language.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SupportCaps {
    /// Longest factors indexed exactly, and longest patterns instantiated.
    pub factor_len: usize,
    /// Listing length of the pulled-back code of a band regime.
    pub base_len: usize,
    pub max_words: usize,
}

impl Default for SupportCaps {
    fn default() -> Self {
        Self { factor_len: 12, base_len: 40, max_words: 200_000 }
    }
}

/// The support of the maximal-entropy measure: its code, its forbidden patterns and the
/// admissibility tests of the shift it lives in.
#[derive(Clone, Debug)]
pub struct SupportModel {
    bounds: BoundsPair,
    report: RegimeReport,
    code: CodeEnumeration,
    patterns: Vec<GapPattern>,
    plain: Admissibility,
    corrected: Admissibility,
    direct: FactorIndex,
    /// Band regimes: support factors of each length up to `caps.factor_len`, read off
    /// `φⁿ` of the factors of the pulled-back code.
    band_factors: Vec<BTreeSet<Word>>,
    caps: SupportCaps,
}

impl SupportModel {
    pub fn new(bounds: BoundsPair, report: RegimeReport, code: CodeEnumeration, caps: SupportCaps) -> Result<Self, GapError> {
        let mut patterns = Vec::new();
        let mut band_factors = Vec::new();
        if let Regime::Band(n) = report.regime {
            patterns = gap_patterns(&report, caps.factor_len)?;
            let w = report.pulled_back.as_ref().ok_or(CodeError::MissingPullback)?;
            let base = FactorIndex::new(&band_base_code(w, caps.base_len, caps.max_words)?, caps.factor_len);
            let adm = Admissibility::from_lower(w.clone());
            for len in 0..=caps.factor_len {
                let mut images = Vec::new();
                for y in adm.enumerate_words(len, caps.factor_len.max(DEFAULT_ENUMERATION_CAP))? {
                    if base.is_factor(&y) {
                        images.push(phi_word(&y, n)?);
                    }
                }
                band_factors.push(windows_of(&images, len));
            }
        }
        let plain = Admissibility::new(&bounds, ShiftKind::Plain);
        let corrected = Admissibility::new(&bounds, ShiftKind::Corrected);
        let direct = FactorIndex::new(&code.words, caps.factor_len);
        Ok(Self { bounds, report, code, patterns, plain, corrected, direct, band_factors, caps })
    }

    pub fn bounds(&self) -> &BoundsPair {
        &self.bounds
    }

    pub fn report(&self) -> &RegimeReport {
        &self.report
    }

    pub fn code(&self) -> &CodeEnumeration {
        &self.code
    }

    pub fn patterns(&self) -> &[GapPattern] {
        &self.patterns
    }

    pub fn caps(&self) -> SupportCaps {
        self.caps
    }

    /// Whether the support is the whole corrected shift.
    pub fn is_full_support(&self) -> bool {
        matches!(self.report.regime, Regime::BelowGamma0 | Regime::AtGamma0)
    }

    pub fn is_admissible(&self, word: &[u32]) -> Result<bool, GapError> {
        Ok(self.plain.is_admissible(word)?)
    }

    /// Whether `word` is a concatenation of listed code words.
    pub fn in_code_monoid(&self, word: &[u32]) -> bool {
        in_monoid(word, |x| self.code.contains(x))
    }

    /// Whether `word` is a factor of the support language.
    ///
    /// Band regimes answer exactly up to `caps.factor_len`; otherwise `word` must be
    /// `s·c₁⋯c_k·p` with `s` a suffix and `p` a prefix of listed code words, or lie inside one.
    pub fn is_factor(&self, word: &[u32]) -> bool {
        match self.band_factors.get(word.len()) {
            Some(set) => word.is_empty() || set.contains(word),
            None => self.direct.is_factor(word),
        }
    }

    fn pattern_in(&self, word: &[u32]) -> Option<&GapPattern> {
        self.patterns.iter().find(|p| p.word.len() <= word.len() && word.windows(p.word.len()).any(|x| x == &p.word[..]))
    }

    /// Decides whether `word` lies in the support language.
    pub fn is_intransitive(&self, word: &[u32], radius: usize) -> Result<Transitivity, GapError> {
        if !self.plain.is_admissible(word)? {
            return Err(GapError::NotAdmissible(Word::from(word)));
        }
        if self.is_full_support() {
            if self.bounds.odd_period && !self.corrected.is_admissible(word)? {
                return Ok(Transitivity::OddPeriodTail);
            }
            return Ok(Transitivity::Supported);
        }
        if self.is_factor(word) {
            return Ok(Transitivity::Supported);
        }
        if let Some(p) = self.pattern_in(word) {
            return Ok(Transitivity::Intransitive(Witness::Pattern(p.clone())));
        }
        if radius > 0 && self.extensions_hit_patterns(word, radius)? {
            return Ok(Transitivity::Intransitive(Witness::Extensions { radius }));
        }
        Err(GapError::CapInconclusive { word: Word::from(word), radius })
    }

    fn extensions_hit_patterns(&self, word: &[u32], radius: usize) -> Result<bool, GapError> {
        for left in self.plain.enumerate_words(radius, radius.max(DEFAULT_ENUMERATION_CAP))? {
            let middle = left.concat(word);
            let Some(f) = self.plain.frontier(&middle)? else { continue };
            let mut stack = middle.into_digits();
            if !self.right_extensions_hit(&f, radius, &mut stack) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn right_extensions_hit(&self, f: &crate::order::Frontier, remaining: usize, stack: &mut Vec<u32>) -> bool {
        if self.pattern_in(stack).is_some() {
            return true;
        }
        if remaining == 0 {
            return false;
        }
        for a in 0..=self.plain.digit_bound() {
            if let Some(next) = self.plain.extend(f, a) {
                stack.push(a);
                let hit = self.right_extensions_hit(&next, remaining - 1, stack);
                stack.pop();
                if !hit {
                    return false;
                }
            }
        }
        true
    }

    /// Admissible and support-language counts per length up to `max_len`.
    pub fn gap_report(&self, max_len: usize, radius: usize) -> Result<GapReport, GapError> {
        let mut rows = Vec::with_capacity(max_len + 1);
        for len in 0..=max_len {
            let mut row = GapRow { len, admissible: 0, supported: 0, inconclusive: 0, flagged: Vec::new() };
            for w in self.plain.enumerate_words(len, max_len.max(DEFAULT_ENUMERATION_CAP))? {
                row.admissible += 1;
                match self.is_intransitive(&w, radius) {
                    Ok(Transitivity::Supported) => row.supported += 1,
                    Ok(_) => {
                        if row.flagged.len() < MAX_FLAGGED_EXAMPLES {
                            row.flagged.push(w);
                        }
                    }
                    Err(GapError::CapInconclusive { .. }) => row.inconclusive += 1,
                    Err(e) => return Err(e),
                }
            }
            rows.push(row);
        }
        Ok(GapReport { regime: self.report.regime, odd_period: self.bounds.odd_period, rows })
    }
}

/// One length of a gap table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapRow {
    pub len: usize,
    pub admissible: u128,
    pub supported: u128,
    pub inconclusive: u128,
    /// Up to [`MAX_FLAGGED_EXAMPLES`] words with null cylinders.
    pub flagged: Vec<Word>,
}

impl GapRow {
    pub fn gaps(&self) -> u128 {
        self.admissible - self.supported - self.inconclusive
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapReport {
    pub regime: Regime,
    /// When set, the flagged words are the odd-period tail set rather than intransitive words.
    pub odd_period: bool,
    pub rows: Vec<GapRow>,
}

impl GapReport {
    pub fn inconclusive(&self) -> u128 {
        self.rows.iter().map(|r| r.inconclusive).sum()
    }
}

#[cfg(test)]
mod tests;
