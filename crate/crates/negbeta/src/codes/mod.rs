//! Codes for the β-shift and for the support of its maximal-entropy measure.

mod families;
mod ladder;
mod structure;

pub use families::{CodeFamilies, Family, ListCaps};
pub use ladder::{
    classify_regime, gamma_ladder, ladder_exponent, phi_word, pullback, u_word, u_word_from, v_word, Regime,
    RegimeReport, MAX_LADDER_LEVEL,
};
pub use structure::{structure_params, Overlap, StructurePair, StructureParams};

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::expansion::{BoundsPair, DigitSeq, ExpansionError, Word};
use crate::numeric::NumericError;
use crate::order::{Admissibility, OrderError};

/// Default construction length for support codes.
pub const DEFAULT_CODE_LEN: usize = 40;

/// Longest words used when comparing the two forms of Δ₀.
const DELTA0_CROSS_CHECK_LEN: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CodeError {
    #[error("boundary sequence known to {known} digits, {needed} needed")]
    InsufficientDigits { needed: usize, known: usize },
    #[error("{family} needs words up to length {needed} but only {listed} fit the word budget")]
    CapExceeded { family: &'static str, needed: usize, listed: usize },
    #[error("digit {0} is not binary")]
    NonBinary(u32),
    #[error("sequence is not an image of the morphism (position {0})")]
    PullbackFailed(usize),
    #[error("base lies beyond ladder level {0}")]
    BeyondLadder(usize),
    #[error("regime has no pulled-back sequence")]
    MissingPullback,
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error(transparent)]
    Expansion(#[from] ExpansionError),
    #[error(transparent)]
    Order(#[from] OrderError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CodeKind {
    /// 𝔠 built from pairs `(nᵢ, pᵢ)`.
    CFrak,
    /// 𝔠 when `d` has no pairs: Γ is Γ₀ alone.
    SimpleGamma,
    /// `{1, 00}`.
    GoldenPair,
    /// `Δₙ = φⁿ(Δ₀)`.
    DeltaN(usize),
}

impl CodeKind {
    /// Prefix code for 𝔠-type codes, suffix code for Δ-type codes.
    pub fn is_prefix_type(self) -> bool {
        matches!(self, CodeKind::CFrak | CodeKind::SimpleGamma | CodeKind::GoldenPair)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodeWarning {
    /// The two constructions of Δ₀ disagree on words up to `len`.
    Delta0FormsDiffer { len: usize, only_chains: Vec<Word>, only_blocks: Vec<Word> },
}

/// A support code with its census up to `cap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeEnumeration {
    pub kind: CodeKind,
    /// `census[n]` is the number of code words of length `n`, exact for `n ≤ cap`.
    pub census: Vec<u128>,
    /// All code words of length `≤ listed_len`, by length then lexicographically.
    pub words: Vec<Word>,
    pub listed_len: usize,
    pub cap: usize,
    /// Listed words that come from the Γ₁′ family.
    pub provisional: Vec<Word>,
    pub warnings: Vec<CodeWarning>,
}

impl CodeEnumeration {
    /// A finite code given explicitly.
    pub fn finite(kind: CodeKind, words: Vec<Word>, cap: usize) -> Self {
        let words: Vec<Word> = families::sorted(words).into_iter().filter(|w| w.len() <= cap).collect();
        let census = families::census_of(&words, cap);
        Self { kind, census, words, listed_len: cap, cap, provisional: Vec::new(), warnings: Vec::new() }
    }

    /// Whether every code word is listed, so sums over the code are finite and exact.
    pub fn is_finite(&self) -> bool {
        self.listed_len == self.cap && self.words.iter().all(|w| w.len() < self.cap)
    }

    pub fn contains(&self, w: &[u32]) -> bool {
        self.words.binary_search_by(|x| families::len_lex(x, w)).is_ok()
    }

    /// Words up to `len`.
    pub fn words_up_to(&self, len: usize) -> impl Iterator<Item = &Word> {
        self.words.iter().take_while(move |w| w.len() <= len)
    }
}

/// Builds the support code of the maximal-entropy measure up to length `cap`.
pub fn build_code(bounds: &BoundsPair, report: &RegimeReport, cap: usize, caps: ListCaps) -> Result<CodeEnumeration, CodeError> {
    let caps = ListCaps { list_len: caps.list_len.min(cap), ..caps };
    match report.regime {
        Regime::BelowGamma0 => {
            let fam = CodeFamilies::new(bounds.structural(), cap)?;
            let kind = if fam.params().is_simple() { CodeKind::SimpleGamma } else { CodeKind::CFrak };
            let code = fam.cfrak(caps);
            let provisional = fam.gamma1_prime(ListCaps { list_len: code.listed_len, ..caps }).words;
            let adm = Admissibility::from_lower(bounds.structural().clone());
            let warnings = delta0_cross_check(&fam, &adm, caps).into_iter().collect();
            Ok(CodeEnumeration {
                kind,
                census: code.census,
                words: code.words,
                listed_len: code.listed_len,
                cap,
                provisional,
                warnings,
            })
        }
        Regime::AtGamma0 => Ok(golden_pair(0, cap)),
        Regime::Band(n) => {
            let w = report.pulled_back.as_ref().ok_or(CodeError::MissingPullback)?;
            if is_golden_point(w) {
                return Ok(CodeEnumeration { kind: CodeKind::DeltaN(n), ..golden_pair(n, cap) });
            }
            let mut words = Vec::new();
            for x in band_base_code(w, cap, caps.max_words)? {
                let img = phi_word(&x, n)?;
                if img.len() <= cap {
                    words.push(img);
                }
            }
            let fam = CodeFamilies::new(w, cap)?;
            let adm = Admissibility::from_lower(w.clone());
            let warnings = delta0_cross_check(&fam, &adm, caps).into_iter().collect();
            Ok(CodeEnumeration { warnings, ..CodeEnumeration::finite(CodeKind::DeltaN(n), words, cap) })
        }
    }
}

/// The code whose image under `φⁿ` codes a band support: Δ₀ of the pulled-back
/// sequence `w` listed to length `cap`, or `{1, 00}` when `w = 1·0^∞`.
pub fn band_base_code(w: &DigitSeq, cap: usize, max_words: usize) -> Result<Vec<Word>, CodeError> {
    if is_golden_point(w) {
        return Ok(alloc::vec![Word::new(alloc::vec![1]), Word::new(alloc::vec![0, 0])]);
    }
    let delta0 = CodeFamilies::new(w, cap)?.delta0(ListCaps { list_len: cap, max_words });
    if delta0.listed_len < cap {
        return Err(CodeError::CapExceeded { family: "Δ₀", needed: cap, listed: delta0.listed_len });
    }
    Ok(delta0.words)
}

/// `φⁿ({1, 00})`.
fn golden_pair(n: usize, cap: usize) -> CodeEnumeration {
    CodeEnumeration::finite(CodeKind::GoldenPair, alloc::vec![u_word(n), v_word(n)], cap)
}

fn is_golden_point(w: &DigitSeq) -> bool {
    w.as_periodic().is_some_and(|p| p.preperiod().digits() == [1] && p.period().digits() == [0])
}

fn delta0_cross_check(fam: &CodeFamilies, adm: &Admissibility, caps: ListCaps) -> Option<CodeWarning> {
    let len = DELTA0_CROSS_CHECK_LEN.min(fam.max_len());
    let chains = fam.delta0(ListCaps { list_len: len, ..caps });
    let len = chains.listed_len;
    let a: BTreeSet<Word> = chains.words.into_iter().collect();
    let b: BTreeSet<Word> = fam.delta0_via_blocks(adm, len).into_iter().collect();
    if a == b {
        return None;
    }
    Some(CodeWarning::Delta0FormsDiffer {
        len,
        only_chains: a.difference(&b).cloned().collect(),
        only_blocks: b.difference(&a).cloned().collect(),
    })
}

/// A pair `(x, y)` where `x` is a proper prefix of `y`, if any.
pub fn prefix_violation(words: &[Word]) -> Option<(Word, Word)> {
    let mut v: Vec<&Word> = words.iter().collect();
    v.sort();
    v.dedup();
    v.windows(2).find(|p| p[1].starts_with(p[0])).map(|p| (p[0].clone(), p[1].clone()))
}

/// A pair `(x, y)` where `x` is a proper suffix of `y`, if any.
pub fn suffix_violation(words: &[Word]) -> Option<(Word, Word)> {
    let rev: Vec<Word> = words.iter().map(|w| Word::new(w.iter().rev().copied().collect())).collect();
    prefix_violation(&rev).map(|(a, b)| {
        let back = |w: Word| Word::new(w.iter().rev().copied().collect());
        (back(a), back(b))
    })
}

/// Sardinas–Patterson test; on failure returns a dangling suffix that is itself a code word.
pub fn unique_decodability(words: &[Word]) -> Result<(), Word> {
    let code: BTreeSet<&[u32]> = words.iter().map(|w| w.digits()).collect();
    let quotients = |a: &[u32], b: &[u32]| -> Option<Word> {
        (a.len() < b.len() && b.starts_with(a)).then(|| Word::from(&b[a.len()..]))
    };
    let mut seen: BTreeSet<Word> = BTreeSet::new();
    let mut frontier: Vec<Word> = Vec::new();
    for a in &code {
        for b in &code {
            if let Some(s) = quotients(a, b) {
                if seen.insert(s.clone()) {
                    frontier.push(s);
                }
            }
        }
    }
    while let Some(s) = frontier.pop() {
        if code.contains(s.digits()) {
            return Err(s);
        }
        for c in &code {
            for t in [quotients(&s, c), quotients(c, &s)].into_iter().flatten() {
                if seen.insert(t.clone()) {
                    frontier.push(t);
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests;
