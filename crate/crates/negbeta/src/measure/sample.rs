//! Concatenations of independent code words drawn with probability `ρ^l(x)`.

use alloc::vec::Vec;

use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::codes::CodeEnumeration;

use super::{MeasureError, Rho};

/// A sampled digit stream with the positions where code words start.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChampernowneSample {
    digits: Vec<u32>,
    starts: Vec<bool>,
    pub words_drawn: usize,
    pub seed: u64,
}

impl ChampernowneSample {
    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    fn windows(&self, word: &[u32]) -> usize {
        (self.digits.len() + 1).saturating_sub(word.len())
    }

    /// Occurrences of `word` at any position.
    pub fn occurrences(&self, word: &[u32]) -> usize {
        if word.is_empty() {
            return self.windows(word);
        }
        self.digits.windows(word.len()).filter(|x| *x == word).count()
    }

    /// Occurrences of `word` starting where a code word starts.
    pub fn aligned_occurrences(&self, word: &[u32]) -> usize {
        (0..self.windows(word)).filter(|&i| self.starts[i] && self.digits[i..].starts_with(word)).count()
    }

    pub fn frequency(&self, word: &[u32]) -> f64 {
        ratio(self.occurrences(word), self.windows(word))
    }

    pub fn aligned_frequency(&self, word: &[u32]) -> f64 {
        ratio(self.aligned_occurrences(word), self.windows(word))
    }
}

fn ratio(a: usize, b: usize) -> f64 {
    if b == 0 {
        0.0
    } else {
        a as f64 / b as f64
    }
}

/// Draws listed code words until at least `length` digits, then cuts to `length`.
///
/// Weights are `ρ^l(x)` renormalized over the listed words.
pub fn sample_champernowne(code: &CodeEnumeration, rho: &Rho, length: usize, seed: u64) -> Result<ChampernowneSample, MeasureError> {
    if code.words.is_empty() {
        return Err(MeasureError::EmptyCode);
    }
    let r = rho.to_f64();
    let weights: Vec<f64> = code.words.iter().map(|w| libm::pow(r, w.len() as f64)).collect();
    let dist = WeightedIndex::new(&weights).map_err(|_| MeasureError::EmptyCode)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut digits = Vec::with_capacity(length + 64);
    let mut starts = Vec::with_capacity(length + 64);
    let mut words_drawn = 0;
    while digits.len() < length {
        let w = &code.words[dist.sample(&mut rng)];
        starts.push(true);
        starts.extend(core::iter::repeat_n(false, w.len() - 1));
        digits.extend_from_slice(w);
        words_drawn += 1;
    }
    digits.truncate(length);
    starts.truncate(length);
    Ok(ChampernowneSample { digits, starts, words_drawn, seed })
}
