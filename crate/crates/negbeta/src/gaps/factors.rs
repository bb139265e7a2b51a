//! Factor tests against a listed code.

use alloc::collections::BTreeSet;
use alloc::vec;

use crate::expansion::Word;

/// Listed code words indexed for overhang decompositions.
#[derive(Clone, Debug)]
pub(crate) struct FactorIndex {
    words: BTreeSet<Word>,
    reversed: BTreeSet<Word>,
    /// Every suffix of every code word, cut to `window` digits.
    windows: BTreeSet<Word>,
    window: usize,
}

impl FactorIndex {
    /// Factors longer than `window` are tested only through decompositions.
    pub(crate) fn new(words: &[Word], window: usize) -> Self {
        let mut windows = BTreeSet::new();
        for c in words {
            for s in 0..c.len() {
                windows.insert(Word::from(&c[s..c.len().min(s + window)]));
            }
        }
        Self {
            words: words.iter().cloned().collect(),
            reversed: words.iter().map(|w| reverse(w)).collect(),
            windows,
            window,
        }
    }

    fn starts_a_word(set: &BTreeSet<Word>, x: &[u32]) -> bool {
        set.range::<[u32], _>((core::ops::Bound::Included(x), core::ops::Bound::Unbounded))
            .next()
            .is_some_and(|c| c.starts_with(x))
    }

    fn inside_a_word(&self, x: &[u32]) -> bool {
        x.len() <= self.window && Self::starts_a_word(&self.windows, x)
    }

    /// Whether `x` is `s·c₁⋯c_k·p` with `s` a suffix and `p` a prefix of code words, or lies
    /// inside one code word.
    pub(crate) fn is_factor(&self, x: &[u32]) -> bool {
        let n = x.len();
        if n == 0 || self.inside_a_word(x) {
            return true;
        }
        let mut reach = vec![false; n + 1];
        reach[0] = true;
        for (i, r) in reach.iter_mut().enumerate().skip(1) {
            *r = Self::starts_a_word(&self.reversed, &reverse(&x[..i]));
        }
        for s in 0..=n {
            if !reach[s] {
                continue;
            }
            if s == n || Self::starts_a_word(&self.words, &x[s..]) {
                return true;
            }
            for e in s + 1..=n {
                if self.words.contains(&x[s..e]) {
                    reach[e] = true;
                }
            }
        }
        false
    }
}

/// Whether `x` splits into code words.
pub(crate) fn in_monoid(x: &[u32], contains: impl Fn(&[u32]) -> bool) -> bool {
    let n = x.len();
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for s in 0..n {
        if !reach[s] {
            continue;
        }
        for e in s + 1..=n {
            if !reach[e] && contains(&x[s..e]) {
                reach[e] = true;
            }
        }
    }
    reach[n]
}

pub(crate) fn reverse(w: &[u32]) -> Word {
    Word::new(w.iter().rev().copied().collect())
}

/// Distinct factors of length `len` of the given words.
pub(crate) fn windows_of<'a>(words: impl IntoIterator<Item = &'a Word>, len: usize) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    if len == 0 {
        out.insert(Word::empty());
        return out;
    }
    for w in words {
        if w.len() >= len {
            for x in w.windows(len) {
                out.insert(Word::from(x));
            }
        }
    }
    out
}
