//! Word families built from the boundary sequence: Γ₀, Δ₀⁰, chains of blocks,
//! Γ, Γ₁′, the Δ classes and 𝔠.
//!
//! Every family carries an exact census up to the construction length computed
//! by dynamic programming over block chains; words are listed only up to a
//! length chosen to respect a word budget.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::expansion::{DigitSeq, Word};
use crate::order::Admissibility;

use super::structure::{structure_params, StructureParams};
use super::CodeError;

/// Limits on word listing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ListCaps {
    /// Longest words to list.
    pub list_len: usize,
    /// Largest number of words a listing may hold.
    pub max_words: usize,
}

impl Default for ListCaps {
    fn default() -> Self {
        Self { list_len: 40, max_words: 200_000 }
    }
}

/// A family of words: exact census up to the construction length, words up to `listed_len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub census: Vec<u128>,
    /// Sorted by length, then lexicographically.
    pub words: Vec<Word>,
    pub listed_len: usize,
}

impl Family {

    pub fn max_len(&self) -> usize {
        self.census.len() - 1
    }

    pub fn contains(&self, w: &[u32]) -> bool {
        self.words.binary_search_by(|x| len_lex(x, w)).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.census.iter().all(|&c| c == 0)
    }
}

pub(crate) fn len_lex(a: &[u32], b: &[u32]) -> core::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

pub(crate) fn sorted(mut words: Vec<Word>) -> Vec<Word> {
    words.sort_by(|a, b| len_lex(a, b));
    words.dedup();
    words
}

pub(crate) fn census_of(words: &[Word], max_len: usize) -> Vec<u128> {
    let mut c = vec![0u128; max_len + 1];
    for w in words {
        if w.len() <= max_len {
            c[w.len()] += 1;
        }
    }
    c
}

/// Largest `m ≤ cap` whose cumulative census stays within `budget`.
fn listing_len(census: &[u128], caps: ListCaps) -> usize {
    let mut total = 0u128;
    let mut m = 0;
    for (n, &c) in census.iter().enumerate().take(caps.list_len + 1) {
        total += c;
        if total > caps.max_words as u128 {
            break;
        }
        m = n;
    }
    m
}

/// Power series `Σ_{k≥1} A^k` truncated at `n`.
pub(crate) fn plus_closure(a: &[u128]) -> Vec<u128> {
    let n = a.len() - 1;
    let mut s = vec![0u128; n + 1];
    // s = a + a·s
    for m in 1..=n {
        let mut acc = a[m];
        for k in 1..m {
            acc += a[k] * s[m - k];
        }
        s[m] = acc;
    }
    s
}

pub(crate) fn convolve(a: &[u128], b: &[u128]) -> Vec<u128> {
    let n = a.len().min(b.len()) - 1;
    let mut c = vec![0u128; n + 1];
    for i in 0..=n {
        if a[i] == 0 {
            continue;
        }
        for j in 0..=n - i {
            c[i + j] += a[i] * b[j];
        }
    }
    c
}

/// The families attached to one boundary sequence, constructed up to length `max_len`.
#[derive(Clone, Debug)]
pub struct CodeFamilies {
    d: Word,
    params: StructureParams,
    max_len: usize,
    gamma0: Vec<Word>,
    base_lens: Vec<usize>,
    j_class: Vec<usize>,
}

type Pred<'a> = &'a dyn Fn(usize) -> bool;
type Link<'a> = &'a dyn Fn(usize, usize) -> bool;

impl CodeFamilies {
    pub fn new(d: &DigitSeq, max_len: usize) -> Result<Self, CodeError> {
        let max_len = max_len.max(1);
        let params = structure_params(d, max_len + 2)?;
        let d_prefix = d.prefix(2 * (max_len + 2) + 2).expect("length checked by the scan");
        let mut fam = Self { d: d_prefix, params, max_len, gamma0: Vec::new(), base_lens: Vec::new(), j_class: Vec::new() };
        fam.gamma0 = fam.build_gamma0();
        fam.base_lens = fam.build_base_lens();
        fam.j_class = fam.build_j_classes();
        Ok(fam)
    }

    pub fn params(&self) -> &StructureParams {
        &self.params
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// `d_i`, 1-based.
    fn dd(&self, i: usize) -> i64 {
        i64::from(self.d[i - 1])
    }

    fn d1(&self) -> u32 {
        self.d[0]
    }

    fn nb(&self) -> usize {
        self.params.pairs.len()
    }

    fn blen(&self, b: usize) -> usize {
        self.params.pairs[b].block_len()
    }

    fn bp(&self, b: usize) -> usize {
        self.params.pairs[b].p()
    }

    /// `(n_i, p_i)` with the leading `(0, 0)`.
    fn full_pairs(&self) -> Vec<(usize, usize)> {
        let mut v = vec![(0, 0)];
        v.extend(self.params.pairs.iter().map(|p| (p.half, p.p())));
        v
    }

    fn in_gamma0(&self, n: usize, j: u32) -> bool {
        let j = i64::from(j);
        if j >= self.dd(1) {
            return false;
        }
        let sign = if (n + 1).is_multiple_of(2) { 1 } else { -1 };
        if sign * (self.dd(n + 1) - j) >= 0 {
            return false;
        }
        if n == 0 {
            return true;
        }
        let full = self.full_pairs();
        for (i, &(ni, pi)) in full.iter().enumerate() {
            let next = full.get(i + 1).map_or(usize::MAX, |&(m, _)| 2 * m - 1);
            if 2 * ni + pi <= n && n <= next {
                return true;
            }
            if i >= 1 && n + 1 == 2 * ni + pi {
                let s = if pi % 2 == 0 { 1 } else { -1 };
                let (hi, lo) = (s * self.dd(pi + 1), s * self.dd(2 * ni + pi));
                if hi > s * j && s * j > lo {
                    return true;
                }
            }
        }
        false
    }

    fn build_gamma0(&self) -> Vec<Word> {
        let mut out = Vec::new();
        for n in 0..self.max_len {
            for j in 0..self.d1() {
                if self.in_gamma0(n, j) {
                    out.push(Word::from(&self.d[..n]).concat(&[j]));
                }
            }
        }
        sorted(out)
    }

    fn build_base_lens(&self) -> Vec<usize> {
        let full = self.full_pairs();
        (1..=self.max_len.div_ceil(2))
            .map(|k| 2 * k - 1)
            .filter(|&len| {
                full.iter().enumerate().any(|(i, &(ni, pi))| {
                    let next = full.get(i + 1).map_or(usize::MAX, |&(m, _)| 2 * m - 1);
                    2 * ni + pi <= len && len < next
                })
            })
            .collect()
    }

    fn build_j_classes(&self) -> Vec<usize> {
        let ns: Vec<usize> = self.params.pairs.iter().map(|p| p.half).collect();
        self.params
            .pairs
            .iter()
            .map(|pr| {
                let p = pr.p();
                if ns.is_empty() || p < 2 * ns[0] - 1 {
                    return 0;
                }
                (0..ns.len())
                    .find(|&i| {
                        let hi = ns.get(i + 1).map_or(usize::MAX, |&m| 2 * m - 1);
                        2 * ns[i] - 1 <= p && p < hi
                    })
                    .map_or(ns.len(), |i| i + 1)
            })
            .collect()
    }

    /// Γ₀, all words up to the construction length.
    pub fn gamma0(&self) -> &[Word] {
        &self.gamma0
    }

    /// Δ₀⁰: the odd prefixes of `d` selected by the pair ranges.
    pub fn delta0_base(&self) -> Vec<Word> {
        self.base_lens.iter().map(|&n| Word::from(&self.d[..n])).collect()
    }

    /// The class `i` with `p ∈ J(i)` for each block.
    pub fn j_classes(&self) -> &[usize] {
        &self.j_class
    }

    fn block_word(&self, chain: &[usize]) -> Word {
        let mut w = Word::empty();
        for &b in chain {
            w = w.concat(&self.d[..self.blen(b)]);
        }
        w
    }

    fn strict(&self) -> impl Fn(usize, usize) -> bool + '_ {
        move |a, b| self.bp(a) < self.blen(b)
    }

    fn loose(&self) -> impl Fn(usize, usize) -> bool + '_ {
        move |a, b| self.bp(a) <= self.blen(b)
    }

    /// `counts[b][n]`: chains ending in `b` with total length `n`.
    fn chain_counts(&self, max: usize, start: Pred, allowed: Pred, link: Link) -> Vec<Vec<u128>> {
        let nb = self.nb();
        let mut counts = vec![vec![0u128; max + 1]; nb];
        for b in 0..nb {
            if start(b) && allowed(b) && self.blen(b) <= max {
                counts[b][self.blen(b)] += 1;
            }
        }
        for n in 1..=max {
            for b in 0..nb {
                let c = counts[b][n];
                if c == 0 {
                    continue;
                }
                for nx in 0..nb {
                    let m = n + self.blen(nx);
                    if m <= max && allowed(nx) && link(b, nx) {
                        counts[nx][m] += c;
                    }
                }
            }
        }
        counts
    }

    /// All chains of total length `≤ max`, as block index lists.
    fn chains(&self, max: usize, start: Pred, allowed: Pred, link: Link) -> Vec<Vec<usize>> {
        fn rec(f: &CodeFamilies, seq: &mut Vec<usize>, len: usize, max: usize, allowed: Pred, link: Link, out: &mut Vec<Vec<usize>>) {
            out.push(seq.clone());
            let last = *seq.last().expect("nonempty chain");
            for nx in 0..f.nb() {
                if len + f.blen(nx) <= max && allowed(nx) && link(last, nx) {
                    seq.push(nx);
                    rec(f, seq, len + f.blen(nx), max, allowed, link, out);
                    seq.pop();
                }
            }
        }
        let mut out = Vec::new();
        for b in 0..self.nb() {
            if start(b) && allowed(b) && self.blen(b) <= max {
                rec(self, &mut vec![b], self.blen(b), max, allowed, link, &mut out);
            }
        }
        out
    }

    /// Census of `chain · tail` over strict chains, for tails admitted after a given last block.
    fn chain_tail_census(&self, tails: &[usize], admit: &dyn Fn(usize, usize) -> bool) -> Vec<u128> {
        let max = self.max_len;
        let link = self.strict();
        let counts = self.chain_counts(max, &|_| true, &|_| true, &link);
        let mut c = vec![0u128; max + 1];
        for (b, row) in counts.iter().enumerate() {
            for (n, &k) in row.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                for &t in tails {
                    if n + t <= max && admit(b, t) {
                        c[n + t] += k;
                    }
                }
            }
        }
        c
    }

    fn chain_tail_words(&self, max: usize, tails: &[Word], admit: &dyn Fn(usize, usize) -> bool) -> Vec<Word> {
        let link = self.strict();
        let mut out = Vec::new();
        for ch in self.chains(max, &|_| true, &|_| true, &link) {
            let head = self.block_word(&ch);
            let last = *ch.last().expect("nonempty chain");
            for t in tails {
                if head.len() + t.len() <= max && admit(last, t.len()) {
                    out.push(head.concat(t));
                }
            }
        }
        out
    }

    fn listed(&self, census: Vec<u128>, caps: ListCaps, list: impl FnOnce(usize) -> Vec<Word>) -> Family {
        let m = listing_len(&census, caps);
        let words = sorted(list(m).into_iter().filter(|w| w.len() <= m).collect());
        Family { census, words, listed_len: m }
    }

    /// Δ₀ = Δ₀⁰ ∪ Δ₀¹ (all odd prefixes of `d` when there are no pairs).
    pub fn delta0(&self, caps: ListCaps) -> Family {
        let admit = |b: usize, t: usize| t > self.bp(b);
        let mut census = self.chain_tail_census(&self.base_lens, &admit);
        for &n in &self.base_lens {
            census[n] += 1;
        }
        self.listed(census, caps, |m| {
            let base = self.delta0_base();
            let mut words = self.chain_tail_words(m, &base, &admit);
            words.extend(base);
            words
        })
    }

    fn gamma0_lens(&self) -> Vec<usize> {
        self.gamma0.iter().map(|w| w.len()).collect()
    }

    /// Γ₁ = chain · y with `y ∈ Γ₀` and `l(y) ≥ p_last + 2`.
    pub fn gamma1(&self, caps: ListCaps) -> Family {
        let admit = |b: usize, t: usize| t >= self.bp(b) + 2;
        let census = self.chain_tail_census(&self.gamma0_lens(), &admit);
        self.listed(census, caps, |m| self.chain_tail_words(m, &self.gamma0, &admit))
    }

    /// Γ₁′: boundary-length words `[chain] · y` with `l(y) = 2n_t + p_t`; provisional.
    pub fn gamma1_prime(&self, caps: ListCaps) -> Family {
        let boundary = |t: usize| -> Vec<usize> {
            (0..self.nb()).filter(|&s| 2 * self.params.pairs[s].half + self.bp(s) == t).collect()
        };
        let admit = |b: usize, t: usize| boundary(t).iter().any(|&s| self.bp(b) < self.blen(s));
        let mut census = self.chain_tail_census(&self.gamma0_lens(), &admit);
        let bare: Vec<Word> = self.gamma0.iter().filter(|y| !boundary(y.len()).is_empty()).cloned().collect();
        for y in &bare {
            census[y.len()] += 1;
        }
        self.listed(census, caps, |m| {
            let mut words = self.chain_tail_words(m, &self.gamma0, &admit);
            words.extend(bare);
            words
        })
    }

    /// Γ = Γ₀ ∪ Γ₁ ∪ Γ₁′.
    ///
    /// Γ₁′ is contained in Γ₀ ∪ Γ₁, so the census is that of Γ₀ plus Γ₁.
    pub fn gamma(&self, caps: ListCaps) -> Family {
        let g1 = self.gamma1(ListCaps { list_len: 0, max_words: 0 });
        let mut census = census_of(&self.gamma0, self.max_len);
        for (c, x) in census.iter_mut().zip(&g1.census) {
            *c += x;
        }
        self.listed(census, caps, |m| {
            let link_caps = ListCaps { list_len: m, max_words: usize::MAX };
            let mut words = self.gamma1(link_caps).words;
            words.extend(self.gamma1_prime(link_caps).words);
            words.extend(self.gamma0.iter().cloned());
            words
        })
    }

    /// 𝔠 = Δ₀⁺·Γ(l ≥ 2) ∪ Γ.
    pub fn cfrak(&self, caps: ListCaps) -> Family {
        let all = ListCaps { list_len: 0, max_words: 0 };
        let gamma = self.gamma(all).census;
        let delta = self.delta0(all).census;
        let mut long = gamma.clone();
        long[0] = 0;
        long[1] = 0;
        let tail = convolve(&plus_closure(&delta), &long);
        let census: Vec<u128> = gamma.iter().zip(&tail).map(|(a, b)| a + b).collect();
        self.listed(census, caps, |m| {
            let full = ListCaps { list_len: m, max_words: usize::MAX };
            let gamma = self.gamma(full).words;
            let delta = self.delta0(full).words;
            let mut words = gamma.clone();
            let mut prefixes = vec![Word::empty()];
            while let Some(x) = prefixes.pop() {
                for y in gamma.iter().filter(|y| y.len() >= 2) {
                    if !x.is_empty() && x.len() + y.len() <= m {
                        words.push(x.concat(y));
                    }
                }
                for z in &delta {
                    if x.len() + z.len() + 2 <= m {
                        prefixes.push(x.concat(z));
                    }
                }
            }
            words
        })
    }

    /// Indices `k ≥ 1` whose Δ_k has words up to the construction length.
    pub fn delta_indices(&self) -> Vec<usize> {
        let mut ks: BTreeSet<usize> = BTreeSet::new();
        for k in 1..=self.nb() + 1 {
            if !self.delta(k, ListCaps { list_len: 0, max_words: 0 }).is_empty() {
                ks.insert(k);
            }
        }
        ks.into_iter().collect()
    }

    /// Δ_k for `k ≥ 1`: chains ending in a block of class `k-1`, earlier blocks of higher class.
    pub fn delta(&self, k: usize, caps: ListCaps) -> Family {
        assert!(k >= 1, "Δ_0 is built by delta0");
        let i = k - 1;
        let max = self.max_len;
        let j = &self.j_class;
        let link = self.loose();
        let high = |b: usize| j[b] > i;
        let mut census = vec![0u128; max + 1];
        for f in 0..self.nb() {
            let closes = |last: usize| j[last] == i && self.bp(last) < self.blen(f);
            if closes(f) && self.blen(f) <= max {
                census[self.blen(f)] += 1;
            }
            if !high(f) {
                continue;
            }
            let counts = self.chain_counts(max, &|b| b == f, &high, &link);
            for (prev, row) in counts.iter().enumerate() {
                for (n, &c) in row.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for last in 0..self.nb() {
                        let m = n + self.blen(last);
                        if m <= max && closes(last) && link(prev, last) {
                            census[m] += c;
                        }
                    }
                }
            }
        }
        self.listed(census, caps, |m| {
            let mut words = Vec::new();
            for f in 0..self.nb() {
                let closes = |last: usize| j[last] == i && self.bp(last) < self.blen(f);
                if closes(f) {
                    words.push(self.block_word(&[f]));
                }
                if !high(f) {
                    continue;
                }
                for ch in self.chains(m, &|b| b == f, &high, &link) {
                    let prev = *ch.last().expect("nonempty chain");
                    let head = self.block_word(&ch);
                    for last in 0..self.nb() {
                        if head.len() + self.blen(last) <= m && closes(last) && link(prev, last) {
                            words.push(head.concat(&self.d[..self.blen(last)]));
                        }
                    }
                }
            }
            words
        })
    }

    /// Δ₀ in its first form, `x·y ∈ L_β` with `x ∈ {ε} ∪ (E* ∩ L_β)` and `y ∈ Δ₀⁰`, up to length `m`.
    pub fn delta0_via_blocks(&self, adm: &Admissibility, m: usize) -> Vec<Word> {
        let blocks: Vec<Word> = (0..self.nb()).map(|b| self.block_word(&[b])).collect();
        let base = self.delta0_base();
        let mut out = Vec::new();
        let mut stack = vec![Word::empty()];
        while let Some(x) = stack.pop() {
            if !x.is_empty() && !adm.is_admissible(&x).unwrap_or(false) {
                continue;
            }
            for y in &base {
                if x.len() + y.len() <= m {
                    let w = x.concat(y);
                    if adm.is_admissible(&w).unwrap_or(false) {
                        out.push(w);
                    }
                }
            }
            for b in &blocks {
                if x.len() + b.len() < m {
                    stack.push(x.concat(b));
                }
            }
        }
        sorted(out)
    }
}
