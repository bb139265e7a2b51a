//! Return positions of `d₁` at even indices and the overlaps they start.

use alloc::vec::Vec;

use crate::expansion::{DigitSeq, Word};

use super::CodeError;

/// Length of the agreement `d_{2n-1+m} = d_m`, exact or cut off by the scan horizon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Overlap {
    Exact(usize),
    /// The agreement reached the horizon; every comparison with lengths below it
    /// behaves as if the overlap were infinite.
    AtLeast(usize),
}

impl Overlap {
    /// Value used in length comparisons.
    pub fn value(self) -> usize {
        match self {
            Overlap::Exact(p) | Overlap::AtLeast(p) => p,
        }
    }
}

/// A pair `(n, p)` with `d_{2n} = d₁` and block `d₁…d_{2n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructurePair {
    pub half: usize,
    pub overlap: Overlap,
    pub block: Word,
}

impl StructurePair {
    pub fn block_len(&self) -> usize {
        2 * self.half - 1
    }

    pub fn p(&self) -> usize {
        self.overlap.value()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureParams {
    pub pairs: Vec<StructurePair>,
    pub eventually_periodic: bool,
    /// Largest `2n` scanned.
    pub cap: usize,
}

impl StructureParams {
    /// No index `n` has `d_{2n} = d₁`: the plain case with a single-family Γ.
    pub fn is_simple(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Scans `d` for pairs with `2n ≤ cap`; overlaps are measured up to `cap + 1`.
///
/// Successive pairs satisfy `2nᵢ₊₁ ≥ 2nᵢ + pᵢ`, so `d` splits as
/// `B₁·d₁…d_{p₁}·d_{2n₁+p₁}…d_{2n₂−1}·d₁…d_{p₂}…`.
pub fn structure_params(d: &DigitSeq, cap: usize) -> Result<StructureParams, CodeError> {
    let horizon = cap + 1;
    let needed = 2 * cap + 2;
    if !d.knows(needed) {
        return Err(CodeError::InsufficientDigits { needed, known: d.known_len().unwrap_or(0) });
    }
    let at = |i: usize| d.digit(i - 1).expect("checked length");
    let d1 = at(1);
    let mut pairs = Vec::new();
    // A return inside the overlap of the previous pair is not a new pair.
    let mut floor = 0;
    for n in 1..=cap / 2 {
        if 2 * n < floor || at(2 * n) != d1 {
            continue;
        }
        let start = 2 * n - 1;
        let mut p = 0;
        while p < horizon && at(start + p + 1) == at(p + 1) {
            p += 1;
        }
        let overlap = if p == horizon { Overlap::AtLeast(p) } else { Overlap::Exact(p) };
        let block = d.prefix(start).expect("checked length");
        floor = 2 * n + p;
        pairs.push(StructurePair { half: n, overlap, block });
    }
    Ok(StructureParams { pairs, eventually_periodic: d.as_periodic().is_some(), cap })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::EventuallyPeriodic;

    fn seq(pre: &str, per: &str) -> DigitSeq {
        let pre = if pre.is_empty() { Word::empty() } else { pre.parse().unwrap() };
        DigitSeq::Periodic(EventuallyPeriodic::new(pre, per.parse().unwrap()).unwrap())
    }

    #[test]
    fn first_example_pairs() {
        let s = structure_params(&seq("2012121201200", "21"), 20).unwrap();
        let firsts: Vec<_> = s.pairs.iter().take(3).map(|p| (p.half, p.overlap)).collect();
        assert_eq!(firsts, [(2, Overlap::Exact(1)), (3, Overlap::Exact(1)), (4, Overlap::Exact(4))]);
        let blocks: Vec<_> = s.pairs.iter().take(3).map(|p| p.block.render()).collect();
        assert_eq!(blocks, ["201", "20121", "2012121"]);
        for pr in &s.pairs {
            let (n, p) = (pr.half, pr.p());
            let dd = |i: usize| i64::from(s_digit(i));
            let sign = if (2 * n + p) % 2 == 0 { 1 } else { -1 };
            assert!(sign * (dd(2 * n + p) - dd(p + 1)) < 0);
        }
    }

    fn s_digit(i: usize) -> u32 {
        seq("2012121201200", "21").digit(i - 1).unwrap()
    }

    #[test]
    fn simple_cases() {
        assert!(structure_params(&seq("1", "0"), 30).unwrap().is_simple());
        assert!(structure_params(&seq("", "10"), 30).unwrap().is_simple());
    }

    #[test]
    fn returns_inside_an_overlap_are_skipped() {
        // d₁₀d₁₁d₁₂ = d₁d₂d₃ and d₁₂ = d₁ again: n = 6 lies inside the overlap of n = 5.
        let d = DigitSeq::Prefix("101000000101100000101100001001001000001010".parse().unwrap());
        let s = structure_params(&d, 20).unwrap();
        let found: Vec<_> = s.pairs.iter().map(|p| (p.half, p.p())).collect();
        assert_eq!(found[0], (5, 3));
        assert!(found.iter().all(|&(n, _)| n != 6));
        for w in s.pairs.windows(2) {
            assert!(2 * w[1].half >= 2 * w[0].half + w[0].p());
        }
    }

    #[test]
    fn short_prefix_is_rejected() {
        let d = DigitSeq::Prefix("1001".parse().unwrap());
        assert!(matches!(structure_params(&d, 10), Err(CodeError::InsufficientDigits { .. })));
    }
}
