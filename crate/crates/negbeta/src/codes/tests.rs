use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use proptest::prelude::*;

use super::*;
use crate::expansion::{EventuallyPeriodic, NegativeBase};
use crate::numeric::{Base, CertifiedReal};

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn seq(pre: &str, per: &str) -> DigitSeq {
    let pre = if pre.is_empty() { Word::empty() } else { w(pre) };
    DigitSeq::Periodic(EventuallyPeriodic::new(pre, w(per)).unwrap())
}

fn strs(words: &[Word]) -> Vec<String> {
    words.iter().map(|x| x.render()).collect()
}

fn all(len: usize) -> ListCaps {
    ListCaps { list_len: len, max_words: usize::MAX }
}

fn decimal_d(s: &str) -> DigitSeq {
    let beta = CertifiedReal::parse_decimal(s, 128).unwrap();
    let nb = NegativeBase::new(Base::Decimal { beta, bits: 128 }).unwrap();
    nb.boundary_sequences().structural().clone()
}

/// First-return census of the tight-suffix automaton: words leaving state 0 and
/// coming back to it only at the end.
fn first_return_census(d: &DigitSeq, n: usize) -> Vec<u128> {
    let dg = |i: usize| d.digit(i).unwrap();
    let tight = |k: usize| -> Vec<usize> {
        let mut v: Vec<usize> = (1..=k).rev().filter(|&t| (0..t).all(|i| dg(k - t + i) == dg(i))).collect();
        v.push(0);
        v
    };
    let step = |k: usize, a: u32| -> Option<usize> {
        let mut best = None;
        for t in tight(k) {
            let b = dg(t);
            if a == b {
                best = best.max(Some(t + 1));
            } else {
                let up = if (t + 1) % 2 == 0 { a > b } else { a < b };
                if !up {
                    return None;
                }
            }
        }
        Some(best.unwrap_or(0))
    };
    let mut first = vec![0u128; n + 1];
    let mut cur: BTreeMap<usize, u128> = BTreeMap::from([(0, 1)]);
    for len in 1..=n {
        let mut next = BTreeMap::new();
        for (&k, &c) in &cur {
            for a in 0..=dg(0) {
                match step(k, a) {
                    None => {}
                    Some(0) => first[len] += c,
                    Some(k2) => *next.entry(k2).or_insert(0) += c,
                }
            }
        }
        cur = next;
    }
    first
}

#[test]
fn first_example_families() {
    let fam = CodeFamilies::new(&seq("2012121201200", "21"), 30).unwrap();
    assert_eq!(strs(&fam.delta0(all(30)).words), ["2"]);
    let g0: Vec<_> = strs(fam.gamma0()).into_iter().filter(|s| s.len() <= 4).collect();
    assert_eq!(g0, ["0", "1", "21", "200"]);
    let d2 = fam.delta(2, all(30));
    assert_eq!(strs(&d2.words), ["2012121"]);
    let d1 = fam.delta(1, all(30));
    assert!(d1.contains(&w("201")) && d1.contains(&w("20121")));
    for k in 0..=3 {
        let x = w("2012121").repeat(k).concat(&w("20121"));
        assert!(d1.contains(&x), "{x}");
    }
    assert_eq!(fam.delta_indices(), [1, 2]);
}

#[test]
fn second_example_families() {
    let fam = CodeFamilies::new(&seq("2012121201200", "1"), 24).unwrap();
    let d0 = fam.delta0(all(24));
    assert!(d0.contains(&w("2")));
    let base = fam.delta0_base();
    for k in 0..=3 {
        let x = w("2012121201200").concat(&w("11").repeat(k));
        assert!(d0.contains(&x) && base.contains(&x), "{x}");
    }
    let g0 = fam.gamma0();
    for s in ["0", "1", "21", "200"] {
        assert!(g0.contains(&w(s)));
    }
    for k in 0..=2 {
        let x = w("2012121201200").concat(&w("11").repeat(k)).concat(&w("10"));
        assert!(g0.contains(&x), "{x}");
    }
}

#[test]
fn golden_and_minus_two_families() {
    let g = CodeFamilies::new(&seq("1", "0"), 12).unwrap();
    assert!(g.params().is_simple());
    assert_eq!(strs(g.gamma0()), ["0"]);
    assert_eq!(strs(&g.delta0(all(12)).words), ["1", "100", "10000", "1000000", "100000000", "10000000000"]);
    let m2 = CodeFamilies::new(&seq("", "10"), 9).unwrap();
    assert_eq!(strs(m2.gamma0()), ["0", "100", "10100", "1010100", "101010100"]);
}

fn dp_matches_listing(d: &DigitSeq, len: usize) {
    let fam = CodeFamilies::new(d, len).unwrap();
    let mut fams = vec![("Δ₀", fam.delta0(all(len))), ("Γ", fam.gamma(all(len))), ("𝔠", fam.cfrak(all(len)))];
    for k in fam.delta_indices() {
        fams.push(("Δ_k", fam.delta(k, all(len))));
    }
    for (name, f) in fams {
        assert_eq!(f.listed_len, len);
        assert_eq!(families::census_of(&f.words, len), f.census, "{name} for {d}");
    }
}

#[test]
fn census_by_dp_equals_listing() {
    dp_matches_listing(&seq("2012121201200", "21"), 22);
    dp_matches_listing(&seq("2012121201200", "1"), 22);
    dp_matches_listing(&seq("", "10"), 18);
    for s in ["-2.3", "-2.7", "-3.5", "-1.9", "-2.05"] {
        dp_matches_listing(&decimal_d(s), 16);
    }
}

#[test]
fn cfrak_is_the_first_return_code() {
    for d in [seq("2012121201200", "21"), seq("2012121201200", "1"), seq("", "10"), decimal_d("-2.3"), decimal_d("-3.7")] {
        let fam = CodeFamilies::new(&d, 20).unwrap();
        let none = ListCaps { list_len: 0, max_words: 0 };
        assert_eq!(fam.cfrak(none).census, first_return_census(&d, 20), "{d}");
    }
}

#[test]
fn budget_limits_listing_but_not_census() {
    let fam = CodeFamilies::new(&seq("", "10"), 30).unwrap();
    let c = fam.cfrak(ListCaps { list_len: 30, max_words: 1000 });
    assert!(c.listed_len < 30);
    assert_eq!(c.census[30], first_return_census(&seq("", "10"), 30)[30]);
    assert!(c.words.len() <= 1000);
}

#[test]
fn code_properties() {
    for d in [seq("2012121201200", "21"), seq("2012121201200", "1"), seq("", "10"), decimal_d("-2.6")] {
        let fam = CodeFamilies::new(&d, 14).unwrap();
        let c = fam.cfrak(all(14)).words;
        assert_eq!(prefix_violation(&c), None, "{d}");
        assert_eq!(unique_decodability(&c), Ok(()));
        let d0 = fam.delta0(all(14)).words;
        assert_eq!(unique_decodability(&d0), Ok(()), "{d}");
        let adm = Admissibility::from_lower(d.clone());
        for x in c.iter().chain(&d0) {
            assert!(adm.is_admissible(x).unwrap(), "{x}");
        }
    }
}

#[test]
fn property_checks_find_violations() {
    let words = vec![w("1"), w("10"), w("0")];
    assert_eq!(prefix_violation(&words), Some((w("1"), w("10"))));
    assert!(unique_decodability(&words).is_err());
    assert_eq!(suffix_violation(&[w("01"), w("1")]), Some((w("1"), w("01"))));
    assert_eq!(unique_decodability(&[w("1"), w("00")]), Ok(()));
}

fn nb_decimal(s: &str) -> NegativeBase {
    let beta = CertifiedReal::parse_decimal(s, 128).unwrap();
    NegativeBase::new(Base::Decimal { beta, bits: 128 }).unwrap()
}

#[test]
fn band_codes_are_images_of_delta0() {
    let nb = nb_decimal("-1.3");
    let bounds = nb.boundary_sequences();
    let report = classify_regime(&nb, &bounds).unwrap();
    let code = build_code(&bounds, &report, 40, ListCaps::default()).unwrap();
    assert_eq!(code.kind, CodeKind::DeltaN(1));
    assert_eq!(unique_decodability(&code.words), Ok(()));
    let adm = Admissibility::new(&bounds, crate::order::ShiftKind::Plain);
    for x in code.words_up_to(14) {
        assert!(adm.is_admissible(x).unwrap(), "{x}");
    }
    let f = 1.3f64;
    let kraft: f64 = code.words.iter().map(|x| f.powi(-(x.len() as i32))).sum();
    assert!((kraft - 1.0).abs() < 1e-3, "{kraft}");
}

#[test]
fn golden_point_codes() {
    let rat = |n: i64| BigRational::from_integer(n.into());
    let p = crate::numeric::Polynomial::from_i64(&[1, -1, 0, 1]).unwrap();
    let g = crate::numeric::isolate_root(&p, &rat(-2), &rat(-1)).unwrap();
    let nb = NegativeBase::new(Base::Algebraic(crate::numeric::NumberField::new(g, 64))).unwrap();
    let bounds = nb.boundary_sequences();
    let report = classify_regime(&nb, &bounds).unwrap();
    let code = build_code(&bounds, &report, 40, ListCaps::default()).unwrap();
    assert_eq!(strs(&code.words), ["11", "100"]);
    assert_eq!(code.kind, CodeKind::DeltaN(1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn random_bases_give_first_return_codes(x in 1.62f64..4.0) {
        let s = alloc::format!("-{x:.6}");
        let d = decimal_d(&s);
        prop_assume!(d.knows(44));
        let fam = CodeFamilies::new(&d, 16).unwrap();
        let none = ListCaps { list_len: 0, max_words: 0 };
        prop_assert_eq!(fam.cfrak(none).census, first_return_census(&d, 16));
    }
}

#[test]
fn chain_form_of_delta0_lies_inside_the_block_form() {
    for d in [seq("2012121201200", "21"), seq("2012121201200", "1"), seq("", "10"), decimal_d("-2.3"), decimal_d("-3.7")] {
        let fam = CodeFamilies::new(&d, 16).unwrap();
        let adm = Admissibility::from_lower(d.clone());
        match delta0_cross_check(&fam, &adm, ListCaps::default()) {
            None => {}
            Some(CodeWarning::Delta0FormsDiffer { only_chains, only_blocks, .. }) => {
                assert!(only_chains.is_empty(), "{d}");
                assert!(!only_blocks.is_empty());
            }
        }
    }
    // 201·2 has the block form but breaks l(X) > p.
    let fam = CodeFamilies::new(&seq("2012121201200", "21"), 16).unwrap();
    let adm = Admissibility::from_lower(seq("2012121201200", "21"));
    assert!(fam.delta0_via_blocks(&adm, 4).contains(&w("2012")));
}
