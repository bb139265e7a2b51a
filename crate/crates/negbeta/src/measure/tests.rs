use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use proptest::prelude::*;

use super::*;
use crate::codes::{build_code, classify_regime, CodeKind, ListCaps, DEFAULT_CODE_LEN};
use crate::expansion::NegativeBase;
use crate::gaps::{SupportCaps, DEFAULT_EXTENSION_RADIUS};
use crate::numeric::{isolate_root, CertifiedReal, Polynomial};

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn algebraic(coeffs: &[i64], lo: i64, hi: i64) -> NegativeBase {
    let rat = |n: i64| BigRational::from_integer(n.into());
    let p = Polynomial::from_i64(coeffs).unwrap();
    let root = isolate_root(&p, &rat(lo), &rat(hi)).unwrap();
    NegativeBase::new(Base::Algebraic(NumberField::new(root, 64))).unwrap()
}

fn minus_golden() -> NegativeBase {
    algebraic(&[-1, 1, 1], -2, -1)
}

fn minus_gamma1() -> NegativeBase {
    algebraic(&[1, -1, 0, 1], -2, -1)
}

fn minus_two() -> NegativeBase {
    algebraic(&[2, 1], -3, -1)
}

fn first_example() -> NegativeBase {
    algebraic(&[1, 2, -2, -1, 2, -1, -1, 0, 0, 0, 0, 2, -1, 0, 3, 1], -3, -2)
}

fn decimal(s: &str) -> NegativeBase {
    let beta = CertifiedReal::parse_decimal(s, 128).unwrap();
    NegativeBase::new(Base::Decimal { beta, bits: 128 }).unwrap()
}

fn model(nb: &NegativeBase) -> SupportModel {
    let bounds = nb.boundary_sequences();
    let report = classify_regime(nb, &bounds).unwrap();
    let code = build_code(&bounds, &report, DEFAULT_CODE_LEN, ListCaps::default()).unwrap();
    SupportModel::new(bounds, report, code, SupportCaps::default()).unwrap()
}

fn golden_ratio() -> f64 {
    (1.0 + libm::sqrt(5.0)) / 2.0
}

fn is_one(s: &SeriesEnclosure, nb: &NegativeBase) -> bool {
    let f = nb.base().field().unwrap();
    f.eq(s.exact.as_ref().unwrap(), &f.from_int(1))
}

#[test]
fn golden_pair_is_exact() {
    let nb = minus_golden();
    let m = model(&nb);
    assert_eq!(m.code().kind, CodeKind::GoldenPair);
    let rho = Rho::of(nb.base()).unwrap();
    let k = kraft_sum(m.code(), &rho, 40).unwrap();
    assert_eq!(k.tail, TailBound::Exact);
    assert!(is_one(&k, &nb));
    let avg = average_length(m.code(), &rho, 40).unwrap();
    let g = golden_ratio();
    assert!((avg.value.mid_f64() - libm::sqrt(5.0) / g).abs() < 1e-12);
    assert_eq!(gcd_lengths(m.code()), Ok(1));
}

#[test]
fn second_ladder_pair_is_exact() {
    let nb = minus_gamma1();
    let m = model(&nb);
    let rho = Rho::of(nb.base()).unwrap();
    assert!(is_one(&kraft_sum(m.code(), &rho, 40).unwrap(), &nb));
    let g = -nb.base().beta_f64();
    let avg = average_length(m.code(), &rho, 40).unwrap();
    assert!((avg.value.mid_f64() - (3.0 / (g * g * g) + 2.0 / (g * g))).abs() < 1e-12);
    assert_eq!(gcd_lengths(m.code()), Ok(1));
}

#[test]
fn single_word_code() {
    let nb = minus_two();
    let code = CodeEnumeration::finite(CodeKind::GoldenPair, vec![w("101")], 10);
    let rho = Rho::of(nb.base()).unwrap();
    let avg = average_length(&code, &rho, 10).unwrap();
    assert_eq!(avg.value.mid_f64(), 3.0 / 8.0);
    assert_eq!(gcd_lengths(&code), Ok(3));
    let empty = CodeEnumeration::finite(CodeKind::GoldenPair, Vec::new(), 10);
    assert_eq!(gcd_lengths(&empty), Err(MeasureError::EmptyCode));
}

#[test]
fn golden_cylinders_have_closed_forms() {
    let nb = minus_golden();
    let m = model(&nb);
    let rho = Rho::of(nb.base()).unwrap();
    let s5 = libm::sqrt(5.0);
    let one = cylinder_measure(&m, &rho, &w("1"), 0).unwrap();
    assert!((one.value.mid_f64() - 1.0 / s5).abs() < 1e-12);
    assert!(one.value.width() < BigRational::new(1.into(), 1_000_000_000_000i64.into()));
    let zz = cylinder_measure(&m, &rho, &w("00"), 0).unwrap();
    assert!((zz.value.mid_f64() - 1.0 / (golden_ratio() * s5)).abs() < 1e-12);
    assert_eq!(cylinder_measure(&m, &rho, &w("2"), 0), Err(MeasureError::NotAdmissible(w("2"))));
    assert_eq!(cylinder_measure(&m, &rho, &w("010"), 0), Err(MeasureError::NoClosedForm(w("010"))));
}

#[test]
fn closed_form_times_length_weight_is_one() {
    for nb in [minus_golden(), minus_gamma1(), minus_two()] {
        let m = model(&nb);
        let rho = Rho::of(nb.base()).unwrap();
        let g = -nb.base().beta_f64();
        let mut mass = 0.0;
        for x in m.code().words_up_to(10) {
            let Ok(mu) = cylinder_measure(&m, &rho, x, 0) else { continue };
            let MeasureBasis::CodeProduct { avg_length } = &mu.basis else { panic!("{x}") };
            let check = mu.value.mid_f64() * avg_length.value.mid_f64() * libm::pow(g, x.len() as f64);
            assert!((check - 1.0).abs() < 1e-6, "{x}: {check}");
            mass += mu.value.mid_f64() * x.len() as f64;
        }
        assert!(mass <= 1.0 + 1e-9, "{mass}");
    }
}

#[test]
fn kraft_sums_reach_one_at_forty() {
    for nb in [minus_two(), first_example(), decimal("-1.3")] {
        let m = model(&nb);
        let rho = Rho::of(nb.base()).unwrap();
        let k = kraft_sum(m.code(), &rho, 40).unwrap();
        assert!(k.value.contains(&BigRational::one()));
        let width = crate::numeric::to_f64(&k.value.width());
        assert!(width < 1e-3, "{}: {width}", nb.base().beta_f64());
        assert!(k.tail.is_certified());
    }
}

#[test]
fn envelope_tail_is_labelled() {
    let nb = decimal("-2.3");
    let m = model(&nb);
    let rho = Rho::of(nb.base()).unwrap();
    let avg = average_length(m.code(), &rho, 40).unwrap();
    assert!(!avg.tail.is_certified());
    assert!(avg.value.lo() == avg.partial.lo() && avg.value.hi() >= avg.partial.hi());
}

#[test]
fn gap_patterns_have_null_cylinders() {
    let nb = decimal("-1.1");
    let m = model(&nb);
    let rho = Rho::of(nb.base()).unwrap();
    assert!(!m.patterns().is_empty());
    for p in m.patterns() {
        let mu = cylinder_measure(&m, &rho, &p.word, DEFAULT_EXTENSION_RADIUS).unwrap();
        assert!(mu.value.is_point() && mu.value.contains_zero());
        assert!(matches!(mu.basis, MeasureBasis::Null(Transitivity::Intransitive(_))));
    }
}

#[test]
fn series_identity_holds() {
    for nb in [first_example(), minus_golden(), minus_two(), minus_gamma1()] {
        let r = series_identity_check(&nb.boundary_sequences(), 25).unwrap();
        assert!(r.holds(), "{}: {:?}", nb.base().beta_f64(), r.first_mismatch());
    }
    let r = series_identity_check(&minus_two().boundary_sequences(), 0).unwrap();
    assert_eq!((r.boundary_side.as_slice(), r.code_side.as_slice()), (&[1][..], &[1][..]));
}

#[test]
fn series_identity_detects_a_wrong_sequence() {
    let mut r = series_identity_check(&first_example().boundary_sequences(), 10).unwrap();
    r.boundary_side[7] += 1;
    assert_eq!(r.first_mismatch(), Some(7));
}

#[test]
fn entropy_estimates() {
    for nb in [minus_two(), minus_golden(), first_example()] {
        let e = entropy_estimate(&nb.boundary_sequences(), nb.base(), 20).unwrap();
        assert!(e.error() < 0.05, "{e:?}");
    }
    // Hₙ ≈ 6.7·γ₁ⁿ, so the constant dominates at n = 20.
    let nb = minus_gamma1();
    let e = entropy_estimate(&nb.boundary_sequences(), nb.base(), 200).unwrap();
    assert!(e.error() < 0.05, "{e:?}");
    let g = libm::log(golden_ratio());
    assert!((fibonacci_growth(30) - g).abs() < 0.01);
    assert!(fibonacci_entropy(20) <= g + 0.01);
}

#[test]
fn golden_sample_matches_the_measure() {
    let nb = minus_golden();
    let m = model(&nb);
    let rho = Rho::of(nb.base()).unwrap();
    let s = sample_champernowne(m.code(), &rho, 1_000_000, 7).unwrap();
    assert_eq!(s.len(), 1_000_000);
    assert!((s.frequency(&w("1")) - 1.0 / libm::sqrt(5.0)).abs() < 0.01);
    let zz = cylinder_measure(&m, &rho, &w("00"), 0).unwrap().value.mid_f64();
    assert!((s.aligned_frequency(&w("00")) - zz).abs() < 0.01);
    let again = sample_champernowne(m.code(), &rho, 1_000_000, 7).unwrap();
    assert_eq!(s, again);
}

#[test]
fn band_sample_avoids_patterns() {
    let nb = decimal("-1.3");
    let m = model(&nb);
    let rho = Rho::of(nb.base()).unwrap();
    let s = sample_champernowne(m.code(), &rho, 200_000, 11).unwrap();
    for p in m.patterns() {
        assert_eq!(s.occurrences(&p.word), 0, "{}", p.word);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]
    #[test]
    fn empirical_frequencies_within_five_sigma(seed in any::<u64>(), pick in 0usize..4) {
        let nb = minus_golden();
        let m = model(&nb);
        let rho = Rho::of(nb.base()).unwrap();
        let n = 100_000usize;
        let s = sample_champernowne(m.code(), &rho, n, seed).unwrap();
        let x = [w("1"), w("00"), w("100"), w("11")][pick].clone();
        let mu = cylinder_measure(&m, &rho, &x, 0).unwrap().value.mid_f64();
        let sigma = libm::sqrt(mu * (1.0 - mu) / n as f64);
        prop_assert!((s.aligned_frequency(&x) - mu).abs() < 5.0 * sigma);
    }
}

