use super::*;
use crate::codes::{build_code, classify_regime, ListCaps};
use crate::expansion::{EventuallyPeriodic, NegativeBase};
use crate::numeric::{Base, CertifiedReal};

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn model_for(nb: &NegativeBase) -> SupportModel {
    let bounds = nb.boundary_sequences();
    let report = classify_regime(nb, &bounds).unwrap();
    let code = build_code(&bounds, &report, 40, ListCaps::default()).unwrap();
    SupportModel::new(bounds, report, code, SupportCaps { factor_len: 14, ..SupportCaps::default() }).unwrap()
}

fn decimal(s: &str) -> SupportModel {
    let beta = CertifiedReal::parse_decimal(s, 128).unwrap();
    model_for(&NegativeBase::new(Base::Decimal { beta, bits: 128 }).unwrap())
}

fn golden() -> SupportModel {
    let bounds = BoundsPair::from_periodic(EventuallyPeriodic::new(w("1"), w("0")).unwrap());
    let report = RegimeReport {
        regime: Regime::AtGamma0,
        coded: true,
        odd_period: false,
        gamma_bracket: (crate::codes::gamma_ladder(0), None),
        pulled_back: None,
    };
    let code = CodeEnumeration::finite(crate::codes::CodeKind::GoldenPair, vec![w("1"), w("00")], 40);
    SupportModel::new(bounds, report, code, SupportCaps { factor_len: 14, ..SupportCaps::default() }).unwrap()
}

fn words_of(m: &SupportModel, family: PatternFamily) -> Vec<String> {
    m.patterns().iter().filter(|p| p.family == family).map(|p| p.word.render()).collect()
}

#[test]
fn instantiations_follow_the_templates() {
    let m = decimal("-1.3");
    assert_eq!(m.report().regime, Regime::Band(1));
    let k1 = m.patterns()[0].k1.unwrap();
    assert_eq!(words_of(&m, PatternFamily::Step), ["01100"]);
    assert_eq!(words_of(&m, PatternFamily::Cube), ["0000"]);
    let ladder = alloc::format!("00{}100", "1".repeat(2 * k1 + 1));
    let expected: Vec<String> = [ladder].into_iter().filter(|x| x.len() <= 16).collect();
    assert_eq!(words_of(&m, PatternFamily::Ladder), expected);
}

#[test]
fn no_patterns_outside_bands() {
    let g = golden();
    assert!(g.patterns().is_empty());
    let bounds = BoundsPair::from_periodic(EventuallyPeriodic::new(Word::empty(), w("2")).unwrap());
    let report = RegimeReport { regime: Regime::BelowGamma0, ..g.report().clone() };
    assert_eq!(gap_patterns(&report, 12), Err(GapError::NotApplicable(Regime::BelowGamma0)));
    let _ = bounds;
}

#[test]
fn patterns_are_admissible_and_outside_the_support() {
    for s in ["-1.3", "-1.2", "-1.1", "-1.05"] {
        let m = decimal(s);
        assert!(!m.patterns().is_empty(), "{s}");
        for p in m.patterns().iter().filter(|p| p.word.len() <= 12) {
            assert!(m.is_admissible(&p.word).unwrap(), "{s} {}", p.word);
            assert!(!m.is_factor(&p.word), "{s} {}", p.word);
            assert!(matches!(m.is_intransitive(&p.word, 0), Ok(Transitivity::Intransitive(Witness::Pattern(_)))));
        }
    }
}

#[test]
fn every_short_word_is_classified() {
    for s in ["-1.4", "-1.1", "-1.05"] {
        let m = decimal(s);
        let rep = m.gap_report(10, DEFAULT_EXTENSION_RADIUS).unwrap();
        assert_eq!(rep.inconclusive(), 0, "{s}");
        for row in &rep.rows {
            for x in &row.flagged {
                assert!(!m.is_factor(x));
            }
        }
    }
}

#[test]
fn band_zero_has_no_gaps_at_short_lengths() {
    let m = decimal("-1.5");
    assert_eq!(m.report().regime, Regime::Band(0));
    assert!(m.is_factor(&w("0000")));
    let rep = m.gap_report(8, DEFAULT_EXTENSION_RADIUS).unwrap();
    assert!(rep.rows.iter().all(|r| r.gaps() == 0));
}

#[test]
fn golden_support_is_everything() {
    let g = golden();
    assert_eq!(g.is_intransitive(&w("001"), 4), Ok(Transitivity::Supported));
    assert!(g.is_factor(&w("001")) && g.in_code_monoid(&w("001")));
    assert!(g.is_factor(&w("0000")));
    assert!(!g.in_code_monoid(&w("010")) && g.is_factor(&w("010")));
    assert_eq!(g.is_intransitive(&w("2"), 4), Err(GapError::NotAdmissible(w("2"))));
}

#[test]
fn odd_period_discrepancy_is_the_tail_set() {
    let nb = NegativeBase::new(Base::Algebraic(crate::numeric::NumberField::new(
        crate::numeric::rational(&crate::numeric::ratio(-2, 1)),
        64,
    )))
    .unwrap();
    let m = model_for(&nb);
    assert!(m.bounds().odd_period);
    let rep = m.gap_report(8, 0).unwrap();
    let corrected = Admissibility::new(m.bounds(), ShiftKind::Corrected).census_by_enumeration(8, 18).unwrap();
    for row in &rep.rows {
        assert_eq!(row.supported, corrected[row.len]);
        for x in &row.flagged {
            assert!(x.contains(&2));
            assert_eq!(m.is_intransitive(x, 0), Ok(Transitivity::OddPeriodTail));
        }
    }
    assert!(rep.rows[1].gaps() == 1);
}

#[test]
fn code_words_are_supported() {
    let m = decimal("-1.1");
    for c in m.code().words_up_to(14) {
        assert_eq!(m.is_intransitive(c, 0), Ok(Transitivity::Supported), "{c}");
        assert!(m.in_code_monoid(c));
    }
}

#[test]
fn uncovered_words_stay_inconclusive() {
    for (s, x) in [("-1.5", "00000"), ("-1.3", "1111111111"), ("-1.2", "111111")] {
        let m = decimal(s);
        let x = w(x);
        assert!(m.is_admissible(&x).unwrap() && !m.is_factor(&x), "{s}");
        assert_eq!(m.is_intransitive(&x, 8), Err(GapError::CapInconclusive { word: x.clone(), radius: 8 }));
    }
}

#[test]
fn band_factor_sets_are_stable_in_the_listing_length() {
    for s in ["-1.3", "-1.1"] {
        let m = decimal(s);
        let short = SupportModel::new(
            m.bounds().clone(),
            m.report().clone(),
            m.code().clone(),
            SupportCaps { base_len: 30, ..m.caps() },
        )
        .unwrap();
        assert_eq!(short.band_factors, m.band_factors, "{s}");
    }
}
