//! Built-in checks against known values and independent oracles.

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use negbeta::codes::{CodeFamilies, ListCaps, Regime};
use negbeta::expansion::{DigitSeq, EventuallyPeriodic, Word};
use negbeta::gaps::{SupportCaps, DEFAULT_EXTENSION_RADIUS};
use negbeta::measure::{
    cylinder_measure, entropy_estimate, fibonacci_growth, gcd_lengths, kraft_sum, sample_champernowne,
    series_identity_check, TailBound,
};
use negbeta::numeric::{to_f64, BigRational};
use negbeta::order::{alt_compare, count_words_recurrence, Admissibility, ShiftKind};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::session::{CliError, Session};
use crate::spec::preset;

pub const CRITERIA: u8 = 10;

const SAMPLE_LEN: usize = 1_000_000;
const CODE_LEN: usize = 40;
const ORDER_PAIRS: usize = 1000;
const ORDER_WORD_LEN: usize = 12;
/// Band base for the gap checks; every admissible word up to length 10 is classified there.
const BAND_BETA: &str = "decimal:-1.1";

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

fn session(name: &str) -> Result<Session, CliError> {
    let spec = preset(name).ok_or_else(|| CliError::UnknownPreset(name.into()))?;
    Session::from_spec(&spec, negbeta::expansion::DEFAULT_ITERATION_CAP)
}

/// Bases of the census, Kraft, gcd and order checks.
const TEST_BASES: &[&str] = &["minus-two", "minus-golden", "first-example", "decimal:-1.3", "minus-gamma1"];

/// Algebraic bases among the census set.
const ENTROPY_BASES: &[&str] = &["minus-two", "minus-golden", "first-example"];

fn w(s: &str) -> Word {
    s.parse().expect("literal word")
}

fn seq(pre: &str, per: &str) -> DigitSeq {
    DigitSeq::Periodic(EventuallyPeriodic::new(w(pre), w(per)).expect("nonempty period"))
}

fn render(ws: &[Word]) -> String {
    ws.iter().map(Word::render).collect::<Vec<_>>().join(",")
}

type Check = Result<(bool, String), CliError>;

fn first_example() -> Check {
    let start = Instant::now();
    let s = session("first-example")?;
    let d = &s.bounds().raw_d;
    let d_ok = *d == seq("2012121201200", "21");
    let fam = CodeFamilies::new(s.bounds().structural(), 30)?;
    let caps = ListCaps { list_len: 30, ..ListCaps::default() };
    let delta0 = fam.delta0(caps).words;
    let gamma0: Vec<Word> = fam.gamma0().iter().filter(|x| x.len() <= 4).cloned().collect();
    let delta2 = fam.delta(2, caps).words;
    let delta1 = fam.delta(1, caps);
    let mut listed = vec![w("201"), w("20121")];
    listed.extend((0..=3).map(|k| w("2012121").repeat(k).concat(&w("20121"))));
    let missing: Vec<Word> = listed.into_iter().filter(|x| !delta1.contains(x)).collect();
    let elapsed = start.elapsed();
    let ok = d_ok
        && render(&delta0) == "2"
        && render(&gamma0) == "0,1,21,200"
        && render(&delta2) == "2012121"
        && missing.is_empty()
        && elapsed < Duration::from_secs(10);
    let detail = format!(
        "d = {}; Δ0 = {{{}}}; Γ0 (len ≤ 4) = {{{}}}; Δ2 = {{{}}}; Δ1 missing {{{}}}; {:.2}s",
        crate::session::render_seq(d, 20),
        render(&delta0),
        render(&gamma0),
        render(&delta2),
        render(&missing),
        elapsed.as_secs_f64()
    );
    Ok((ok, detail))
}

fn second_example() -> Check {
    let s = session("second-example")?;
    let d = &s.bounds().raw_d;
    let d_ok = *d == seq("2012121201200", "1");
    let fam = CodeFamilies::new(s.bounds().structural(), 24)?;
    let base = fam.delta0_base();
    let g0 = fam.gamma0();
    let head = w("2012121201200");
    let mut missing = Vec::new();
    for x in std::iter::once(w("2")).chain((0..=3).map(|k| head.concat(&w("11").repeat(k)))) {
        if !base.contains(&x) {
            missing.push(x);
        }
    }
    let gamma_expected =
        ["0", "1", "21", "200"].map(w).into_iter().chain((0..=2).map(|k| head.concat(&w("11").repeat(k)).concat(&w("10"))));
    for x in gamma_expected {
        if !g0.contains(&x) {
            missing.push(x);
        }
    }
    let ok = d_ok && missing.is_empty();
    Ok((ok, format!("d = {}; missing {{{}}}", crate::session::render_seq(d, 20), render(&missing))))
}

fn census_oracle() -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for name in &TEST_BASES[..4] {
        let s = session(name)?;
        let rec = count_words_recurrence(&s.bounds().raw_d, 14)?.counts;
        let en = Admissibility::new(s.bounds(), ShiftKind::Plain).census_by_enumeration(14, 18)?;
        let agree = rec == en;
        ok &= agree;
        parts.push(format!("{name}: H14 = {} ({})", rec[14], if agree { "agree" } else { "differ" }));
    }
    Ok((ok, parts.join("; ")))
}

fn kraft() -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    let one = BigRational::from_integer(1.into());
    for name in TEST_BASES {
        let s = session(name)?;
        let (_, code) = s.code(CODE_LEN)?;
        let k = kraft_sum(&code, &s.rho()?, CODE_LEN)?;
        let width = to_f64(&k.value.width());
        let mut pass = k.value.contains(&one) && width < 1e-3 && k.tail.is_certified();
        if matches!(*name, "minus-golden" | "minus-gamma1") {
            let exact = k.tail == TailBound::Exact && k.value.is_point();
            pass &= exact && (k.value.mid_f64() - 1.0).abs() < 1e-12;
        }
        ok &= pass;
        parts.push(format!("{name}: [{:.6}, {:.6}] width {width:.1e}", to_f64(k.value.lo()), to_f64(k.value.hi())));
    }
    Ok((ok, parts.join("; ")))
}

fn golden_measure() -> Check {
    let s = session("minus-golden")?;
    let model = s.model(CODE_LEN, SupportCaps::default())?;
    let rho = s.rho()?;
    let mu = cylinder_measure(&model, &rho, &w("1"), 0)?.value.mid_f64();
    let target = 1.0 / 5f64.sqrt();
    let sample = sample_champernowne(model.code(), &rho, SAMPLE_LEN, 1)?;
    let freq = sample.frequency(&w("1"));
    let ok = (mu - target).abs() < 1e-9 && (freq - target).abs() < 0.01;
    Ok((ok, format!("μ[1] = {mu:.12}, 1/√5 = {target:.12}, sampled {freq:.5}")))
}

fn series_identity() -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for name in ["first-example", "minus-golden"] {
        let r = series_identity_check(session(name)?.bounds(), 25)?;
        ok &= r.holds();
        parts.push(match r.first_mismatch() {
            None => format!("{name}: holds through degree 25"),
            Some(n) => format!("{name}: mismatch at degree {n}"),
        });
    }
    Ok((ok, parts.join("; ")))
}

fn entropy() -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for name in ENTROPY_BASES {
        let s = session(name)?;
        let e = entropy_estimate(s.bounds(), s.base().base(), 20)?;
        ok &= e.error() < 0.05;
        parts.push(format!("{name}: {:.4} vs {:.4}", e.value, e.log_beta));
    }
    let g = fibonacci_growth(30);
    let target = ((1.0 + 5f64.sqrt()) / 2.0).ln();
    ok &= (g - target).abs() < 0.01;
    parts.push(format!("fibonacci growth {g:.6} vs ln γ0 {target:.6}"));
    Ok((ok, parts.join("; ")))
}

fn gaps() -> Check {
    let s = session(BAND_BETA)?;
    let model = s.model(CODE_LEN, SupportCaps::default())?;
    let Regime::Band(n) = model.report().regime else {
        return Ok((false, format!("{BAND_BETA} is not in a band regime")));
    };
    let rho = s.rho()?;
    let sample = sample_champernowne(model.code(), &rho, SAMPLE_LEN, 2)?;
    let mut bad = Vec::new();
    let patterns: Vec<_> = model.patterns().iter().filter(|p| p.word.len() <= 12).collect();
    for p in &patterns {
        let x = &p.word;
        let mu = cylinder_measure(&model, &rho, x, DEFAULT_EXTENSION_RADIUS)?.value;
        let null = mu.is_point() && mu.contains_zero();
        if !model.is_admissible(x)? || model.is_factor(x) || !null || sample.occurrences(x) > 0 {
            bad.push(x.clone());
        }
    }
    let rep = model.gap_report(10, DEFAULT_EXTENSION_RADIUS)?;
    let inconclusive = rep.inconclusive();
    let ok = !patterns.is_empty() && bad.is_empty() && inconclusive == 0;
    Ok((
        ok,
        format!(
            "{BAND_BETA} in band({n}); {} patterns ≤ 12 ({}), failing {{{}}}; inconclusive ≤ 10: {inconclusive}",
            patterns.len(),
            patterns.iter().map(|p| p.word.render()).collect::<Vec<_>>().join(","),
            render(&bad)
        ),
    ))
}

fn gcd() -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for name in TEST_BASES {
        let (_, code) = session(name)?.code(CODE_LEN)?;
        let g = gcd_lengths(&code)?;
        ok &= g == 1;
        parts.push(format!("{name}: {g}"));
    }
    Ok((ok, parts.join("; ")))
}

fn order() -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for (i, name) in TEST_BASES.iter().enumerate() {
        let s = session(name)?;
        let adm = Admissibility::new(s.bounds(), ShiftKind::Plain);
        let mut rng = ChaCha8Rng::seed_from_u64(i as u64);
        let (mut violations, mut overlapping) = (0usize, 0usize);
        for _ in 0..ORDER_PAIRS {
            let x = adm.random_word(ORDER_WORD_LEN, &mut rng)?;
            let y = adm.random_word(ORDER_WORD_LEN, &mut rng)?;
            let by_order = alt_compare(&x, &y);
            if by_order == Ordering::Equal {
                continue;
            }
            match s.base().cylinder_values(&x).compare(&s.base().cylinder_values(&y)) {
                Some(by_value) if by_value != Ordering::Equal => violations += usize::from(by_value != by_order),
                _ => overlapping += 1,
            }
        }
        ok &= violations == 0;
        let frac = overlapping as f64 / ORDER_PAIRS as f64;
        parts.push(format!("{name}: {violations} violations, {frac:.3} overlapping"));
    }
    Ok((ok, parts.join("; ")))
}

pub fn title(id: u8) -> &'static str {
    match id {
        1 => "first example: boundary sequence and code families",
        2 => "second example: boundary sequence and code families",
        3 => "census recurrence equals enumeration",
        4 => "Kraft sums of the support codes",
        5 => "closed-form cylinder measure at the golden base",
        6 => "series identity through degree 25",
        7 => "entropy estimates",
        8 => "gap patterns in a band regime",
        9 => "gcd of code-word lengths",
        10 => "alternating order agrees with values",
        _ => "unknown criterion",
    }
}

/// Runs one check; errors count as failures.
pub fn run(id: u8) -> CriterionResult {
    let start = Instant::now();
    let outcome = match id {
        1 => first_example(),
        2 => second_example(),
        3 => census_oracle(),
        4 => kraft(),
        5 => golden_measure(),
        6 => series_identity(),
        7 => entropy(),
        8 => gaps(),
        9 => gcd(),
        10 => order(),
        _ => Ok((false, "no such criterion".into())),
    };
    let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    CriterionResult { id, title: title(id), passed, detail, seconds: start.elapsed().as_secs_f64() }
}

pub fn run_all() -> Vec<CriterionResult> {
    (1..=CRITERIA).map(run).collect()
}

/// One line per check.
pub fn summary_line(r: &CriterionResult) -> String {
    format!("[{}] {:>2} {}: {}", if r.passed { "PASS" } else { "FAIL" }, r.id, r.title, r.detail)
}
