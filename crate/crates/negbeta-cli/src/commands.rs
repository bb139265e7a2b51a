//! Subcommand implementations. Each returns a serializable report and a status.

use std::fmt::Write as _;

use negbeta::codes::{CodeEnumeration, CodeWarning, Regime, RegimeReport};
use negbeta::expansion::{PeriodSearch, Word};
use negbeta::gaps::{SupportCaps, Transitivity, Witness};
use negbeta::measure::{
    average_length, cylinder_measure, entropy_estimate, gcd_lengths, kraft_sum, sample_champernowne,
    series_identity_check, MeasureBasis, MeasureError, SeriesEnclosure, TailBound,
};
use negbeta::numeric::{parse_decimal_exact, Interval};
use negbeta::order::{count_words_recurrence, Admissibility, ShiftKind};
use serde::Serialize;
use serde_json::Value as Json;

use crate::session::{render_seq, CliError, Session};

/// How a command ended, mapped to the process exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    CheckFailed,
    Inconclusive,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::CheckFailed => 1,
            Status::Inconclusive => 2,
        }
    }

    fn worst(self, other: Status) -> Status {
        if self.exit_code() >= other.exit_code() {
            self
        } else {
            other
        }
    }
}

/// A finished command: its report in both renderings.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub status: Status,
    pub json: Json,
    pub text: String,
}

impl Outcome {
    fn new<R: Serialize>(status: Status, report: &R, text: String) -> Self {
        let json = serde_json::to_value(report).expect("reports serialize");
        Self { status, json, text }
    }
}

/// `[lo, hi]` rounded to f64.
pub fn bounds_f64(i: &Interval) -> [f64; 2] {
    let (lo, hi) = i.to_f64_bounds();
    [lo, hi]
}

fn regime_name(r: Regime) -> String {
    match r {
        Regime::BelowGamma0 => "below-gamma0".into(),
        Regime::AtGamma0 => "at-gamma0".into(),
        Regime::Band(n) => format!("band({n})"),
    }
}

fn words(ws: &[Word]) -> Vec<String> {
    ws.iter().map(Word::render).collect()
}

fn parse_word(s: &str) -> Result<Word, CliError> {
    s.parse().map_err(|_| CliError::Argument(format!("not a digit word: {s}")))
}

#[derive(Serialize)]
struct ExpandReport {
    beta: f64,
    point: String,
    shift: usize,
    digits: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    period: Option<PeriodInfo>,
}

#[derive(Serialize)]
struct PeriodInfo {
    found: bool,
    preperiod: Option<String>,
    period: Option<String>,
    undecidable: bool,
}

fn period_info(search: PeriodSearch) -> PeriodInfo {
    match search {
        PeriodSearch::Found { sequence, .. } => PeriodInfo {
            found: true,
            preperiod: Some(sequence.preperiod().render()),
            period: Some(sequence.period().render()),
            undecidable: false,
        },
        PeriodSearch::NotFound { undecidable, .. } => {
            PeriodInfo { found: false, preperiod: None, period: None, undecidable }
        }
    }
}

/// Digits of `point` (default `l_β`); for `l_β` also the period search.
pub fn expand(s: &Session, point: Option<&str>, count: usize) -> Result<Outcome, CliError> {
    let nb = s.base();
    let b = nb.base();
    let (x, label, period) = match point {
        Some(p) => (b.from_rational(parse_decimal_exact(p)?), p.to_string(), None),
        None => (nb.endpoints().0, "l_beta".to_string(), Some(period_info(nb.detect_period(nb.iteration_cap())))),
    };
    let e = nb.expand(&x, count)?;
    let status = match &period {
        Some(PeriodInfo { undecidable: true, .. }) => Status::Inconclusive,
        _ => Status::Ok,
    };
    let report = ExpandReport { beta: s.beta(), point: label, shift: e.shift, digits: e.digits.render(), period };
    let mut text = format!("beta    {}\npoint   {}\nshift   {}\ndigits  {}\n", report.beta, report.point, e.shift, report.digits);
    if let Some(p) = &report.period {
        match (&p.preperiod, &p.period) {
            (Some(u), Some(v)) => writeln!(text, "d       {u}({v})").unwrap(),
            _ if p.undecidable => writeln!(text, "d       period search undecidable at this precision").unwrap(),
            _ => writeln!(text, "d       no period within {} steps", nb.iteration_cap()).unwrap(),
        }
    }
    Ok(Outcome::new(status, &report, text))
}

#[derive(Serialize)]
struct BoundsReport {
    beta: f64,
    digit_bound: u32,
    d: String,
    d_star: String,
    r_star: String,
    r: String,
    odd_period: bool,
    periodic: bool,
}

pub fn bounds(s: &Session, digits: usize) -> Result<Outcome, CliError> {
    let b = s.bounds();
    let report = BoundsReport {
        beta: s.beta(),
        digit_bound: b.digit_bound,
        d: render_seq(&b.raw_d, digits),
        d_star: render_seq(&b.lower, digits),
        r_star: render_seq(&b.raw_rstar, digits),
        r: render_seq(&b.upper, digits),
        odd_period: b.odd_period,
        periodic: b.raw_d.as_periodic().is_some(),
    };
    let text = format!(
        "beta        {}\ndigit bound {}\nd           {}\nd*          {}\nr*          {}\nr           {}\nodd period  {}\n",
        report.beta, report.digit_bound, report.d, report.d_star, report.r_star, report.r, report.odd_period
    );
    Ok(Outcome::new(Status::Ok, &report, text))
}

#[derive(Serialize)]
struct RegimeOut {
    beta: f64,
    regime: String,
    coded: bool,
    odd_period: bool,
    gamma_lower: f64,
    gamma_upper: Option<f64>,
    pulled_back: Option<String>,
}

fn regime_out(s: &Session, r: &RegimeReport) -> RegimeOut {
    RegimeOut {
        beta: s.beta(),
        regime: regime_name(r.regime),
        coded: r.coded,
        odd_period: r.odd_period,
        gamma_lower: r.gamma_bracket.0.to_f64(),
        gamma_upper: r.gamma_bracket.1.as_ref().map(|g| g.to_f64()),
        pulled_back: r.pulled_back.as_ref().map(|w| render_seq(w, 40)),
    }
}

pub fn regime(s: &Session) -> Result<Outcome, CliError> {
    let r = regime_out(s, &s.regime()?);
    let mut text = format!("beta     {}\nregime   {}\ncoded    {}\n", r.beta, r.regime, r.coded);
    match r.gamma_upper {
        Some(hi) => writeln!(text, "bracket  {} < |beta| <= {}", r.gamma_lower, hi).unwrap(),
        None => writeln!(text, "bracket  |beta| > {}", r.gamma_lower).unwrap(),
    }
    if let Some(w) = &r.pulled_back {
        writeln!(text, "w        {w}").unwrap();
    }
    Ok(Outcome::new(Status::Ok, &r, text))
}

#[derive(Serialize)]
struct CodeOut {
    beta: f64,
    regime: String,
    kind: String,
    prefix_type: bool,
    cap: usize,
    listed_len: usize,
    census: Vec<String>,
    words: Vec<String>,
    provisional: Vec<String>,
    warnings: Vec<String>,
}

fn warning_text(w: &CodeWarning) -> String {
    match w {
        CodeWarning::Delta0FormsDiffer { len, only_chains, only_blocks } => format!(
            "two forms of Delta0 differ up to length {len}: chains only {:?}, blocks only {:?}",
            words(only_chains),
            words(only_blocks)
        ),
    }
}

pub fn code(s: &Session, cap: usize, show_len: usize) -> Result<Outcome, CliError> {
    let (report, code) = s.code(cap)?;
    let out = CodeOut {
        beta: s.beta(),
        regime: regime_name(report.regime),
        kind: format!("{:?}", code.kind),
        prefix_type: code.kind.is_prefix_type(),
        cap: code.cap,
        listed_len: code.listed_len,
        census: code.census.iter().map(u128::to_string).collect(),
        words: code.words_up_to(show_len).map(Word::render).collect(),
        provisional: words(&code.provisional),
        warnings: code.warnings.iter().map(warning_text).collect(),
    };
    let mut text = format!("beta     {}\nregime   {}\nkind     {}\ncensus   {}\n", out.beta, out.regime, out.kind, out.census.join(" "));
    writeln!(text, "words up to length {show_len}:").unwrap();
    for w in &out.words {
        writeln!(text, "  {w}").unwrap();
    }
    for w in &out.warnings {
        writeln!(text, "warning: {w}").unwrap();
    }
    Ok(Outcome::new(Status::Ok, &out, text))
}

#[derive(Serialize)]
struct CensusOut {
    beta: f64,
    recurrence: Vec<String>,
    enumeration: Vec<String>,
    corrected: Option<Vec<String>>,
    agree: bool,
}

pub fn census(s: &Session, len: usize, enumeration_cap: usize) -> Result<Outcome, CliError> {
    let b = s.bounds();
    let rec = count_words_recurrence(&b.raw_d, len)?.counts;
    let m = len.min(enumeration_cap);
    let en = Admissibility::new(b, ShiftKind::Plain).census_by_enumeration(m, enumeration_cap)?;
    let corrected = if b.odd_period {
        Some(Admissibility::new(b, ShiftKind::Corrected).census_by_enumeration(m, enumeration_cap)?)
    } else {
        None
    };
    let agree = rec[..=m] == en[..];
    let strs = |v: &[u128]| v.iter().map(u128::to_string).collect::<Vec<_>>();
    let out = CensusOut {
        beta: s.beta(),
        recurrence: strs(&rec),
        enumeration: strs(&en),
        corrected: corrected.as_deref().map(strs),
        agree,
    };
    let mut text = format!("beta         {}\nrecurrence   {}\nenumeration  {}\n", out.beta, out.recurrence.join(" "), out.enumeration.join(" "));
    if let Some(c) = &out.corrected {
        writeln!(text, "corrected    {}", c.join(" ")).unwrap();
    }
    writeln!(text, "agree        {agree}").unwrap();
    let status = if agree { Status::Ok } else { Status::CheckFailed };
    Ok(Outcome::new(status, &out, text))
}

#[derive(Serialize)]
struct SeriesOut {
    len: usize,
    partial: [f64; 2],
    value: [f64; 2],
    tail: String,
    certified: bool,
    exact: bool,
}

fn series_out(e: &SeriesEnclosure) -> SeriesOut {
    let tail = match &e.tail {
        TailBound::Exact => "exact".to_string(),
        TailBound::McMillan { checked_len } => format!("mcmillan (decodability checked to length {checked_len})"),
        TailBound::Envelope { growth, scale } => format!("envelope {scale:.3e}*{growth:.6}^n (heuristic)"),
    };
    SeriesOut {
        len: e.len,
        partial: bounds_f64(&e.partial),
        value: bounds_f64(&e.value),
        certified: e.tail.is_certified(),
        exact: e.exact.is_some(),
        tail,
    }
}

#[derive(Serialize)]
struct CylinderOut {
    word: String,
    value: Option<[f64; 2]>,
    basis: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn witness_text(t: &Transitivity) -> String {
    match t {
        Transitivity::Supported => "supported".into(),
        Transitivity::OddPeriodTail => "odd-period tail".into(),
        Transitivity::Intransitive(Witness::Pattern(p)) => format!("contains {:?} pattern {}", p.family, p.word),
        Transitivity::Intransitive(Witness::Extensions { radius }) => {
            format!("every extension by {radius} digits contains a pattern")
        }
    }
}

#[derive(Serialize)]
struct MeasureOut {
    beta: f64,
    rho: [f64; 2],
    kraft_sum: SeriesOut,
    avg_length: Result<SeriesOut, String>,
    gcd_lengths: usize,
    entropy: EntropyOut,
    cylinders: Vec<CylinderOut>,
}

#[derive(Serialize)]
struct EntropyOut {
    n: usize,
    estimate: f64,
    log_beta: f64,
}

pub struct MeasureArgs<'a> {
    pub cap: usize,
    pub entropy_len: usize,
    pub words: &'a [String],
    pub radius: usize,
}

pub fn measure(s: &Session, args: &MeasureArgs<'_>) -> Result<Outcome, CliError> {
    let model = s.model(args.cap, SupportCaps::default())?;
    let rho = s.rho()?;
    let code = model.code();
    let k = kraft_sum(code, &rho, args.cap)?;
    let avg = average_length(code, &rho, args.cap);
    let e = entropy_estimate(s.bounds(), s.base().base(), args.entropy_len)?;
    let mut status = Status::Ok;
    let mut cylinders = Vec::new();
    for w in args.words {
        let x = parse_word(w)?;
        let out = match cylinder_measure(&model, &rho, &x, args.radius) {
            Ok(mu) => CylinderOut {
                word: x.render(),
                value: Some(bounds_f64(&mu.value)),
                basis: match &mu.basis {
                    MeasureBasis::CodeProduct { .. } => "code product".into(),
                    MeasureBasis::Null(t) => format!("null: {}", witness_text(t)),
                },
                error: None,
            },
            Err(err) => {
                if matches!(err, MeasureError::NotInSupportLanguage { .. }) {
                    status = status.worst(Status::Inconclusive);
                }
                CylinderOut { word: x.render(), value: None, basis: "unavailable".into(), error: Some(err.to_string()) }
            }
        };
        cylinders.push(out);
    }
    let out = MeasureOut {
        beta: s.beta(),
        rho: bounds_f64(rho.interval()),
        kraft_sum: series_out(&k),
        avg_length: avg.as_ref().map(series_out).map_err(|e| e.to_string()),
        gcd_lengths: gcd_lengths(code)?,
        entropy: EntropyOut { n: e.n, estimate: e.value, log_beta: e.log_beta },
        cylinders,
    };
    let mut text = format!("beta          {}\nrho           {:?}\n", out.beta, out.rho);
    let series = |t: &mut String, name: &str, x: &SeriesOut| {
        writeln!(t, "{name:<13} {:?} through length {} ({})", x.value, x.len, x.tail).unwrap();
    };
    series(&mut text, "kraft sum", &out.kraft_sum);
    match &out.avg_length {
        Ok(a) => series(&mut text, "avg length", a),
        Err(e) => writeln!(text, "avg length    unavailable: {e}").unwrap(),
    }
    writeln!(text, "gcd lengths   {}", out.gcd_lengths).unwrap();
    writeln!(text, "entropy       (1/{}) ln H = {:.6}, ln|beta| = {:.6}", e.n, e.value, e.log_beta).unwrap();
    for c in &out.cylinders {
        match (&c.value, &c.error) {
            (Some(v), _) => writeln!(text, "mu[{}]  {:?} ({})", c.word, v, c.basis).unwrap(),
            (None, Some(err)) => writeln!(text, "mu[{}]  {err}", c.word).unwrap(),
            _ => {}
        }
    }
    Ok(Outcome::new(status, &out, text))
}

#[derive(Serialize)]
struct IdentityOut {
    beta: f64,
    degree: usize,
    holds: bool,
    first_mismatch: Option<usize>,
    boundary_side: Vec<String>,
    code_side: Vec<String>,
    delta_indices: Vec<usize>,
}

pub fn identity(s: &Session, degree: usize) -> Result<Outcome, CliError> {
    let r = series_identity_check(s.bounds(), degree)?;
    let strs = |v: &[i128]| v.iter().map(i128::to_string).collect::<Vec<_>>();
    let out = IdentityOut {
        beta: s.beta(),
        degree,
        holds: r.holds(),
        first_mismatch: r.first_mismatch(),
        boundary_side: strs(&r.boundary_side),
        code_side: strs(&r.code_side),
        delta_indices: r.delta_indices.clone(),
    };
    let mut text = format!(
        "beta           {}\ndegree         {}\nboundary side  {}\ncode side      {}\n",
        out.beta,
        degree,
        out.boundary_side.join(" "),
        out.code_side.join(" ")
    );
    match out.first_mismatch {
        None => writeln!(text, "identity holds through degree {degree}").unwrap(),
        Some(n) => writeln!(text, "first mismatch at degree {n}").unwrap(),
    }
    let status = if out.holds { Status::Ok } else { Status::CheckFailed };
    Ok(Outcome::new(status, &out, text))
}

#[derive(Serialize)]
struct GapsOut {
    beta: f64,
    regime: String,
    radius: usize,
    patterns: Vec<PatternOut>,
    rows: Vec<RowOut>,
    inconclusive: String,
}

#[derive(Serialize)]
struct PatternOut {
    family: String,
    m: usize,
    i: usize,
    word: String,
}

#[derive(Serialize)]
struct RowOut {
    len: usize,
    admissible: String,
    supported: String,
    gaps: String,
    inconclusive: String,
    examples: Vec<String>,
}

pub fn gaps(s: &Session, max_len: usize, radius: usize, cap: usize) -> Result<Outcome, CliError> {
    let model = s.model(cap, SupportCaps::default())?;
    let rep = model.gap_report(max_len, radius)?;
    let out = GapsOut {
        beta: s.beta(),
        regime: regime_name(rep.regime),
        radius,
        patterns: model
            .patterns()
            .iter()
            .map(|p| PatternOut { family: format!("{:?}", p.family), m: p.m, i: p.i, word: p.word.render() })
            .collect(),
        rows: rep
            .rows
            .iter()
            .map(|r| RowOut {
                len: r.len,
                admissible: r.admissible.to_string(),
                supported: r.supported.to_string(),
                gaps: r.gaps().to_string(),
                inconclusive: r.inconclusive.to_string(),
                examples: words(&r.flagged),
            })
            .collect(),
        inconclusive: rep.inconclusive().to_string(),
    };
    let mut text = format!("beta    {}\nregime  {}\n", out.beta, out.regime);
    if !out.patterns.is_empty() {
        writeln!(text, "patterns:").unwrap();
        for p in &out.patterns {
            writeln!(text, "  {:<7} m={} i={}  {}", p.family, p.m, p.i, p.word).unwrap();
        }
    }
    writeln!(text, "len  admissible  supported  gaps  inconclusive  examples").unwrap();
    for r in &out.rows {
        writeln!(
            text,
            "{:>3}  {:>10}  {:>9}  {:>4}  {:>12}  {}",
            r.len,
            r.admissible,
            r.supported,
            r.gaps,
            r.inconclusive,
            r.examples.join(" ")
        )
        .unwrap();
    }
    let status = if rep.inconclusive() > 0 { Status::Inconclusive } else { Status::Ok };
    Ok(Outcome::new(status, &out, text))
}

#[derive(Serialize)]
struct SampleOut {
    beta: f64,
    length: usize,
    seed: u64,
    words_drawn: usize,
    prefix: String,
    frequencies: Vec<FrequencyOut>,
}

#[derive(Serialize)]
struct FrequencyOut {
    word: String,
    sliding: f64,
    aligned: f64,
}

pub struct SampleArgs<'a> {
    pub length: usize,
    pub seed: u64,
    pub cap: usize,
    pub words: &'a [String],
    pub output: Option<&'a std::path::Path>,
}

pub fn sample(s: &Session, args: &SampleArgs<'_>) -> Result<Outcome, CliError> {
    let (_, code): (_, CodeEnumeration) = s.code(args.cap)?;
    let sample = sample_champernowne(&code, &s.rho()?, args.length, args.seed)?;
    if let Some(path) = args.output {
        let digits = Word::from(sample.digits()).render();
        std::fs::write(path, digits + "\n")
            .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    }
    let mut frequencies = Vec::new();
    for w in args.words {
        let x = parse_word(w)?;
        frequencies.push(FrequencyOut { word: x.render(), sliding: sample.frequency(&x), aligned: sample.aligned_frequency(&x) });
    }
    let out = SampleOut {
        beta: s.beta(),
        length: sample.len(),
        seed: args.seed,
        words_drawn: sample.words_drawn,
        prefix: Word::from(&sample.digits()[..sample.len().min(60)]).render(),
        frequencies,
    };
    let mut text = format!("beta    {}\nlength  {}\nseed    {}\nwords   {}\nprefix  {}\n", out.beta, out.length, out.seed, out.words_drawn, out.prefix);
    for f in &out.frequencies {
        writeln!(text, "freq[{}]  sliding {:.6}  aligned {:.6}", f.word, f.sliding, f.aligned).unwrap();
    }
    Ok(Outcome::new(Status::Ok, &out, text))
}
