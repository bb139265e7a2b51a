use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use negbeta::expansion::DEFAULT_ITERATION_CAP;
use negbeta::gaps::DEFAULT_EXTENSION_RADIUS;
use negbeta::order::DEFAULT_ENUMERATION_CAP;
use negbeta_cli::commands::{self, MeasureArgs, SampleArgs};
use negbeta_cli::spec::{preset, PRESET_NAMES};
use negbeta_cli::verify;
use negbeta_cli::{BetaSpec, CliError, Outcome, Session, Status};
use serde_json::json;

#[derive(Parser)]
#[command(name = "negbeta", version, about = "Negative beta-shifts: expansions, codes, measures and gaps")]
struct Cli {
    #[command(flatten)]
    input: Input,
    /// Print a single JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Orbit steps searched for the period of d(l_β, β).
    #[arg(long, global = true, default_value_t = DEFAULT_ITERATION_CAP)]
    iteration_cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// JSON file describing the base.
    #[arg(long, global = true, conflicts_with_all = ["beta", "preset"])]
    spec: Option<PathBuf>,
    /// Inline JSON, e.g. '{"decimal":"-1.3"}'.
    #[arg(long, global = true, conflicts_with = "preset")]
    beta: Option<String>,
    /// Named base: minus-two, minus-golden, minus-gamma1, first-example, second-example, decimal:<x>.
    #[arg(long, global = true)]
    preset: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Digits of a point, by default l_β with its period.
    Expand {
        #[arg(long)]
        point: Option<String>,
        #[arg(long, default_value_t = 40)]
        count: usize,
    },
    /// The sequences d, d*, r* and r.
    Bounds {
        #[arg(long, default_value_t = 40)]
        digits: usize,
    },
    /// Position of β on the γ ladder.
    Regime,
    /// Support code of the maximal-entropy measure.
    Code {
        #[arg(long, default_value_t = 40)]
        cap: usize,
        /// Longest words printed.
        #[arg(long, default_value_t = 12)]
        show: usize,
    },
    /// Word counts by recurrence and by enumeration.
    Census {
        #[arg(long, default_value_t = 14)]
        len: usize,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        enumeration_cap: usize,
    },
    /// Kraft sum, average length, entropy and cylinder measures.
    Measure {
        #[arg(long, default_value_t = 40)]
        cap: usize,
        #[arg(long, default_value_t = 20)]
        entropy_len: usize,
        #[arg(long = "word")]
        words: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_EXTENSION_RADIUS)]
        radius: usize,
    },
    /// Compares the boundary series with the code series.
    Identity {
        #[arg(long, default_value_t = 25)]
        degree: usize,
    },
    /// Gap patterns and per-length gap table.
    Gaps {
        #[arg(long, default_value_t = 10)]
        max_len: usize,
        #[arg(long, default_value_t = DEFAULT_EXTENSION_RADIUS)]
        radius: usize,
        #[arg(long, default_value_t = 40)]
        cap: usize,
    },
    /// Champernowne-style sample of the maximal-entropy measure.
    Sample {
        #[arg(long, default_value_t = 1_000_000)]
        length: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 40)]
        cap: usize,
        #[arg(long = "word")]
        words: Vec<String>,
        /// Write the digits to this file.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Runs the built-in checks; no base needed.
    Verify {
        /// Run only this check.
        #[arg(long)]
        only: Option<u8>,
    },
}

fn load(input: &Input) -> Result<BetaSpec, CliError> {
    match (&input.spec, &input.beta, &input.preset) {
        (Some(path), _, _) => Ok(BetaSpec::load(path)?),
        (_, Some(text), _) => Ok(BetaSpec::parse(text)?),
        (_, _, Some(name)) => preset(name).ok_or_else(|| CliError::UnknownPreset(format!("{name} (known: {})", PRESET_NAMES.join(", ")))),
        _ => Err(CliError::MissingBase),
    }
}

fn verify_outcome(only: Option<u8>) -> Outcome {
    let results = match only {
        Some(id) => vec![verify::run(id)],
        None => verify::run_all(),
    };
    let passed = results.iter().all(|r| r.passed);
    let text = results.iter().map(|r| verify::summary_line(r) + "\n").collect();
    Outcome {
        status: if passed { Status::Ok } else { Status::CheckFailed },
        json: json!({ "passed": passed, "criteria": results }),
        text,
    }
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    if let Command::Verify { only } = cli.command {
        return Ok(verify_outcome(only));
    }
    let s = Session::from_spec(&load(&cli.input)?, cli.iteration_cap)?;
    match &cli.command {
        Command::Expand { point, count } => commands::expand(&s, point.as_deref(), *count),
        Command::Bounds { digits } => commands::bounds(&s, *digits),
        Command::Regime => commands::regime(&s),
        Command::Code { cap, show } => commands::code(&s, *cap, *show),
        Command::Census { len, enumeration_cap } => commands::census(&s, *len, *enumeration_cap),
        Command::Measure { cap, entropy_len, words, radius } => {
            commands::measure(&s, &MeasureArgs { cap: *cap, entropy_len: *entropy_len, words, radius: *radius })
        }
        Command::Identity { degree } => commands::identity(&s, *degree),
        Command::Gaps { max_len, radius, cap } => commands::gaps(&s, *max_len, *radius, *cap),
        Command::Sample { length, seed, cap, words, output } => commands::sample(
            &s,
            &SampleArgs { length: *length, seed: *seed, cap: *cap, words, output: output.as_deref() },
        ),
        Command::Verify { .. } => unreachable!("handled above"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&json!({ "status": out.status, "report": out.json })).expect("json"));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.status.exit_code())
        }
        Err(e) => {
            if cli.json {
                println!("{}", json!({ "status": Status::Inconclusive, "error": e.to_string() }));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(Status::Inconclusive.exit_code())
        }
    }
}
