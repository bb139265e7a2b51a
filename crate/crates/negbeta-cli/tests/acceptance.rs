//! Runs every built-in criterion and prints one line each.

use std::process::ExitCode;
use std::thread;

use negbeta_cli::verify::{self, CRITERIA};

fn main() -> ExitCode {
    let handles: Vec<_> = (1..=CRITERIA).map(|id| thread::spawn(move || verify::run(id))).collect();
    let results: Vec<_> = handles.into_iter().map(|h| h.join().expect("criterion thread")).collect();
    for r in &results {
        println!("{} ({:.1}s)", verify::summary_line(r), r.seconds);
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
