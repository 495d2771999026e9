//! One line per acceptance criterion; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use germkit::catalog::Catalog;
use germkit::suite::{build, run_criterion, CRITERIA};

const SEED: u64 = 7;

/// Wall-clock bounds in seconds, where one is set.
fn bound(id: usize) -> Option<u64> {
    match id {
        1 | 8 => Some(10),
        2 => Some(5),
        _ => None,
    }
}

fn main() -> ExitCode {
    let catalog = Catalog::builtin();
    let built = build(&catalog);
    let mut all = true;
    if !built.validation.is_empty() {
        all = false;
        println!("catalog validation: FAIL");
        for v in &built.validation {
            println!("    {v}");
        }
    }
    for id in 1..=CRITERIA {
        let start = Instant::now();
        let r = run_criterion(&built, id, SEED);
        let took = start.elapsed();
        let in_time = bound(id).is_none_or(|s| took <= Duration::from_secs(s));
        let ok = r.passed && in_time;
        all &= ok;
        let limit = bound(id).map_or(String::new(), |s| format!(", limit {s}s"));
        println!(
            "criterion {id:>2}: {} ({} checks, {:.2}s{limit}) {}",
            if ok { "PASS" } else { "FAIL" },
            r.checked,
            took.as_secs_f64(),
            r.title
        );
        for f in &r.failures {
            println!("    {f}");
        }
        if !in_time {
            println!("    exceeded the time limit");
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
