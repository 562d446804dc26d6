//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails. Pass criterion numbers as arguments to run a subset.

mod constructions;
mod determinism;
mod ideals;
mod oracles;
mod structure;
mod suite;

use std::panic;
use std::process::ExitCode;
use std::time::Instant;

type Criterion = (u32, &'static str, fn() -> String);

const CRITERIA: [Criterion; 11] = [
    (1, "axiom suite and mutation rejection", structure::axioms),
    (2, "White instance suite", ideals::white_instances),
    (3, "series-extension lifting", ideals::series_lifting),
    (4, "coloop anchor leaves the ideal unchanged", ideals::coloop_anchor),
    (5, "connection ideal from lifted factors", constructions::connection_lifting),
    (6, "closure under extensions, connections, 2-sums", constructions::closure),
    (7, "2-sum instances", constructions::two_sums),
    (8, "direct-sum/2-sum trees and excluded minors", constructions::trees),
    (9, "duality", structure::duality),
    (10, "connectivity", structure::connectivity),
    (11, "CLI determinism", determinism::cli_determinism),
];

fn panic_message(p: Box<dyn std::any::Any + Send>) -> String {
    p.downcast_ref::<String>()
        .cloned()
        .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
        .unwrap_or_else(|| "panic".into())
}

fn main() -> ExitCode {
    let wanted: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failures = 0;
    for (n, name, check) in CRITERIA {
        if !wanted.is_empty() && !wanted.contains(&n) {
            continue;
        }
        let start = Instant::now();
        let outcome = panic::catch_unwind(check);
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {n:>2}: {name} [{detail}] ({secs:.1}s)"),
            Err(p) => {
                failures += 1;
                println!("FAIL criterion {n:>2}: {name}: {} ({secs:.1}s)", panic_message(p));
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
