//! Runs every acceptance criterion on its desk-scale symmetries and prints one
//! line per criterion. Exits non-zero if any criterion fails.

use std::process::ExitCode;

use hecke_cli::suite::{criterion, CRITERIA};
use hecke_core::linalg::default_sample_points;
use hecke_core::Status;

fn main() -> ExitCode {
    let points = default_sample_points();
    let mut failed = 0;
    for (i, name) in CRITERIA.iter().enumerate() {
        let id = i + 1;
        let rep = criterion(id, &points);
        let skipped = rep.checks.iter().filter(|c| c.status == Status::Skip).count();
        if rep.all_passed() {
            println!("PASS {id:>2} {name} ({} checks, {skipped} skipped)", rep.checks.len());
        } else {
            failed += 1;
            println!("FAIL {id:>2} {name}");
            for c in rep.failures() {
                println!("       {}: {}", c.name, c.detail.as_deref().unwrap_or(""));
            }
        }
    }
    println!("{} of {} criteria pass", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
