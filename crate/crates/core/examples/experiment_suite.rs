// A batch experiment: resilient spanner sizes on sparse random graphs.
//
// Run with `cargo run --release --example experiment_suite`.

use resilient_spanner::experiment::run_suite;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let report = run_suite("resilient-size", &[32, 64], 2)?;
    println!(
        "{:>5} {:>6} {:>6} {:>6} {:>9}",
        "n", "m", "|S|", "|R|", "|R|/n^1.5"
    );
    for run in &report.runs {
        println!(
            "{:>5} {:>6} {:>6} {:>6} {:>9.3}",
            run.n,
            run.m,
            run.spanner_edges.unwrap_or(0),
            run.resilient_edges.unwrap_or(0),
            run.size_constant.unwrap_or(0.0)
        );
    }
    assert!(report.passed());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
