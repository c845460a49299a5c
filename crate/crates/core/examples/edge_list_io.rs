// Reading and writing the plain-text edge list format, and the JSON report
// produced for a run.
//
// Run with `cargo run --example edge_list_io`.

use resilient_spanner::fragility::all_fragilities;
use resilient_spanner::report::{emit_report, parse_report, Report};
use resilient_spanner::{parse_edge_list, write_edge_list};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let text = "# a weighted square\nn 4\n0 1 2.5\n1 2 1\n2 3 1\n3 0 1\n";
    let g = parse_edge_list(text)?;
    let written = write_edge_list(&g);
    print!("{written}");
    assert_eq!(parse_edge_list(&written)?, g);

    match parse_edge_list("0 1\n2 2\n") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!("self-loops are rejected"),
    }

    let mut report = Report::new("fragility");
    report.sizes.vertices = g.n();
    report.sizes.edges = g.m();
    report.set_fragilities(&all_fragilities(&g));
    let json = emit_report(&report);
    assert_eq!(parse_report(&json)?, report);
    println!("{json}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
