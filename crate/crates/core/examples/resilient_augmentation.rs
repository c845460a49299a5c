// Turning a greedy 3-spanner into a 3-resilient one and inspecting the
// backup cycles that were added.
//
// Run with `cargo run --example resilient_augmentation`.

use resilient_spanner::fragility::all_fragilities;
use resilient_spanner::generators::random_connected;
use resilient_spanner::resilient::fragility_classes;
use resilient_spanner::{greedy_spanner, make_resilient, verify_resilient, verify_spanner};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g = random_connected(60, 180, 3, 1)?;
    let sigma = 3;
    let s = greedy_spanner(&g, 3)?;
    let before = verify_resilient(&g, &s.subgraph, sigma)?;
    println!(
        "greedy 3-spanner: {} of {} edges, {} resilience violations",
        s.size(),
        g.m(),
        before.violations.len()
    );

    let out = make_resilient(&g, &s, sigma)?;
    let r = &out.resilient.subgraph;
    println!(
        "added {} edges over {} backup cycles",
        out.added.len(),
        out.cycles.len()
    );
    for c in out.cycles.iter().take(5) {
        println!(
            "  edge {} backed by {:?} ({} new edges)",
            c.edge, c.path.vertices, c.new_edges
        );
    }

    let stats = out.cycle_stats();
    println!(
        "cycle union: {} edges ({} new, {} cross), {} vertices",
        stats.union_edges, stats.new_edges, stats.cross_edges, stats.union_vertices
    );
    let classes = fragility_classes(&g, &s.subgraph, sigma, &all_fragilities(&g));
    println!("fragility classes (low, mid, high): {:?}", classes.sizes());

    let after = verify_resilient(&g, r, sigma)?;
    let distortion = verify_spanner(&g, r, 3.0, 0.0)?;
    println!("resilient={} spanner={}", after.holds, distortion.holds);
    assert!(after.holds && distortion.holds);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
