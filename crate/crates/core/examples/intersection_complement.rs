// The k-subsets-of-a-3k-set family: every edge sits in exactly one
// triangle, so deleting one edge per triangle leaves a 2-spanner that is
// not 2-resilient.
//
// Run with `cargo run --example intersection_complement`.

use resilient_spanner::fragility::all_fragilities;
use resilient_spanner::generators::{
    intersection_complement, intersection_complement_counts, triangle_deleted_spanner,
};
use resilient_spanner::{verify_resilient, verify_spanner};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for k in 1..=3 {
        let g = intersection_complement(k)?;
        let (n, degree, m) = intersection_complement_counts(k);
        assert_eq!((g.n(), g.m()), (n, m));
        let fm = all_fragilities(&g);
        let s = triangle_deleted_spanner(&g)?;
        let stretch = verify_spanner(&g, &s.subgraph, 2.0, 0.0)?;
        let resilience = verify_resilient(&g, &s.subgraph, 2)?;
        println!(
            "k={k}: n={n} degree={degree} m={m} fragilities {} spanner edges={} 2-spanner={} 2-resilient={}",
            fm.histogram()
                .iter()
                .map(|(f, c)| format!("{c}x{f}"))
                .collect::<Vec<_>>()
                .join(" "),
            s.size(),
            stretch.holds,
            resilience.holds
        );
        if let Some(v) = resilience.violations.first() {
            println!(
                "  e.g. {}: fragility {} in the spanner, {} in the host",
                v.edge, v.in_subgraph, v.in_host
            );
        }
        assert!(stretch.holds && !resilience.holds);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
