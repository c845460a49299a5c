// Edges more fragile than sigma never close a cycle of at most sigma + 1
// edges, so there are few of them.
//
// Run with `cargo run --example girth_bound`.

use resilient_spanner::fragility::{all_fragilities, girth_bound, high_fragility_budget};
use resilient_spanner::generators::random_connected;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g = random_connected(80, 160, 5, 1)?;
    let fm = all_fragilities(&g);
    for sigma in 2..=6 {
        let b = girth_bound(&g, sigma, &fm);
        let girth = match b.girth.finite() {
            Some(len) => format!("girth {len}"),
            None => "no cycles".to_owned(),
        };
        println!(
            "sigma={sigma}: {} edges with fragility > {sigma} (scale {:.0}), {girth}",
            b.high_fragility_edges,
            high_fragility_budget(g.n(), sigma),
        );
        assert!(b.holds);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
