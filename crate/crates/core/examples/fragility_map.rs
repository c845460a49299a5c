// Per-edge fragility of a small weighted graph, and which edges are bridges.
//
// Run with `cargo run --example fragility_map`.

use resilient_spanner::fragility::all_fragilities;
use resilient_spanner::{bridges, distance_avoiding_edge, Graph};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // A 4-cycle with a heavy chord and a pendant vertex.
    let g = Graph::new(
        5,
        &[
            (0, 1, 1.0),
            (1, 2, 1.0),
            (2, 3, 1.0),
            (3, 0, 1.0),
            (0, 2, 3.0),
            (3, 4, 2.0),
        ],
    )?;
    let fm = all_fragilities(&g);
    for (id, (e, f)) in fm.iter().enumerate() {
        let (detour, _) = distance_avoiding_edge(&g, e.u, e.v, id);
        println!("edge {e} w={} detour={detour} fragility={f}", g.weight(id));
    }
    let pendant: Vec<String> = bridges(&g)
        .into_iter()
        .map(|id| g.edge(id).to_string())
        .collect();
    println!("bridges: {}", pendant.join(" "));
    for (f, count) in fm.histogram() {
        println!("  {count} edge(s) with fragility {f}");
    }
    assert_eq!(pendant.len(), 1);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
