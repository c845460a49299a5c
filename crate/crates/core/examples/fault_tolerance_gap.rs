// Fault tolerance bounds the fragility ratio by t, yet an edge can still be
// t/2 times more fragile in the spanner than in the host.
//
// Run with `cargo run --example fault_tolerance_gap`.

use resilient_spanner::generators::{gen_fragility_gap_gadget, random_bridgeless};
use resilient_spanner::spanners::fault_tolerant_fragility_bound;
use resilient_spanner::{edge_fragility, fault_tolerant_spanner, verify_fault_tolerance};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g = random_bridgeless(24, 48, 11, 1)?;
    for t in [3, 5] {
        let s = fault_tolerant_spanner(&g, t, 1)?;
        let bound = fault_tolerant_fragility_bound(&g, &s.subgraph, f64::from(t))?;
        println!(
            "t={t}: {} edges, max fragility ratio {:.2}",
            s.size(),
            bound.max_ratio
        );
        assert!(bound.within_bound);
    }

    for t in [4, 6, 8] {
        let gadget = gen_fragility_gap_gadget(t)?;
        let ft = verify_fault_tolerance(&gadget.graph, &gadget.spanner.subgraph, f64::from(t), 1)?;
        let host = edge_fragility(&gadget.graph, gadget.edge)?;
        let sub = edge_fragility(&gadget.spanner.subgraph, gadget.edge)?;
        println!(
            "gadget t={t}: n={} edge {} fragility {host} -> {sub} (ratio {}), fault tolerant={}",
            gadget.graph.n(),
            gadget.edge,
            sub.ratio_to(host),
            ft.holds
        );
        assert!(ft.holds && sub.ratio_to(host) >= f64::from(t) / 2.0);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
