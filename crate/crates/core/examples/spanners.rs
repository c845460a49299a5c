// The three classical constructions on one random graph, each checked by the
// exhaustive distortion verifier.
//
// Run with `cargo run --example spanners`.

use resilient_spanner::generators::random_connected;
use resilient_spanner::{
    additive2_spanner, fault_tolerant_spanner, greedy_spanner, verify_fault_tolerance,
    verify_spanner,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g = random_connected(40, 160, 7, 1)?;
    println!("host: n={} m={}", g.n(), g.m());

    for t in [1, 3, 5, 7] {
        let s = greedy_spanner(&g, t)?;
        let report = verify_spanner(&g, &s.subgraph, s.alpha, s.beta)?;
        println!(
            "greedy t={t}: {} edges, max stretch {:.2}, holds={}",
            s.size(),
            report.max_stretch,
            report.holds
        );
        assert!(report.holds);
    }

    let s = additive2_spanner(&g)?;
    let report = verify_spanner(&g, &s.subgraph, 1.0, 2.0)?;
    let worst = report.worst.expect("connected host has pairs");
    println!(
        "additive +2: {} edges, worst pair ({}, {}) {} -> {}",
        s.size(),
        worst.x,
        worst.y,
        worst.host,
        worst.sub
    );
    assert!(report.holds);

    let s = fault_tolerant_spanner(&g, 3, 1)?;
    let ft = verify_fault_tolerance(&g, &s.subgraph, 3.0, 1)?;
    println!(
        "1-fault-tolerant t=3: {} edges, {} failure sets checked, holds={}",
        s.size(),
        ft.failure_sets_checked,
        ft.holds
    );
    assert!(ft.holds);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
