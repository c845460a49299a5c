//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the summary is printed even when
//! every criterion passes.

mod common;

use std::path::Path as FsPath;
use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use resilient_spanner::fragility::{all_fragilities, fragility_oracle};
use resilient_spanner::generators::{
    complete, cycle, gen_fragility_gap_gadget, grid, intersection_complement, random_bridgeless,
    random_connected, star, triangle_deleted_spanner,
};
use resilient_spanner::io::{read_edge_list, write_edge_list};
use resilient_spanner::report::{emit_report, parse_report};
use resilient_spanner::resilient::{backup_cycle, cycle_union_budget, EdgeSet};
use resilient_spanner::spanners::fault_tolerant_fragility_bound;
use resilient_spanner::*;

/// Fitted once from the first run (largest observed |R| / n^1.5 was 0.327
/// at n = 128) and frozen with a 10% margin.
const SIZE_CONSTANT: f64 = 0.36;

type Outcome = Result<String, String>;
type Criterion = Box<dyn FnOnce(&mut Vec<AugmentationRun>) -> Outcome>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    ensure(start.elapsed() <= limit, || {
        format!("took {:.1?}, limit {:.0?}", start.elapsed(), limit)
    })
}

fn random_graph(
    rng: &mut ChaCha8Rng,
    n_range: std::ops::RangeInclusive<usize>,
    max_w: u32,
) -> Graph {
    let n = rng.gen_range(n_range);
    let most = (3 * n).min(n * (n - 1) / 2);
    let m = rng.gen_range(n - 1..=most);
    random_connected(n, m, rng.gen(), max_w).unwrap()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut edges = 0;
    for i in 0..200 {
        let max_w = if i % 2 == 0 { 1 } else { 8 };
        let g = random_graph(&mut rng, 4..=40, max_w);
        let fm = all_fragilities(&g);
        for (e, f) in fm.iter() {
            let oracle = oracle_fragility(&g, e);
            ensure(f.value() == oracle, || {
                format!("{e}: {} vs oracle {oracle}", f.value())
            })?;
            ensure(fragility_oracle(&g, e).unwrap() == f, || {
                format!("{e}: library oracle disagrees")
            })?;
            edges += 1;
        }
    }
    within(Duration::from_secs(60), start)?;
    Ok(format!("200 graphs, {edges} edges, exact equality"))
}

struct AugmentationRun {
    n: usize,
    new_edges: usize,
    union_edges: usize,
    budget: f64,
}

fn criterion_2(runs: &mut Vec<AugmentationRun>) -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut count = 0;
    for _ in 0..100 {
        let g = random_graph(&mut rng, 10..=60, 1);
        let bases = [
            ("greedy:3", greedy_spanner(&g, 3).unwrap()),
            ("greedy:5", greedy_spanner(&g, 5).unwrap()),
            ("additive2", additive2_spanner(&g).unwrap()),
            ("ft:3", fault_tolerant_spanner(&g, 3, 1).unwrap()),
        ];
        for (name, s) in &bases {
            for sigma in 3..=5u32 {
                if f64::from(sigma) < s.alpha + s.beta {
                    continue;
                }
                let out = make_resilient(&g, s, sigma).unwrap();
                let r = &out.resilient.subgraph;
                let res = verify_resilient(&g, r, sigma).unwrap();
                ensure(res.holds, || {
                    format!("{name} sigma={sigma}: {:?}", res.violations)
                })?;
                let dist = verify_spanner(&g, r, s.alpha, s.beta).unwrap();
                ensure(dist.holds, || {
                    format!("{name} sigma={sigma}: {:?}", dist.worst)
                })?;
                let stats = out.cycle_stats();
                runs.push(AugmentationRun {
                    n: g.n(),
                    new_edges: stats.new_edges,
                    union_edges: stats.union_edges,
                    budget: cycle_union_budget(g.n(), stats.cycles),
                });
                count += 1;
            }
        }
    }
    within(Duration::from_secs(300), start)?;
    Ok(format!(
        "100 graphs, {count} augmentations, zero violations"
    ))
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checks = 0;
    for i in 0..200 {
        let g = random_graph(&mut rng, 4..=40, if i % 4 == 0 { 6 } else { 1 });
        for sigma in 2..=6 {
            ensure(check_girth_bound(&g, sigma), || {
                format!("graph {i}, sigma={sigma}")
            })?;
            checks += 1;
        }
    }
    Ok(format!("200 graphs, {checks} checks"))
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn criterion_4() -> Outcome {
    let mut lines = Vec::new();
    for k in 1..=3 {
        let g = intersection_complement(k).unwrap();
        let n = binomial(3 * k, k);
        let degree = binomial(2 * k, k);
        ensure(g.n() == n, || format!("k={k}: n={} expected {n}", g.n()))?;
        ensure((0..n).all(|x| g.degree(x) == degree), || {
            format!("k={k}: degree")
        })?;
        ensure(g.m() == n * degree / 2, || format!("k={k}: m={}", g.m()))?;
        if k == 2 {
            ensure(g.n() == 15 && g.m() == 45, || "k=2 counts".into())?;
        }
        if k == 3 {
            ensure(g.n() == 84 && g.m() == 840, || "k=3 counts".into())?;
        }

        let mut adjacent = vec![vec![false; n]; n];
        for e in g.edges() {
            adjacent[e.u][e.v] = true;
            adjacent[e.v][e.u] = true;
        }
        for e in g.edges() {
            let triangles = (0..n)
                .filter(|&z| adjacent[e.u][z] && adjacent[e.v][z])
                .count();
            ensure(triangles == 1, || {
                format!("k={k}: {e} in {triangles} triangles")
            })?;
        }
        for (e, f) in all_fragilities(&g).iter() {
            ensure(f == Fragility::ratio(2.0, 1.0), || {
                format!("k={k}: frag({e}) = {f}")
            })?;
        }
        for &e in g.edges().iter().step_by(1 + g.m() / 30) {
            ensure(oracle_fragility(&g, e) == 2.0, || {
                format!("k={k}: oracle frag({e})")
            })?;
        }

        let s = triangle_deleted_spanner(&g).unwrap();
        ensure(s.size() == g.m() * 2 / 3, || {
            format!("k={k}: spanner size {}", s.size())
        })?;
        let dist = verify_spanner(&g, &s.subgraph, 2.0, 0.0).unwrap();
        ensure(dist.holds, || {
            format!("k={k}: triangle-deleted is not a 2-spanner")
        })?;
        ensure(oracle_distortion(&g, &s.subgraph, 2.0, 0.0), || {
            format!("k={k}: oracle distortion")
        })?;
        let res = verify_resilient(&g, &s.subgraph, 2).unwrap();
        ensure(!res.holds, || {
            format!("k={k}: triangle-deleted spanner is 2-resilient")
        })?;
        ensure(!oracle_resilient(&g, &s.subgraph, 2), || {
            format!("k={k}: oracle says resilient")
        })?;
        lines.push(format!("k={k}: n={n} m={} deg={degree}", g.m()));
    }
    Ok(lines.join("; "))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        let n = rng.gen_range(6..=16);
        let m = rng.gen_range(n..=(2 * n).min(n * (n - 1) / 2));
        let g = random_bridgeless(n, m, rng.gen(), if i % 2 == 0 { 1 } else { 4 }).unwrap();
        for t in [3u32, 5] {
            let s = fault_tolerant_spanner(&g, t, 1).unwrap();
            let ft = verify_fault_tolerance(&g, &s.subgraph, f64::from(t), 1).unwrap();
            ensure(ft.holds, || format!("graph {i}, t={t}: not fault tolerant"))?;
            let bound = fault_tolerant_fragility_bound(&g, &s.subgraph, f64::from(t)).unwrap();
            ensure(bound.max_ratio <= f64::from(t), || {
                format!(
                    "graph {i}, t={t}: ratio {} at {:?}",
                    bound.max_ratio, bound.worst_edge
                )
            })?;
            worst = worst.max(bound.max_ratio / f64::from(t));
        }
    }
    let mut gadgets = Vec::new();
    for t in [4u32, 6] {
        let gadget = gen_fragility_gap_gadget(t).unwrap();
        let (g, s) = (&gadget.graph, &gadget.spanner.subgraph);
        let ft = verify_fault_tolerance(g, s, f64::from(t), 1).unwrap();
        ensure(ft.holds, || format!("gadget t={t}: not fault tolerant"))?;
        let host = oracle_fragility(g, gadget.edge);
        let sub = oracle_fragility(s, gadget.edge);
        ensure(sub / host >= f64::from(t) / 2.0, || {
            format!("gadget t={t}: ratio {sub}/{host}")
        })?;
        gadgets.push(format!("t={t}: {sub}/{host}"));
    }
    Ok(format!(
        "50 graphs, max ratio/t {worst:.3}; gadgets {}",
        gadgets.join(", ")
    ))
}

fn criterion_6(runs: &[AugmentationRun]) -> Outcome {
    ensure(!runs.is_empty(), || "criterion 2 produced no runs".into())?;
    let mut constant: f64 = 0.0;
    for (i, r) in runs.iter().enumerate() {
        ensure(r.new_edges <= 2 * r.n, || {
            format!("run {i}: {} new edges, n={}", r.new_edges, r.n)
        })?;
        if r.budget > 0.0 {
            let c = r.union_edges as f64 / r.budget;
            ensure(c <= 5.0, || {
                format!("run {i}: union {} vs budget {:.1}", r.union_edges, r.budget)
            })?;
            constant = constant.max(c);
        }
    }
    Ok(format!(
        "{} runs, max union/budget {constant:.3}",
        runs.len()
    ))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut fitted: f64 = 0.0;
    for n in [128usize, 256, 512] {
        for seed in 0..5 {
            let g = random_connected(n, 4 * n, seed, 1).unwrap();
            let s = greedy_spanner(&g, 3).unwrap();
            let out = make_resilient(&g, &s, 3).unwrap();
            let r = &out.resilient.subgraph;
            ensure(r.m() >= s.size() && s.subgraph.is_subgraph_of(r), || {
                format!("n={n} seed={seed}: R does not contain S")
            })?;
            let c = r.m() as f64 / (n as f64).powf(1.5);
            ensure(c <= SIZE_CONSTANT, || {
                format!("n={n} seed={seed}: |R|/n^1.5 = {c:.4}")
            })?;
            fitted = fitted.max(c);
        }
    }
    within(Duration::from_secs(600), start)?;
    Ok(format!(
        "max |R|/n^1.5 = {fitted:.4} <= C = {SIZE_CONSTANT}"
    ))
}

fn check_reuse(g: &Graph, used_edges: &[Edge], e: Edge) -> Result<(), String> {
    let used = EdgeSet::from_edges(g, used_edges.iter().copied()).unwrap();
    let got = backup_cycle(g, g.edge_id(e).unwrap(), &used);
    let is_used = |x: Edge| used_edges.contains(&x);
    match (got, min_new_edges_over_shortest_detours(g, e, &is_used)) {
        (None, None) => Ok(()),
        (Some(c), Some((len, fewest))) => ensure(
            c.path.is_valid_in(g) && c.path.weight == len && c.new_edges == fewest,
            || {
                format!(
                    "{e}: got {} new edges at length {}, best {fewest} at {len}",
                    c.new_edges, c.path.weight
                )
            },
        ),
        (got, expected) => Err(format!("{e}: {got:?} vs {expected:?}")),
    }
}

fn criterion_8() -> Outcome {
    let mut graphs = vec![
        cycle(12).unwrap(),
        complete(7).unwrap(),
        grid(3, 4).unwrap(),
        star(8).unwrap(),
        intersection_complement(1).unwrap(),
        gen_fragility_gap_gadget(4).unwrap().graph,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..150 {
        graphs.push(random_graph(
            &mut rng,
            3..=12,
            if i % 3 == 0 { 3 } else { 1 },
        ));
    }
    let mut calls = 0;
    for g in graphs.iter().filter(|g| g.n() <= 12) {
        for (t, sigma) in [(3, 3), (5, 5), (3, 4)] {
            let s = greedy_spanner(g, t).unwrap();
            let out = make_resilient(g, &s, sigma).unwrap();
            let mut used: Vec<Edge> = s.subgraph.edges().to_vec();
            for c in &out.cycles {
                check_reuse(g, &used, c.edge)?;
                used.extend(c.path.edges());
                used.sort();
                used.dedup();
                calls += 1;
            }
        }
        let base: Vec<Edge> = greedy_spanner(g, 3).unwrap().subgraph.edges().to_vec();
        let sparse: Vec<Edge> = g.edges().iter().copied().step_by(2).collect();
        for &e in g.edges() {
            check_reuse(g, &base, e)?;
            check_reuse(g, &sparse, e)?;
            check_reuse(g, &[], e)?;
            calls += 3;
        }
    }
    Ok(format!(
        "{} graphs, {calls} backup-cycle calls optimal",
        graphs.len()
    ))
}

fn rspan(args: &[&str], dir: &FsPath, single_thread: bool) -> Result<i32, String> {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_rspan"));
    cmd.args(args).current_dir(dir);
    if single_thread {
        cmd.env(SINGLE_THREAD_ENV, "1");
    } else {
        cmd.env_remove(SINGLE_THREAD_ENV);
    }
    let out = cmd.output().map_err(|e| e.to_string())?;
    out.status
        .code()
        .ok_or_else(|| format!("rspan {args:?} was killed"))
}

fn read(dir: &FsPath, name: &str) -> Result<String, String> {
    std::fs::read_to_string(dir.join(name)).map_err(|e| format!("{name}: {e}"))
}

fn untimed(text: &str) -> Result<String, String> {
    let report = parse_report(text).map_err(|e| e.to_string())?;
    Ok(emit_report(&report.without_timings()))
}

fn criterion_9() -> Outcome {
    // Library pipeline.
    for seed in 0..10 {
        let build = || {
            let g = random_connected(30, 75, seed, 4).unwrap();
            let s = fault_tolerant_spanner(&g, 3, 1).unwrap();
            let r = make_resilient(&g, &s, 3).unwrap();
            (
                write_edge_list(&s.subgraph),
                write_edge_list(&r.resilient.subgraph),
            )
        };
        ensure(build() == build(), || {
            format!("library pipeline differs for seed {seed}")
        })?;
    }

    // Command line, including single-threaded mode.
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let dir = dir.path();
    let mut compared = 0;
    for (seed, base) in [
        ("1", "greedy:3"),
        ("2", "additive2"),
        ("3", "ft:3"),
        ("4", "greedy:5"),
    ] {
        let mut outputs = Vec::new();
        for run in 0..3 {
            let graph = format!("g{run}.txt");
            let spanner = format!("r{run}.txt");
            let report = format!("r{run}.json");
            rspan(
                &["gen", "random", "40", "110", seed, "-o", &graph],
                dir,
                false,
            )?;
            let code = rspan(
                &[
                    "resilient",
                    "-i",
                    &graph,
                    "--sigma",
                    "5",
                    "--base",
                    base,
                    "-o",
                    &spanner,
                    "--report",
                    &report,
                ],
                dir,
                run == 2,
            )?;
            ensure(code == 0, || format!("resilient {base} exited {code}"))?;
            let text = read(dir, &report)?.replace(&graph, "G");
            outputs.push((read(dir, &graph)?, read(dir, &spanner)?, untimed(&text)?));
        }
        ensure(outputs.windows(2).all(|w| w[0] == w[1]), || {
            format!("{base}: outputs differ")
        })?;
        read_edge_list(&dir.join("r0.txt")).map_err(|e| e.to_string())?;
        compared += outputs.len();
    }
    let mut experiments = Vec::new();
    for run in 0..2 {
        let report = format!("e{run}.json");
        rspan(
            &[
                "experiment",
                "--suite",
                "correctness",
                "--sizes",
                "12,20",
                "--seeds",
                "2",
                "--report",
                &report,
            ],
            dir,
            run == 1,
        )?;
        experiments.push(untimed(&read(dir, &report)?)?);
    }
    ensure(experiments[0] == experiments[1], || {
        "experiment reports differ".into()
    })?;
    Ok(format!(
        "10 library pipelines, {compared} CLI runs, 2 experiment runs identical"
    ))
}

fn main() {
    let mut runs = Vec::new();
    let criteria: Vec<(&str, Criterion)> = vec![
        (
            "fragility equals the all-pairs oracle",
            Box::new(|_| criterion_1()),
        ),
        (
            "augmented spanners are resilient spanners",
            Box::new(criterion_2),
        ),
        (
            "fragile edges have large girth",
            Box::new(|_| criterion_3()),
        ),
        (
            "intersection-complement family",
            Box::new(|_| criterion_4()),
        ),
        (
            "fault-tolerant fragility ratio and gadget",
            Box::new(|_| criterion_5()),
        ),
        ("cycle union accounting", Box::new(|runs| criterion_6(runs))),
        (
            "resilient spanner size regression",
            Box::new(|_| criterion_7()),
        ),
        ("backup cycles reuse optimally", Box::new(|_| criterion_8())),
        ("determinism", Box::new(|_| criterion_9())),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = check(&mut runs);
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} PASS  {name} ({detail}) [{secs:.1}s]", i + 1),
            Err(reason) => {
                failed += 1;
                println!("criterion {} FAIL  {name}: {reason} [{secs:.1}s]", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}
