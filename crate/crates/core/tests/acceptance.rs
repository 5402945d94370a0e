//! Acceptance suite: one PASS/FAIL line per criterion, each under its time
//! limit. Pass criterion numbers as arguments to run a subset:
//! `cargo test --release -p spexlab --test acceptance -- 7 8`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spexlab::graph::{
    complete, empty, forest_join_cl_free, has_cycle_of_length, join, star, Graph, PathPartition,
};
use spexlab::join_series::{solve_rho_by_series, MultipartiteSpec, Part};
use spexlab::lemmas::{
    balance4_sweep, balance5_sweep, binomial_sum_sweep, check_g_function, crossing_series_sweep,
    g_value, linspace, path_shift_sweep, walk_difference_sweep, BalanceSweep, GFunction,
    LemmaReport, NamedGraph, Tally, Verdict,
};
use spexlab::spectral::{apply_edits, rewire_gain, spectral_radius};
use spexlab::spex::{brute_force_spex, restricted_spex, Source};

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn rho(g: &Graph) -> f64 {
    spectral_radius::<f64>(g, 1e-12).expect("eigensolve").rho
}

/// PASS iff every report has the wanted verdict.
fn all_pass(reports: &[LemmaReport]) -> Outcome {
    let t = Tally::of(reports);
    let summary = format!("{} PASS, {} FAIL, {} INCONCLUSIVE", t.pass, t.fail, t.inconclusive);
    if t.pass == reports.len() && !reports.is_empty() {
        Ok(summary)
    } else {
        let first = reports.iter().find(|r| r.verdict != Verdict::Pass);
        Err(format!("{summary}; first non-PASS: {first:?}"))
    }
}

fn min_margin(reports: &[LemmaReport]) -> f64 {
    reports
        .iter()
        .filter_map(|r| r.margin)
        .fold(f64::INFINITY, f64::min)
}

fn c1_walk_difference() -> Outcome {
    let reports = walk_difference_sweep(12, 12).map_err(|e| e.to_string())?;
    all_pass(&reports)
}

fn c2_binomial_sum() -> Outcome {
    let reports = binomial_sum_sweep(15, 60).map_err(|e| e.to_string())?;
    all_pass(&reports)
}

fn c3_crossing_series() -> Outcome {
    let reports = crossing_series_sweep(&[10, 25, 40], 20, 50.0).map_err(|e| e.to_string())?;
    let expected: usize = [10, 25, 40].iter().map(|n| n - 2).sum();
    if reports.len() != expected {
        return Err(format!("{} reports, expected {expected}", reports.len()));
    }
    all_pass(&reports).map(|s| format!("{s}; min relative slack {:.3e}", min_margin(&reports)))
}

fn c4_path_shift() -> Outcome {
    let hs = [NamedGraph::complete(1), NamedGraph::complete(2)];
    let ts = [NamedGraph::path(0), NamedGraph::edgeless(5), NamedGraph::path(5)];
    let reports = path_shift_sweep(20, &hs, &ts, 1e-12).map_err(|e| e.to_string())?;
    let greater = reports.iter().all(|r| r.rho1 > r.rho2 || r.margin.is_some_and(|m| m > 0.0));
    if !greater {
        return Err("a PASS without a positive margin".into());
    }
    all_pass(&reports).map(|s| format!("{s}; min margin {:.3e}", min_margin(&reports)))
}

fn balance(reports: Vec<LemmaReport>, count: usize) -> Outcome {
    if reports.len() != count {
        return Err(format!("{} tuples, expected {count}", reports.len()));
    }
    if reports.iter().any(|r| r.margin.is_none()) {
        return Err("margin missing".into());
    }
    all_pass(&reports).map(|s| format!("{s}; min margin {:.3e}", min_margin(&reports)))
}

fn c5_balance4() -> Outcome {
    let cfg = BalanceSweep {
        count: 50,
        total: 130,
        seed: 1,
        tol: 1e-12,
    };
    balance(balance4_sweep(&cfg).map_err(|e| e.to_string())?, 50)
}

fn c6_balance5() -> Outcome {
    let cfg = BalanceSweep {
        count: 25,
        total: 310,
        seed: 1,
        tol: 1e-12,
    };
    balance(balance5_sweep(&cfg).map_err(|e| e.to_string())?, 25)
}

/// Random forest on `m` vertices: random edges kept when they join two trees.
fn random_forest(rng: &mut ChaCha8Rng, m: usize) -> Graph {
    let mut g = Graph::new(m);
    if m < 2 {
        return g;
    }
    let mut root: Vec<usize> = (0..m).collect();
    fn find(root: &mut [usize], mut v: usize) -> usize {
        while root[v] != v {
            root[v] = root[root[v]];
            v = root[v];
        }
        v
    }
    let attempts = rng.gen_range(0..=2 * m);
    for _ in 0..attempts {
        let u = rng.gen_range(0..m);
        let v = rng.gen_range(0..m);
        let (ru, rv) = (find(&mut root, u), find(&mut root, v));
        if ru != rv {
            root[ru] = rv;
            g.add_edge(u, v);
        }
    }
    g
}

fn c7_series_root() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut specs: Vec<(String, MultipartiteSpec)> = Vec::new();
    for i in 0..100 {
        let r = if i % 2 == 0 { 2 } else { 3 };
        let parts = (0..r)
            .map(|_| {
                let size = rng.gen_range(1..=60 / r);
                let h = rng.gen_range(0..=size);
                Part::new(size, random_forest(&mut rng, h)).unwrap()
            })
            .collect();
        specs.push((format!("random #{i}"), MultipartiteSpec::new(parts).unwrap()));
    }
    let ind = |s: usize| Part::independent(s).unwrap();
    specs.push(("K_{2,4}".into(), MultipartiteSpec::new(vec![ind(2), ind(4)]).unwrap()));
    specs.push(("K1 v Kbar_50".into(), MultipartiteSpec::new(vec![ind(1), ind(50)]).unwrap()));
    let forest = PathPartition::new(vec![6, 6, 6]).realize();
    specs.push((
        "K2 v (P6+P6+P6)".into(),
        MultipartiteSpec::new(vec![Part::spanning(complete(2)).unwrap(), Part::spanning(forest).unwrap()]).unwrap(),
    ));
    let closed = [
        (specs.len() - 3, 8f64.sqrt()),
        (specs.len() - 2, 50f64.sqrt()),
    ];
    let mut worst = 0f64;
    let mut heuristic = 0;
    for (k, (name, spec)) in specs.iter().enumerate() {
        let root = solve_rho_by_series(spec, 1e-12).map_err(|e| format!("{name}: {e}"))?;
        heuristic += usize::from(root.heuristic);
        let direct = rho(&spec.realize());
        let err = (root.rho - direct).abs();
        worst = worst.max(err);
        if err > 1e-7 {
            return Err(format!("{name}: series {} vs eigensolve {direct}", root.rho));
        }
        if let Some(&(_, exact)) = closed.iter().find(|(i, _)| *i == k) {
            if (root.rho - exact).abs() > 1e-8 {
                return Err(format!("{name}: series {} vs closed form {exact}", root.rho));
            }
        }
    }
    Ok(format!("{} specs, max |series − eigensolve| {worst:.2e}, {heuristic} in the heuristic tail regime", specs.len()))
}

fn c8_closed_forms() -> Outcome {
    let mut worst = 0f64;
    for n in 4..=50 {
        let g = join(&empty(2), &empty(n - 2));
        let err = (rho(&g) - ((2 * n - 4) as f64).sqrt()).abs();
        worst = worst.max(err);
        if err > 1e-9 {
            return Err(format!("K_(2,{}): error {err:e}", n - 2));
        }
    }
    for m in 1..=400 {
        let err = (rho(&star(m)) - (m as f64).sqrt()).abs();
        worst = worst.max(err);
        if err > 1e-9 {
            return Err(format!("K1 v Kbar{m}: error {err:e}"));
        }
    }
    Ok(format!("47 bipartite + 400 stars, max error {worst:.2e}"))
}

/// Truncation toward zero to two decimals.
fn two_decimals(x: f64) -> f64 {
    (x * 100.0).trunc() / 100.0
}

fn c9_g_functions() -> Outcome {
    let g4 = g_value(GFunction::Balance4, 130f64.sqrt());
    let g5 = g_value(GFunction::Balance5, 310f64.sqrt());
    if !(g4 < 0.0 && g5 < 0.0) {
        return Err(format!("signs: {g4}, {g5}"));
    }
    if two_decimals(g4) != -0.01 || two_decimals(g5) != -0.35 {
        return Err(format!("leading digits: {g4}, {g5}"));
    }
    let mut reports = Vec::new();
    for w in [GFunction::Balance4, GFunction::Balance5] {
        reports.push(check_g_function(w, &linspace(w.domain_start(), 100.0, 50)).map_err(|e| e.to_string())?);
    }
    all_pass(&reports).map(|s| format!("g4(√130) = {g4:.6}, g5(√310) = {g5:.6}; grid {s}"))
}

fn c10_observation() -> Outcome {
    let mut checked = 0;
    for m in 0..=12 {
        for pp in PathPartition::enumerate(m, None) {
            let g = join(&complete(2), &pp.realize());
            for ell in 5..=15 {
                let fast = forest_join_cl_free(&pp, ell);
                let slow = !has_cycle_of_length(&g, ell);
                if fast != slow {
                    return Err(format!("{pp}, ell = {ell}: observation {fast}, search {slow}"));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (partition, ell) pairs agree"))
}

fn c11_containment() -> Outcome {
    let mut lines = Vec::new();
    for n in 5..=7 {
        for ell in 5..=n {
            let b = brute_force_spex(n, ell, Source::Internal).map_err(|e| e.to_string())?;
            let r = restricted_spex(n, ell).map_err(|e| e.to_string())?;
            let (bw, rw) = (b.winner.expect("brute winner"), r.winner.expect("restricted winner"));
            if bw.rho < rw.rho - 1e-9 {
                return Err(format!("(n, ell) = ({n}, {ell}): brute {} < restricted {}", bw.rho, rw.rho));
            }
            if !b.verification.is_some_and(|v| v.ok()) {
                return Err(format!("(n, ell) = ({n}, {ell}): brute winner failed re-verification"));
            }
            lines.push(format!("({n},{ell}) {:.6}≥{:.6}", bw.rho, rw.rho));
        }
    }
    Ok(lines.join(" "))
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let p = rng.gen_range(0.05..0.6);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

fn c12_rayleigh() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut worst = f64::INFINITY;
    let mut done = 0;
    while done < 500 {
        let n = rng.gen_range(3..=30);
        let g = random_graph(&mut rng, n);
        let edges: Vec<(usize, usize)> = g.edges().collect();
        let non_edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !g.has_edge(u, v))
            .collect();
        let (removed, added) = match done % 3 {
            0 if !non_edges.is_empty() => (vec![], vec![non_edges[rng.gen_range(0..non_edges.len())]]),
            1 if !edges.is_empty() => (vec![edges[rng.gen_range(0..edges.len())]], vec![]),
            2 if !edges.is_empty() && !non_edges.is_empty() => (
                vec![edges[rng.gen_range(0..edges.len())]],
                vec![non_edges[rng.gen_range(0..non_edges.len())]],
            ),
            _ => continue,
        };
        let before = spectral_radius::<f64>(&g, 1e-12).map_err(|e| e.to_string())?;
        let after = rho(&apply_edits(&g, &removed, &added).map_err(|e| e.to_string())?);
        let gain = rewire_gain(&g, &removed, &added, &before.perron).map_err(|e| e.to_string())?;
        let slack = after - before.rho - gain;
        worst = worst.min(slack);
        if slack < -1e-9 {
            return Err(format!("n = {n}, removed {removed:?}, added {added:?}: slack {slack:e}"));
        }
        done += 1;
    }
    Ok(format!("500 edits, min slack {worst:.2e}"))
}

const CRITERIA: &[Criterion] = &[
    Criterion { id: 1, name: "walk-difference identity, n1 <= 12, lengths <= 12", limit: Duration::from_secs(10), run: c1_walk_difference },
    Criterion { id: 2, name: "binomial-sum bound, ell <= 15, n <= 60", limit: Duration::from_secs(1), run: c2_binomial_sum },
    Criterion { id: 3, name: "crossing-walk series bound, n in {10,25,40}", limit: Duration::from_secs(30), run: c3_crossing_series },
    Criterion { id: 4, name: "path-shift sweep, n1 <= 20", limit: Duration::from_secs(60), run: c4_path_shift },
    Criterion { id: 5, name: "four-path balancing, 50 tuples at 130", limit: Duration::from_secs(300), run: c5_balance4 },
    Criterion { id: 6, name: "five-path balancing, 25 tuples at 310", limit: Duration::from_secs(600), run: c6_balance5 },
    Criterion { id: 7, name: "series root vs eigensolve, 100 random specs + anchors", limit: Duration::from_secs(120), run: c7_series_root },
    Criterion { id: 8, name: "closed forms K_(2,n-2) and stars", limit: Duration::from_secs(60), run: c8_closed_forms },
    Criterion { id: 9, name: "g-function signs and leading digits", limit: Duration::from_secs(60), run: c9_g_functions },
    Criterion { id: 10, name: "forest-join C_ell test vs cycle search, order <= 12", limit: Duration::from_secs(300), run: c10_observation },
    Criterion { id: 11, name: "brute force contains restricted search, n <= 7", limit: Duration::from_secs(600), run: c11_containment },
    Criterion { id: 12, name: "Rayleigh bound on 500 single-edge edits", limit: Duration::from_secs(60), run: c12_rayleigh },
];

fn main() -> ExitCode {
    let wanted: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    let mut ran = 0;
    for c in CRITERIA.iter().filter(|c| wanted.is_empty() || wanted.contains(&c.id)) {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= c.limit => (true, d),
            Ok(d) => (false, format!("over time limit; {d}")),
            Err(e) => (false, e),
        };
        failed += usize::from(!ok);
        ran += 1;
        println!(
            "{} {:>2} {} [{:.2} s / {} s] {}",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            c.limit.as_secs(),
            detail
        );
    }
    println!("acceptance: {} of {ran} criteria passed", ran - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
