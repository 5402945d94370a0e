//! Parameter grids and seeded samples for the lemma checks. Reports come
//! back in generation order regardless of how the work was scheduled.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{
    check_binomial_sum, check_crossing_series, check_walk_difference, verify_balance4,
    verify_balance5, verify_path_shift, LemmaReport, NamedGraph,
};
use crate::error::Result;

/// `k` evenly spaced points from `a` to `b` inclusive.
pub fn linspace(a: f64, b: f64, k: usize) -> Vec<f64> {
    match k {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..k).map(|i| a + (b - a) * i as f64 / (k - 1) as f64).collect(),
    }
}

/// Every `3 ≤ n1 ≤ n1_max`, `0 ≤ n2 ≤ n1 − 2`, lengths `1..=max_len`.
pub fn walk_difference_sweep(n1_max: usize, max_len: usize) -> Result<Vec<LemmaReport>> {
    let tuples: Vec<(usize, usize)> = (3..=n1_max)
        .flat_map(|n1| (0..=n1 - 2).map(move |n2| (n1, n2)))
        .collect();
    tuples
        .par_iter()
        .map(|&(n1, n2)| check_walk_difference(n1, n2, max_len))
        .collect()
}

/// Every `0 ≤ ℓ ≤ ell_max` and `4ℓ ≤ n ≤ n_max`.
pub fn binomial_sum_sweep(ell_max: usize, n_max: usize) -> Result<Vec<LemmaReport>> {
    let mut out = Vec::new();
    for ell in 0..=ell_max {
        for n in 4 * ell..=n_max {
            out.push(check_binomial_sum(n, ell)?);
        }
    }
    Ok(out)
}

/// For each path order, every distance `2 ≤ d ≤ n − 1` on a grid of
/// `points` values from `max(√n, 5)` to `x_max`.
pub fn crossing_series_sweep(orders: &[usize], points: usize, x_max: f64) -> Result<Vec<LemmaReport>> {
    let tuples: Vec<(usize, usize)> = orders
        .iter()
        .flat_map(|&n| (2..n).map(move |d| (n, d)))
        .collect();
    tuples
        .par_iter()
        .map(|&(n, d)| {
            let grid = linspace((n as f64).sqrt().max(5.0), x_max, points);
            check_crossing_series(n, d, &grid)
        })
        .collect()
}

/// Every `n2 + 2 ≤ n1 ≤ n1_max` with `n2 ≥ 1`, for each `H` and `T`.
pub fn path_shift_sweep(
    n1_max: usize,
    hs: &[NamedGraph],
    ts: &[NamedGraph],
    tol: f64,
) -> Result<Vec<LemmaReport>> {
    let mut tuples = Vec::new();
    for n1 in 3..=n1_max {
        for n2 in 1..=n1 - 2 {
            for h in hs {
                for t in ts {
                    tuples.push((n1, n2, h, t));
                }
            }
        }
    }
    tuples
        .par_iter()
        .map(|&(n1, n2, h, t)| verify_path_shift(n1, n2, h, t, tol))
        .collect()
}

/// Seeded sample of balancing instances with `|T| + Σ n_s = total`.
#[derive(Clone, Copy, Debug)]
pub struct BalanceSweep {
    pub count: usize,
    pub total: usize,
    pub seed: u64,
    pub tol: f64,
}

fn default_hubs() -> [NamedGraph; 3] {
    [NamedGraph::complete(1), NamedGraph::complete(2), NamedGraph::path(3)]
}

fn random_paths(rng: &mut ChaCha8Rng, m: usize) -> NamedGraph {
    let mut parts = Vec::new();
    let mut left = m;
    while left > 0 {
        let p = rng.gen_range(1..=left.min(8));
        parts.push(p);
        left -= p;
    }
    NamedGraph::paths(&parts)
}

/// `T` of order `m`: edgeless, a single path, or random short paths.
fn filler(kind: usize, rng: &mut ChaCha8Rng, m: usize) -> NamedGraph {
    match kind {
        0 => NamedGraph::edgeless(m),
        1 => NamedGraph::path(m),
        _ => random_paths(rng, m),
    }
}

/// Draws `k` path orders with `n1 ≥ … ≥ nk ≥ 1`, `n1 ≥ n2 + gap` and sum at
/// most `total`.
fn draw_orders(rng: &mut ChaCha8Rng, k: usize, gap: usize, total: usize, cap: usize) -> Vec<usize> {
    loop {
        let c = rng.gen_range(2..=cap);
        let mut ns: Vec<usize> = (0..k).map(|_| rng.gen_range(1..=c)).collect();
        ns.sort_unstable_by(|a, b| b.cmp(a));
        if ns[0] < ns[1] + gap {
            ns[0] = ns[1] + gap;
        }
        if ns.iter().sum::<usize>() <= total {
            return ns;
        }
    }
}

type Instance<const K: usize> = ([usize; K], NamedGraph, NamedGraph);

fn balance_instances<const K: usize>(
    cfg: &BalanceSweep,
    gap: usize,
    cap: usize,
    anchors: Vec<Instance<K>>,
) -> Vec<Instance<K>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let hubs = default_hubs();
    let mut out: Vec<Instance<K>> = anchors
        .into_iter()
        .filter(|(ns, _, t)| ns.iter().sum::<usize>() + t.order() == cfg.total)
        .take(cfg.count)
        .collect();
    let mut i = 0;
    while out.len() < cfg.count {
        let ns = draw_orders(&mut rng, K, gap, cfg.total, cap);
        let m = cfg.total - ns.iter().sum::<usize>();
        let h = hubs[i % 3].clone();
        let t = filler((i / 3) % 3, &mut rng, m);
        out.push((ns.try_into().expect("K orders"), h, t));
        i += 1;
    }
    out
}

/// The four-path balancing claim on `count` instances at order `total`
/// (130 is the smallest admissible). The two fixed instances
/// `(3,1,1,1; K1; Kbar124)` and `(10,3,3,2; K2; Kbar120)` come first when
/// `total = 130`.
pub fn balance4_sweep(cfg: &BalanceSweep) -> Result<Vec<LemmaReport>> {
    let anchors = vec![
        ([3, 1, 1, 1], NamedGraph::complete(1), NamedGraph::edgeless(124)),
        ([10, 3, 3, 2], NamedGraph::complete(2), NamedGraph::edgeless(120)),
    ];
    let cap = (cfg.total / 3).max(3);
    let instances = balance_instances::<4>(cfg, 2, cap, anchors);
    instances
        .par_iter()
        .map(|(ns, h, t)| verify_balance4(*ns, h, t, cfg.tol))
        .collect()
}

/// The five-path balancing claim; fixed instances `(4,1,1,1,1; K1; Kbar302)`
/// and `(12,4,4,4,1; K2; Kbar290)` lead when `total = 310`.
pub fn balance5_sweep(cfg: &BalanceSweep) -> Result<Vec<LemmaReport>> {
    let anchors = vec![
        ([4, 1, 1, 1, 1], NamedGraph::complete(1), NamedGraph::edgeless(302)),
        ([12, 4, 4, 4, 1], NamedGraph::complete(2), NamedGraph::edgeless(290)),
    ];
    let cap = (cfg.total / 4).max(4);
    let instances = balance_instances::<5>(cfg, 3, cap, anchors);
    instances
        .par_iter()
        .map(|(ns, h, t)| verify_balance5(*ns, h, t, cfg.tol))
        .collect()
}
