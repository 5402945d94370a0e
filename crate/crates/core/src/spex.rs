//! Searches for the graphs of largest spectral radius among `C_ℓ`-free
//! planar graphs of order `n`.
//!
//! The restricted search scans `K_2 ∨ (linear forest)` with `n_1 + n_2 ≤ ℓ − 3`.
//! The brute-force search scans every labeled graph with non-increasing
//! degrees (every isomorphism class has such a labeling), or a graph6 stream.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::hub_join;
use crate::graph::{
    forest_join_cl_free, graph6, has_cycle_of_length, is_planar, ExtremalParams, Graph,
    PathPartition,
};
use crate::lemmas::walk_difference_sign;
use crate::spectral::{spectral_radius, Ordering};

/// Largest order scanned by [`restricted_spex`].
pub const RESTRICTED_MAX_ORDER: usize = 40;
/// Largest order for internal brute-force enumeration.
pub const INTERNAL_MAX_ORDER: usize = 8;
/// Radii closer than this (relative to `max(1, ρ)`) count as tied.
pub const TIE_TOL: f64 = 1e-9;
pub const SOLVER_TOL: f64 = 1e-12;
/// Entries kept in the leaderboard.
pub const LEADERBOARD_SIZE: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Family {
    Restricted,
    BruteForce,
    Graph6Stream,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SpexStatus {
    Found,
    NoCandidate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Agreement {
    Match,
    Mismatch,
}

/// Where brute-force candidates come from.
#[derive(Clone, Copy, Debug)]
pub enum Source<'a> {
    /// All labeled graphs of order `n` with non-increasing degrees.
    Internal,
    /// Newline-separated graph6 records.
    Graph6Stream(&'a [u8]),
}

#[derive(Clone, Debug, Serialize)]
pub struct Candidate {
    pub graph6: String,
    pub rho: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<PathPartition>,
}

/// A leaderboard row with the predicates recomputed on the decoded graph.
#[derive(Clone, Debug, Serialize)]
pub struct LeaderboardRow {
    pub rank: usize,
    pub graph6: String,
    pub rho: f64,
    pub planar: bool,
    pub cl_free: bool,
}

/// Independent re-check of the winner from its graph6 record.
#[derive(Clone, Debug, Serialize)]
pub struct Verification {
    pub planar: bool,
    pub cl_free: bool,
    pub rho: f64,
    pub rho_agrees: bool,
}

impl Verification {
    pub fn ok(&self) -> bool {
        self.planar && self.cl_free && self.rho_agrees
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremComparison {
    pub agreement: Agreement,
    pub expected_partition: PathPartition,
    pub expected_graph6: String,
    pub rho_expected: f64,
    pub rho_winner: f64,
    /// `ρ(winner) − ρ(expected)`.
    pub gap: f64,
    /// The expected graph is among the tied winners.
    pub expected_tied: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpexReport {
    pub n: usize,
    pub ell: usize,
    pub family: Family,
    pub status: SpexStatus,
    pub winner: Option<Candidate>,
    /// Candidates tied with the winner (restricted search: listed; brute
    /// force: counted, since isomorphic relabelings always tie).
    pub tied: Vec<Candidate>,
    pub tie_count: usize,
    /// `ρ(winner)` minus the best radius outside the tie class.
    pub runner_up_gap: Option<f64>,
    pub candidates_examined: usize,
    pub candidates_admissible: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub malformed_records: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped_other_order: Option<usize>,
    pub verification: Option<Verification>,
    /// Whether the winner contains a spanning `K_2 ∨ K̄_{n−2}`.
    pub spanning_book: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theorem: Option<TheoremComparison>,
    #[serde(skip)]
    pub leaderboard: Vec<LeaderboardRow>,
    #[serde(skip)]
    pub wall_time: Duration,
}

fn check_params(n: usize, ell: usize) -> Result<()> {
    if ell < 5 || ell > n {
        return Err(Error::InvalidParameter(format!(
            "need 5 <= ell <= n, got n = {n}, ell = {ell}"
        )));
    }
    Ok(())
}

fn rho_of(g: &Graph) -> Result<f64> {
    Ok(spectral_radius::<f64>(g, SOLVER_TOL)?.rho)
}

fn band(rho: f64) -> f64 {
    TIE_TOL * rho.max(1.0)
}

fn verify_winner(record: &str, rho: f64, ell: usize) -> Result<(Verification, bool)> {
    let g = graph6::decode_str(record)?;
    let fresh = rho_of(&g)?;
    let v = Verification {
        planar: is_planar(&g),
        cl_free: !has_cycle_of_length(&g, ell),
        rho: fresh,
        rho_agrees: (fresh - rho).abs() <= 1e-9,
    };
    Ok((v, g.dominating_edge().is_some()))
}

fn leaderboard(rows: &[(String, f64)], ell: usize, cl_free_known: bool) -> Result<Vec<LeaderboardRow>> {
    rows.iter()
        .take(LEADERBOARD_SIZE)
        .enumerate()
        .map(|(i, (record, rho))| {
            let g = graph6::decode_str(record)?;
            Ok(LeaderboardRow {
                rank: i + 1,
                graph6: record.clone(),
                rho: *rho,
                planar: is_planar(&g),
                cl_free: if cl_free_known { true } else { !has_cycle_of_length(&g, ell) },
            })
        })
        .collect()
}

fn empty_report(n: usize, ell: usize, family: Family) -> SpexReport {
    SpexReport {
        n,
        ell,
        family,
        status: SpexStatus::NoCandidate,
        winner: None,
        tied: Vec::new(),
        tie_count: 0,
        runner_up_gap: None,
        candidates_examined: 0,
        candidates_admissible: 0,
        malformed_records: None,
        skipped_other_order: None,
        verification: None,
        spanning_book: None,
        theorem: None,
        leaderboard: Vec::new(),
        wall_time: Duration::ZERO,
    }
}

/// Orders two restricted candidates, settling near-ties with the
/// walk-difference series. `None` when undecided.
fn certified_order(a: &PathPartition, rho_a: f64, b: &PathPartition, rho_b: f64) -> Result<Option<Ordering>> {
    let b_graph = hub_join(b);
    let (lo, hi) = spectral_radius::<f64>(&b_graph, SOLVER_TOL)?.enclosure();
    let pad = 1e-12 * hi.max(1.0);
    if (rho_a - rho_b).abs() > band(rho_a.max(rho_b)) {
        return Ok(Some(if rho_a > rho_b { Ordering::Greater } else { Ordering::Less }));
    }
    Ok(walk_difference_sign(a.parts(), b.parts(), lo - pad, hi + pad)?.map(|c| c.ordering))
}

/// Maximizes `ρ(K_2 ∨ forest)` over linear forests of order `n − 2` whose
/// two longest paths have at most `ℓ − 3` vertices together.
///
/// Radii within [`TIE_TOL`] of the best are compared exactly through the
/// walk-difference series; candidates it cannot separate from the winner
/// are reported as ties, and the winner among them is the one with the
/// smallest graph6 string.
///
/// # Errors
/// [`Error::InvalidParameter`] unless `5 ≤ ℓ ≤ n`;
/// [`Error::ScopeExceeded`] above [`RESTRICTED_MAX_ORDER`].
pub fn restricted_spex(n: usize, ell: usize) -> Result<SpexReport> {
    restricted_spex_capped(n, ell, RESTRICTED_MAX_ORDER)
}

/// [`restricted_spex`] with an explicit order cap.
pub fn restricted_spex_capped(n: usize, ell: usize, max_order: usize) -> Result<SpexReport> {
    let start = Instant::now();
    check_params(n, ell)?;
    if n > max_order {
        return Err(Error::ScopeExceeded(format!(
            "restricted search is capped at n = {max_order}, got {n}"
        )));
    }
    let partitions = PathPartition::enumerate(n - 2, Some(ell - 3));
    debug_assert!(partitions.iter().all(|p| forest_join_cl_free(p, ell)));
    let mut scored: Vec<(PathPartition, f64, String)> = partitions
        .into_par_iter()
        .map(|pp| {
            let g = hub_join(&pp);
            let rho = rho_of(&g)?;
            Ok((pp, rho, graph6::encode(&g)))
        })
        .collect::<Result<_>>()?;
    let mut report = empty_report(n, ell, Family::Restricted);
    report.candidates_examined = scored.len();
    report.candidates_admissible = scored.len();
    if scored.is_empty() {
        report.wall_time = start.elapsed();
        return Ok(report);
    }
    scored.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.2.cmp(&b.2)));

    let top = scored[0].1;
    let group_len = scored.iter().take_while(|c| top - c.1 <= band(top)).count();
    // sequential tournament over the near-tied group
    let mut champion = 0;
    let mut tied: Vec<usize> = Vec::new();
    for i in 1..group_len {
        let (c, cr, _) = &scored[i];
        let (w, wr, _) = &scored[champion];
        match certified_order(c, *cr, w, *wr)? {
            Some(Ordering::Greater) => {
                champion = i;
                tied.clear();
            }
            Some(Ordering::Less) => {}
            _ => tied.push(i),
        }
    }
    // drop earlier ties that the final champion beats
    let mut still_tied = Vec::new();
    for &i in &tied {
        let (c, cr, _) = &scored[i];
        let (w, wr, _) = &scored[champion];
        if !matches!(certified_order(c, *cr, w, *wr)?, Some(Ordering::Less)) {
            still_tied.push(i);
        }
    }
    let mut class: Vec<usize> = std::iter::once(champion).chain(still_tied).collect();
    class.sort_by(|&a, &b| scored[a].2.cmp(&scored[b].2));
    let winner_idx = class[0];

    let cand = |i: usize| Candidate {
        graph6: scored[i].2.clone(),
        rho: scored[i].1,
        partition: Some(scored[i].0.clone()),
    };
    let winner = cand(winner_idx);
    report.tied = class[1..].iter().map(|&i| cand(i)).collect();
    report.tie_count = class.len() - 1;
    let best_other = scored
        .iter()
        .enumerate()
        .filter(|(i, _)| !class.contains(i))
        .map(|(_, c)| c.1)
        .fold(f64::NEG_INFINITY, f64::max);
    report.runner_up_gap = best_other.is_finite().then_some(winner.rho - best_other);

    // leaderboard: winner class first, then the rest by radius
    let mut order: Vec<usize> = class.clone();
    order.extend((0..scored.len()).filter(|i| !class.contains(i)));
    let rows: Vec<(String, f64)> = order.iter().map(|&i| (scored[i].2.clone(), scored[i].1)).collect();
    report.leaderboard = leaderboard(&rows, ell, false)?;

    let (verification, book) = verify_winner(&winner.graph6, winner.rho, ell)?;
    report.verification = Some(verification);
    report.spanning_book = Some(book);
    report.winner = Some(winner);
    report.status = SpexStatus::Found;
    report.wall_time = start.elapsed();
    Ok(report)
}

/// Compares the restricted winner with the conjectured extremal graph.
pub fn theorem_check(n: usize, ell: usize) -> Result<SpexReport> {
    theorem_check_capped(n, ell, RESTRICTED_MAX_ORDER)
}

/// [`theorem_check`] with an explicit order cap.
pub fn theorem_check_capped(n: usize, ell: usize, max_order: usize) -> Result<SpexReport> {
    let mut report = restricted_spex_capped(n, ell, max_order)?;
    let params = ExtremalParams::new(n, ell)?;
    let expected = params.forest();
    let g = hub_join(&expected);
    let rho_expected = rho_of(&g)?;
    let winner = report.winner.as_ref().expect("restricted family is never empty");
    let winner_pp = winner.partition.as_ref().expect("restricted candidates carry partitions");
    let agreement = if winner_pp.same_forest(&expected) {
        Agreement::Match
    } else {
        Agreement::Mismatch
    };
    let expected_tied = report
        .tied
        .iter()
        .any(|c| c.partition.as_ref().is_some_and(|p| p.same_forest(&expected)));
    report.theorem = Some(TheoremComparison {
        agreement,
        expected_partition: expected,
        expected_graph6: graph6::encode(&g),
        rho_expected,
        rho_winner: winner.rho,
        gap: winner.rho - rho_expected,
        expected_tied,
    });
    Ok(report)
}

/// Top radii seen so far, one entry per class of radii within
/// [`TIE_TOL`], each represented by its smallest graph6 string.
#[derive(Clone, Debug, Default)]
struct TopClasses {
    entries: Vec<TopEntry>,
}

#[derive(Clone, Debug)]
struct TopEntry {
    rho: f64,
    graph6: String,
    count: usize,
}

impl TopClasses {
    fn threshold(&self) -> f64 {
        if self.entries.len() < LEADERBOARD_SIZE {
            f64::NEG_INFINITY
        } else {
            self.entries[LEADERBOARD_SIZE - 1].rho - band(self.entries[LEADERBOARD_SIZE - 1].rho)
        }
    }

    fn insert(&mut self, rho: f64, graph6: impl FnOnce() -> String, count: usize) {
        if rho < self.threshold() {
            return;
        }
        if let Some(e) = self.entries.iter_mut().find(|e| (e.rho - rho).abs() <= band(e.rho.max(rho))) {
            let g = graph6();
            if g < e.graph6 {
                e.graph6 = g;
            }
            e.count += count;
            return;
        }
        let pos = self.entries.partition_point(|e| e.rho > rho);
        self.entries.insert(
            pos,
            TopEntry {
                rho,
                graph6: graph6(),
                count,
            },
        );
        self.entries.truncate(LEADERBOARD_SIZE);
    }

    fn merge(mut self, other: TopClasses) -> TopClasses {
        for e in other.entries {
            let TopEntry { rho, graph6, count } = e;
            self.insert(rho, || graph6, count);
        }
        self
    }
}

#[derive(Clone, Debug, Default)]
struct ScanTotals {
    top: TopClasses,
    examined: usize,
    admissible: usize,
}

impl ScanTotals {
    fn consider(&mut self, g: &Graph, ell: usize) -> Result<()> {
        self.examined += 1;
        if !is_planar(g) || has_cycle_of_length(g, ell) {
            return Ok(());
        }
        self.admissible += 1;
        let rho = rho_of(g)?;
        self.top.insert(rho, || graph6::encode(g), 1);
        Ok(())
    }

    fn merge(self, other: ScanTotals) -> ScanTotals {
        ScanTotals {
            top: self.top.merge(other.top),
            examined: self.examined + other.examined,
            admissible: self.admissible + other.admissible,
        }
    }
}

/// Row-major edge DFS over labeled graphs on `n` vertices whose degrees are
/// non-increasing in the label and whose size respects `e ≤ 3n − 6`.
struct Enumerator<'a, F: FnMut(&Graph) -> Result<()>> {
    n: usize,
    pairs: Vec<(usize, usize)>,
    max_edges: usize,
    graph: Graph,
    deg: Vec<usize>,
    edges: usize,
    visit: &'a mut F,
}

impl<F: FnMut(&Graph) -> Result<()>> Enumerator<'_, F> {
    fn run(&mut self, idx: usize) -> Result<()> {
        if idx == self.pairs.len() {
            return (self.visit)(&self.graph);
        }
        let (u, v) = self.pairs[idx];
        let row_done = v == self.n - 1;
        // include the edge
        if self.edges < self.max_edges && (u == 0 || self.deg[u] < self.deg[u - 1]) {
            self.graph.add_edge(u, v);
            self.deg[u] += 1;
            self.deg[v] += 1;
            self.edges += 1;
            if !row_done || self.row_ok(u) {
                self.run(idx + 1)?;
            }
            self.graph.remove_edge(u, v);
            self.deg[u] -= 1;
            self.deg[v] -= 1;
            self.edges -= 1;
        }
        // exclude it
        if !row_done || self.row_ok(u) {
            self.run(idx + 1)?;
        }
        Ok(())
    }

    /// Row `u` is final: its degree may not exceed its predecessor's, and
    /// once the second-to-last row closes, the last vertex is final too.
    fn row_ok(&self, u: usize) -> bool {
        let ok_u = u == 0 || self.deg[u] <= self.deg[u - 1];
        let last = self.n - 1;
        let ok_last = u + 1 != last || self.deg[last] <= self.deg[u];
        ok_u && ok_last
    }
}

/// Calls `visit` on every labeled graph of order `n` with non-increasing
/// degree sequence and at most `3n − 6` edges. Split into independent jobs
/// by the neighbourhood of vertex 0.
fn enumerate_sorted_degree<F>(n: usize, prefix: u64, visit: &mut F) -> Result<()>
where
    F: FnMut(&Graph) -> Result<()>,
{
    let mut graph = Graph::new(n);
    let mut deg = vec![0; n];
    let mut edges = 0;
    for v in 1..n {
        if prefix >> (v - 1) & 1 == 1 {
            graph.add_edge(0, v);
            deg[0] += 1;
            deg[v] += 1;
            edges += 1;
        }
    }
    let max_edges = if n >= 3 { 3 * n - 6 } else { n * (n.saturating_sub(1)) / 2 };
    if edges > max_edges {
        return Ok(());
    }
    if n == 1 {
        return visit(&graph);
    }
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    if n == 2 {
        return visit(&graph);
    }
    let mut e = Enumerator {
        n,
        pairs,
        max_edges,
        graph,
        deg,
        edges,
        visit,
    };
    // with only vertex 0's row decided, vertex 1 must not end above vertex 0;
    // that is checked when row 1 closes
    e.run(0)
}

/// Scans candidates for the largest spectral radius among `C_ℓ`-free planar
/// graphs of order `n`.
///
/// Ties within [`TIE_TOL`] are broken by the smallest graph6 string, so
/// the result does not depend on scheduling.
///
/// # Errors
/// [`Error::InvalidParameter`] unless `5 ≤ ℓ ≤ n`;
/// [`Error::ScopeExceeded`] for internal enumeration above
/// [`INTERNAL_MAX_ORDER`].
pub fn brute_force_spex(n: usize, ell: usize, source: Source<'_>) -> Result<SpexReport> {
    let start = Instant::now();
    check_params(n, ell)?;
    let (totals, family, malformed, skipped) = match source {
        Source::Internal => {
            if n > INTERNAL_MAX_ORDER {
                return Err(Error::ScopeExceeded(format!(
                    "internal enumeration is capped at n = {INTERNAL_MAX_ORDER}, got {n}"
                )));
            }
            // vertex 0 has the largest degree; jobs are its neighbourhoods
            let jobs: Vec<u64> = (0..1u64 << (n - 1)).collect();
            let totals = jobs
                .into_par_iter()
                .map(|prefix| {
                    let mut t = ScanTotals::default();
                    enumerate_sorted_degree(n, prefix, &mut |g: &Graph| t.consider(g, ell))?;
                    Ok::<_, Error>(t)
                })
                .try_reduce(ScanTotals::default, |a, b| Ok(a.merge(b)))?;
            (totals, Family::BruteForce, None, None)
        }
        Source::Graph6Stream(bytes) => {
            let read = graph6::read_stream(bytes);
            let (same, other): (Vec<Graph>, Vec<Graph>) = read.graphs.into_iter().partition(|g| g.order() == n);
            let totals = same
                .par_iter()
                .map(|g| {
                    let mut t = ScanTotals::default();
                    t.consider(g, ell)?;
                    Ok::<_, Error>(t)
                })
                .try_reduce(ScanTotals::default, |a, b| Ok(a.merge(b)))?;
            (totals, Family::Graph6Stream, Some(read.malformed.len()), Some(other.len()))
        }
    };
    let mut report = empty_report(n, ell, family);
    report.candidates_examined = totals.examined;
    report.candidates_admissible = totals.admissible;
    report.malformed_records = malformed;
    report.skipped_other_order = skipped;
    let entries = totals.top.entries;
    if let Some(first) = entries.first() {
        let winner = Candidate {
            graph6: first.graph6.clone(),
            rho: first.rho,
            partition: graph6::decode_str(&first.graph6)
                .ok()
                .and_then(|g| linear_forest_after_hubs(&g)),
        };
        report.tie_count = first.count - 1;
        report.runner_up_gap = entries.get(1).map(|e| first.rho - e.rho);
        let rows: Vec<(String, f64)> = entries.iter().map(|e| (e.graph6.clone(), e.rho)).collect();
        report.leaderboard = leaderboard(&rows, ell, false)?;
        let (verification, book) = verify_winner(&winner.graph6, winner.rho, ell)?;
        report.verification = Some(verification);
        report.spanning_book = Some(book);
        report.winner = Some(winner);
        report.status = SpexStatus::Found;
    }
    report.wall_time = start.elapsed();
    Ok(report)
}

/// If `g` is `K_2 ∨ F` for a linear forest `F`, the path orders of `F`.
fn linear_forest_after_hubs(g: &Graph) -> Option<PathPartition> {
    let (a, b) = g.dominating_edge()?;
    g.without_vertices(&[a, b]).linear_forest_partition()
}
