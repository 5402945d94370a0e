//! Spectral radius of complete multipartite graphs with embedded parts, via
//! the walk-series fixed-point equation
//!
//! ```text
//! Σ_s 1 / (1 + n_s/x + Σ_{i≥1} W^i(H_s)/x^{i+1}) = r − 1.
//! ```

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{disjoint_union, empty, Graph};
use crate::scalar::Scalar;
use crate::spectral::spectral_radius;
use crate::walks::{walk_series, SeriesEval};

/// One part of a [`MultipartiteSpec`]: `size` vertices, the first
/// `graph.order()` of which carry the edges of `graph`.
#[derive(Clone, Debug)]
pub struct Part {
    pub size: usize,
    pub graph: Graph,
}

impl Part {
    pub fn new(size: usize, graph: Graph) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidParameter("part size must be at least 1".into()));
        }
        if graph.order() > size {
            return Err(Error::InvalidParameter(format!(
                "embedded graph of order {} does not fit a part of size {size}",
                graph.order()
            )));
        }
        Ok(Part { size, graph })
    }

    /// A part whose embedded graph spans it.
    pub fn spanning(graph: Graph) -> Result<Self> {
        Part::new(graph.order(), graph)
    }

    /// An independent part of `size` vertices.
    pub fn independent(size: usize) -> Result<Self> {
        Part::new(size, empty(size))
    }
}

/// `K_{n_1,…,n_r}` with the edges of `H_s` embedded in part `s`.
#[derive(Clone, Debug)]
pub struct MultipartiteSpec {
    parts: Vec<Part>,
}

impl MultipartiteSpec {
    pub fn new(parts: Vec<Part>) -> Result<Self> {
        if parts.len() < 2 {
            return Err(Error::InvalidParameter(format!(
                "need at least 2 parts, got {}",
                parts.len()
            )));
        }
        Ok(MultipartiteSpec { parts })
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn r(&self) -> usize {
        self.parts.len()
    }

    pub fn order(&self) -> usize {
        self.parts.iter().map(|p| p.size).sum()
    }

    pub fn max_part_degree(&self) -> usize {
        self.parts.iter().map(|p| p.graph.max_degree()).max().unwrap_or(0)
    }

    /// The graph itself, parts laid out consecutively.
    pub fn realize(&self) -> Graph {
        let blocks: Vec<Graph> = self
            .parts
            .iter()
            .map(|p| disjoint_union(&[p.graph.clone(), empty(p.size - p.graph.order())]))
            .collect();
        let mut g = disjoint_union(&blocks);
        let mut starts = Vec::with_capacity(self.parts.len());
        let mut at = 0;
        for p in &self.parts {
            starts.push(at);
            at += p.size;
        }
        for (i, p) in self.parts.iter().enumerate() {
            for q in i + 1..self.parts.len() {
                for u in starts[i]..starts[i] + p.size {
                    for v in starts[q]..starts[q] + self.parts[q].size {
                        g.add_edge(u, v);
                    }
                }
            }
        }
        g
    }
}

/// `f(x)` with a rigorous enclosure from the per-part series tails.
#[derive(Clone, Debug, Serialize)]
pub struct FixedPointEval<T> {
    pub x: T,
    /// Value at the truncated partial sums.
    pub value: T,
    pub lower: T,
    pub upper: T,
    pub parts: Vec<SeriesEval<T>>,
    /// True when any part was only summed under the ratio-test heuristic.
    pub heuristic: bool,
}

/// Evaluates `f(x)`, with the enclosure `[lower, upper]` narrower than `tol`
/// whenever the per-part series can be summed that far.
///
/// # Errors
/// [`Error::SeriesDiverged`] if some part's walk series does not converge at
/// `x`, which happens for `x ≤ ρ(H_s)`.
pub fn f_eval<T: Scalar>(spec: &MultipartiteSpec, x: T, tol: T) -> Result<FixedPointEval<T>> {
    if !(x > T::zero()) || !(tol > T::zero()) {
        return Err(Error::InvalidParameter(format!(
            "f_eval needs x > 0 and tol > 0 (x = {x}, tol = {tol})"
        )));
    }
    // dt/dS = −t²/x with t ≤ 1, so a series tail of x·tol/(10r) moves f by
    // at most tol/(10r)
    let series_tol = x * tol / T::of_usize(10 * spec.r());
    let mut value = T::zero();
    let mut lower = T::zero();
    let mut upper = T::zero();
    let mut parts = Vec::with_capacity(spec.r());
    for p in &spec.parts {
        let s = walk_series(&p.graph, x, series_tol)?;
        if !s.converged {
            return Err(Error::SeriesDiverged { x: x.as_f64() });
        }
        let base = T::one() + T::of_usize(p.size) / x;
        let term = |sum: T| T::one() / (base + sum / x);
        value = value + term(s.partial_sum);
        upper = upper + term(s.partial_sum);
        lower = lower + term(s.upper());
        parts.push(s);
    }
    Ok(FixedPointEval {
        x,
        value,
        lower,
        upper,
        heuristic: parts.iter().any(|s| s.heuristic),
        parts,
    })
}

pub const BISECTION_STEPS: usize = 60;

/// Root of `f(x) = r − 1` together with the evidence behind it.
#[derive(Clone, Debug, Serialize)]
pub struct SeriesRoot<T> {
    pub rho: T,
    /// Final bisection bracket.
    pub lo: T,
    pub hi: T,
    /// Enclosure of `f(rho)`.
    pub f_lower: T,
    pub f_upper: T,
    pub steps: usize,
    /// True when some evaluation used the ratio-test heuristic.
    pub heuristic: bool,
}

/// Solves `f(x) = r − 1` by bisection on `[lo, n − 1]`.
///
/// `lo` starts a little above `max_s Δ(H_s)`, where every series has a
/// certified tail, and is moved towards `Δ` while `f(lo) ≥ r − 1`. If no
/// such point brackets the root, `lo` drops to just above `max_s ρ(H_s)`
/// and the ratio-test heuristic takes over.
///
/// # Errors
/// [`Error::BracketNotEstablished`] when `f(lo) ≥ r − 1` even there.
pub fn solve_rho_by_series<T: Scalar>(spec: &MultipartiteSpec, tol: T) -> Result<SeriesRoot<T>> {
    if !(tol > T::zero()) {
        return Err(Error::InvalidParameter(format!("tol must be positive, got {tol}")));
    }
    let target = T::of_usize(spec.r() - 1);
    let eval_tol = T::epsilon() * T::of(1e3);
    let delta = T::of_usize(spec.max_part_degree());
    let n = spec.order();
    let mut hi = T::of_usize(n - 1).max(delta + T::one());

    let below = |x: T| -> Option<FixedPointEval<T>> {
        f_eval(spec, x, eval_tol).ok().filter(|e| e.upper < target)
    };
    let mut bracket = None;
    let mut gap = T::one().max(delta) / T::of(4.0);
    for _ in 0..24 {
        let x = delta + gap;
        if x < hi {
            if let Some(e) = below(x) {
                bracket = Some((x, e.heuristic));
                break;
            }
        }
        gap = gap / T::of(2.0);
    }
    if bracket.is_none() {
        let mut rho_h = T::zero();
        for p in &spec.parts {
            if p.graph.edge_count() > 0 {
                let r = spectral_radius(&p.graph, T::of(1e-10).max(T::residual_floor()))?;
                rho_h = rho_h.max(r.enclosure().1);
            }
        }
        let x = rho_h + T::of(1e-6) * T::one().max(rho_h);
        match f_eval(spec, x, eval_tol) {
            Ok(e) if e.upper < target => bracket = Some((x, true)),
            Ok(e) => {
                return Err(Error::BracketNotEstablished {
                    lo: x.as_f64(),
                    value: e.lower.as_f64(),
                    target: target.as_f64(),
                })
            }
            Err(_) => {
                return Err(Error::BracketNotEstablished {
                    lo: x.as_f64(),
                    value: f64::NAN,
                    target: target.as_f64(),
                })
            }
        }
    }
    let (mut lo, mut heuristic) = bracket.expect("bracket established above");

    let mut steps = 0;
    let mut last = None;
    while steps < BISECTION_STEPS && hi - lo > tol {
        let mid = (lo + hi) / T::of(2.0);
        let e = f_eval(spec, mid, eval_tol)?;
        heuristic |= e.heuristic;
        steps += 1;
        if e.upper < target {
            lo = mid;
        } else if e.lower > target {
            hi = mid;
        } else {
            // the enclosure straddles the target: mid is a root to working precision
            lo = mid;
            hi = mid;
            last = Some(e);
            break;
        }
    }
    let rho = (lo + hi) / T::of(2.0);
    let e = match last {
        Some(e) => e,
        None => f_eval(spec, rho, eval_tol)?,
    };
    Ok(SeriesRoot {
        rho,
        lo,
        hi,
        f_lower: e.lower,
        f_upper: e.upper,
        steps,
        heuristic: heuristic || e.heuristic,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RootSource {
    Series,
    Eigensolve,
}

/// [`solve_rho_by_series`], falling back to a direct eigensolve of the
/// realization when no bracket can be established.
pub fn rho_of_spec<T: Scalar>(spec: &MultipartiteSpec, tol: T) -> Result<(T, RootSource)> {
    match solve_rho_by_series(spec, tol) {
        Ok(root) => Ok((root.rho, RootSource::Series)),
        Err(Error::BracketNotEstablished { .. }) => {
            let r = spectral_radius(&spec.realize(), tol.max(T::residual_floor()))?;
            Ok((r.rho, RootSource::Eigensolve))
        }
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_extremal, complete, join, star, ExtremalParams, PathPartition};

    fn bipartite(a: usize, b: usize) -> MultipartiteSpec {
        MultipartiteSpec::new(vec![Part::independent(a).unwrap(), Part::independent(b).unwrap()])
            .unwrap()
    }

    #[test]
    fn realization_matches_join() {
        let spec = MultipartiteSpec::new(vec![
            Part::spanning(complete(2)).unwrap(),
            Part::spanning(PathPartition::new(vec![2, 2, 2]).realize()).unwrap(),
        ])
        .unwrap();
        let direct = join(&complete(2), &PathPartition::new(vec![2, 2, 2]).realize());
        assert_eq!(spec.realize(), direct);
        assert_eq!(bipartite(1, 5).realize(), star(5));
    }

    #[test]
    fn rejects_bad_parts() {
        assert!(Part::new(0, empty(0)).is_err());
        assert!(Part::new(2, complete(3)).is_err());
        assert!(MultipartiteSpec::new(vec![Part::independent(3).unwrap()]).is_err());
    }

    #[test]
    fn complete_bipartite_fixed_point() {
        let spec = bipartite(2, 4);
        let x = 8f64.sqrt();
        let e = f_eval(&spec, x, 1e-12).unwrap();
        let expected = 1.0 / (1.0 + 2.0 / x) + 1.0 / (1.0 + 4.0 / x);
        assert!((e.value - expected).abs() < 1e-15);
        assert!((e.value - 1.0).abs() < 1e-12);
        let far = f_eval(&spec, 1e6f64, 1e-12).unwrap();
        assert!((far.value - 2.0).abs() < 1e-5);
    }

    #[test]
    fn fixed_point_at_eigensolved_rho() {
        let forest = PathPartition::new(vec![2, 2, 2]).realize();
        let spec = MultipartiteSpec::new(vec![
            Part::spanning(complete(2)).unwrap(),
            Part::spanning(forest).unwrap(),
        ])
        .unwrap();
        let rho = spectral_radius::<f64>(&spec.realize(), 1e-13).unwrap().rho;
        let e = f_eval(&spec, rho, 1e-12).unwrap();
        assert!((e.value - 1.0).abs() < 1e-8);
        assert!(e.upper - e.lower < 1e-12);
    }

    #[test]
    fn divergent_point_is_an_error() {
        let spec = MultipartiteSpec::new(vec![
            Part::spanning(complete(4)).unwrap(),
            Part::independent(3).unwrap(),
        ])
        .unwrap();
        assert!(matches!(f_eval(&spec, 2.5f64, 1e-10), Err(Error::SeriesDiverged { .. })));
    }

    #[test]
    fn solves_closed_forms() {
        let root = solve_rho_by_series(&bipartite(2, 4), 1e-12f64).unwrap();
        assert!((root.rho - 8f64.sqrt()).abs() < 1e-8);
        assert!(!root.heuristic);
        for m in [1, 4, 9, 30] {
            let root = solve_rho_by_series(&bipartite(1, m), 1e-12f64).unwrap();
            assert!((root.rho - (m as f64).sqrt()).abs() < 1e-8, "m = {m}");
        }
    }

    #[test]
    fn solves_extremal_graph() {
        let p = ExtremalParams::new(20, 7).unwrap();
        let spec = MultipartiteSpec::new(vec![
            Part::spanning(complete(2)).unwrap(),
            Part::spanning(p.forest().realize()).unwrap(),
        ])
        .unwrap();
        let root = solve_rho_by_series(&spec, 1e-12f64).unwrap();
        let direct = spectral_radius::<f64>(&build_extremal(&p), 1e-13).unwrap().rho;
        assert!((root.rho - direct).abs() < 1e-7);
        assert!(root.f_lower <= 1.0 + 1e-9 && root.f_upper >= 1.0 - 1e-9);
    }

    #[test]
    fn dense_part_needs_fallback_or_heuristic() {
        // K_5 embedded next to a single vertex: ρ(H) = Δ(H) = 4 and ρ(G) ≈ 4.19
        let spec = MultipartiteSpec::new(vec![
            Part::spanning(complete(5)).unwrap(),
            Part::independent(1).unwrap(),
        ])
        .unwrap();
        let direct = spectral_radius::<f64>(&spec.realize(), 1e-13).unwrap().rho;
        let (rho, _): (f64, _) = rho_of_spec(&spec, 1e-12).unwrap();
        assert!((rho - direct).abs() < 1e-7);
    }

    #[test]
    fn single_precision_root() {
        let root = solve_rho_by_series(&bipartite(2, 4), 1e-5f32).unwrap();
        assert!((root.rho - 8f32.sqrt()).abs() < 1e-4);
    }
}
