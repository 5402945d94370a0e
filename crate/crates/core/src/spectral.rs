//! Spectral radius and Perron vector by shifted power iteration, certified
//! comparisons of spectral radii, and Rayleigh-quotient rewiring gains.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    /// Power iteration on `A + I` with a Rayleigh-quotient estimate.
    ShiftedPower,
    /// Edgeless input; nothing to iterate.
    Edgeless,
}

/// Spectral radius with its Perron vector and convergence certificate.
#[derive(Clone, Debug, Serialize)]
pub struct SpectralResult<T> {
    pub rho: T,
    /// Non-negative eigenvector scaled so that its largest entry is 1.
    pub perron: Vec<T>,
    /// `‖A x − ρ x‖_∞` for the max-normalized `x`.
    pub residual: T,
    /// `‖A x − ρ x‖_2 / ‖x‖_2`: some eigenvalue lies within this of `rho`.
    pub error_bound: T,
    /// Collatz–Wielandt bracket `[min (Ax)_i/x_i, max (Ax)_i/x_i]` over the
    /// winning component, available when its Perron entries are all positive.
    pub bracket: Option<(T, T)>,
    pub iterations: usize,
    pub method: Method,
}

impl<T: Scalar> SpectralResult<T> {
    /// Interval certified to contain `rho(G)`.
    pub fn enclosure(&self) -> (T, T) {
        match self.bracket {
            Some((lo, hi)) => (lo.min(self.rho), hi.max(self.rho)),
            None => (self.rho - self.error_bound, self.rho + self.error_bound),
        }
    }
}

/// Iteration limits for the power method.
#[derive(Clone, Copy, Debug)]
pub struct SolverOptions {
    pub max_iterations: usize,
    /// Give up on the requested tolerance once the residual has failed to
    /// halve for this many iterations.
    pub stall_window: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            max_iterations: 1_000_000,
            stall_window: 5_000,
        }
    }
}

/// `ρ(G)` with default solver limits. See [`spectral_radius_with`].
pub fn spectral_radius<T: Scalar>(g: &Graph, tol: T) -> Result<SpectralResult<T>> {
    spectral_radius_with(g, tol, SolverOptions::default())
}

/// `ρ(G)` to residual `tol · max(1, ρ)`.
///
/// Each connected component is solved separately from the all-ones seed;
/// the largest radius wins, ties going to the first component, and its
/// Perron vector is zero-extended. A solve that stalls above `tol` is still
/// accepted if the residual is below [`Scalar::residual_floor`].
pub fn spectral_radius_with<T: Scalar>(
    g: &Graph,
    tol: T,
    opts: SolverOptions,
) -> Result<SpectralResult<T>> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if !(tol > T::zero()) {
        return Err(Error::InvalidParameter(format!("tol must be positive, got {tol}")));
    }
    let n = g.order();
    let mut best: Option<(Vec<usize>, ComponentSolve<T>)> = None;
    for comp in g.components() {
        let solve = if comp.len() == 1 {
            ComponentSolve::isolated()
        } else {
            solve_component(&g.induced_subgraph(&comp), tol, opts)?
        };
        let better = match &best {
            None => true,
            Some((_, b)) => solve.rho > b.rho,
        };
        if better {
            best = Some((comp, solve));
        }
    }
    let (comp, solve) = best.expect("non-empty graph has a component");
    let mut perron = vec![T::zero(); n];
    for (i, &u) in comp.iter().enumerate() {
        perron[u] = solve.x[i];
    }
    Ok(SpectralResult {
        rho: solve.rho,
        perron,
        residual: solve.residual,
        error_bound: solve.error_bound,
        bracket: solve.bracket,
        iterations: solve.iterations,
        method: solve.method,
    })
}

struct ComponentSolve<T> {
    rho: T,
    x: Vec<T>,
    residual: T,
    error_bound: T,
    bracket: Option<(T, T)>,
    iterations: usize,
    method: Method,
}

impl<T: Scalar> ComponentSolve<T> {
    fn isolated() -> Self {
        ComponentSolve {
            rho: T::zero(),
            x: vec![T::one()],
            residual: T::zero(),
            error_bound: T::zero(),
            bracket: Some((T::zero(), T::zero())),
            iterations: 0,
            method: Method::Edgeless,
        }
    }
}

fn multiply<T: Scalar>(adj: &[Vec<usize>], x: &[T], y: &mut [T]) {
    for (yi, nbrs) in y.iter_mut().zip(adj) {
        *yi = nbrs.iter().map(|&j| x[j]).sum();
    }
}

fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&p, &q)| p * q).sum()
}

fn solve_component<T: Scalar>(g: &Graph, tol: T, opts: SolverOptions) -> Result<ComponentSolve<T>> {
    let adj = g.adjacency_lists();
    let n = adj.len();
    let mut x = vec![T::one(); n];
    let mut y = vec![T::zero(); n];
    let floor = T::residual_floor();
    let mut best_residual = T::infinity();
    let mut last_halving = 0;
    let mut iterations = 0;
    let (rho, residual) = loop {
        multiply(&adj, &x, &mut y);
        let theta = dot(&x, &y) / dot(&x, &x);
        let residual = x
            .iter()
            .zip(&y)
            .map(|(&xi, &yi)| (yi - theta * xi).abs())
            .fold(T::zero(), T::max);
        let scale = T::one().max(theta);
        if residual <= tol * scale {
            break (theta, residual);
        }
        if residual < best_residual * T::of(0.5) {
            best_residual = residual;
            last_halving = iterations;
        }
        let stalled = iterations - last_halving > opts.stall_window;
        if stalled || iterations >= opts.max_iterations {
            if residual <= floor * scale {
                break (theta, residual);
            }
            return Err(Error::NotConverged {
                iterations,
                residual: residual.as_f64(),
            });
        }
        // (A + I) x, renormalized to max entry 1
        let mut top = T::zero();
        for (xi, &yi) in x.iter_mut().zip(&y) {
            *xi = *xi + yi;
            top = top.max(*xi);
        }
        for xi in x.iter_mut() {
            *xi = *xi / top;
        }
        iterations += 1;
    };

    // x is max-normalized already except on the first pass; make it exact
    let top = x.iter().copied().fold(T::zero(), T::max);
    for xi in x.iter_mut() {
        *xi = *xi / top;
    }
    multiply(&adj, &x, &mut y);
    let r2: T = x
        .iter()
        .zip(&y)
        .map(|(&xi, &yi)| (yi - rho * xi) * (yi - rho * xi))
        .sum();
    let error_bound = (r2 / dot(&x, &x)).sqrt();
    let bracket = if x.iter().all(|&xi| xi > T::zero()) {
        let ratios = x.iter().zip(&y).map(|(&xi, &yi)| yi / xi);
        let (lo, hi) = ratios.fold((T::infinity(), T::neg_infinity()), |(lo, hi), r| {
            (lo.min(r), hi.max(r))
        });
        Some((lo, hi))
    } else {
        None
    };
    Ok(ComponentSolve {
        rho,
        x,
        residual: residual / top,
        error_bound,
        bracket,
        iterations,
        method: Method::ShiftedPower,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Ordering {
    Less,
    Greater,
    EqualWithinTol,
    Inconclusive,
}

/// Outcome of comparing `ρ(G_1)` with `ρ(G_2)`.
#[derive(Clone, Debug, Serialize)]
pub struct ComparisonVerdict<T> {
    pub ordering: Ordering,
    /// `ρ_1 − ρ_2` from the last solve.
    pub margin: T,
    pub rho1: T,
    pub rho2: T,
    /// Solver tolerance of the last stage.
    pub tol: T,
    /// Strictness band `10 · tol · max(1, ρ_1, ρ_2)`.
    pub band: T,
    /// True when the tolerance was tightened once.
    pub escalated: bool,
}

/// Certified ordering of two spectral radii.
///
/// LESS/GREATER is returned only when `|ρ_1 − ρ_2|` exceeds the band of
/// ten solver tolerances and the two certified enclosures are disjoint. If
/// that fails at `tol`, both graphs are re-solved once at `tol / 100`. After
/// that the verdict is EQUAL_WITHIN_TOL only for a zero margin (the solver is
/// deterministic, so identical inputs land here) and INCONCLUSIVE otherwise.
pub fn compare_rho<T: Scalar>(g1: &Graph, g2: &Graph, tol: T) -> Result<ComparisonVerdict<T>> {
    let mut stage_tol = tol;
    for stage in 0..2 {
        let r1 = spectral_radius(g1, stage_tol)?;
        let r2 = spectral_radius(g2, stage_tol)?;
        let margin = r1.rho - r2.rho;
        let band = T::of(10.0) * stage_tol * T::one().max(r1.rho).max(r2.rho);
        let (lo1, hi1) = r1.enclosure();
        let (lo2, hi2) = r2.enclosure();
        let disjoint = hi1 < lo2 || hi2 < lo1;
        let verdict = |ordering| ComparisonVerdict {
            ordering,
            margin,
            rho1: r1.rho,
            rho2: r2.rho,
            tol: stage_tol,
            band,
            escalated: stage == 1,
        };
        if margin.abs() > band && disjoint {
            let ordering = if margin > T::zero() {
                Ordering::Greater
            } else {
                Ordering::Less
            };
            return Ok(verdict(ordering));
        }
        if stage == 1 {
            let ordering = if margin == T::zero() {
                Ordering::EqualWithinTol
            } else {
                Ordering::Inconclusive
            };
            return Ok(verdict(ordering));
        }
        stage_tol = stage_tol / T::of(100.0);
    }
    unreachable!("two stages always return")
}

fn check_edge(g: &Graph, (u, v): (usize, usize)) -> Result<()> {
    g.check_vertex(u).map_err(|e| Error::InvalidEdit(e.to_string()))?;
    g.check_vertex(v).map_err(|e| Error::InvalidEdit(e.to_string()))?;
    if u == v {
        return Err(Error::InvalidEdit(format!("loop at {u}")));
    }
    Ok(())
}

fn normalized((u, v): (usize, usize)) -> (usize, usize) {
    (u.min(v), u.max(v))
}

/// Applies edge deletions then insertions, keeping the graph simple.
pub fn apply_edits(g: &Graph, removed: &[(usize, usize)], added: &[(usize, usize)]) -> Result<Graph> {
    let mut h = g.clone();
    let mut seen = std::collections::HashSet::new();
    for &e in removed {
        check_edge(g, e)?;
        if !seen.insert(normalized(e)) {
            return Err(Error::InvalidEdit(format!("edge {e:?} removed twice")));
        }
        if !h.has_edge(e.0, e.1) {
            return Err(Error::InvalidEdit(format!("edge {e:?} not present")));
        }
        h.remove_edge(e.0, e.1);
    }
    seen.clear();
    for &e in added {
        check_edge(g, e)?;
        if !seen.insert(normalized(e)) {
            return Err(Error::InvalidEdit(format!("edge {e:?} added twice")));
        }
        if h.has_edge(e.0, e.1) {
            return Err(Error::InvalidEdit(format!("edge {e:?} already present")));
        }
        h.add_edge(e.0, e.1);
    }
    Ok(h)
}

/// `xᵀ(A(G') − A(G))x / xᵀx`, where `G'` is `g` with the edits applied.
///
/// With `x` the Perron vector of `g` this is a lower bound on
/// `ρ(G') − ρ(G)`.
pub fn rewire_gain<T: Scalar>(
    g: &Graph,
    removed: &[(usize, usize)],
    added: &[(usize, usize)],
    x: &[T],
) -> Result<T> {
    if x.len() != g.order() {
        return Err(Error::InvalidEdit(format!(
            "vector has length {} but graph has order {}",
            x.len(),
            g.order()
        )));
    }
    if x.iter().any(|&v| !(v >= T::zero()) || !v.is_finite()) {
        return Err(Error::InvalidEdit("vector must be finite and non-negative".into()));
    }
    apply_edits(g, removed, added)?;
    let pair_sum = |edges: &[(usize, usize)]| edges.iter().map(|&(u, v)| x[u] * x[v]).sum::<T>();
    let norm = dot(x, x);
    if norm == T::zero() {
        return Err(Error::InvalidEdit("vector must be non-zero".into()));
    }
    Ok(T::of(2.0) * (pair_sum(added) - pair_sum(removed)) / norm)
}
